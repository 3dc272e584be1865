#include <cstdio>

int main() {
  std::puts("contact_hj: placeholder");
  return 0;
}
