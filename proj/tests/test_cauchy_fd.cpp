#include <catch2/catch_amalgamated.hpp>
#include "chj/chj.hpp"
