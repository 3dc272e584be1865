#pragma once

// Numerical laboratory for contact Hamilton-Jacobi equations
//   u_t + H(x, D_x u, u) = 0
// on the flat 1-torus: monotone finite differences, variational dynamic
// programming, fundamental solutions, and long-time/classification operators.

#include "chj/cauchy_fd.hpp"
#include "chj/ext_real.hpp"
#include "chj/fundamental.hpp"
#include "chj/grid_fn.hpp"
#include "chj/hamiltonian.hpp"
#include "chj/io.hpp"
#include "chj/lax_oleinik.hpp"
#include "chj/legendre.hpp"
#include "chj/longtime.hpp"
#include "chj/oracles.hpp"
#include "chj/parallel.hpp"
#include "chj/torus.hpp"
#include "chj/verify.hpp"
