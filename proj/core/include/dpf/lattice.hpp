#pragma once

#include <vector>

#include <gmpxx.h>

#include "dpf/real.hpp"

namespace dpf {

using ZMat = std::vector<std::vector<mpz_class>>;
using RMat = std::vector<std::vector<Real>>;

// LLL on the rows of B in place; returns unimodular T with T * B_old = B_new
ZMat lll(RMat& B, double delta = 0.99);

// row Hermite normal form: zero rows dropped, pivots positive, entries above
// each pivot reduced into [0, pivot); U (if given) satisfies U * A = H with the
// zero rows of U*A kept at the bottom of U
ZMat hnf(ZMat A, ZMat* U = nullptr);

// nonzero invariant factors d_1 | d_2 | ... of the row lattice of A
std::vector<mpz_class> smith_invariants(ZMat A);

// absolute determinant of a square integer matrix (Bareiss)
mpz_class det(ZMat A);

ZMat identity(size_t n);

}  // namespace dpf
