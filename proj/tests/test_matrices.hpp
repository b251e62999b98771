#pragma once

#include "l1cert/core.hpp"
#include "l1cert/rng.hpp"

namespace l1cert::testing {

// Gaussian k x n matrix with unit-norm columns.
inline SensingMatrix gaussian(Index k, Index n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(k, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < k; ++i) m(i, j) = rng.normal();
    m.col(j).normalize();
  }
  return SensingMatrix(m, seed);
}

inline SensingMatrix identity(Index n) { return SensingMatrix(Matrix::Identity(n, n)); }

inline SensingMatrix ones_row() { return SensingMatrix(Matrix::Ones(1, 2)); }

}  // namespace l1cert::testing
