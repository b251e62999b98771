#pragma once

#include "l1cert/core.hpp"
#include "l1cert/lp.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>

namespace l1cert {

struct OracleOptions {
  LpOptions lp;
  std::size_t size_guard = 200000;
};

// Exact gammahat_s(A) as the maximum of f(u) over all vertices u of P_s.
// Throws ResourceError when C(n, s) 2^s exceeds the guard.
double gammahat_exact(const SensingMatrix& a, Index s, const OracleOptions& options = {});

// Same quantity without LPs: maximum of ||x||_{s,1} over the vertices of
// {x in Ker A : ||x||_1 <= 1}, each found from a set of r - 1 zero coordinates (r = dim Ker A).
double gammahat_by_supports(const SensingMatrix& a, Index s, const OracleOptions& options = {});

// Largest s with gammahat_exact(A, s) < 1/2 - gap_tol.
Index s_star_exact(const SensingMatrix& a, const OracleOptions& options = {});

struct EmpiricalResult {
  Index successes = 0;
  Index failures = 0;
  double worst_error = 0.0;
  std::optional<Vector> counterexample;
};

// Noiseless recovery of random s-sparse signals (uniform support, normal values).
EmpiricalResult empirical_goodness(const SensingMatrix& a, Index s, Index trials, std::uint64_t seed,
                                   const LpOptions& options = {});

// True iff every checked k x s column submatrix has smallest singular value > 1e-8.
// Enumerates when C(n, s) <= samples, otherwise samples that many subsets.
bool submatrix_kernel_check(const SensingMatrix& a, Index s, Index samples, std::uint64_t seed = 0);

}  // namespace l1cert
