#pragma once

#include "l1cert/certificate.hpp"

#include <cstdint>
#include <vector>

namespace l1cert {

struct SCAConfig {
  int restarts = 0;  // 0: 20 for n <= 64, 10 above
  double improvement_tol = 1e-7;
  int max_iters = 100;
  std::uint64_t seed = 0;
  LpOptions lp;
};

int effective_restarts(const SCAConfig& cfg, Index n);

// A lower bound at least this large disproves s-goodness.
constexpr double kDisproofLevel = 0.5 - 1e-9;

/// Orthonormal basis of Ker A, used to clean LP answers into exact kernel vectors.
class KernelBasis {
 public:
  explicit KernelBasis(const SensingMatrix& a);
  const Matrix& basis() const { return basis_; }
  Index dimension() const { return basis_.cols(); }
  // Projects x onto Ker A and scales it into the unit l1 ball.
  Vector clean(const Vector& x) const;

 private:
  Matrix basis_;
};

// f(u) = max { u^T x : ||x||_1 <= 1, A x = 0 } with its maximizer.
KernelWitness kernel_value(const SensingMatrix& a, const KernelBasis& kernel, const PsVertex& u,
                           const LpOptions& options = {});

struct ScaResult {
  double value = 0.0;
  KernelWitness witness;
  std::vector<std::vector<double>> traces;  // f(u_t) per restart
  std::uint64_t seed = 0;
  int restarts = 0;
};

// Sequential convex approximation from random vertices of P_s (plus `warm` if given).
ScaResult sca_lower_bound(const SensingMatrix& a, Index s, const SCAConfig& cfg = {},
                          const PsVertex* warm = nullptr);

struct UpperBoundResult {
  Index s_bar = 0;
  bool disproved = false;
  std::vector<ScaResult> runs;  // one per scanned s
};

// s_bar = (smallest s >= s_start with an SCA bound >= 1/2) - 1, or min(k, n) with disproved = false.
UpperBoundResult s_upper_bound(const SensingMatrix& a, const SCAConfig& cfg = {}, Index s_start = 1);

// Certificate of kind SCA: s_certified holds s_bar, the witness the disproof at s_bar + 1.
GoodnessCertificate sca_certificate(const UpperBoundResult& result, const SCAConfig& cfg);

}  // namespace l1cert
