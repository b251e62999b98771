#pragma once

#include "l1cert/core.hpp"
#include "l1cert/lp.hpp"

#include <optional>
#include <string>

namespace l1cert {

/// Y = [y_1 .. y_n] (k x n) with ||y_i||_* <= beta, * the dual of `norm`.
struct CorrectorMatrix {
  Matrix y;
  Beta beta;
  ObservationNorm norm = ObservationNorm::L2;
};

/// x in Ker A with ||x||_1 <= 1, u a vertex of P_s, value = u^T x.
struct KernelWitness {
  PsVertex u;
  Vector x;
  double value = 0.0;
  double residual = 0.0;  // ||A x||_2
};

enum class BoundKind { Mu, Alpha1, AlphaS, SCA };

std::string to_string(BoundKind kind);

struct GoodnessCertificate {
  BoundKind kind = BoundKind::Mu;
  Index s_certified = 0;
  double bound_value = 0.0;
  Beta beta;
  ObservationNorm norm = ObservationNorm::L2;
  std::optional<CorrectorMatrix> corrector;
  std::optional<KernelWitness> kernel;
  LpOptions tolerances;
};

/// The same goodness level on the gamma and gamma-hat scales.
struct GammaPair {
  double gamma = 0.0;
  double gammahat = 0.0;
  Beta beta_gamma;
  Beta beta_gammahat;
};

// I - Y^T A.
Matrix corrector_residual(const SensingMatrix& a, const Matrix& y);

// max_j ||(I - Y^T A) e_j||_{s,1}.
double corrector_value(const SensingMatrix& a, const Matrix& y, Index s);

// Largest s with corrector_value(a, y, s) < 1/2 (0 if none).
Index improved_s_from_corrector(const SensingMatrix& a, const Matrix& y);

}  // namespace l1cert
