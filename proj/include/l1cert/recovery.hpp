#pragma once

#include "l1cert/bounds.hpp"

#include <optional>

namespace l1cert {

struct RecoveryResult {
  bool feasible = false;
  Vector x;
  double l1_norm = 0.0;      // ||x||_1
  double lower_bound = 0.0;  // dual objective, a lower bound on the optimal value
  double residual = 0.0;     // ||A x - y|| in the observation norm
};

// argmin { ||z||_1 : ||A z - y|| <= eps }. eps = 0 uses equality constraints for every norm;
// eps > 0 needs l1 or linf. An infeasible program returns feasible = false.
RecoveryResult l1_recover(const SensingMatrix& a, const Vector& y, double epsilon = 0.0,
                          ObservationNorm norm = ObservationNorm::L2, const LpOptions& options = {});

// (nu + 2 tail) / (1 - 2 gammahat).
double noiseless_error_bound(double gammahat, double nu, double tail);

struct ErrorBoundInputs {
  double gammahat = 0.0;  // gammahat_s(A, beta) < 1/2
  double beta = 0.0;      // finite
  double epsilon = 0.0;
  double upsilon = 0.0;
  double nu = 0.0;
  double tail = 0.0;      // ||w - w^s||_1
};

// (1 - 2 gammahat)^-1 [2 beta (upsilon + epsilon) + 2 tail + nu].
double noisy_error_bound(const ErrorBoundInputs& in);

// L2: sqrt(k) / sigma_min; L1: 1 / rho; Linf: k / rho.
Beta beta_sufficient_for_gamma(const SensingMatrix& a, ObservationNorm norm, const LpOptions& options = {});

struct ScalingResult {
  Vector lambdas;
  CorrectorMatrix corrector;
  double achieved = 1.0;  // max_i ||lambda_i e_i - Y^T A_i||_{s,1} / lambda_i
  bool feasible = false;
};

// Finds lambda in [ell, 1]^n and Y with ||y_i||_* <= beta_bar and
// ||lambda_i e_i - Y^T A_i||_{s,1} <= target lambda_i.
ScalingResult weighted_scaling_feasibility(const SensingMatrix& a, Index s, const Beta& beta_bar,
                                           ObservationNorm norm, double ell, double target,
                                           const BoundOptions& options = {});

// Bisection on the target over [0, 1] down to width 1e-3.
ScalingResult weighted_scaling_optimize(const SensingMatrix& a, Index s, const Beta& beta_bar,
                                        ObservationNorm norm, double ell,
                                        const BoundOptions& options = {});

struct RipBounds {
  double gammahat_bound = 0.0;
  double gamma_bound = 0.0;
  double beta_bound = 0.0;
  std::optional<double> alpha1_bound;
};

// Bounds implied by RI(delta, 2s); alpha1_bound needs m >= 2 (pass m = 0 to skip).
RipBounds rip_implied_bounds(double delta, Index s, Index m = 0);

struct ReBounds {
  double gammahat_bound = 0.0;
  double beta = 0.0;
  bool certifying = false;
};

// gammahat_s(A, sqrt(s)/kappa) <= 1/(1 + rho); certifies goodness only when rho > 1.
ReBounds re_implied_bounds(Index s, double rho, double kappa);

}  // namespace l1cert
