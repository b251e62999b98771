#include "l1cert/recovery.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace l1cert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Least squares on the largest entries of x, trying a few support sizes; the
// first exact fit that is no worse than x replaces it.
void polish_exact(const SensingMatrix& a, const Vector& y, RecoveryResult& r) {
  const Index n = a.cols();
  const Index k = a.rows();
  const double scale = r.x.lpNorm<Eigen::Infinity>();
  if (!(scale > 0.0)) return;
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return std::abs(r.x[i]) > std::abs(r.x[j]); });
  Index first = 0;
  while (first < n && std::abs(r.x[order[static_cast<std::size_t>(first)]]) > 1e-4 * scale) ++first;
  const double tol = 1e-10 * std::max(1.0, y.lpNorm<Eigen::Infinity>());
  const double l1 = r.x.lpNorm<1>();
  for (Index size = std::max<Index>(first, 1); size <= std::min({k, n, first + 8}); ++size) {
    Matrix sub(k, size);
    for (Index c = 0; c < size; ++c) sub.col(c) = a.column(order[static_cast<std::size_t>(c)]);
    const Eigen::ColPivHouseholderQR<Matrix> qr(sub);
    if (qr.rank() < size) continue;
    const Vector z = qr.solve(y);
    Vector x = Vector::Zero(n);
    for (Index c = 0; c < size; ++c) x[order[static_cast<std::size_t>(c)]] = z[c];
    if ((a.entries() * x - y).lpNorm<Eigen::Infinity>() <= tol && x.lpNorm<1>() <= l1 + 1e-8 * (1.0 + l1)) {
      r.x = std::move(x);
      return;
    }
  }
}

void check_sparsity(const SensingMatrix& a, Index s) {
  if (s < 1 || s > a.cols()) throw ArgumentError("s must lie in [1, n]");
}

ScalingResult scaling_program(const SensingMatrix& a, Index s, const Beta& beta_bar, ObservationNorm norm,
                              double ell, double target, const BoundOptions& options) {
  const Index k = a.rows();
  const Index n = a.cols();
  const Matrix& am = a.entries();
  const std::size_t size = alphas_program_size(k, n, beta_bar, norm) + static_cast<std::size_t>(4 * n * n);
  if (size > options.lp_limit) {
    throw ResourceError("weighted scaling program has " + std::to_string(size) +
                        " nonzeros, above the LP limit " + std::to_string(options.lp_limit));
  }
  LpBuilder b;
  const Index y0 = b.add_variables(k * n, -kInf, kInf);
  const Index lam0 = b.add_variables(n, ell, 1.0);
  const Index mu0 = b.add_variables(n, 0.0, kInf);
  const Index z0 = b.add_variables(n * n, 0.0, kInf);
  const Index theta = b.add_variable(-kInf, kInf, 1.0);
  if (!beta_bar.is_infinite()) {
    for (Index j = 0; j < n; ++j) {
      if (norm == ObservationNorm::L1) {
        for (Index l = 0; l < k; ++l) b.set_bounds(y0 + j * k + l, -beta_bar.value(), beta_bar.value());
      } else {
        const Index v = b.add_variables(k, 0.0, kInf);
        LpBuilder::Terms sum;
        for (Index l = 0; l < k; ++l) {
          b.add_le({{y0 + j * k + l, 1.0}, {v + l, -1.0}}, 0.0);
          b.add_le({{y0 + j * k + l, -1.0}, {v + l, -1.0}}, 0.0);
          sum.emplace_back(v + l, 1.0);
        }
        b.add_le(sum, beta_bar.value());
      }
    }
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      // r_ji = lambda_i [i == j] - y_j^T A_i
      LpBuilder::Terms plus;
      LpBuilder::Terms minus;
      for (Index l = 0; l < k; ++l) {
        plus.emplace_back(y0 + j * k + l, -am(l, i));
        minus.emplace_back(y0 + j * k + l, am(l, i));
      }
      if (i == j) {
        plus.emplace_back(lam0 + i, 1.0);
        minus.emplace_back(lam0 + i, -1.0);
      }
      for (auto* row : {&plus, &minus}) {
        row->emplace_back(mu0 + i, -1.0);
        row->emplace_back(z0 + j * n + i, -1.0);
        b.add_le(*row, 0.0);
      }
    }
    LpBuilder::Terms sum;
    sum.emplace_back(mu0 + i, static_cast<double>(s));
    for (Index j = 0; j < n; ++j) sum.emplace_back(z0 + j * n + i, 1.0);
    sum.emplace_back(lam0 + i, -target);
    sum.emplace_back(theta, -1.0);
    b.add_le(sum, 0.0);
  }
  const LpSolution sol = solve_lp(b.build(), options.lp);
  if (sol.status != LpStatus::Optimal) {
    throw SolverError("weighted scaling LP returned " + to_string(sol.status));
  }
  ScalingResult out;
  out.lambdas = sol.primal.segment(lam0, n).cwiseMax(ell).cwiseMin(1.0);
  Matrix y(k, n);
  for (Index j = 0; j < n; ++j) {
    Vector col = sol.primal.segment(y0 + j * k, k);
    if (!beta_bar.is_infinite()) {
      const double bv = beta_bar.value();
      if (norm == ObservationNorm::L1) {
        col = col.cwiseMax(-bv).cwiseMin(bv);
      } else if (col.lpNorm<1>() > bv) {
        col *= bv / col.lpNorm<1>();
      }
    }
    y.col(j) = col;
  }
  // Evaluate the achieved level directly from (lambda, Y).
  const Matrix yta = y.transpose() * am;
  double achieved = 0.0;
  for (Index i = 0; i < n; ++i) {
    Vector r = -yta.col(i);
    r[i] += out.lambdas[i];
    achieved = std::max(achieved, norm_s1(r, s) / out.lambdas[i]);
  }
  out.corrector = CorrectorMatrix{std::move(y), beta_bar, norm};
  out.achieved = achieved;
  out.feasible = achieved <= target + 1e-8;
  return out;
}

void check_scaling_args(const SensingMatrix& a, Index s, const Beta& beta_bar, ObservationNorm norm, double ell) {
  check_sparsity(a, s);
  if (!(ell > 0.0 && ell <= 1.0)) throw ArgumentError("ell must lie in (0, 1]");
  if (!beta_bar.is_infinite() && norm == ObservationNorm::L2) {
    throw UnsupportedError("finite beta needs a polyhedral observation norm (l1 or linf)");
  }
}

}  // namespace

RecoveryResult l1_recover(const SensingMatrix& a, const Vector& y, double epsilon, ObservationNorm norm,
                          const LpOptions& options) {
  const Index k = a.rows();
  const Index n = a.cols();
  if (y.size() != k) throw ArgumentError("observation has length " + std::to_string(y.size()) +
                                         ", expected " + std::to_string(k));
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ArgumentError("epsilon must be finite and >= 0");
  if (epsilon > 0.0 && norm == ObservationNorm::L2) {
    throw UnsupportedError("noisy recovery needs a polyhedral observation norm (l1 or linf)");
  }
  const Matrix& am = a.entries();
  LpBuilder b;
  const Index p0 = b.add_variables(n, 0.0, kInf, 1.0);
  const Index q0 = b.add_variables(n, 0.0, kInf, 1.0);
  auto row_terms = [&](Index l, double sign) {
    LpBuilder::Terms row;
    for (Index j = 0; j < n; ++j) {
      if (am(l, j) == 0.0) continue;
      row.emplace_back(p0 + j, sign * am(l, j));
      row.emplace_back(q0 + j, -sign * am(l, j));
    }
    return row;
  };
  if (epsilon == 0.0) {
    for (Index l = 0; l < k; ++l) b.add_eq(row_terms(l, 1.0), y[l]);
  } else if (norm == ObservationNorm::Linf) {
    for (Index l = 0; l < k; ++l) {
      b.add_le(row_terms(l, 1.0), y[l] + epsilon);
      b.add_le(row_terms(l, -1.0), epsilon - y[l]);
    }
  } else {
    const Index e0 = b.add_variables(k, 0.0, kInf);
    LpBuilder::Terms sum;
    for (Index l = 0; l < k; ++l) {
      auto up = row_terms(l, 1.0);
      up.emplace_back(e0 + l, -1.0);
      b.add_le(up, y[l]);
      auto down = row_terms(l, -1.0);
      down.emplace_back(e0 + l, -1.0);
      b.add_le(down, -y[l]);
      sum.emplace_back(e0 + l, 1.0);
    }
    b.add_le(sum, epsilon);
  }
  const LpSolution sol = solve_lp(b.build(), options);
  RecoveryResult out;
  if (sol.status == LpStatus::Infeasible) return out;
  if (sol.status != LpStatus::Optimal) throw SolverError("recovery LP returned " + to_string(sol.status));
  out.feasible = true;
  out.x = sol.primal.segment(p0, n) - sol.primal.segment(q0, n);
  out.lower_bound = sol.dual_objective;
  if (epsilon == 0.0) polish_exact(a, y, out);
  out.l1_norm = out.x.lpNorm<1>();
  out.residual = norm_value(norm, am * out.x - y);
  return out;
}

double noiseless_error_bound(double gammahat, double nu, double tail) {
  if (!(gammahat >= 0.0 && gammahat < 0.5)) throw ArgumentError("gammahat must lie in [0, 1/2)");
  if (!(nu >= 0.0 && tail >= 0.0)) throw ArgumentError("nu and tail must be nonnegative");
  return (nu + 2.0 * tail) / (1.0 - 2.0 * gammahat);
}

double noisy_error_bound(const ErrorBoundInputs& in) {
  if (!(in.gammahat >= 0.0 && in.gammahat < 0.5)) throw ArgumentError("gammahat must lie in [0, 1/2)");
  if (!(in.beta >= 0.0) || !std::isfinite(in.beta)) throw ArgumentError("beta must be finite and >= 0");
  if (!(in.epsilon >= 0.0 && in.upsilon >= 0.0 && in.nu >= 0.0 && in.tail >= 0.0)) {
    throw ArgumentError("epsilon, upsilon, nu and tail must be nonnegative");
  }
  return (2.0 * in.beta * (in.upsilon + in.epsilon) + 2.0 * in.tail + in.nu) / (1.0 - 2.0 * in.gammahat);
}

Beta beta_sufficient_for_gamma(const SensingMatrix& a, ObservationNorm norm, const LpOptions& options) {
  return Beta(beta_sufficient_for_alpha(a, norm, options).value() / 1.5);
}

ScalingResult weighted_scaling_feasibility(const SensingMatrix& a, Index s, const Beta& beta_bar,
                                           ObservationNorm norm, double ell, double target,
                                           const BoundOptions& options) {
  check_scaling_args(a, s, beta_bar, norm, ell);
  if (!(target > 0.0 && target < 0.5)) throw ArgumentError("target must lie in (0, 1/2)");
  return scaling_program(a, s, beta_bar, norm, ell, target, options);
}

ScalingResult weighted_scaling_optimize(const SensingMatrix& a, Index s, const Beta& beta_bar,
                                        ObservationNorm norm, double ell, const BoundOptions& options) {
  check_scaling_args(a, s, beta_bar, norm, ell);
  ScalingResult best = scaling_program(a, s, beta_bar, norm, ell, 0.0, options);
  if (best.feasible) return best;
  double lo = 0.0;
  best = scaling_program(a, s, beta_bar, norm, ell, 1.0, options);
  double hi = std::min(1.0, best.achieved);
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    ScalingResult r = scaling_program(a, s, beta_bar, norm, ell, mid, options);
    if (r.feasible) {
      hi = std::min(mid, r.achieved);
      best = std::move(r);
    } else {
      lo = mid;
    }
  }
  return best;
}

RipBounds rip_implied_bounds(double delta, Index s, Index m) {
  if (!(delta > 0.0 && delta < std::numbers::sqrt2 - 1.0)) {
    throw ArgumentError("delta must lie in (0, sqrt(2) - 1)");
  }
  if (s < 1) throw ArgumentError("s must be positive");
  if (m == 1 || m < 0) throw ArgumentError("m must be at least 2");
  RipBounds out;
  const double shrink = 1.0 + (std::numbers::sqrt2 - 1.0) * delta;
  out.gammahat_bound = std::numbers::sqrt2 * delta / shrink;
  out.gamma_bound = std::numbers::sqrt2 * delta / (1.0 - delta);
  out.beta_bound = std::sqrt((1.0 + delta) * static_cast<double>(s)) / shrink;
  if (m >= 2) {
    out.alpha1_bound = std::numbers::sqrt2 * delta / ((1.0 - delta) * std::sqrt(static_cast<double>(m - 1)));
  }
  return out;
}

ReBounds re_implied_bounds(Index s, double rho, double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ArgumentError("kappa must be positive");
  if (!(rho >= 0.0)) throw ArgumentError("rho must be nonnegative");
  if (s < 1) throw ArgumentError("s must be positive");
  ReBounds out;
  out.gammahat_bound = 1.0 / (1.0 + rho);
  out.beta = std::sqrt(static_cast<double>(s)) / kappa;
  out.certifying = rho > 1.0;
  return out;
}

}  // namespace l1cert
