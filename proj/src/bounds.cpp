#include "l1cert/bounds.hpp"

#include "l1cert/parallel.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace l1cert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_polyhedral(const Beta& beta, ObservationNorm norm) {
  if (!beta.is_infinite() && norm == ObservationNorm::L2) {
    throw UnsupportedError("finite beta needs a polyhedral observation norm (l1 or linf); "
                           "the l2 dual ball is not polyhedral");
  }
}

// Constrains ||y||_* <= beta for y = variables [first, first + k).
void add_dual_ball(LpBuilder& b, Index first, Index k, const Beta& beta, ObservationNorm norm) {
  if (beta.is_infinite()) return;
  if (norm == ObservationNorm::L1) {
    for (Index l = 0; l < k; ++l) b.set_bounds(first + l, -beta.value(), beta.value());
    return;
  }
  const Index v = b.add_variables(k, 0.0, kInf);
  LpBuilder::Terms sum;
  for (Index l = 0; l < k; ++l) {
    b.add_le({{first + l, 1.0}, {v + l, -1.0}}, 0.0);
    b.add_le({{first + l, -1.0}, {v + l, -1.0}}, 0.0);
    sum.emplace_back(v + l, 1.0);
  }
  b.add_le(sum, beta.value());
}

std::size_t dual_ball_size(Index k, const Beta& beta, ObservationNorm norm) {
  if (beta.is_infinite() || norm != ObservationNorm::Linf) return 0;
  return static_cast<std::size_t>(5 * k);
}

// Removes tolerance-level violations of the dual-ball constraint.
template <class Col>
void clamp_to_dual_ball(Col&& y, const Beta& beta, ObservationNorm norm) {
  if (beta.is_infinite()) return;
  const double b = beta.value();
  if (norm == ObservationNorm::L1) {
    y = y.cwiseMax(-b).cwiseMin(b);
  } else {
    const double l1 = y.template lpNorm<1>();
    if (l1 > b) y *= (l1 > 0.0 ? b / l1 : 0.0);
  }
}

LpSolution solve_or_throw(const LinearProgram& lp, const LpOptions& options, const std::string& what) {
  LpSolution sol = solve_lp(lp, options);
  if (sol.status != LpStatus::Optimal) {
    throw SolverError(what + ": LP returned " + to_string(sol.status));
  }
  return sol;
}

Beta scale(const Beta& beta, double factor) {
  return beta.is_infinite() ? Beta::infinity() : Beta(beta.value() * factor);
}

Vector alpha1_range_column(const Matrix& a, Index i, const Beta& beta, ObservationNorm norm,
                           const LpOptions& options) {
  const Index k = a.rows();
  const Index n = a.cols();
  LpBuilder b;
  const Index y0 = b.add_variables(k, -kInf, kInf);
  const Index t = b.add_variable(0.0, kInf, 1.0);
  add_dual_ball(b, y0, k, beta, norm);
  LpBuilder::Terms plus(static_cast<std::size_t>(k + 1));
  LpBuilder::Terms minus(static_cast<std::size_t>(k + 1));
  for (Index j = 0; j < n; ++j) {
    for (Index l = 0; l < k; ++l) {
      plus[static_cast<std::size_t>(l)] = {y0 + l, -a(l, j)};
      minus[static_cast<std::size_t>(l)] = {y0 + l, a(l, j)};
    }
    plus[static_cast<std::size_t>(k)] = {t, -1.0};
    minus[static_cast<std::size_t>(k)] = {t, -1.0};
    const double e = j == i ? 1.0 : 0.0;
    b.add_le(plus, -e);
    b.add_le(minus, e);
  }
  const LpSolution sol = solve_or_throw(b.build(), options, "alpha1 column " + std::to_string(i));
  Vector y = sol.primal.segment(y0, k);
  clamp_to_dual_ball(y, beta, norm);
  return y;
}

struct KernelData {
  Matrix basis;                                 // n x r, orthonormal columns spanning Ker A
  Eigen::ColPivHouseholderQR<Matrix> qr_at;     // of A^T, for y from A^T y = w
};

KernelData kernel_data(const Matrix& a) {
  KernelData d{Matrix(), Eigen::ColPivHouseholderQR<Matrix>(a.transpose())};
  const Index n = a.cols();
  const Index rank = d.qr_at.rank();
  const Matrix q = d.qr_at.householderQ();
  d.basis = q.rightCols(n - rank);
  return d;
}

// min ||v||_inf over v with B^T v = B^T e_i, i.e. e_i - v in Range(A^T).
Vector alpha1_kernel_column(const KernelData& d, Index i, const LpOptions& options) {
  const Index n = d.basis.rows();
  const Index r = d.basis.cols();
  Vector w = Vector::Unit(n, i);
  if (r > 0) {
    LpBuilder b;
    const Index v0 = b.add_variables(n, -kInf, kInf);
    const Index t = b.add_variable(0.0, kInf, 1.0);
    for (Index j = 0; j < n; ++j) {
      b.add_le({{v0 + j, 1.0}, {t, -1.0}}, 0.0);
      b.add_le({{v0 + j, -1.0}, {t, -1.0}}, 0.0);
    }
    LpBuilder::Terms row(static_cast<std::size_t>(n));
    for (Index c = 0; c < r; ++c) {
      for (Index j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = {v0 + j, d.basis(j, c)};
      b.add_eq(row, d.basis(i, c));
    }
    const LpSolution sol = solve_or_throw(b.build(), options, "alpha1 column " + std::to_string(i));
    w -= sol.primal.segment(v0, n);
  }
  return d.qr_at.solve(w);
}

bool use_kernel_form(const Matrix& a, const Beta& beta, Alpha1Form form) {
  if (form == Alpha1Form::Range) return false;
  if (!beta.is_infinite()) {
    if (form == Alpha1Form::Kernel) throw ArgumentError("the kernel form of alpha_1 needs beta = infinity");
    return false;
  }
  if (form == Alpha1Form::Kernel) return true;
  const double k = static_cast<double>(a.rows());
  const double n = static_cast<double>(a.cols());
  const double r = std::max(0.0, n - k);
  const double range_cost = 2.0 * n * (k + 1.0) * (k + 1.0);
  const double kernel_cost = n * r * r + r * r * r + 50.0 * n;
  return kernel_cost < range_cost;
}

}  // namespace

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::Mu: return "mu";
    case BoundKind::Alpha1: return "alpha1";
    case BoundKind::AlphaS: return "alphas";
    case BoundKind::SCA: return "sca";
  }
  return "unknown";
}

Matrix corrector_residual(const SensingMatrix& a, const Matrix& y) {
  if (y.rows() != a.rows() || y.cols() != a.cols()) {
    throw ArgumentError("corrector must be " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()));
  }
  Matrix r = -(y.transpose() * a.entries());
  r.diagonal().array() += 1.0;
  return r;
}

double corrector_value(const SensingMatrix& a, const Matrix& y, Index s) {
  const Matrix r = corrector_residual(a, y);
  double worst = 0.0;
  for (Index j = 0; j < r.cols(); ++j) worst = std::max(worst, norm_s1(r.col(j), s));
  return worst;
}

Index improved_s_from_corrector(const SensingMatrix& a, const Matrix& y) {
  const Matrix r = corrector_residual(a, y);
  const Index n = r.cols();
  Vector worst = Vector::Zero(n);
  std::vector<double> mags(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) mags[static_cast<std::size_t>(i)] = std::abs(r(i, j));
    std::sort(mags.begin(), mags.end(), std::greater<>());
    double prefix = 0.0;
    for (Index s = 0; s < n; ++s) {
      prefix += mags[static_cast<std::size_t>(s)];
      worst[s] = std::max(worst[s], prefix);
    }
  }
  Index s = 0;
  while (s < n && worst[s] < 0.5) ++s;
  return s;
}

GoodnessCertificate s_bound_mu(const SensingMatrix& a, ObservationNorm norm) {
  const double mu = mutual_incoherence(a);
  const Index cap = std::min(a.rows(), a.cols());
  Index s = 0;
  if (mu == 0.0) {
    s = cap;
  } else if (mu < 1.0) {
    s = static_cast<Index>(std::floor((1.0 / mu + 1.0) / 2.0)) + 1;
    while (s > 0 && !((2.0 * static_cast<double>(s) - 1.0) * mu < 1.0)) --s;
    s = std::min(s, cap);
  }
  double beta_a = 0.0;
  for (Index j = 0; j < a.cols(); ++j) {
    const Vector col = a.column(j);
    beta_a = std::max(beta_a, norm_value(dual_norm(norm), col) / col.squaredNorm());
  }
  GoodnessCertificate cert;
  cert.kind = BoundKind::Mu;
  cert.s_certified = s;
  cert.norm = norm;
  const double sd = static_cast<double>(s);
  const double denom = 1.0 - (sd - 1.0) * mu;
  cert.bound_value = s > 0 ? sd * mu / denom : 0.0;
  cert.beta = Beta(s > 0 ? sd * beta_a * (1.0 + mu) / denom : 0.0);
  return cert;
}

std::vector<double> alpha1_columns(const SensingMatrix& a, const Matrix& y) {
  const Matrix r = corrector_residual(a, y);
  std::vector<double> out(static_cast<std::size_t>(r.rows()));
  for (Index i = 0; i < r.rows(); ++i) out[static_cast<std::size_t>(i)] = r.row(i).lpNorm<Eigen::Infinity>();
  return out;
}

AlphaResult compute_alpha1(const SensingMatrix& a, const Beta& beta, ObservationNorm norm,
                           const BoundOptions& options) {
  require_polyhedral(beta, norm);
  const Index k = a.rows();
  const Index n = a.cols();
  Matrix y(k, n);
  if (use_kernel_form(a.entries(), beta, options.alpha1_form)) {
    const KernelData d = kernel_data(a.entries());
    parallel_for(n, [&](long i) { y.col(i) = alpha1_kernel_column(d, i, options.lp); });
  } else {
    parallel_for(n, [&](long i) { y.col(i) = alpha1_range_column(a.entries(), i, beta, norm, options.lp); });
  }
  AlphaResult out;
  out.corrector = CorrectorMatrix{std::move(y), beta, norm};
  out.value = corrector_value(a, out.corrector.y, 1);
  return out;
}

std::size_t alphas_program_size(Index k, Index n, const Beta& beta, ObservationNorm norm) {
  const auto kk = static_cast<std::size_t>(k);
  const auto nn = static_cast<std::size_t>(n);
  return 2 * nn * nn * (kk + 2) + nn * (nn + 2) + nn * dual_ball_size(k, beta, norm);
}

AlphaResult compute_alphas(const SensingMatrix& a, Index s, const Beta& beta, ObservationNorm norm,
                           const BoundOptions& options) {
  require_polyhedral(beta, norm);
  const Index k = a.rows();
  const Index n = a.cols();
  if (s < 1 || s > n) throw ArgumentError("s must lie in [1, n]");
  const std::size_t size = alphas_program_size(k, n, beta, norm);
  if (size > options.lp_limit) {
    std::ostringstream msg;
    msg << "alpha_s program for s=" << s << " has " << size << " nonzeros, above the limit "
        << options.lp_limit << "; use the alpha1 path or raise the LP limit";
    throw ResourceError(msg.str());
  }
  const Matrix& am = a.entries();
  LpBuilder b;
  const Index y0 = b.add_variables(k * n, -kInf, kInf);
  const Index lam0 = b.add_variables(n, 0.0, kInf);
  const Index z0 = b.add_variables(n * n, 0.0, kInf);
  const Index t = b.add_variable(-kInf, kInf, 1.0);
  for (Index i = 0; i < n; ++i) add_dual_ball(b, y0 + i * k, k, beta, norm);
  LpBuilder::Terms plus(static_cast<std::size_t>(k + 2));
  LpBuilder::Terms minus(static_cast<std::size_t>(k + 2));
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      for (Index l = 0; l < k; ++l) {
        plus[static_cast<std::size_t>(l)] = {y0 + i * k + l, -am(l, j)};
        minus[static_cast<std::size_t>(l)] = {y0 + i * k + l, am(l, j)};
      }
      plus[static_cast<std::size_t>(k)] = minus[static_cast<std::size_t>(k)] = {lam0 + j, -1.0};
      plus[static_cast<std::size_t>(k + 1)] = minus[static_cast<std::size_t>(k + 1)] = {z0 + i * n + j, -1.0};
      const double e = i == j ? 1.0 : 0.0;
      b.add_le(plus, -e);
      b.add_le(minus, e);
    }
    LpBuilder::Terms sum;
    sum.reserve(static_cast<std::size_t>(n + 2));
    sum.emplace_back(lam0 + j, static_cast<double>(s));
    for (Index i = 0; i < n; ++i) sum.emplace_back(z0 + i * n + j, 1.0);
    sum.emplace_back(t, -1.0);
    b.add_le(sum, 0.0);
  }
  const LpSolution sol = solve_or_throw(b.build(), options.lp, "alpha_s (s=" + std::to_string(s) + ")");
  Matrix y(k, n);
  for (Index i = 0; i < n; ++i) {
    y.col(i) = sol.primal.segment(y0 + i * k, k);
    clamp_to_dual_ball(y.col(i), beta, norm);
  }
  AlphaResult out;
  out.corrector = CorrectorMatrix{std::move(y), beta, norm};
  out.value = corrector_value(a, out.corrector.y, s);
  return out;
}

GoodnessCertificate s_bound_alpha1(const SensingMatrix& a, const Beta& beta, ObservationNorm norm,
                                   const BoundOptions& options) {
  AlphaResult r = compute_alpha1(a, beta, norm, options);
  GoodnessCertificate cert;
  cert.kind = BoundKind::Alpha1;
  cert.s_certified = improved_s_from_corrector(a, r.corrector.y);
  cert.bound_value = cert.s_certified > 0 ? corrector_value(a, r.corrector.y, cert.s_certified) : r.value;
  cert.beta = beta;
  cert.norm = norm;
  cert.corrector = std::move(r.corrector);
  cert.tolerances = options.lp;
  return cert;
}

GoodnessCertificate s_bound_alphas(const SensingMatrix& a, const Beta& beta, ObservationNorm norm,
                                   const BoundOptions& options) {
  GoodnessCertificate best = s_bound_alpha1(a, beta, norm, options);
  best.kind = BoundKind::AlphaS;
  if (best.s_certified == 0) return best;
  Index s = best.s_certified + 1;
  while (s <= a.cols()) {
    AlphaResult r;
    try {
      r = compute_alphas(a, s, beta, norm, options);
    } catch (const ResourceError& e) {
      throw PartialCertificateError(e.what(), best);
    }
    if (!(r.value < 0.5)) break;
    const Index improved = std::max(s, improved_s_from_corrector(a, r.corrector.y));
    best.s_certified = improved;
    best.bound_value = corrector_value(a, r.corrector.y, improved);
    best.corrector = std::move(r.corrector);
    s = improved + 1;
  }
  return best;
}

GammaPair convert_from_gamma(double gamma, const Beta& beta) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ArgumentError("gamma must lie in [0, 1)");
  GammaPair p;
  p.gamma = gamma;
  p.gammahat = gamma / (1.0 + gamma);
  p.beta_gamma = beta;
  p.beta_gammahat = scale(beta, 1.0 / (1.0 + gamma));
  return p;
}

GammaPair convert_from_gammahat(double gammahat, const Beta& beta) {
  if (!(gammahat >= 0.0 && gammahat < 0.5)) throw ArgumentError("gammahat must lie in [0, 1/2)");
  GammaPair p;
  p.gammahat = gammahat;
  p.gamma = gammahat / (1.0 - gammahat);
  p.beta_gammahat = beta;
  p.beta_gamma = scale(beta, 1.0 / (1.0 - gammahat));
  return p;
}

PerformanceLimit performance_limit(Index k, Index n, Index s) {
  if (k < 1 || n < 1 || s < 1) throw ArgumentError("k, n and s must be positive");
  PerformanceLimit out;
  if (n < 32 * k) return out;
  const double sd = static_cast<double>(s);
  out.applicable = true;
  out.value = std::min(3.0 * sd / (4.0 * (sd + std::sqrt(2.0 * static_cast<double>(k)))), 0.5);
  return out;
}

double pivoted_sigma_min(const SensingMatrix& a, std::vector<Index>* columns) {
  const Index k = a.rows();
  Eigen::ColPivHouseholderQR<Matrix> qr(a.entries());
  if (qr.rank() < k) throw ArgumentError("matrix must have full row rank");
  Matrix sub(k, k);
  std::vector<Index> picked;
  for (Index c = 0; c < k; ++c) {
    const Index j = qr.colsPermutation().indices()[c];
    picked.push_back(j);
    sub.col(c) = a.column(j);
  }
  if (columns) *columns = picked;
  const Eigen::JacobiSVD<Matrix> svd(sub);
  return svd.singularValues()[k - 1];
}

double image_ball_radius(const SensingMatrix& a, const LpOptions& options) {
  const Index k = a.rows();
  const Index n = a.cols();
  if (Eigen::ColPivHouseholderQR<Matrix>(a.entries()).rank() < k) {
    throw ArgumentError("matrix must have full row rank");
  }
  std::vector<double> rho(static_cast<std::size_t>(k));
  parallel_for(k, [&](long i) {
    LpBuilder b;
    const Index p0 = b.add_variables(n, 0.0, kInf);
    const Index q0 = b.add_variables(n, 0.0, kInf);
    const Index r = b.add_variable(-kInf, kInf, -1.0);
    LpBuilder::Terms sum;
    for (Index j = 0; j < n; ++j) {
      sum.emplace_back(p0 + j, 1.0);
      sum.emplace_back(q0 + j, 1.0);
    }
    b.add_le(sum, 1.0);
    for (Index l = 0; l < k; ++l) {
      LpBuilder::Terms row;
      for (Index j = 0; j < n; ++j) {
        row.emplace_back(p0 + j, a.entries()(l, j));
        row.emplace_back(q0 + j, -a.entries()(l, j));
      }
      if (l == i) row.emplace_back(r, -1.0);
      b.add_eq(row, 0.0);
    }
    const LpSolution sol = solve_or_throw(b.build(), options, "image-ball radius");
    rho[static_cast<std::size_t>(i)] = -sol.objective_value;
  });
  const double out = *std::min_element(rho.begin(), rho.end());
  if (!(out > 1e-12)) throw ArgumentError("image of the l1 ball is degenerate (rho <= 0)");
  return out;
}

Beta beta_sufficient_for_alpha(const SensingMatrix& a, ObservationNorm norm, const LpOptions& options) {
  const double k = static_cast<double>(a.rows());
  switch (norm) {
    case ObservationNorm::L2: return Beta(1.5 * std::sqrt(k) / pivoted_sigma_min(a));
    case ObservationNorm::L1: return Beta(1.5 / image_ball_radius(a, options));
    case ObservationNorm::Linf: return Beta(1.5 * k / image_ball_radius(a, options));
  }
  return Beta::infinity();
}

}  // namespace l1cert
