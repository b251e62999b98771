#include "l1cert/lp.hpp"

#include "l1cert/errors.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace l1cert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double inf_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>(); }

// Internal form: min c^T x  s.t.  E x = b,  Gt x + s = ht,  s >= 0, where Gt
// stacks the general rows G and one signed singleton row per finite bound.
class Problem {
 public:
  explicit Problem(const LinearProgram& lp)
      : lp_(lp), d_(lp.num_vars()), p_(lp.eq_matrix.rows()), q_(lp.ineq_matrix.rows()) {
    for (Index j = 0; j < d_; ++j) {
      if (std::isfinite(lp.lower[j])) {
        bvar_.push_back(j);
        bsign_.push_back(-1.0);
        bh_.push_back(-lp.lower[j]);
      }
      if (std::isfinite(lp.upper[j])) {
        bvar_.push_back(j);
        bsign_.push_back(1.0);
        bh_.push_back(lp.upper[j]);
      }
    }
    nb_ = static_cast<Index>(bvar_.size());
    h_.resize(q_ + nb_);
    h_.head(q_) = lp.ineq_rhs;
    for (Index t = 0; t < nb_; ++t) h_[q_ + t] = bh_[static_cast<std::size_t>(t)];
  }

  Index d() const { return d_; }
  Index p() const { return p_; }
  Index q() const { return q_; }
  Index nb() const { return nb_; }
  Index m() const { return q_ + nb_; }

  const Vector& c() const { return lp_.objective; }
  const Vector& b() const { return lp_.eq_rhs; }
  const Vector& h() const { return h_; }
  const SparseMatrix& E() const { return lp_.eq_matrix; }
  const SparseMatrix& G() const { return lp_.ineq_matrix; }
  Index bound_var(Index t) const { return bvar_[static_cast<std::size_t>(t)]; }
  double bound_sign(Index t) const { return bsign_[static_cast<std::size_t>(t)]; }

  Vector e_mul(const Vector& x) const { return p_ ? Vector(lp_.eq_matrix * x) : Vector(); }
  Vector et_mul(const Vector& y) const {
    return p_ ? Vector(lp_.eq_matrix.transpose() * y) : Vector(Vector::Zero(d_));
  }
  Vector g_mul(const Vector& x) const {
    Vector out(m());
    if (q_) out.head(q_) = lp_.ineq_matrix * x;
    for (Index t = 0; t < nb_; ++t) out[q_ + t] = bound_sign(t) * x[bound_var(t)];
    return out;
  }
  Vector gt_mul(const Vector& z) const {
    Vector out = q_ ? Vector(lp_.ineq_matrix.transpose() * z.head(q_)) : Vector(Vector::Zero(d_));
    for (Index t = 0; t < nb_; ++t) out[bound_var(t)] += bound_sign(t) * z[q_ + t];
    return out;
  }

 private:
  const LinearProgram& lp_;
  Index d_, p_, q_, nb_ = 0;
  std::vector<Index> bvar_;
  std::vector<double> bsign_;
  std::vector<double> bh_;
  Vector h_;
};

// Solves the regularized system
//   [ rho I   E^T     Gt^T  ] [dx]   [r1]
//   [ E      -delta I  0    ] [dy] = [r2]
//   [ Gt      0       -W    ] [dz]   [r3]
// for the current scaling W = diag(w).
class KktSolver {
 public:
  virtual ~KktSolver() = default;
  virtual bool factor(const Vector& w) = 0;
  virtual void solve(const Vector& r1, const Vector& r2, const Vector& r3, Vector& dx,
                     Vector& dy, Vector& dz) = 0;
};

// Normal equations with dense Cholesky factors; the equality block goes
// through a second (Schur complement) Cholesky.
class DenseKkt : public KktSolver {
 public:
  explicit DenseKkt(const Problem& pr) : pr_(pr) {
    g_ = Matrix(pr.G());
    e_ = Matrix(pr.E());
  }

  bool factor(const Vector& w) override {
    winv_ = w.cwiseInverse();
    const Index d = pr_.d();
    double rho = 1e-10;
    for (int attempt = 0; attempt < 6; ++attempt, rho *= 100.0) {
      h_.setZero(d, d);
      if (pr_.q()) {
        h_.noalias() = g_.transpose() * (winv_.head(pr_.q()).asDiagonal() * g_);
      }
      for (Index t = 0; t < pr_.nb(); ++t) h_(pr_.bound_var(t), pr_.bound_var(t)) += winv_[pr_.q() + t];
      h_.diagonal().array() += rho * (1.0 + h_.diagonal().array().abs());
      llt_.compute(h_);
      if (llt_.info() != Eigen::Success) continue;
      if (pr_.p()) {
        hinv_et_ = llt_.solve(e_.transpose());
        Matrix s = e_ * hinv_et_;
        s.diagonal().array() += 1e-10 * (1.0 + s.diagonal().array().abs());
        schur_.compute(s);
        if (schur_.info() != Eigen::Success) continue;
      }
      return h_.allFinite();
    }
    return false;
  }

  void solve(const Vector& r1, const Vector& r2, const Vector& r3, Vector& dx, Vector& dy,
             Vector& dz) override {
    const Vector r1p = r1 + pr_.gt_mul(winv_.cwiseProduct(r3));
    if (pr_.p()) {
      const Vector hr = llt_.solve(r1p);
      dy = schur_.solve(e_ * hr - r2);
      dx = hr - hinv_et_ * dy;
    } else {
      dy.resize(0);
      dx = llt_.solve(r1p);
    }
    dz = winv_.cwiseProduct(pr_.g_mul(dx) - r3);
  }

 private:
  const Problem& pr_;
  Matrix g_, e_, h_, hinv_et_;
  Vector winv_;
  Eigen::LLT<Matrix> llt_;
  Eigen::LLT<Matrix> schur_;
};

// Quasi-definite augmented system with the singleton bound rows folded into
// the (1,1) block, factored by a sparse LDL^T with AMD ordering.
class SparseKkt : public KktSolver {
 public:
  explicit SparseKkt(const Problem& pr) : pr_(pr) {
    const Index d = pr.d();
    const Index p = pr.p();
    const Index q = pr.q();
    const Index n = d + p + q;
    std::vector<Eigen::Triplet<double, int>> trips;
    trips.reserve(static_cast<std::size_t>(n + pr.E().nonZeros() + pr.G().nonZeros()));
    for (Index i = 0; i < n; ++i) trips.emplace_back(i, i, 1.0);
    for (Index j = 0; j < pr.E().outerSize(); ++j) {
      for (SparseMatrix::InnerIterator it(pr.E(), j); it; ++it) {
        trips.emplace_back(d + it.row(), j, it.value());
      }
    }
    for (Index j = 0; j < pr.G().outerSize(); ++j) {
      for (SparseMatrix::InnerIterator it(pr.G(), j); it; ++it) {
        trips.emplace_back(d + p + it.row(), j, it.value());
      }
    }
    k_.resize(n, n);
    k_.setFromTriplets(trips.begin(), trips.end());
    k_.makeCompressed();
    diag_pos_.resize(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) {
      // Lower storage with sorted rows: the diagonal leads each column.
      diag_pos_[static_cast<std::size_t>(j)] = k_.outerIndexPtr()[j];
    }
    ldlt_.analyzePattern(k_);
  }

  bool factor(const Vector& w) override {
    winv_ = w.cwiseInverse();
    const Index d = pr_.d();
    const Index p = pr_.p();
    const Index q = pr_.q();
    Vector d11 = Vector::Zero(d);
    for (Index t = 0; t < pr_.nb(); ++t) d11[pr_.bound_var(t)] += winv_[q + t];
    double reg = 1e-9;
    for (int attempt = 0; attempt < 5; ++attempt, reg *= 100.0) {
      double* values = k_.valuePtr();
      for (Index j = 0; j < d; ++j) values[diag_pos_[static_cast<std::size_t>(j)]] = d11[j] + reg;
      for (Index j = 0; j < p; ++j) values[diag_pos_[static_cast<std::size_t>(d + j)]] = -reg;
      for (Index j = 0; j < q; ++j) {
        values[diag_pos_[static_cast<std::size_t>(d + p + j)]] = -(w[j] + reg);
      }
      ldlt_.factorize(k_);
      if (ldlt_.info() == Eigen::Success && ldlt_.vectorD().allFinite()) return true;
    }
    return false;
  }

  void solve(const Vector& r1, const Vector& r2, const Vector& r3, Vector& dx, Vector& dy,
             Vector& dz) override {
    const Index d = pr_.d();
    const Index p = pr_.p();
    const Index q = pr_.q();
    Vector rhs(d + p + q);
    Vector r1p = r1;
    for (Index t = 0; t < pr_.nb(); ++t) {
      r1p[pr_.bound_var(t)] += pr_.bound_sign(t) * winv_[q + t] * r3[q + t];
    }
    rhs << r1p, r2, r3.head(q);
    const Vector sol = ldlt_.solve(rhs);
    dx = sol.head(d);
    dy = sol.segment(d, p);
    dz.resize(pr_.m());
    dz.head(q) = sol.tail(q);
    for (Index t = 0; t < pr_.nb(); ++t) {
      dz[q + t] = winv_[q + t] * (pr_.bound_sign(t) * dx[pr_.bound_var(t)] - r3[q + t]);
    }
  }

 private:
  const Problem& pr_;
  SparseMatrix k_;
  std::vector<Index> diag_pos_;
  Vector winv_;
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower> ldlt_;
};

// KKT solve against the unregularized system with iterative refinement.
// Returns false when the refined residual stays above 1e-9 relative.
bool solve_refined(KktSolver& kkt, const Problem& pr, const Vector& w, const Vector& r1,
                   const Vector& r2, const Vector& r3, Vector& dx, Vector& dy, Vector& dz) {
  kkt.solve(r1, r2, r3, dx, dy, dz);
  const double scale = 1.0 + std::max({inf_norm(r1), inf_norm(r2), inf_norm(r3)});
  Vector cx, cy, cz;
  double err = 0.0;
  for (int it = 0; it <= 6; ++it) {
    const Vector e1 = r1 - pr.et_mul(dy) - pr.gt_mul(dz);
    const Vector e2 = r2 - pr.e_mul(dx);
    const Vector e3 = r3 - pr.g_mul(dx) + w.cwiseProduct(dz);
    err = std::max({inf_norm(e1), inf_norm(e2), inf_norm(e3)});
    if (!(err > 1e-14 * scale) || it == 6) break;
    kkt.solve(e1, e2, e3, cx, cy, cz);
    dx += cx;
    dy += cy;
    dz += cz;
  }
  return err <= 1e-9 * scale;
}

double max_step(const Vector& v, const Vector& dv) {
  double step = kInf;
  for (Index i = 0; i < v.size(); ++i) {
    if (dv[i] < 0.0) step = std::min(step, -v[i] / dv[i]);
  }
  return step;
}

KktMethod pick_method(const Problem& pr, KktMethod requested) {
  if (requested != KktMethod::Auto) return requested;
  const double d = static_cast<double>(pr.d());
  const double p = static_cast<double>(pr.p());
  const double q = static_cast<double>(pr.q());
  const double dense_cost = (q + 1.0) * d * d + d * d * d / 3.0 + p * d * (d + p);
  return (dense_cost <= 4e7 || d + p + q <= 200) ? KktMethod::Dense : KktMethod::Sparse;
}

}  // namespace

void LinearProgram::validate() const {
  const Index d = objective.size();
  if (d < 1) throw ArgumentError("LP has no variables");
  if (lower.size() != d || upper.size() != d) throw ArgumentError("LP bound vectors have wrong length");
  if (eq_matrix.cols() != d && eq_matrix.rows() > 0) throw ArgumentError("LP equality block has wrong width");
  if (ineq_matrix.cols() != d && ineq_matrix.rows() > 0) {
    throw ArgumentError("LP inequality block has wrong width");
  }
  if (eq_rhs.size() != eq_matrix.rows()) throw ArgumentError("LP equality rhs has wrong length");
  if (ineq_rhs.size() != ineq_matrix.rows()) throw ArgumentError("LP inequality rhs has wrong length");
  if (!objective.allFinite() || !eq_rhs.allFinite() || !ineq_rhs.allFinite()) {
    throw ArgumentError("LP data must be finite");
  }
  for (Index j = 0; j < d; ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] == kInf || upper[j] == -kInf) {
      throw ArgumentError("LP bounds must be real or outward infinities");
    }
  }
  bool has_bound = false;
  for (Index j = 0; j < d && !has_bound; ++j) {
    has_bound = std::isfinite(lower[j]) || std::isfinite(upper[j]);
  }
  if (eq_matrix.rows() == 0 && ineq_matrix.rows() == 0 && !has_bound) {
    throw ArgumentError("LP has no constraints");
  }
}

Index LpBuilder::add_variables(Index count, double lower, double upper, double cost) {
  const Index first = num_vars();
  for (Index i = 0; i < count; ++i) {
    cost_.push_back(cost);
    lower_.push_back(lower);
    upper_.push_back(upper);
  }
  return first;
}

void LpBuilder::set_bounds(Index var, double lower, double upper) {
  lower_[static_cast<std::size_t>(var)] = lower;
  upper_[static_cast<std::size_t>(var)] = upper;
}

void LpBuilder::add_le(const Terms& terms, double rhs) {
  for (const auto& [var, coef] : terms) {
    if (coef != 0.0) le_.emplace_back(static_cast<int>(le_rows_), static_cast<int>(var), coef);
  }
  le_rhs_.push_back(rhs);
  ++le_rows_;
}

void LpBuilder::add_eq(const Terms& terms, double rhs) {
  for (const auto& [var, coef] : terms) {
    if (coef != 0.0) eq_.emplace_back(static_cast<int>(eq_rows_), static_cast<int>(var), coef);
  }
  eq_rhs_.push_back(rhs);
  ++eq_rows_;
}

LinearProgram LpBuilder::build() const {
  LinearProgram lp;
  const Index d = num_vars();
  lp.objective = Eigen::Map<const Vector>(cost_.data(), d);
  lp.lower = Eigen::Map<const Vector>(lower_.data(), d);
  lp.upper = Eigen::Map<const Vector>(upper_.data(), d);
  lp.eq_matrix.resize(eq_rows_, d);
  lp.eq_matrix.setFromTriplets(eq_.begin(), eq_.end());
  lp.eq_matrix.makeCompressed();
  lp.eq_rhs = Eigen::Map<const Vector>(eq_rhs_.data(), eq_rows_);
  lp.ineq_matrix.resize(le_rows_, d);
  lp.ineq_matrix.setFromTriplets(le_.begin(), le_.end());
  lp.ineq_matrix.makeCompressed();
  lp.ineq_rhs = Eigen::Map<const Vector>(le_rhs_.data(), le_rows_);
  return lp;
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal:
      return "optimal";
    case LpStatus::Infeasible:
      return "infeasible";
    case LpStatus::Unbounded:
      return "unbounded";
    case LpStatus::IterationLimit:
      return "iteration_limit";
  }
  return "?";
}

double primal_infeasibility(const LinearProgram& lp, const Vector& z) {
  double worst = 0.0;
  if (lp.eq_matrix.rows()) worst = std::max(worst, inf_norm(lp.eq_matrix * z - lp.eq_rhs));
  if (lp.ineq_matrix.rows()) {
    worst = std::max(worst, (lp.ineq_matrix * z - lp.ineq_rhs).cwiseMax(0.0).maxCoeff());
  }
  for (Index j = 0; j < z.size(); ++j) {
    worst = std::max({worst, lp.lower[j] - z[j], z[j] - lp.upper[j]});
  }
  return worst;
}

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options) {
  lp.validate();
  if (!(options.feas_tol > 0.0) || !(options.gap_tol > 0.0) || options.iter_limit < 1) {
    throw ArgumentError("LP tolerances must be positive and iter_limit >= 1");
  }
  const Problem pr(lp);
  const Index d = pr.d();
  const Index p = pr.p();
  const Index m = pr.m();
  const Vector& c = pr.c();
  const Vector& b = pr.b();
  const Vector& h = pr.h();

  std::unique_ptr<KktSolver> kkt;
  bool dense = pick_method(pr, options.kkt) == KktMethod::Dense;
  if (dense) {
    kkt = std::make_unique<DenseKkt>(pr);
  } else {
    kkt = std::make_unique<SparseKkt>(pr);
  }

  LpSolution out;
  out.primal = Vector::Zero(d);
  out.dual_eq = Vector::Zero(p);
  out.dual_ineq = Vector::Zero(pr.q());
  out.dual_lower = Vector::Zero(d);
  out.dual_upper = Vector::Zero(d);

  // Starting point: least-squares primal and dual estimates, shifted inside.
  Vector x, y, z, s;
  {
    const Vector ones = Vector::Ones(m);
    if (!kkt->factor(ones)) return out;
    Vector zx, zy, zz;
    solve_refined(*kkt, pr, ones, Vector::Zero(d), b, h, x, zy, zz);
    s = -zz;
    if (m && s.minCoeff() <= 0.0) s.array() += 1.0 - s.minCoeff();
    solve_refined(*kkt, pr, ones, -c, Vector::Zero(p), Vector::Zero(m), zx, y, z);
    if (m && z.minCoeff() <= 0.0) z.array() += 1.0 - z.minCoeff();
  }
  double tau = 1.0;
  double kappa = 1.0;

  const double bnorm = 1.0 + std::max(inf_norm(b), inf_norm(h));
  const double cnorm = 1.0 + inf_norm(c);
  const double dm = static_cast<double>(m + 1);

  Vector x1, y1, z1, x2, y2, z2;
  int stalls = 0;
  int inaccurate_steps = 0;
  bool stalled = false;
  double prev_mu = kInf;
  for (int iter = 0; iter <= options.iter_limit; ++iter) {
    out.iterations = iter;
    const Vector ey = pr.et_mul(y);
    const Vector gz = pr.gt_mul(z);
    const Vector ex = pr.e_mul(x);
    const Vector gx = pr.g_mul(x);
    const Vector res_x = ey + gz + c * tau;
    const Vector res_y = ex - b * tau;
    const Vector res_z = gx + s - h * tau;
    const double ctx = c.dot(x);
    const double bty_hz = b.dot(y) + h.dot(z);
    const double res_tau = kappa + ctx + bty_hz;

    const double pres = std::max(inf_norm(res_y), inf_norm(res_z)) / tau / bnorm;
    const double dres = inf_norm(res_x) / tau / cnorm;
    const double pcost = ctx / tau;
    const double dcost = -bty_hz / tau;
    const double gap = std::abs(pcost - dcost);
    const double gap_scale = std::max(1.0, std::min(std::abs(pcost), std::abs(dcost)));

    if (!std::isfinite(pcost) || !std::isfinite(dcost) || !x.allFinite() || !z.allFinite()) break;

    const double relax = stalled ? 100.0 : 1.0;
    if (pres <= relax * options.feas_tol && dres <= relax * options.feas_tol &&
        gap <= relax * options.gap_tol * gap_scale) {
      out.status = LpStatus::Optimal;
      out.primal = x / tau;
      out.objective_value = pcost;
      out.dual_objective = dcost;
      out.duality_gap = gap;
      out.dual_eq = -y / tau;
      out.dual_ineq = -z.head(pr.q()) / tau;
      for (Index t = 0; t < pr.nb(); ++t) {
        const Index j = pr.bound_var(t);
        if (pr.bound_sign(t) < 0) {
          out.dual_lower[j] = z[pr.q() + t] / tau;
        } else {
          out.dual_upper[j] = -z[pr.q() + t] / tau;
        }
      }
      out.primal_residual = primal_infeasibility(lp, out.primal);
      out.dual_residual = inf_norm(res_x) / tau;
      return out;
    }
    if (kappa > tau) {
      if (bty_hz < 0.0 && inf_norm(ey + gz) / -bty_hz <= options.feas_tol) {
        out.status = LpStatus::Infeasible;
        const double scale = -bty_hz;
        out.dual_eq = -y / scale;
        out.dual_ineq = -z.head(pr.q()) / scale;
        for (Index t = 0; t < pr.nb(); ++t) {
          const Index j = pr.bound_var(t);
          if (pr.bound_sign(t) < 0) {
            out.dual_lower[j] = z[pr.q() + t] / scale;
          } else {
            out.dual_upper[j] = -z[pr.q() + t] / scale;
          }
        }
        out.dual_objective = 1.0;
        return out;
      }
      if (ctx < 0.0 && std::max(inf_norm(ex), inf_norm(gx + s)) / -ctx <= options.feas_tol) {
        out.status = LpStatus::Unbounded;
        out.primal = x / -ctx;
        out.objective_value = -kInf;
        return out;
      }
    }
    if (iter == options.iter_limit || stalled) break;

    const Vector w = s.cwiseQuotient(z);
    if (!kkt->factor(w)) break;
    bool accurate = solve_refined(*kkt, pr, w, -c, b, h, x1, y1, z1);
    const double denom_base = c.dot(x1) + b.dot(y1) + h.dot(z1) - kappa / tau;

    const double mu = (s.dot(z) + tau * kappa) / dm;

    // Solves for the search direction given the complementarity targets.
    auto direction = [&](double eta, const Vector& ds_target, double dk_target, Vector& dx,
                         Vector& dy, Vector& dz, Vector& ds, double& dtau, double& dkappa) {
      const Vector rx = -eta * res_x;
      const Vector ry = -eta * res_y;
      const Vector rz = -eta * res_z;
      const double rt = -eta * res_tau;
      accurate = solve_refined(*kkt, pr, w, rx, ry, rz - ds_target.cwiseQuotient(z), x2, y2, z2) && accurate;
      dtau = (rt - dk_target / tau - c.dot(x2) - b.dot(y2) - h.dot(z2)) / denom_base;
      dx = x2 + dtau * x1;
      dy = y2 + dtau * y1;
      dz = z2 + dtau * z1;
      ds = (ds_target - s.cwiseProduct(dz)).cwiseQuotient(z);
      dkappa = (dk_target - kappa * dtau) / tau;
    };
    auto step_to_boundary = [&](const Vector& ds, const Vector& dz, double dtau, double dkappa) {
      double step = std::min(max_step(s, ds), max_step(z, dz));
      if (dtau < 0.0) step = std::min(step, -tau / dtau);
      if (dkappa < 0.0) step = std::min(step, -kappa / dkappa);
      return step;
    };

    Vector dxa, dya, dza, dsa;
    double dta = 0.0;
    double dka = 0.0;
    direction(1.0, -s.cwiseProduct(z), -kappa * tau, dxa, dya, dza, dsa, dta, dka);
    const double alpha_aff = std::min(1.0, step_to_boundary(dsa, dza, dta, dka));
    const double sigma = std::clamp(std::pow(1.0 - alpha_aff, 3), 0.0, 1.0);

    Vector dx, dy, dz, ds;
    double dt = 0.0;
    double dk = 0.0;
    const Vector ds_target =
        (-s.cwiseProduct(z) - dsa.cwiseProduct(dza)).array() + sigma * mu;
    const double dk_target = -kappa * tau - dka * dta + sigma * mu;
    direction(1.0 - sigma, ds_target, dk_target, dx, dy, dz, ds, dt, dk);
    // Normal equations lose accuracy on badly scaled iterates; redo the step
    // with the augmented system.
    if (!accurate && dense && options.kkt == KktMethod::Auto) {
      dense = false;
      kkt = std::make_unique<SparseKkt>(pr);
      continue;
    }
    // Inaccurate directions that no longer reduce mu: settle for the current
    // iterate at a relaxed tolerance.
    if (!accurate && mu > 0.5 * prev_mu) {
      if (++inaccurate_steps >= 3) {
        stalled = true;
        continue;
      }
    } else {
      inaccurate_steps = 0;
    }
    prev_mu = mu;
    const double alpha = std::min(1.0, 0.99 * step_to_boundary(ds, dz, dt, dk));
    if (!std::isfinite(alpha) || !dx.allFinite()) break;
    if (alpha < 1e-10) {
      if (++stalls >= 5) {
        stalled = true;
        continue;
      }
    } else {
      stalls = 0;
    }

    x += alpha * dx;
    y += alpha * dy;
    z += alpha * dz;
    s += alpha * ds;
    tau += alpha * dt;
    kappa += alpha * dk;

    // The embedding is homogeneous; keep the iterate at unit scale.
    const double scale = std::max(tau, kappa);
    if (scale > 1e6 || scale < 1e-6) {
      x /= scale;
      y /= scale;
      z /= scale;
      s /= scale;
      tau /= scale;
      kappa /= scale;
    }
  }
  out.status = LpStatus::IterationLimit;
  if (tau > 0.0) {
    out.primal = x / tau;
    out.objective_value = c.dot(x) / tau;
    out.dual_objective = -(b.dot(y) + h.dot(z)) / tau;
    out.duality_gap = std::abs(out.objective_value - out.dual_objective);
  }
  return out;
}

}  // namespace l1cert
