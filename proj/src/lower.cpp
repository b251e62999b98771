#include "l1cert/lower.hpp"

#include "l1cert/errors.hpp"
#include "l1cert/parallel.hpp"
#include "l1cert/rng.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <limits>
#include <optional>

namespace l1cert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PsVertex random_vertex(Rng& rng, Index n, Index s) {
  PsVertex u;
  u.n = n;
  u.s = s;
  for (const long i : rng.subset(n, s)) {
    u.support.push_back(i);
    u.signs.push_back(rng.sign());
  }
  return u;
}

bool same_vertex(const PsVertex& a, const PsVertex& b) {
  return a.support == b.support && a.signs == b.signs;
}

KernelWitness make_witness(const SensingMatrix& a, const PsVertex& u, Vector x) {
  KernelWitness w;
  w.u = u;
  w.value = u.dense().dot(x);
  w.residual = (a.entries() * x).norm();
  w.x = std::move(x);
  return w;
}

}  // namespace

int effective_restarts(const SCAConfig& cfg, Index n) {
  if (cfg.restarts > 0) return cfg.restarts;
  return n <= 64 ? 20 : 10;
}

KernelBasis::KernelBasis(const SensingMatrix& a) {
  const Eigen::ColPivHouseholderQR<Matrix> qr(a.entries().transpose());
  const Matrix q = qr.householderQ();
  basis_ = q.rightCols(a.cols() - qr.rank());
}

Vector KernelBasis::clean(const Vector& x) const {
  if (basis_.cols() == 0) return Vector::Zero(x.size());
  Vector p = basis_ * (basis_.transpose() * x);
  const double l1 = p.lpNorm<1>();
  if (l1 > 0.0) p /= l1;
  return p;
}

KernelWitness kernel_value(const SensingMatrix& a, const KernelBasis& kernel, const PsVertex& u,
                           const LpOptions& options) {
  const Index n = a.cols();
  const Index k = a.rows();
  if (u.n != n) throw ArgumentError("vertex dimension does not match the matrix");
  if (kernel.dimension() == 0) return make_witness(a, u, Vector::Zero(n));
  const Vector ud = u.dense();
  LpBuilder b;
  const Index p0 = b.add_variables(n, 0.0, kInf);
  const Index q0 = b.add_variables(n, 0.0, kInf);
  LpBuilder::Terms sum;
  for (Index j = 0; j < n; ++j) {
    b.set_cost(p0 + j, -ud[j]);
    b.set_cost(q0 + j, ud[j]);
    sum.emplace_back(p0 + j, 1.0);
    sum.emplace_back(q0 + j, 1.0);
  }
  b.add_le(sum, 1.0);
  for (Index l = 0; l < k; ++l) {
    LpBuilder::Terms row;
    for (Index j = 0; j < n; ++j) {
      if (a.entries()(l, j) == 0.0) continue;
      row.emplace_back(p0 + j, a.entries()(l, j));
      row.emplace_back(q0 + j, -a.entries()(l, j));
    }
    b.add_eq(row, 0.0);
  }
  const LpSolution sol = solve_lp(b.build(), options);
  if (sol.status != LpStatus::Optimal) {
    throw SolverError("kernel LP returned " + to_string(sol.status));
  }
  Vector x = kernel.clean(sol.primal.segment(p0, n) - sol.primal.segment(q0, n));
  if (ud.dot(x) < 0.0) x = -x;
  return make_witness(a, u, std::move(x));
}

ScaResult sca_lower_bound(const SensingMatrix& a, Index s, const SCAConfig& cfg, const PsVertex* warm) {
  const Index n = a.cols();
  if (s < 1 || s > n) throw ArgumentError("s must lie in [1, n]");
  if (cfg.improvement_tol <= 0.0 || cfg.max_iters < 1) throw ArgumentError("invalid SCA configuration");
  const KernelBasis kernel(a);
  const int restarts = effective_restarts(cfg, n);
  ScaResult out;
  out.seed = cfg.seed;
  out.restarts = restarts;
  out.traces.resize(static_cast<std::size_t>(restarts));
  std::vector<KernelWitness> best(static_cast<std::size_t>(restarts));

  parallel_for(restarts, [&](long run) {
    PsVertex u;
    if (run == 0 && warm) {
      u = *warm;
    } else {
      Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(run));
      u = random_vertex(rng, n, s);
    }
    auto& trace = out.traces[static_cast<std::size_t>(run)];
    KernelWitness current;
    for (int t = 0; t < cfg.max_iters; ++t) {
      KernelWitness w = kernel_value(a, kernel, u, cfg.lp);
      // The previous maximizer is also feasible at u; keep whichever is better.
      if (t > 0) {
        KernelWitness carried = make_witness(a, u, current.x);
        if (carried.value > w.value) w = std::move(carried);
      }
      trace.push_back(w.value);
      const bool stalled = t > 0 && w.value - current.value <= cfg.improvement_tol;
      current = std::move(w);
      if (stalled) break;
      const PsVertex next = argmax_over_ps(current.x, s);
      if (same_vertex(next, u)) break;
      u = next;
    }
    best[static_cast<std::size_t>(run)] = std::move(current);
  });

  std::size_t pick = 0;
  for (std::size_t r = 1; r < best.size(); ++r) {
    if (best[r].value > best[pick].value) pick = r;
  }
  out.witness = std::move(best[pick]);
  out.value = out.witness.value;
  return out;
}

UpperBoundResult s_upper_bound(const SensingMatrix& a, const SCAConfig& cfg, Index s_start) {
  if (s_start < 1) throw ArgumentError("s_start must be at least 1");
  const Index cap = std::min(a.rows(), a.cols());
  UpperBoundResult out;
  out.s_bar = cap;
  std::optional<PsVertex> warm;
  for (Index s = s_start; s <= cap; ++s) {
    out.runs.push_back(sca_lower_bound(a, s, cfg, warm ? &*warm : nullptr));
    const ScaResult& r = out.runs.back();
    if (r.value >= kDisproofLevel) {
      out.s_bar = s - 1;
      out.disproved = true;
      return out;
    }
    if (s + 1 <= a.cols()) warm = argmax_over_ps(r.witness.x, s + 1);
  }
  return out;
}

GoodnessCertificate sca_certificate(const UpperBoundResult& result, const SCAConfig& cfg) {
  GoodnessCertificate cert;
  cert.kind = BoundKind::SCA;
  cert.s_certified = result.s_bar;
  cert.tolerances = cfg.lp;
  if (!result.runs.empty()) {
    cert.bound_value = result.runs.back().value;
    cert.kernel = result.runs.back().witness;
  }
  return cert;
}

}  // namespace l1cert
