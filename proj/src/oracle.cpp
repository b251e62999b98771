#include "l1cert/oracle.hpp"

#include "l1cert/errors.hpp"
#include "l1cert/lower.hpp"
#include "l1cert/parallel.hpp"
#include "l1cert/recovery.hpp"
#include "l1cert/rng.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace l1cert {

namespace {

// C(n, r), saturating at `cap + 1`.
std::size_t binomial(Index n, Index r, std::size_t cap) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  long double c = 1.0L;
  for (Index i = 1; i <= r; ++i) {
    c = c * static_cast<long double>(n - r + i) / static_cast<long double>(i);
    if (c > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(std::llround(c));
}

std::vector<std::vector<Index>> all_subsets(Index n, Index r) {
  std::vector<std::vector<Index>> out;
  std::vector<Index> c(static_cast<std::size_t>(r));
  for (Index i = 0; i < r; ++i) c[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(c);
    Index i = r - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < r; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

void check_s(const SensingMatrix& a, Index s) {
  if (s < 1 || s > a.cols()) throw ArgumentError("s must lie in [1, n]");
}

}  // namespace

double gammahat_exact(const SensingMatrix& a, Index s, const OracleOptions& options) {
  check_s(a, s);
  const Index n = a.cols();
  const KernelBasis kernel(a);
  if (kernel.dimension() == 0) return 0.0;
  const std::size_t supports = binomial(n, s, options.size_guard);
  const double count = static_cast<double>(supports) * std::ldexp(1.0, static_cast<int>(std::min<Index>(s, 60)));
  if (supports > options.size_guard || count > static_cast<double>(options.size_guard)) {
    throw ResourceError("exact oracle needs C(" + std::to_string(n) + ", " + std::to_string(s) +
                        ") 2^s vertices, above the guard " + std::to_string(options.size_guard));
  }
  const auto subsets = all_subsets(n, s);
  // u and -u give the same value, so the first sign is fixed to +1.
  const long patterns = 1L << (s - 1);
  const long total = static_cast<long>(subsets.size()) * patterns;
  std::vector<double> values(static_cast<std::size_t>(total), 0.0);
  parallel_for(total, [&](long v) {
    PsVertex u;
    u.n = n;
    u.s = s;
    u.support = subsets[static_cast<std::size_t>(v / patterns)];
    const long bits = v % patterns;
    u.signs.push_back(1);
    for (Index i = 1; i < s; ++i) u.signs.push_back((bits >> (i - 1)) & 1 ? -1 : 1);
    values[static_cast<std::size_t>(v)] = kernel_value(a, kernel, u, options.lp).value;
  });
  return *std::max_element(values.begin(), values.end());
}

double gammahat_by_supports(const SensingMatrix& a, Index s, const OracleOptions& options) {
  check_s(a, s);
  const Index n = a.cols();
  const KernelBasis kernel(a);
  const Index r = kernel.dimension();
  if (r == 0) return 0.0;
  const Matrix& basis = kernel.basis();
  if (r == 1) {
    const Vector d = basis.col(0);
    return norm_s1(d / d.lpNorm<1>(), s);
  }
  if (binomial(n, r - 1, options.size_guard) > options.size_guard) {
    throw ResourceError("support enumeration needs C(" + std::to_string(n) + ", " + std::to_string(r - 1) +
                        ") systems, above the guard " + std::to_string(options.size_guard));
  }
  const auto zero_sets = all_subsets(n, r - 1);
  std::vector<double> values(zero_sets.size(), 0.0);
  parallel_for(static_cast<long>(zero_sets.size()), [&](long z) {
    const auto& zs = zero_sets[static_cast<std::size_t>(z)];
    Matrix m(r - 1, r);
    for (Index i = 0; i < r - 1; ++i) m.row(i) = basis.row(zs[static_cast<std::size_t>(i)]);
    Eigen::FullPivLU<Matrix> lu(m);
    lu.setThreshold(1e-9);
    if (lu.dimensionOfKernel() != 1) return;
    const Vector d = basis * lu.kernel().col(0);
    const double l1 = d.lpNorm<1>();
    if (l1 <= 0.0) return;
    values[static_cast<std::size_t>(z)] = norm_s1(d / l1, s);
  });
  return *std::max_element(values.begin(), values.end());
}

Index s_star_exact(const SensingMatrix& a, const OracleOptions& options) {
  const Index n = a.cols();
  if (KernelBasis(a).dimension() == 0) return n;
  for (Index s = 1; s <= n; ++s) {
    if (gammahat_exact(a, s, options) >= 0.5 - options.lp.gap_tol) return s - 1;
  }
  return n;
}

EmpiricalResult empirical_goodness(const SensingMatrix& a, Index s, Index trials, std::uint64_t seed,
                                   const LpOptions& options) {
  const Index n = a.cols();
  if (trials < 1) throw ArgumentError("trials must be positive");
  if (s < 0 || s > n) throw ArgumentError("s must lie in [0, n]");
  EmpiricalResult out;
  if (s == 0) {
    out.successes = trials;
    return out;
  }
  std::vector<double> errors(static_cast<std::size_t>(trials));
  std::vector<Vector> signals(static_cast<std::size_t>(trials));
  parallel_for(trials, [&](long t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
    Vector w = Vector::Zero(n);
    for (const long i : rng.subset(n, s)) w[i] = rng.normal();
    const Vector y = a.entries() * w;
    const RecoveryResult r = l1_recover(a, y, 0.0, ObservationNorm::L2, options);
    errors[static_cast<std::size_t>(t)] =
        r.feasible ? (r.x - w).lpNorm<Eigen::Infinity>() : std::numeric_limits<double>::infinity();
    signals[static_cast<std::size_t>(t)] = std::move(w);
  });
  for (Index t = 0; t < trials; ++t) {
    const double e = errors[static_cast<std::size_t>(t)];
    out.worst_error = std::max(out.worst_error, e);
    if (e <= 1e-6) {
      ++out.successes;
    } else {
      ++out.failures;
      if (!out.counterexample) out.counterexample = signals[static_cast<std::size_t>(t)];
    }
  }
  return out;
}

bool submatrix_kernel_check(const SensingMatrix& a, Index s, Index samples, std::uint64_t seed) {
  const Index n = a.cols();
  if (s < 0 || s > std::min(a.rows(), n)) throw ArgumentError("s must lie in [0, min(k, n)]");
  if (samples < 1) throw ArgumentError("samples must be positive");
  if (s == 0) return true;
  std::vector<std::vector<Index>> subsets;
  if (binomial(n, s, static_cast<std::size_t>(samples)) <= static_cast<std::size_t>(samples)) {
    subsets = all_subsets(n, s);
  } else {
    Rng rng(seed);
    for (Index t = 0; t < samples; ++t) {
      const auto pick = rng.subset(n, s);
      subsets.emplace_back(pick.begin(), pick.end());
    }
  }
  std::vector<char> ok(subsets.size(), 1);
  parallel_for(static_cast<long>(subsets.size()), [&](long i) {
    const auto& cols = subsets[static_cast<std::size_t>(i)];
    Matrix sub(a.rows(), s);
    for (Index c = 0; c < s; ++c) sub.col(c) = a.column(cols[static_cast<std::size_t>(c)]);
    const Eigen::JacobiSVD<Matrix> svd(sub);
    ok[static_cast<std::size_t>(i)] = svd.singularValues()(s - 1) > 1e-8;
  });
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

}  // namespace l1cert
