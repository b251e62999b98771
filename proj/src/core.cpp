#include "l1cert/core.hpp"

#include "l1cert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace l1cert {

namespace {

// Indices of the s largest |x_i|, ascending index order; ties by lowest index.
std::vector<Index> top_magnitudes(const Vector& x, Index s) {
  std::vector<Index> order(static_cast<std::size_t>(x.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return std::abs(x[a]) > std::abs(x[b]);
  });
  order.resize(static_cast<std::size_t>(s));
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace

SensingMatrix::SensingMatrix(Matrix entries, std::optional<std::uint64_t> seed)
    : entries_(std::move(entries)), seed_(seed) {
  if (entries_.rows() < 1 || entries_.cols() < 1) {
    throw ArgumentError("sensing matrix must have k >= 1 and n >= 1");
  }
  if (!entries_.allFinite()) {
    throw ArgumentError("sensing matrix has non-finite entries");
  }
  column_normalized_ = true;
  for (Index j = 0; j < entries_.cols(); ++j) {
    if (std::abs(entries_.col(j).norm() - 1.0) > 1e-12) {
      column_normalized_ = false;
      break;
    }
  }
}

SensingMatrix SensingMatrix::normalized() const {
  Matrix m = entries_;
  for (Index j = 0; j < m.cols(); ++j) {
    const double nrm = m.col(j).norm();
    if (nrm == 0.0) {
      throw ArgumentError("column " + std::to_string(j) + " is zero");
    }
    m.col(j) /= nrm;
  }
  return SensingMatrix(std::move(m), seed_);
}

SensingMatrix SensingMatrix::scaled_columns(const Vector& scale) const {
  if (scale.size() != cols()) {
    throw ArgumentError("column scale has wrong length");
  }
  return SensingMatrix(entries_ * scale.asDiagonal(), seed_);
}

ObservationNorm dual_norm(ObservationNorm norm) {
  switch (norm) {
    case ObservationNorm::L1:
      return ObservationNorm::Linf;
    case ObservationNorm::Linf:
      return ObservationNorm::L1;
    case ObservationNorm::L2:
      return ObservationNorm::L2;
  }
  return norm;
}

double norm_value(ObservationNorm norm, const Vector& v) {
  switch (norm) {
    case ObservationNorm::L1:
      return v.lpNorm<1>();
    case ObservationNorm::L2:
      return v.norm();
    case ObservationNorm::Linf:
      return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
  }
  return 0.0;
}

std::string to_string(ObservationNorm norm) {
  switch (norm) {
    case ObservationNorm::L1:
      return "l1";
    case ObservationNorm::L2:
      return "l2";
    case ObservationNorm::Linf:
      return "linf";
  }
  return "?";
}

ObservationNorm parse_norm(const std::string& name) {
  if (name == "l1" || name == "L1") return ObservationNorm::L1;
  if (name == "l2" || name == "L2") return ObservationNorm::L2;
  if (name == "linf" || name == "Linf" || name == "inf") return ObservationNorm::Linf;
  throw ArgumentError("unknown norm '" + name + "' (expected l1, l2 or linf)");
}

Beta::Beta(double value) : value_(value) {
  if (!(value >= 0.0)) {
    throw ArgumentError("beta must be nonnegative");
  }
}

std::string to_string(const Beta& beta) {
  if (beta.is_infinite()) return "inf";
  std::ostringstream os;
  os << std::setprecision(17) << beta.value();
  return os.str();
}

Vector PsVertex::dense() const {
  Vector u = Vector::Zero(n);
  for (std::size_t t = 0; t < support.size(); ++t) {
    u[support[t]] = signs[t];
  }
  return u;
}

double norm_s1(const Vector& x, Index s) {
  if (s < 1 || s > x.size()) {
    throw ArgumentError("norm_s1: need 1 <= s <= dim(x), got s=" + std::to_string(s) +
                        " dim=" + std::to_string(x.size()));
  }
  std::vector<double> mags(static_cast<std::size_t>(x.size()));
  for (Index i = 0; i < x.size(); ++i) mags[static_cast<std::size_t>(i)] = std::abs(x[i]);
  std::nth_element(mags.begin(), mags.begin() + (s - 1), mags.end(), std::greater<>());
  // Summing the selected block in sorted order keeps the result independent of
  // nth_element's internal arrangement.
  std::sort(mags.begin(), mags.begin() + s, std::greater<>());
  double total = 0.0;
  for (Index i = 0; i < s; ++i) total += mags[static_cast<std::size_t>(i)];
  return total;
}

PsVertex argmax_over_ps(const Vector& c, Index s) {
  if (s < 1 || s > c.size()) {
    throw ArgumentError("argmax_over_ps: need 1 <= s <= dim(c)");
  }
  PsVertex v;
  v.n = c.size();
  v.s = s;
  v.support = top_magnitudes(c, s);
  v.signs.reserve(v.support.size());
  for (Index i : v.support) v.signs.push_back(c[i] < 0.0 ? -1 : 1);
  return v;
}

Vector hard_threshold(const Vector& w, Index s) {
  if (s < 0 || s > w.size()) {
    throw ArgumentError("hard_threshold: need 0 <= s <= dim(w)");
  }
  Vector out = Vector::Zero(w.size());
  for (Index i : top_magnitudes(w, s)) out[i] = w[i];
  return out;
}

double mutual_incoherence(const SensingMatrix& a) {
  const Matrix& m = a.entries();
  const Vector sq = m.colwise().squaredNorm().transpose();
  for (Index j = 0; j < m.cols(); ++j) {
    if (sq[j] == 0.0) {
      throw ArgumentError("mutual_incoherence: column " + std::to_string(j) + " is zero");
    }
  }
  const Matrix gram = m.transpose() * m;
  double mu = 0.0;
  for (Index i = 0; i < m.cols(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (i != j) mu = std::max(mu, std::abs(gram(i, j)) / sq[i]);
    }
  }
  return mu;
}

SensingMatrix read_matrix(std::istream& in) {
  long long k = 0;
  long long n = 0;
  if (!(in >> k >> n) || k < 1 || n < 1) {
    throw ArgumentError("matrix file: expected header 'k n' with positive integers");
  }
  Matrix m(k, n);
  for (long long i = 0; i < k; ++i) {
    for (long long j = 0; j < n; ++j) {
      if (!(in >> m(i, j))) {
        throw ArgumentError("matrix file: expected " + std::to_string(k * n) +
                            " entries, stream ended early at row " + std::to_string(i));
      }
    }
  }
  std::string extra;
  if (in >> extra) {
    throw ArgumentError("matrix file: trailing data after " + std::to_string(k * n) + " entries");
  }
  return SensingMatrix(std::move(m));
}

SensingMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open matrix file '" + path + "'");
  in.imbue(std::locale::classic());
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out.imbue(std::locale::classic());
  out << m.rows() << ' ' << m.cols() << '\n' << std::setprecision(17);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m(i, j);
    }
    out << '\n';
  }
}

void write_matrix_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write '" + path + "'");
  write_matrix(out, m);
}

Vector read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open vector file '" + path + "'");
  in.imbue(std::locale::classic());
  std::vector<double> tokens;
  double v = 0.0;
  while (in >> v) tokens.push_back(v);
  if (!in.eof()) throw ArgumentError("vector file '" + path + "': non-numeric token");
  if (tokens.size() >= 2) {
    const double r = tokens[0];
    const double c = tokens[1];
    if (r >= 1 && c >= 1 && r == std::floor(r) && c == std::floor(c) &&
        (r == 1 || c == 1) && r * c == static_cast<double>(tokens.size() - 2)) {
      tokens.erase(tokens.begin(), tokens.begin() + 2);
    }
  }
  return Eigen::Map<Vector>(tokens.data(), static_cast<Index>(tokens.size()));
}

void write_vector_file(const std::string& path, const Vector& v) {
  write_matrix_file(path, v.transpose());
}

}  // namespace l1cert
