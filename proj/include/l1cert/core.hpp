#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace l1cert {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Dense k x n sensing matrix. Entries are stored column-major (Eigen
/// default); the text format is row-major.
class SensingMatrix {
 public:
  SensingMatrix() = default;
  explicit SensingMatrix(Matrix entries, std::optional<std::uint64_t> seed = std::nullopt);

  Index rows() const { return entries_.rows(); }
  Index cols() const { return entries_.cols(); }
  const Matrix& entries() const { return entries_; }
  auto column(Index j) const { return entries_.col(j); }

  bool column_normalized() const { return column_normalized_; }
  const std::optional<std::uint64_t>& seed() const { return seed_; }

  // Divides every column by its l2 norm. Throws ArgumentError on a zero column.
  SensingMatrix normalized() const;

  // Right-multiplies by diag(scale); drops the normalized flag unless all scales are 1.
  SensingMatrix scaled_columns(const Vector& scale) const;

 private:
  Matrix entries_;
  bool column_normalized_ = false;
  std::optional<std::uint64_t> seed_;
};

enum class ObservationNorm { L1, L2, Linf };

ObservationNorm dual_norm(ObservationNorm norm);
double norm_value(ObservationNorm norm, const Vector& v);
std::string to_string(ObservationNorm norm);
ObservationNorm parse_norm(const std::string& name);

/// Nonnegative scalar or +infinity.
class Beta {
 public:
  Beta() = default;  // +infinity
  explicit Beta(double value);

  static Beta infinity() { return Beta(); }

  bool is_infinite() const { return value_ == std::numeric_limits<double>::infinity(); }
  double value() const { return value_; }

  friend bool operator==(const Beta&, const Beta&) = default;

 private:
  double value_ = std::numeric_limits<double>::infinity();
};

std::string to_string(const Beta& beta);

/// Vertex of P_s = {u : ||u||_1 <= s, ||u||_inf <= 1}: an s-sparse sign vector.
struct PsVertex {
  Index n = 0;
  Index s = 0;
  std::vector<Index> support;  // ascending
  std::vector<int> signs;      // +1 / -1, aligned with support

  Vector dense() const;
};

struct SparseSignal {
  Vector values;
  Index nominal_sparsity = 0;
};

// Sum of the s largest magnitudes of x.
double norm_s1(const Vector& x, Index s);

// Maximizer of c^T u over P_s. Ties go to the lowest index, zero entries get +1.
PsVertex argmax_over_ps(const Vector& c, Index s);

// Keeps the s largest-magnitude entries (lowest index wins ties).
Vector hard_threshold(const Vector& w, Index s);

// max_{i != j} |A_i^T A_j| / A_i^T A_i.
double mutual_incoherence(const SensingMatrix& a);

// Matrix text format: "k n" then k rows of n floats.
SensingMatrix read_matrix(std::istream& in);
SensingMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const Matrix& m);
void write_matrix_file(const std::string& path, const Matrix& m);

// Plain vector files: "k" then k floats (a 1 x k or k x 1 matrix file is also accepted).
Vector read_vector_file(const std::string& path);
void write_vector_file(const std::string& path, const Vector& v);

}  // namespace l1cert
