#pragma once

#include "l1cert/core.hpp"

#include <Eigen/SparseCore>

#include <string>
#include <utility>
#include <vector>

namespace l1cert {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

/// minimize c^T z  subject to  E z = f,  G z <= h,  lower <= z <= upper.
/// Bounds may be +-infinity.
struct LinearProgram {
  Vector objective;
  SparseMatrix eq_matrix;
  Vector eq_rhs;
  SparseMatrix ineq_matrix;
  Vector ineq_rhs;
  Vector lower;
  Vector upper;

  Index num_vars() const { return objective.size(); }
  // Throws ArgumentError on inconsistent dimensions or non-finite data.
  void validate() const;
};

/// Row-at-a-time construction of a LinearProgram.
class LpBuilder {
 public:
  using Terms = std::vector<std::pair<Index, double>>;

  // Appends `count` variables sharing bounds and cost; returns the first index.
  Index add_variables(Index count, double lower, double upper, double cost = 0.0);
  Index add_variable(double lower, double upper, double cost = 0.0) {
    return add_variables(1, lower, upper, cost);
  }
  void set_cost(Index var, double cost) { cost_[static_cast<std::size_t>(var)] = cost; }
  void set_bounds(Index var, double lower, double upper);

  void add_le(const Terms& terms, double rhs);
  void add_eq(const Terms& terms, double rhs);

  Index num_vars() const { return static_cast<Index>(cost_.size()); }
  Index num_le() const { return le_rows_; }
  Index num_eq() const { return eq_rows_; }

  LinearProgram build() const;

 private:
  std::vector<double> cost_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<Eigen::Triplet<double, int>> le_;
  std::vector<Eigen::Triplet<double, int>> eq_;
  std::vector<double> le_rhs_;
  std::vector<double> eq_rhs_;
  Index le_rows_ = 0;
  Index eq_rows_ = 0;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string to_string(LpStatus status);

/// Dual convention: c = E^T dual_eq + G^T dual_ineq + dual_lower + dual_upper,
/// with dual_ineq <= 0, dual_lower >= 0, dual_upper <= 0. The dual objective is
/// f^T dual_eq + h^T dual_ineq + lower^T dual_lower + upper^T dual_upper
/// (infinite bounds carry zero multipliers).
///
/// Infeasible: the dual slots hold a Farkas ray (same sign conventions, c
/// replaced by 0) normalized so that its dual objective equals +1.
/// Unbounded: `primal` holds a ray d with E d = 0, G d <= 0, c^T d = -1.
struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  Vector primal;
  Vector dual_eq;
  Vector dual_ineq;
  Vector dual_lower;
  Vector dual_upper;
  double objective_value = 0.0;
  double dual_objective = 0.0;
  double duality_gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
};

enum class KktMethod { Auto, Dense, Sparse };

struct LpOptions {
  double feas_tol = 1e-8;
  double gap_tol = 1e-8;
  int iter_limit = 200;
  KktMethod kkt = KktMethod::Auto;
};

// Homogeneous self-dual interior-point method. Deterministic; never throws on
// numerical trouble (returns IterationLimit instead). Throws ArgumentError on
// malformed programs or non-positive tolerances. When the iteration stalls
// close to the optimum, Optimal is reported if the current iterate meets 100x
// the requested tolerances; duality_gap and the residuals show what was reached.
LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options = {});

// Largest violation of E z = f, G z <= h and the box at point z.
double primal_infeasibility(const LinearProgram& lp, const Vector& z);

}  // namespace l1cert
