#pragma once

#include "l1cert/certificate.hpp"
#include "l1cert/errors.hpp"

#include <cstddef>
#include <vector>

namespace l1cert {

// Range form: LP in y over R^k. Kernel form (beta = infinity only): LP over the
// residual with equality constraints from an orthonormal basis of Ker A.
enum class Alpha1Form { Auto, Range, Kernel };

struct BoundOptions {
  LpOptions lp;
  Alpha1Form alpha1_form = Alpha1Form::Auto;
  // Largest constraint-matrix nonzero count accepted by the full alpha_s program.
  std::size_t lp_limit = 200000;
};

struct AlphaResult {
  double value = 0.0;  // evaluated from the returned corrector
  CorrectorMatrix corrector;
};

// Thrown by s_bound_alphas when the size guard stops the search.
class PartialCertificateError : public ResourceError {
 public:
  PartialCertificateError(const std::string& what, GoodnessCertificate best)
      : ResourceError(what), best_(std::move(best)) {}
  const GoodnessCertificate& best() const { return best_; }

 private:
  GoodnessCertificate best_;
};

// Largest s with s mu / (1 - (s-1) mu) < 1, capped at min(k, n). The beta context is on
// the gamma scale: s beta(A) (1 + mu) / (1 - (s-1) mu), beta(A) = max_j ||A_j||_* / ||A_j||_2^2.
GoodnessCertificate s_bound_mu(const SensingMatrix& a, ObservationNorm norm = ObservationNorm::L2);

// alpha_1(A, beta) = max_i min_y { ||e_i - A^T y||_inf : ||y||_* <= beta }, one LP per column.
AlphaResult compute_alpha1(const SensingMatrix& a, const Beta& beta = {},
                           ObservationNorm norm = ObservationNorm::L2,
                           const BoundOptions& options = {});

// Per-column values alpha^i from the same computation.
std::vector<double> alpha1_columns(const SensingMatrix& a, const Matrix& y);

// alpha_s(A, beta) from the joint program in Y.
AlphaResult compute_alphas(const SensingMatrix& a, Index s, const Beta& beta = {},
                           ObservationNorm norm = ObservationNorm::L2,
                           const BoundOptions& options = {});

// Constraint-matrix nonzeros of the alpha_s program (checked against lp_limit).
std::size_t alphas_program_size(Index k, Index n, const Beta& beta, ObservationNorm norm);

// Certificate from alpha_1's corrector (kind Alpha1).
GoodnessCertificate s_bound_alpha1(const SensingMatrix& a, const Beta& beta = {},
                                   ObservationNorm norm = ObservationNorm::L2,
                                   const BoundOptions& options = {});

// Incremental certification: alpha_1 corrector first, then alpha_s for s+1, s+2, ...
GoodnessCertificate s_bound_alphas(const SensingMatrix& a, const Beta& beta = {},
                                   ObservationNorm norm = ObservationNorm::L2,
                                   const BoundOptions& options = {});

GammaPair convert_from_gamma(double gamma, const Beta& beta);
GammaPair convert_from_gammahat(double gammahat, const Beta& beta);

struct PerformanceLimit {
  double value = 0.0;
  bool applicable = false;
};

// min[3s / (4(s + sqrt(2k))), 1/2] when n >= 32k.
PerformanceLimit performance_limit(Index k, Index n, Index s);

// Smallest singular value of the k x k submatrix picked by column-pivoted QR.
// Throws ArgumentError when rank(A) < k.
double pivoted_sigma_min(const SensingMatrix& a, std::vector<Index>* columns = nullptr);

// rho = min_i max{ rho : ||x||_1 <= 1, A x = rho e_i }.
double image_ball_radius(const SensingMatrix& a, const LpOptions& options = {});

// Beta large enough that alpha_s(A, beta) = alpha_s(A) whenever alpha_s(A) < 1/2.
// L2: (3/2) sqrt(k) / sigma_min; L1: 3 / (2 rho); Linf: 3k / (2 rho).
Beta beta_sufficient_for_alpha(const SensingMatrix& a, ObservationNorm norm,
                               const LpOptions& options = {});

}  // namespace l1cert
