#include "l1cert/matrix_gen.hpp"

#include "l1cert/errors.hpp"
#include "l1cert/parallel.hpp"
#include "l1cert/rng.hpp"

#include <cmath>
#include <numbers>

namespace l1cert {

namespace {

void require_rows(const GenSpec& spec) {
  if (spec.k < 1 || spec.n < 1) throw ArgumentError("k and n must be positive");
  if (spec.k > spec.n) throw ArgumentError("row cuts need k <= n");
}

Matrix gaussian_entries(const GenSpec& spec) {
  Matrix m(spec.k, spec.n);
  parallel_for(spec.n, [&](long j) {
    Rng rng = Rng::stream(spec.seed, static_cast<std::uint64_t>(j));
    for (Index i = 0; i < spec.k; ++i) m(i, j) = rng.normal();
  });
  return m;
}

// Function f of the real trigonometric basis at t = i / n.
double trig_value(Index f, Index i, Index n) {
  if (f == 0) return 1.0;
  if (n % 2 == 0 && f == n - 1) return (i % 2 == 0) ? 1.0 : -1.0;
  const Index freq = (f + 1) / 2;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>((freq * i) % n) / static_cast<double>(n);
  return (f % 2 == 1) ? std::cos(angle) : std::sin(angle);
}

Matrix fourier_entries(const GenSpec& spec) {
  require_rows(spec);
  Rng rng(spec.seed);
  const auto rows = rng.subset(spec.n, spec.k);
  Matrix m(spec.k, spec.n);
  for (Index r = 0; r < spec.k; ++r) {
    for (Index i = 0; i < spec.n; ++i) m(r, i) = trig_value(rows[static_cast<std::size_t>(r)], i, spec.n);
  }
  return m;
}

Matrix hadamard_entries(const GenSpec& spec) {
  require_rows(spec);
  if ((spec.n & (spec.n - 1)) != 0) throw ArgumentError("hadamard needs n = 2^l");
  Rng rng(spec.seed);
  const auto rows = rng.subset(spec.n, spec.k);
  Matrix m(spec.k, spec.n);
  for (Index r = 0; r < spec.k; ++r) {
    for (Index j = 0; j < spec.n; ++j) m(r, j) = hadamard_entry(rows[static_cast<std::size_t>(r)], j);
  }
  return m;
}

Matrix convolution_entries(const GenSpec& spec) {
  if ((spec.k != 0 && spec.k != kConvRows) || (spec.n != 0 && spec.n != kConvCols)) {
    throw ArgumentError("conv has fixed shape 992 x 1024");
  }
  const Matrix kernel = convolution_kernel(spec.seed);
  Matrix m = Matrix::Zero(kConvRows, kConvCols);
  // (K x)(p, q) = sum_{a,b} K(a, b) x(p - a, q - b); row (p, q) -> p * 31 + q - 1, column (i, j) -> i * 32 + j.
  for (Index p = 0; p < kConvGrid; ++p) {
    for (Index q = 1; q < kConvGrid; ++q) {
      const Index row = p * (kConvGrid - 1) + (q - 1);
      for (Index a = -kConvRadius; a <= kConvRadius; ++a) {
        const Index i = p - a;
        if (i < 0 || i >= kConvGrid) continue;
        for (Index b = -kConvRadius; b <= kConvRadius; ++b) {
          const Index j = q - b;
          if (j < 0 || j >= kConvGrid) continue;
          m(row, i * kConvGrid + j) = kernel(a + kConvRadius, b + kConvRadius);
        }
      }
    }
  }
  return m;
}

}  // namespace

Family parse_family(const std::string& name) {
  if (name == "gaussian") return Family::Gaussian;
  if (name == "fourier") return Family::FourierRows;
  if (name == "hadamard") return Family::HadamardCut;
  if (name == "conv") return Family::Convolution;
  throw ArgumentError("unknown family '" + name + "' (expected gaussian, fourier, hadamard or conv)");
}

std::string to_string(Family family) {
  switch (family) {
    case Family::Gaussian:
      return "gaussian";
    case Family::FourierRows:
      return "fourier";
    case Family::HadamardCut:
      return "hadamard";
    case Family::Convolution:
      return "conv";
  }
  return "unknown";
}

Matrix convolution_kernel(std::uint64_t seed) {
  Rng rng(seed);
  const Index width = 2 * kConvRadius + 1;
  Matrix kernel(width, width);
  for (Index a = 0; a < width; ++a) {
    for (Index b = 0; b < width; ++b) kernel(a, b) = rng.normal();
  }
  return kernel;
}

SensingMatrix generate(const GenSpec& spec) {
  Matrix m;
  switch (spec.family) {
    case Family::Gaussian:
      if (spec.k < 1 || spec.n < 1) throw ArgumentError("k and n must be positive");
      m = gaussian_entries(spec);
      break;
    case Family::FourierRows:
      m = fourier_entries(spec);
      break;
    case Family::HadamardCut:
      m = hadamard_entries(spec);
      break;
    case Family::Convolution:
      m = convolution_entries(spec);
      break;
  }
  SensingMatrix a(std::move(m), spec.seed);
  return spec.normalize ? a.normalized() : a;
}

}  // namespace l1cert
