#include "l1cert/errors.hpp"
#include "l1cert/matrix_gen.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace l1cert {
namespace {

GenSpec spec(Family f, Index k, Index n, std::uint64_t seed, bool normalize) {
  return GenSpec{f, k, n, seed, normalize};
}

TEST(Generate, HadamardBase) {
  const SensingMatrix h = generate(spec(Family::HadamardCut, 2, 2, 0, false));
  Matrix expected(2, 2);
  expected << 1, 1, 1, -1;
  EXPECT_EQ(h.entries(), expected);
}

TEST(Generate, HadamardRecurrence) {
  const Index n = 16;
  const SensingMatrix full = generate(spec(Family::HadamardCut, n, n, 3, false));
  Matrix h(1, 1);
  h(0, 0) = 1.0;
  while (h.rows() < n) {
    Matrix next(2 * h.rows(), 2 * h.rows());
    next << h, h, h, -h;
    h = next;
  }
  // A full cut is a row permutation of H.
  for (Index r = 0; r < n; ++r) {
    bool found = false;
    for (Index i = 0; i < n && !found; ++i) found = full.entries().row(r) == h.row(i);
    EXPECT_TRUE(found) << "row " << r;
  }
}

TEST(Generate, RowsOrthogonal) {
  for (const Family f : {Family::HadamardCut, Family::FourierRows}) {
    const SensingMatrix a = generate(spec(f, 20, 64, 5, false));
    const Matrix g = a.entries() * a.entries().transpose();
    for (Index i = 0; i < 20; ++i) {
      for (Index j = 0; j < 20; ++j) {
        if (i != j) EXPECT_NEAR(g(i, j), 0.0, 1e-9) << to_string(f) << " " << i << "," << j;
      }
    }
  }
}

TEST(Generate, FourierOddOrderAndFullRank) {
  const SensingMatrix a = generate(spec(Family::FourierRows, 15, 15, 1, false));
  const Matrix g = a.entries() * a.entries().transpose();
  EXPECT_TRUE(Matrix(g.diagonal().asDiagonal()).isApprox(g, 1e-9));
  EXPECT_GT(g.diagonal().minCoeff(), 1.0);
}

TEST(Generate, NormalizedColumns) {
  for (const Family f : {Family::Gaussian, Family::FourierRows, Family::HadamardCut}) {
    const SensingMatrix a = generate(spec(f, 25, 256, 11, true));
    EXPECT_TRUE(a.column_normalized());
    for (Index j = 0; j < a.cols(); ++j) EXPECT_NEAR(a.column(j).norm(), 1.0, 1e-12);
  }
  const SensingMatrix c = generate(spec(Family::Convolution, 0, 0, 2, true));
  for (Index j = 0; j < c.cols(); ++j) EXPECT_NEAR(c.column(j).norm(), 1.0, 1e-12);
}

TEST(Generate, Deterministic) {
  for (const Family f : {Family::Gaussian, Family::FourierRows, Family::HadamardCut}) {
    const GenSpec s = spec(f, 30, 128, 42, true);
    EXPECT_EQ(generate(s).entries(), generate(s).entries());
    EXPECT_NE(generate(s).entries(), generate(spec(f, 30, 128, 43, true)).entries());
  }
}

TEST(Generate, ConvolutionShapeAndStencil) {
  const SensingMatrix a = generate(spec(Family::Convolution, 992, 1024, 7, false));
  ASSERT_EQ(a.rows(), 992);
  ASSERT_EQ(a.cols(), 1024);
  for (Index r = 0; r < a.rows(); ++r) {
    Index nnz = 0;
    for (Index j = 0; j < a.cols(); ++j) nnz += a.entries()(r, j) != 0.0;
    EXPECT_LE(nnz, 225);
    EXPECT_GT(nnz, 0);
  }
}

TEST(Generate, ConvolutionOfDelta) {
  const std::uint64_t seed = 9;
  const SensingMatrix a = generate(spec(Family::Convolution, 0, 0, seed, false));
  const Matrix kernel = convolution_kernel(seed);
  for (const auto& [i, j] : {std::pair<Index, Index>{0, 0}, {5, 17}, {31, 31}, {16, 1}}) {
    Vector x = Vector::Zero(1024);
    x[i * 32 + j] = 1.0;
    const Vector y = a.entries() * x;
    for (Index p = 0; p < 32; ++p) {
      for (Index q = 1; q < 32; ++q) {
        const Index da = p - i;
        const Index db = q - j;
        const bool inside = std::abs(da) <= 7 && std::abs(db) <= 7;
        const double expected = inside ? kernel(da + 7, db + 7) : 0.0;
        EXPECT_EQ(y[p * 31 + q - 1], expected) << "delta (" << i << "," << j << ") at (" << p << "," << q << ")";
      }
    }
  }
}

TEST(Generate, Errors) {
  EXPECT_THROW(generate(spec(Family::HadamardCut, 4, 12, 0, true)), ArgumentError);
  EXPECT_THROW(generate(spec(Family::HadamardCut, 20, 16, 0, true)), ArgumentError);
  EXPECT_THROW(generate(spec(Family::FourierRows, 0, 16, 0, true)), ArgumentError);
  EXPECT_THROW(generate(spec(Family::Gaussian, 3, 0, 0, true)), ArgumentError);
  EXPECT_THROW(generate(spec(Family::Convolution, 10, 1024, 0, true)), ArgumentError);
  EXPECT_THROW(parse_family("sparse"), ArgumentError);
  for (const Family f : {Family::Gaussian, Family::FourierRows, Family::HadamardCut, Family::Convolution}) {
    EXPECT_EQ(parse_family(to_string(f)), f);
  }
}

}  // namespace
}  // namespace l1cert
