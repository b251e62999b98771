#pragma once

#include "l1cert/core.hpp"

#include <cstdint>
#include <string>

namespace l1cert {

enum class Family { Gaussian, FourierRows, HadamardCut, Convolution };

// Accepts gaussian, fourier, hadamard, conv.
Family parse_family(const std::string& name);
std::string to_string(Family family);

struct GenSpec {
  Family family = Family::Gaussian;
  Index k = 0;
  Index n = 0;
  std::uint64_t seed = 0;
  bool normalize = true;
};

constexpr Index kConvRows = 992;
constexpr Index kConvCols = 1024;
constexpr Index kConvGrid = 32;
constexpr Index kConvRadius = 7;

// Gaussian: i.i.d. N(0,1), one RNG stream per column.
// FourierRows: k distinct functions of {1, cos(2 pi j t), sin(2 pi j t), (-1)^i} at t = i/n.
// HadamardCut: k distinct rows of the Sylvester matrix of order n = 2^l.
// Convolution: 32 x 32 signal, seeded N(0,1) kernel on {-7..7}^2, output rows (p, q) with q >= 1.
// Throws ArgumentError when the spec is inconsistent.
SensingMatrix generate(const GenSpec& spec);

// Entry (a + 7, b + 7) holds the kernel value at offset (a, b).
Matrix convolution_kernel(std::uint64_t seed);

// Sylvester-Hadamard entry (-1)^popcount(i & j).
inline double hadamard_entry(Index i, Index j) {
  return (__builtin_popcountll(static_cast<unsigned long long>(i & j)) & 1) ? -1.0 : 1.0;
}

}  // namespace l1cert
