#pragma once

// Search-space size control: octant subdivision of a 3-D cube in its fixed
// sign-lexicographic order, cyclic extension of a 3-D box to any dimension,
// power-of-two scaling toward the origin, and the per-function subcube table.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hctps/benchmarks.hpp"
#include "hctps/box.hpp"
#include "hctps/error.hpp"

namespace hctps {

struct SubcubeSpec {
  /// 1-based position in the octant sequence.
  int octant_index = 1;
  /// m in the (1/2)^m shrink; 0 leaves the box unscaled.
  int scale_exponent = 0;
  std::size_t dim = 3;

  void validate() const {
    if (octant_index < 1 || octant_index > 8) {
      throw Error(ErrorKind::InvalidConfig, "octant_index must be in 1..8");
    }
    if (scale_exponent < 0) throw Error(ErrorKind::InvalidConfig, "scale_exponent must be >= 0");
    if (dim < 3) throw Error(ErrorKind::WrongDimension, "subcube dimension must be >= 3");
  }

  friend bool operator==(const SubcubeSpec&, const SubcubeSpec&) = default;
};

/// The 8 octants of a 3-D box, ordered by sign pattern over (x, y, z) with the
/// last axis varying fastest: (-,-,-), (-,-,+), (-,+,-), ..., (+,+,+), where
/// "-" is [lo, mid] and "+" is [mid, hi].
inline std::array<Box, 8> octant_sequence(const Box& box3) {
  if (box3.dim() != 3) throw Error(ErrorKind::WrongDimension, "octant subdivision needs a 3-D box");
  std::array<double, 3> mid{};
  for (std::size_t i = 0; i < 3; ++i) mid[i] = box3.lo(i) + 0.5 * (box3.hi(i) - box3.lo(i));
  std::array<Box, 8> out;
  for (std::size_t n = 0; n < 8; ++n) {
    std::vector<double> lo(3);
    std::vector<double> hi(3);
    for (std::size_t axis = 0; axis < 3; ++axis) {
      const bool upper = ((n >> (2 - axis)) & 1U) != 0U;
      lo[axis] = upper ? mid[axis] : box3.lo(axis);
      hi[axis] = upper ? box3.hi(axis) : mid[axis];
    }
    out[n] = Box(std::move(lo), std::move(hi));
  }
  return out;
}

/// Octant `index` (1-based) of the 3-D search cube.
inline Box base_octant(int index) {
  if (index < 1 || index > 8) throw Error(ErrorKind::InvalidConfig, "octant_index must be in 1..8");
  return octant_sequence(search_cube(3))[static_cast<std::size_t>(index - 1)];
}

/// 1-based position of `box3` in the octant sequence of the 3-D search cube.
inline std::optional<int> octant_position(const Box& box3) {
  if (box3.dim() != 3) return std::nullopt;
  const auto octants = octant_sequence(search_cube(3));
  for (std::size_t i = 0; i < octants.size(); ++i) {
    if (octants[i] == box3) return static_cast<int>(i + 1);
  }
  return std::nullopt;
}

/// Dimension i (1-based) takes component ((i - 1) mod 3) + 1 of `box3`.
inline Box cyclic_extend(const Box& box3, std::size_t dim) {
  if (box3.dim() != 3) throw Error(ErrorKind::WrongDimension, "cyclic extension needs a 3-D box");
  if (dim < 3) throw Error(ErrorKind::WrongDimension, "target dimension must be >= 3");
  std::vector<double> lo(dim);
  std::vector<double> hi(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    lo[i] = box3.lo(i % 3);
    hi[i] = box3.hi(i % 3);
  }
  return {std::move(lo), std::move(hi)};
}

/// Multiplies every bound by (1/2)^m. Each bound is scaled once from the
/// original value, so the result is exact unless it underflows.
inline Box scale_box(const Box& box, int scale_exponent) {
  if (scale_exponent < 0) throw Error(ErrorKind::InvalidConfig, "scale_exponent must be >= 0");
  std::vector<double> lo(box.dim());
  std::vector<double> hi(box.dim());
  for (std::size_t i = 0; i < box.dim(); ++i) {
    lo[i] = std::ldexp(box.lo(i), -scale_exponent);
    hi[i] = std::ldexp(box.hi(i), -scale_exponent);
    if (!(lo[i] < hi[i])) {
      throw Error(ErrorKind::DegenerateBox, "dimension " + std::to_string(i + 1) + " collapses at scale 2^-" +
                                                std::to_string(scale_exponent));
    }
  }
  return {std::move(lo), std::move(hi)};
}

/// Local-phase region for `spec`: octant, extended to spec.dim, then scaled.
inline Box subcube_region(const SubcubeSpec& spec) {
  spec.validate();
  return scale_box(cyclic_extend(base_octant(spec.octant_index), spec.dim), spec.scale_exponent);
}

struct SubcubeFixture {
  FunctionId id;
  /// 3-D base box exactly as tabulated.
  Box octant;
  int scale_exponent;
  /// Set when the tabulated box is believed to be a misprint; holds the box
  /// used for actual runs.
  std::optional<Box> corrected;

  [[nodiscard]] const Box& effective_octant() const { return corrected ? *corrected : octant; }

  friend bool operator==(const SubcubeFixture&, const SubcubeFixture&) = default;
};

namespace detail {

inline Box box3(double l0, double h0, double l1, double h1, double l2, double h2) {
  return {{l0, l1, l2}, {h0, h1, h2}};
}

inline std::array<SubcubeFixture, kFunctionCount> make_subcube_table() {
  constexpr double L = -100.0;
  constexpr double H = 100.0;
  return {{
      {FunctionId::F1, box3(0, H, L, 0, 0, H), 80, std::nullopt},
      {FunctionId::F2, box3(0, H, L, 0, L, 0), 40, std::nullopt},
      {FunctionId::F3, box3(0, H, 0, H, 0, 1000), 0, box3(0, H, 0, H, 0, H)},
      {FunctionId::F4, box3(L, 0, 0, H, 0, H), 10, std::nullopt},
      {FunctionId::F5, box3(0, H, 0, H, L, 0), 0, std::nullopt},
      {FunctionId::F6, box3(0, H, L, 0, 0, H), 20, std::nullopt},
      {FunctionId::F7, box3(L, 0, L, 0, L, 0), 40, std::nullopt},
      {FunctionId::F8, box3(0, H, 0, H, L, 0), 40, std::nullopt},
      {FunctionId::F9, box3(L, 0, 0, H, L, 0), 40, std::nullopt},
      {FunctionId::F10, box3(L, 0, 0, H, 0, H), 40, std::nullopt},
      {FunctionId::F11, box3(L, 0, L, 0, L, 0), 40, std::nullopt},
      {FunctionId::F12, box3(L, 0, 0, H, L, 0), 40, std::nullopt},
      {FunctionId::F13, box3(0, H, L, 0, 0, H), 40, std::nullopt},
      {FunctionId::F14, box3(0, H, L, 0, L, 0), 40, std::nullopt},
  }};
}

}  // namespace detail

/// Built-in per-function selected subcube and scale exponent.
inline const std::array<SubcubeFixture, kFunctionCount>& subcube_table() {
  static const auto table = detail::make_subcube_table();
  return table;
}

inline const SubcubeFixture& subcube_for_function(FunctionId fid) { return subcube_table()[function_index(fid)]; }

/// SubcubeSpec reproducing a fixture at `dim` (uses the corrected box).
inline SubcubeSpec fixture_spec(FunctionId fid, std::size_t dim) {
  const auto& fx = subcube_for_function(fid);
  const auto position = octant_position(fx.effective_octant());
  if (!position) throw Error(ErrorKind::InvalidConfig, "fixture box is not an octant of the search cube");
  return SubcubeSpec{*position, fx.scale_exponent, dim};
}

using BigInt = boost::multiprecision::cpp_int;

/// Iterations needed to sweep all K^L strings with N distinct strings per
/// iteration: the positive integer nearest to K^L / N, ties rounded up.
inline BigInt exhaustive_iteration_estimate(unsigned alphabet_size, unsigned length, std::uint64_t population) {
  if (alphabet_size < 2) throw Error(ErrorKind::InvalidConfig, "alphabet size must be >= 2");
  if (length < 1 || population < 1) throw Error(ErrorKind::InvalidConfig, "length and population must be >= 1");
  const BigInt total = boost::multiprecision::pow(BigInt(alphabet_size), length);
  const BigInt n(population);
  BigInt rounded = (2 * total + n) / (2 * n);
  if (rounded < 1) rounded = 1;
  return rounded;
}

}  // namespace hctps
