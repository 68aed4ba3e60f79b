#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hctps/error.hpp"

namespace hctps {

using Point = std::vector<double>;

/// Closed axis-aligned box [lo_1, hi_1] x ... x [lo_d, hi_d] with lo_i < hi_i.
class Box {
 public:
  Box() = default;

  Box(std::vector<double> lo, std::vector<double> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size() || lo_.empty()) {
      throw Error(ErrorKind::WrongDimension, "box bounds must be non-empty and of equal length");
    }
    for (std::size_t i = 0; i < lo_.size(); ++i) {
      if (!std::isfinite(lo_[i]) || !std::isfinite(hi_[i])) {
        throw Error(ErrorKind::NonFiniteInput, "box bound is not finite");
      }
      if (!(lo_[i] < hi_[i])) {
        throw Error(ErrorKind::DegenerateBox,
                    "dimension " + std::to_string(i + 1) + " has zero or negative width");
      }
    }
  }

  static Box cube(std::size_t dim, double lo, double hi) {
    return {std::vector<double>(dim, lo), std::vector<double>(dim, hi)};
  }

  [[nodiscard]] std::size_t dim() const noexcept { return lo_.size(); }
  [[nodiscard]] const std::vector<double>& lo() const noexcept { return lo_; }
  [[nodiscard]] const std::vector<double>& hi() const noexcept { return hi_; }
  [[nodiscard]] double lo(std::size_t i) const { return lo_.at(i); }
  [[nodiscard]] double hi(std::size_t i) const { return hi_.at(i); }
  [[nodiscard]] double width(std::size_t i) const { return hi_.at(i) - lo_.at(i); }

  [[nodiscard]] double volume() const noexcept {
    double v = 1.0;
    for (std::size_t i = 0; i < lo_.size(); ++i) v *= hi_[i] - lo_[i];
    return v;
  }

  /// Closed-set membership: faces belong to the box.
  [[nodiscard]] bool contains(std::span<const double> x) const noexcept {
    if (x.size() != lo_.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < lo_[i] || x[i] > hi_[i]) return false;
    }
    return true;
  }

  [[nodiscard]] bool contains_interior(std::span<const double> x) const noexcept {
    if (x.size() != lo_.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(x[i] > lo_[i] && x[i] < hi_[i])) return false;
    }
    return true;
  }

  [[nodiscard]] bool contains(const Box& other) const noexcept {
    if (other.dim() != dim()) return false;
    for (std::size_t i = 0; i < lo_.size(); ++i) {
      if (other.lo_[i] < lo_[i] || other.hi_[i] > hi_[i]) return false;
    }
    return true;
  }

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<double> lo_;
  std::vector<double> hi_;
};

/// The search cube every experiment starts from.
inline constexpr double kCubeLo = -100.0;
inline constexpr double kCubeHi = 100.0;

inline Box search_cube(std::size_t dim) { return Box::cube(dim, kCubeLo, kCubeHi); }

}  // namespace hctps
