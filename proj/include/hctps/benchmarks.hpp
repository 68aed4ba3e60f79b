#pragma once

// The fourteen unconstrained test functions in their standard, unshifted and
// unrotated form, plus hard accounting of objective evaluations.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <string_view>

#include "hctps/error.hpp"

namespace hctps {

enum class FunctionId : std::uint8_t {
  F1 = 1, F2, F3, F4, F5, F6, F7, F8, F9, F10, F11, F12, F13, F14
};

inline constexpr std::size_t kFunctionCount = 14;

struct FunctionInfo {
  FunctionId id;
  std::string_view code;
  std::string_view name;
};

inline constexpr std::array<FunctionInfo, kFunctionCount> kFunctionCatalog{{
    {FunctionId::F1, "F1", "Bent Cigar"},
    {FunctionId::F2, "F2", "Discus"},
    {FunctionId::F3, "F3", "Weierstrass"},
    {FunctionId::F4, "F4", "Modified Schwefel"},
    {FunctionId::F5, "F5", "Katsuura"},
    {FunctionId::F6, "F6", "HappyCat"},
    {FunctionId::F7, "F7", "HGBat"},
    {FunctionId::F8, "F8", "Expanded Griewank plus Rosenbrock"},
    {FunctionId::F9, "F9", "Expanded Scaffer's F6"},
    {FunctionId::F10, "F10", "Rosenbrock's"},
    {FunctionId::F11, "F11", "Griewank's"},
    {FunctionId::F12, "F12", "Rastrigin's"},
    {FunctionId::F13, "F13", "High Conditioned Elliptic"},
    {FunctionId::F14, "F14", "Ackley"},
}};

constexpr std::size_t function_index(FunctionId fid) {
  const auto raw = static_cast<std::size_t>(fid);
  if (raw < 1 || raw > kFunctionCount) {
    throw Error(ErrorKind::UnknownFunction, "function id " + std::to_string(raw));
  }
  return raw - 1;
}

constexpr const FunctionInfo& function_info(FunctionId fid) {
  return kFunctionCatalog[function_index(fid)];
}

inline std::string_view function_code(FunctionId fid) { return function_info(fid).code; }
inline std::string_view function_name(FunctionId fid) { return function_info(fid).name; }

/// Accepts "F7", "f7" or "7".
inline FunctionId parse_function_id(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == 'F' || digits.front() == 'f')) digits.remove_prefix(1);
  if (digits.empty() || digits.size() > 2) {
    throw Error(ErrorKind::UnknownFunction, "'" + std::string(text) + "'");
  }
  unsigned value = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw Error(ErrorKind::UnknownFunction, "'" + std::string(text) + "'");
    value = value * 10 + static_cast<unsigned>(c - '0');
  }
  if (value < 1 || value > kFunctionCount) {
    throw Error(ErrorKind::UnknownFunction, "'" + std::string(text) + "'");
  }
  return static_cast<FunctionId>(value);
}

namespace detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double sum_squares(std::span<const double> x, std::size_t from = 0) {
  double s = 0.0;
  for (std::size_t i = from; i < x.size(); ++i) s += x[i] * x[i];
  return s;
}

inline double bent_cigar(std::span<const double> x) { return x[0] * x[0] + 1e6 * sum_squares(x, 1); }

inline double discus(std::span<const double> x) { return 1e6 * x[0] * x[0] + sum_squares(x, 1); }

// a = 0.5, b = 3, k = 0..20.
inline double weierstrass(std::span<const double> x) {
  constexpr int kMax = 20;
  std::array<double, kMax + 1> ak{};
  std::array<double, kMax + 1> bk{};
  ak[0] = 1.0;
  bk[0] = 1.0;
  for (int k = 1; k <= kMax; ++k) {
    ak[k] = ak[k - 1] * 0.5;
    bk[k] = bk[k - 1] * 3.0;
  }
  double total = 0.0;
  for (double v : x) {
    for (int k = 0; k <= kMax; ++k) total += ak[k] * std::cos(kTwoPi * bk[k] * (v + 0.5));
  }
  double bias = 0.0;
  for (int k = 0; k <= kMax; ++k) bias += ak[k] * std::cos(std::numbers::pi * bk[k]);
  return total - static_cast<double>(x.size()) * bias;
}

inline double modified_schwefel(std::span<const double> x) {
  const auto d = static_cast<double>(x.size());
  double total = 0.0;
  for (double v : x) {
    const double z = v + 4.209687462275036e+002;
    double g = 0.0;
    if (std::abs(z) <= 500.0) {
      g = z * std::sin(std::sqrt(std::abs(z)));
    } else if (z > 500.0) {
      const double r = 500.0 - std::fmod(z, 500.0);
      g = r * std::sin(std::sqrt(std::abs(r))) - (z - 500.0) * (z - 500.0) / (10000.0 * d);
    } else {
      const double r = std::fmod(std::abs(z), 500.0) - 500.0;
      g = r * std::sin(std::sqrt(std::abs(r))) - (z + 500.0) * (z + 500.0) / (10000.0 * d);
    }
    total += g;
  }
  return 418.9829 * d - total;
}

// Inner series truncated at 32 terms.
inline double katsuura(std::span<const double> x) {
  const auto d = static_cast<double>(x.size());
  const double exponent = 10.0 / std::pow(d, 1.2);
  double prod = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double inner = 0.0;
    double pow2 = 1.0;
    for (int j = 1; j <= 32; ++j) {
      pow2 *= 2.0;
      const double t = pow2 * x[i];
      inner += std::abs(t - std::nearbyint(t)) / pow2;
    }
    prod *= std::pow(1.0 + static_cast<double>(i + 1) * inner, exponent);
  }
  const double c = 10.0 / (d * d);
  return c * prod - c;
}

inline double happycat(std::span<const double> x) {
  const auto d = static_cast<double>(x.size());
  const double r2 = sum_squares(x);
  double s = 0.0;
  for (double v : x) s += v;
  return std::pow(std::abs(r2 - d), 0.25) + (0.5 * r2 + s) / d + 0.5;
}

inline double hgbat(std::span<const double> x) {
  const auto d = static_cast<double>(x.size());
  const double r2 = sum_squares(x);
  double s = 0.0;
  for (double v : x) s += v;
  return std::sqrt(std::abs(r2 * r2 - s * s)) + (0.5 * r2 + s) / d + 0.5;
}

inline double griewank_1d(double v) { return v * v / 4000.0 - std::cos(v) + 1.0; }

inline double rosenbrock_2d(double u, double v) {
  const double a = u * u - v;
  const double b = u - 1.0;
  return 100.0 * a * a + b * b;
}

inline double griewank_rosenbrock(std::span<const double> x) {
  const std::size_t d = x.size();
  double total = 0.0;
  for (std::size_t i = 0; i < d; ++i) total += griewank_1d(rosenbrock_2d(x[i], x[(i + 1) % d]));
  return total;
}

inline double scaffer_2d(double u, double v) {
  const double r2 = u * u + v * v;
  const double s = std::sin(std::sqrt(r2));
  const double den = 1.0 + 0.001 * r2;
  return 0.5 + (s * s - 0.5) / (den * den);
}

inline double expanded_scaffer(std::span<const double> x) {
  const std::size_t d = x.size();
  double total = 0.0;
  for (std::size_t i = 0; i < d; ++i) total += scaffer_2d(x[i], x[(i + 1) % d]);
  return total;
}

inline double rosenbrock(std::span<const double> x) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) total += rosenbrock_2d(x[i], x[i + 1]);
  return total;
}

// 1 + sum/4000 - prod is evaluated left to right so that a point whose cosine
// factors all round to 1 evaluates to exactly 0.
inline double griewank(std::span<const double> x) {
  const double s = sum_squares(x) / 4000.0;
  double p = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  return 1.0 + s - p;
}

inline double rastrigin(std::span<const double> x) {
  double total = 0.0;
  for (double v : x) total += v * v - 10.0 * std::cos(kTwoPi * v) + 10.0;
  return total;
}

inline double high_conditioned_elliptic(std::span<const double> x) {
  const std::size_t d = x.size();
  if (d == 1) return x[0] * x[0];
  double total = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double w = std::pow(1e6, static_cast<double>(i) / static_cast<double>(d - 1));
    total += w * x[i] * x[i];
  }
  return total;
}

inline double ackley(std::span<const double> x) {
  const auto d = static_cast<double>(x.size());
  double r2 = 0.0;
  double c = 0.0;
  for (double v : x) {
    r2 += v * v;
    c += std::cos(kTwoPi * v);
  }
  const double a = -20.0 * std::exp(-0.2 * std::sqrt(r2 / d)) + 20.0;
  const double b = std::numbers::e - std::exp(c / d);
  return a + b;
}

}  // namespace detail

/// Objective value of `fid` at `x`. Pure and thread-safe.
inline double evaluate(FunctionId fid, std::span<const double> x) {
  if (x.empty()) throw Error(ErrorKind::WrongDimension, "point must have dimension >= 1");
  for (double v : x) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFiniteInput, "point has a non-finite coordinate");
  }
  switch (fid) {
    case FunctionId::F1: return detail::bent_cigar(x);
    case FunctionId::F2: return detail::discus(x);
    case FunctionId::F3: return detail::weierstrass(x);
    case FunctionId::F4: return detail::modified_schwefel(x);
    case FunctionId::F5: return detail::katsuura(x);
    case FunctionId::F6: return detail::happycat(x);
    case FunctionId::F7: return detail::hgbat(x);
    case FunctionId::F8: return detail::griewank_rosenbrock(x);
    case FunctionId::F9: return detail::expanded_scaffer(x);
    case FunctionId::F10: return detail::rosenbrock(x);
    case FunctionId::F11: return detail::griewank(x);
    case FunctionId::F12: return detail::rastrigin(x);
    case FunctionId::F13: return detail::high_conditioned_elliptic(x);
    case FunctionId::F14: return detail::ackley(x);
  }
  throw Error(ErrorKind::UnknownFunction, "function id " + std::to_string(static_cast<int>(fid)));
}

/// Location of the global minimum of the standard definition (every coordinate
/// equal to the returned value).
constexpr double optimum_coordinate(FunctionId fid) {
  switch (fid) {
    case FunctionId::F6:
    case FunctionId::F7: return -1.0;
    case FunctionId::F8:
    case FunctionId::F10: return 1.0;
    default:
      static_cast<void>(function_index(fid));
      return 0.0;
  }
}

inline constexpr std::uint64_t kEvaluationsPerDim = 50;

/// Hard cap on exact objective evaluations for one run. Single owner.
class EvaluationBudget {
 public:
  explicit EvaluationBudget(std::uint64_t cap) : cap_(cap) {
    if (cap == 0) throw Error(ErrorKind::InvalidConfig, "evaluation budget must be positive");
  }

  [[nodiscard]] std::uint64_t cap() const noexcept { return cap_; }
  [[nodiscard]] std::uint64_t used() const noexcept { return used_; }
  [[nodiscard]] std::uint64_t remaining() const noexcept { return cap_ - used_; }
  [[nodiscard]] bool exhausted() const noexcept { return used_ >= cap_; }

  /// Reserves one evaluation or throws BudgetExhausted without consuming.
  void charge() {
    if (used_ >= cap_) throw Error(ErrorKind::BudgetExhausted, "cap of " + std::to_string(cap_) + " reached");
    ++used_;
  }

 private:
  std::uint64_t cap_;
  std::uint64_t used_ = 0;
};

inline EvaluationBudget make_budget(std::size_t dim, std::uint64_t per_dim = kEvaluationsPerDim) {
  if (dim == 0) throw Error(ErrorKind::InvalidConfig, "dimension must be >= 1");
  if (per_dim == 0) throw Error(ErrorKind::InvalidConfig, "evaluations per dimension must be >= 1");
  return EvaluationBudget(per_dim * dim);
}

/// evaluate() that charges the budget first; on BudgetExhausted nothing is evaluated.
inline double budgeted_evaluate(EvaluationBudget& budget, FunctionId fid, std::span<const double> x) {
  if (budget.exhausted()) {
    throw Error(ErrorKind::BudgetExhausted, "cap of " + std::to_string(budget.cap()) + " reached");
  }
  const double value = evaluate(fid, x);
  budget.charge();
  return value;
}

}  // namespace hctps
