#pragma once

// Shared numerical kernels: complex log-Gamma, trigamma, compensated sums and
// log-domain products.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <ranges>
#include <span>
#include <string>

#include "spectral_zeros/errors.hpp"

namespace spz {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kLogTwoPi = 1.8378770664093454835606594728112;
inline constexpr double kEulerGamma = 0.5772156649015329;

/// Result of any truncated series or product evaluation.
///
/// `log_value` is the accumulated log (its imaginary part is not reduced to
/// the principal range); `value` is always exp(log_value).
struct EvaluationResult {
  Complex value{1.0, 0.0};
  Complex log_value{0.0, 0.0};
  double error_estimate = 0.0;
  std::size_t terms_used = 0;
  std::string warning;  // empty unless the evaluation left its validated window
};

inline EvaluationResult result_from_log(Complex log_value, double error_estimate, std::size_t terms) {
  EvaluationResult r;
  r.log_value = log_value;
  r.value = std::exp(log_value);
  r.error_estimate = error_estimate;
  r.terms_used = terms;
  return r;
}

/// Result for a sum whose value is known directly; log_value is the principal log.
inline EvaluationResult result_from_value(Complex value, double error_estimate, std::size_t terms) {
  EvaluationResult r;
  r.value = value;
  r.log_value = std::log(value);
  r.error_estimate = error_estimate;
  r.terms_used = terms;
  return r;
}

/// Neumaier compensated summation, componentwise for complex values.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) noexcept {
    if constexpr (std::is_same_v<T, Complex>) {
      add_real(re_, re_c_, x.real());
      add_real(im_, im_c_, x.imag());
    } else {
      add_real(re_, re_c_, x);
    }
  }

  T value() const noexcept {
    if constexpr (std::is_same_v<T, Complex>) {
      return {re_ + re_c_, im_ + im_c_};
    } else {
      return re_ + re_c_;
    }
  }

 private:
  static void add_real(double& sum, double& comp, double x) noexcept {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double re_ = 0.0, re_c_ = 0.0;
  double im_ = 0.0, im_c_ = 0.0;
};

/// log(1 + w) without cancellation for small |w|.
inline Complex log1p(Complex w) {
  const double a = w.real();
  const double b = w.imag();
  if (std::abs(a) < 0.5 && std::abs(b) < 0.5) {
    return {0.5 * std::log1p(a * (2.0 + a) + b * b), std::atan2(b, 1.0 + a)};
  }
  return std::log(1.0 + w);
}

/// exp(z) - 1 without cancellation for small |z|.
inline Complex expm1(Complex z) {
  const double a = z.real();
  const double b = z.imag();
  const double s = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

/// Reduce an angle to (-pi, pi].
inline double principal_angle(double theta) {
  double r = std::remainder(theta, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

namespace detail {

// B_{2k} / (2k (2k-1)), k = 1..8: coefficients of the Stirling series.
inline constexpr double kStirling[] = {
    1.0 / 12.0,     -1.0 / 360.0,        1.0 / 1260.0,  -1.0 / 1680.0,
    1.0 / 1188.0,   -691.0 / 360360.0,   1.0 / 156.0,   -3617.0 / 122400.0,
};

inline Complex stirling_log_gamma(Complex w) {
  const Complex inv = 1.0 / w;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex power = inv;
  for (double c : kStirling) {
    series += c * power;
    power *= inv2;
  }
  return (w - 0.5) * std::log(w) - w + 0.5 * kLogTwoPi + series;
}

}  // namespace detail

/// Principal branch of log Gamma(z), continuous off the negative real axis.
///
/// Stirling series after upward recurrence until Re z >= 15 (or |z| >= 15 in
/// the right half-plane). On the negative real axis the value is the limit
/// taken from the side given by the sign of Im z (+0 -> upper).
inline Complex log_gamma(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("log_gamma: non-finite argument");
  }
  if (z.real() <= 0.5) {
    const double nearest = std::round(z.real());
    if (nearest <= 0.0 && std::abs(z - Complex(nearest, 0.0)) < 1e-12) {
      throw PoleError("log_gamma: pole at non-positive integer", Complex(nearest, 0.0),
                      static_cast<long long>(nearest));
    }
  }
  Complex w = z;
  CompensatedSum<Complex> shift;
  while (w.real() < 15.0 && (w.real() < 0.0 || std::abs(w) < 15.0)) {
    shift.add(std::log(w));
    w += 1.0;
  }
  return detail::stirling_log_gamma(w) - shift.value();
}

inline double log_gamma(double x) { return log_gamma(Complex(x, 0.0)).real(); }

/// Trigamma psi'(x) for real x > 0.
inline double trigamma(double x) {
  if (!(x > 0.0)) throw DomainError("trigamma: argument must be positive");
  double acc = 0.0;
  while (x < 20.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // 1/x + 1/(2x^2) + sum B_{2k} / x^{2k+1}
  const double tail =
      inv * (1.0 + inv * (0.5 + inv * (1.0 / 6.0 + inv2 * (-1.0 / 30.0 + inv2 * (1.0 / 42.0 + inv2 * (-1.0 / 30.0 + inv2 * (5.0 / 66.0)))))));
  return acc + tail;
}

/// What a log-domain product does on an exactly-zero factor.
enum class ZeroPolicy {
  raise,   // throw ZeroFactorError
  report,  // return value 0, log_value -inf, terms_used = index of the zero
};

/// Running log-domain product.
///
/// The log is the sum of principal logs of the factors, so its imaginary part
/// is the total argument unwound across the whole product and the sum is
/// independent of factor order. Factors whose consecutive arguments jump by
/// more than pi/2 should be pre-combined by the caller (e.g. conjugate pairs).
class LogProduct {
 public:
  explicit LogProduct(ZeroPolicy policy = ZeroPolicy::raise) : policy_(policy) {}

  /// Multiply by `factor`. Returns false once a zero has been recorded.
  bool multiply(Complex factor) {
    if (zero_index_) return false;
    if (!std::isfinite(factor.real()) || !std::isfinite(factor.imag())) {
      throw OverflowError("log product: non-finite factor at index " + std::to_string(count_));
    }
    if (factor == Complex(0.0, 0.0)) return record_zero();
    log_.add(std::log(factor));
    last_ = std::abs(factor);
    ++count_;
    return true;
  }

  /// Multiply by (1 + w), accurate for small |w|.
  bool multiply_one_plus(Complex w) {
    if (zero_index_) return false;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      throw OverflowError("log product: non-finite factor at index " + std::to_string(count_));
    }
    if (w == Complex(-1.0, 0.0)) return record_zero();
    log_.add(spz::log1p(w));
    last_ = std::abs(w);
    ++count_;
    return true;
  }

  /// Add a log directly (exponential convergence factors, prefactors).
  void add_log(Complex log_factor) { log_.add(log_factor); }

  std::size_t count() const noexcept { return count_; }
  bool hit_zero() const noexcept { return zero_index_.has_value(); }
  Complex log_value() const noexcept { return log_.value(); }

  EvaluationResult result(double error_estimate) const {
    if (zero_index_) {
      EvaluationResult r;
      r.value = 0.0;
      r.log_value = Complex(-std::numeric_limits<double>::infinity(), 0.0);
      r.error_estimate = 0.0;
      r.terms_used = *zero_index_;
      return r;
    }
    return result_from_log(log_.value(), error_estimate, count_);
  }

  /// Error heuristic: magnitude of the last factor's deviation from 1 (or of the
  /// last factor) times the caller's estimate of the remaining count.
  double last_magnitude() const noexcept { return last_; }

 private:
  bool record_zero() {
    if (policy_ == ZeroPolicy::raise) {
      throw ZeroFactorError("log product: zero factor at index " + std::to_string(count_), count_);
    }
    zero_index_ = count_;
    return false;
  }

  ZeroPolicy policy_;
  CompensatedSum<Complex> log_;
  std::size_t count_ = 0;
  double last_ = 0.0;
  std::optional<std::size_t> zero_index_;
};

/// Product of a factor sequence, accumulated in the log domain.
///
/// error_estimate = |last factor| * remaining_terms when the caller supplies a
/// remaining count, else |last factor|.
template <std::ranges::input_range R>
  requires std::convertible_to<std::ranges::range_value_t<R>, Complex>
EvaluationResult stable_log_product(R&& factors, ZeroPolicy policy = ZeroPolicy::raise,
                                    std::optional<double> remaining_terms = std::nullopt) {
  LogProduct product(policy);
  for (auto&& f : factors) {
    if (!product.multiply(Complex(f))) break;
  }
  const double last = product.last_magnitude();
  return product.result(remaining_terms ? last * *remaining_terms : last);
}

inline EvaluationResult stable_log_product(std::initializer_list<Complex> factors,
                                           ZeroPolicy policy = ZeroPolicy::raise) {
  return stable_log_product(std::span<const Complex>(factors.begin(), factors.size()), policy);
}

}  // namespace spz
