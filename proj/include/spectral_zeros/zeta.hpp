#pragma once

// Riemann zeta as the primon-gas partition function: Euler-Maclaurin
// continuation of the Dirichlet series, Euler product, Hadamard product over
// the nontrivial zeros, critical-line zero finding, and the Chebyshev-psi
// explicit formula.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "spectral_zeros/core_numerics.hpp"
#include "spectral_zeros/text_table.hpp"

namespace spz {

// ---------------------------------------------------------------------------
// Primes

/// Sieve of Eratosthenes: all primes <= limit.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
  }
  return primes;
}

/// Chebyshev psi(x) = sum_{p^m <= x} ln p.
inline double psi_direct(double x) {
  if (x < 0.0 || !std::isfinite(x)) throw InvalidArgument("psi_direct: x must be finite and >= 0");
  const auto limit = static_cast<std::uint64_t>(std::floor(x));
  CompensatedSum<double> sum;
  for (std::uint64_t p : primes_up_to(limit)) {
    const double lp = std::log(static_cast<double>(p));
    for (std::uint64_t q = p; q <= limit; q *= p) {
      sum.add(lp);
      if (q > limit / p) break;
    }
  }
  return sum.value();
}

/// True when x lies within `tol` of a prime power p^m, m >= 1.
inline bool near_prime_power(double x, double tol) {
  const auto hi = static_cast<std::uint64_t>(std::floor(x + tol));
  for (std::uint64_t p : primes_up_to(hi)) {
    for (std::uint64_t q = p;; q *= p) {
      if (std::abs(static_cast<double>(q) - x) <= tol) return true;
      if (q > hi / p) break;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin

struct ZetaOptions {
  std::size_t cutoff = 100;
  int correction_order = 6;
};

namespace detail {

// B_{2k} / (2k)!, k = 1..8
inline constexpr double kBernoulliOverFactorial[] = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
};

// n^{-s}; real s uses pow for a correctly rounded magnitude.
inline Complex inverse_power(double n, Complex s) {
  if (s.imag() == 0.0) return std::pow(n, -s.real());
  return std::exp(-s * std::log(n));
}

}  // namespace detail

/// zeta(s) by Euler-Maclaurin summation:
///   sum_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
///   + sum_{k=1}^{order} B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}.
///
/// Gives >= 10 significant digits for |Im s| <= 50, Re s >= -5, N >= 50. Beyond
/// that window the result carries a warning unless N >= 2|Im s| + 50.
/// error_estimate is the magnitude of the last correction term.
inline EvaluationResult zeta_em(Complex s, ZetaOptions opt = {}) {
  if (opt.cutoff < 10) throw InvalidArgument("zeta_em: cutoff must be >= 10");
  if (opt.correction_order < 1 || opt.correction_order > 8) {
    throw InvalidArgument("zeta_em: correction_order must be in [1, 8]");
  }
  if (std::abs(s - 1.0) < 1e-12) throw PoleError("zeta_em: pole at s = 1", Complex(1.0, 0.0));

  const double n_cut = static_cast<double>(opt.cutoff);
  CompensatedSum<Complex> sum;
  for (std::size_t n = opt.cutoff - 1; n >= 1; --n) sum.add(detail::inverse_power(static_cast<double>(n), s));

  const Complex n_pow = detail::inverse_power(n_cut, s);  // N^{-s}
  sum.add(n_pow * n_cut / (s - 1.0));
  sum.add(0.5 * n_pow);

  Complex rising = s;  // s (s+1) ... (s+2k-2)
  Complex power = n_pow / n_cut;  // N^{-s-2k+1}
  const double inv_n2 = 1.0 / (n_cut * n_cut);
  double last = 0.0;
  for (int k = 1; k <= opt.correction_order; ++k) {
    const Complex term = detail::kBernoulliOverFactorial[k - 1] * rising * power;
    sum.add(term);
    last = std::abs(term);
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    power *= inv_n2;
  }

  EvaluationResult r = result_from_value(sum.value(), last, opt.cutoff - 1);
  const double t = std::abs(s.imag());
  if ((t > 50.0 && n_cut < 2.0 * t + 50.0) || s.real() < -5.0) {
    r.warning = "zeta_em: outside the validated window (|Im s| <= 50 or cutoff >= 2|Im s| + 50, Re s >= -5)";
  }
  return r;
}

inline EvaluationResult zeta_em(Complex s, std::size_t cutoff, int correction_order) {
  return zeta_em(s, ZetaOptions{cutoff, correction_order});
}

/// Cutoff satisfying N >= 2|Im s| + 50, never below the default 100.
///
/// For Re s < 0 the terms n^{-s} grow and their rounding dominates (condition
/// number ~ N^{1 - Re s}), so the cutoff drops to |Im s| + 20.
inline std::size_t adaptive_cutoff(Complex s) {
  const double t = std::abs(s.imag());
  if (s.real() < 0.0) return static_cast<std::size_t>(std::ceil(t + 20.0));
  return std::max<std::size_t>(100, static_cast<std::size_t>(std::ceil(2.0 * t + 50.0)));
}

/// zeta(s) with the adaptive cutoff rule applied.
inline Complex zeta(Complex s) { return zeta_em(s, ZetaOptions{adaptive_cutoff(s), 6}).value; }

// ---------------------------------------------------------------------------
// Euler product

/// prod_{p <= limit} 1 / (1 - p^{-s}) in the log domain.
/// error_estimate ~ sum_{n > limit} n^{-Re s}.
inline EvaluationResult euler_product(Complex s, std::uint64_t prime_limit) {
  if (!(s.real() > 1.0)) throw DomainError("euler_product: diverges for Re s <= 1");
  if (prime_limit < 2) throw InvalidArgument("euler_product: prime_limit must be >= 2");
  const auto primes = primes_up_to(prime_limit);
  CompensatedSum<Complex> log_sum;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    log_sum.add(-spz::log1p(-detail::inverse_power(static_cast<double>(*it), s)));
  }
  const double sigma = s.real();
  const double bound = std::pow(static_cast<double>(prime_limit), 1.0 - sigma) / (sigma - 1.0);
  return result_from_log(log_sum.value(), bound, primes.size());
}

// ---------------------------------------------------------------------------
// Zero tables

enum class ZeroSource { computed, file };

/// Ordinates gamma_k of nontrivial zeros rho_k = 1/2 + i gamma_k, ascending.
class ZetaZeroTable {
 public:
  ZetaZeroTable() = default;

  ZetaZeroTable(std::vector<double> ordinates, ZeroSource source)
      : ordinates_(std::move(ordinates)), source_(source) {
    for (std::size_t i = 0; i < ordinates_.size(); ++i) {
      if (!std::isfinite(ordinates_[i]) || !(ordinates_[i] > 13.0)) {
        throw InvalidArgument("ZetaZeroTable: ordinates must exceed 13 (index " + std::to_string(i) + ")");
      }
      if (i > 0 && !(ordinates_[i] > ordinates_[i - 1])) {
        throw InvalidArgument("ZetaZeroTable: ordinates must be strictly ascending (index " + std::to_string(i) + ")");
      }
    }
  }

  const std::vector<double>& ordinates() const noexcept { return ordinates_; }
  ZeroSource source() const noexcept { return source_; }
  std::size_t size() const noexcept { return ordinates_.size(); }
  double operator[](std::size_t i) const { return ordinates_[i]; }

 private:
  std::vector<double> ordinates_;
  ZeroSource source_ = ZeroSource::computed;
};

/// |zeta(1/2 + i t)| with the adaptive cutoff.
inline double critical_line_modulus(double t) { return std::abs(zeta(Complex(0.5, t))); }

/// Riemann-Siegel theta(t) = Im log Gamma(1/4 + i t/2) - (t/2) ln pi.
inline double riemann_siegel_theta(double t) {
  return log_gamma(Complex(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(kPi);
}

/// Hardy Z(t) = exp(i theta(t)) zeta(1/2 + i t), real for real t.
inline double hardy_z(double t) {
  const Complex v = std::exp(Complex(0.0, riemann_siegel_theta(t))) * zeta(Complex(0.5, t));
  return v.real();
}

struct FindZerosOptions {
  double t_max = 0.0;      // 0: chosen from the zero-counting estimate
  double step = 0.02;      // scan step in t
  double tolerance = 1e-9; // bisection stops below this bracket width
};

namespace detail {

// Smooth zero count N(T) ~ theta(T)/pi + 1.
inline double smooth_zero_count(double t) { return riemann_siegel_theta(t) / kPi + 1.0; }

inline double bisect_hardy(double lo, double hi, double f_lo, double tolerance) {
  // Bisect past the requested width so the verification bound holds at large t.
  const double width = std::min(tolerance, 1e-12 * std::max(1.0, hi));
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = hardy_z(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// First `count` critical-line zero ordinates.
///
/// Scans t in (10, t_max] for sign changes of the Hardy function, bisects each
/// bracket, then verifies |zeta(1/2 + i gamma)| < 1e-8. Validated for count <= 100.
inline ZetaZeroTable find_zeros(std::size_t count, FindZerosOptions opt = {}) {
  if (count < 1) throw InvalidArgument("find_zeros: count must be >= 1");
  if (!(opt.step > 0.0)) throw InvalidArgument("find_zeros: step must be positive");
  double t_max = opt.t_max;
  if (t_max <= 0.0) {
    t_max = 20.0;
    while (detail::smooth_zero_count(t_max) < static_cast<double>(count) + 1.5) t_max += 5.0;
  }

  std::vector<double> found;
  found.reserve(count);
  double t0 = 10.0;  // the first zero lies above 14
  double f0 = hardy_z(t0);
  const auto steps = static_cast<std::size_t>(std::ceil((t_max - t0) / opt.step));
  for (std::size_t i = 1; i <= steps && found.size() < count; ++i) {
    const double t1 = std::min(t_max, 10.0 + static_cast<double>(i) * opt.step);
    const double f1 = hardy_z(t1);
    if (f1 == 0.0) {
      found.push_back(t1);
    } else if ((f0 < 0.0) != (f1 < 0.0) && f0 != 0.0) {
      found.push_back(detail::bisect_hardy(t0, t1, f0, opt.tolerance));
    }
    t0 = t1;
    f0 = f1;
  }
  if (found.size() < count) {
    throw WindowExhaustedError("find_zeros: only " + std::to_string(found.size()) + " sign changes below t = " +
                                   std::to_string(t_max) + "; enlarge the window",
                               found.size());
  }
  for (double g : found) {
    const double residual = critical_line_modulus(g);
    if (!(residual < 1e-8)) {
      throw DomainError("find_zeros: verification failed at t = " + std::to_string(g) +
                        " (|zeta| = " + std::to_string(residual) + ")");
    }
  }
  return ZetaZeroTable(std::move(found), ZeroSource::computed);
}

/// Zero table from a text file: one ascending positive ordinate per line, '#' comments.
/// With `verify`, each ordinate must satisfy |zeta(1/2 + i gamma)| < 1e-6.
inline ZetaZeroTable ingest_zeros_file(const std::string& path, bool verify = false) {
  const auto rows = read_real_column(path);
  if (rows.empty()) throw ParseError("zeros file '" + path + "' is empty", 0);
  std::vector<double> ordinates;
  ordinates.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!(rows[i].value > 0.0)) {
      throw ParseError(path + ":" + std::to_string(rows[i].line) + ": ordinate must be positive", rows[i].line);
    }
    if (i > 0 && !(rows[i].value > rows[i - 1].value)) {
      throw ParseError(path + ":" + std::to_string(rows[i].line) + ": ordering violation (not ascending)",
                       rows[i].line);
    }
    if (verify && !(critical_line_modulus(rows[i].value) < 1e-6)) {
      throw ParseError(path + ":" + std::to_string(rows[i].line) + ": not a zero of zeta", rows[i].line);
    }
    ordinates.push_back(rows[i].value);
  }
  try {
    return ZetaZeroTable(std::move(ordinates), ZeroSource::file);
  } catch (const InvalidArgument& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
}

// ---------------------------------------------------------------------------
// Hadamard product

/// zeta(beta) from its zeros:
///   exp((gamma_E + ln pi) beta/2 - ln 2) / (beta - 1)
///   * prod_k [1 + (beta^2 - beta) / (1/4 + gamma_k^2)]
///   * prod_{n=1}^{M} (1 + beta/2n) exp(-beta/2n)
///
/// Each nontrivial zero is paired with its conjugate (the paired factor above).
/// The omitted Gamma-factor tail is added as -x^2/2 psi'(M+1) + x^3/3 S3(M),
/// x = beta/2. An exact zero factor (trivial zero, or beta on a table zero)
/// yields value 0 with log_value = -inf.
inline EvaluationResult hadamard_product(Complex beta, const ZetaZeroTable& zeros, std::size_t zero_count,
                                         std::size_t gamma_factor_terms = 10'000) {
  if (zero_count > zeros.size()) throw InvalidArgument("hadamard_product: zero_count exceeds table size");
  if (gamma_factor_terms < 1) throw InvalidArgument("hadamard_product: gamma_factor_terms must be >= 1");
  if (std::abs(beta - 1.0) < 1e-12) throw PoleError("hadamard_product: pole at beta = 1", Complex(1.0, 0.0));

  LogProduct product(ZeroPolicy::report);
  product.add_log((kEulerGamma + std::log(kPi)) * 0.5 * beta - std::log(2.0));
  product.add_log(-std::log(beta - 1.0));

  const Complex b2 = beta * beta - beta;
  for (std::size_t k = zero_count; k-- > 0;) {
    const double g = zeros[k];
    product.multiply_one_plus(b2 / (0.25 + g * g));
  }

  const Complex x = 0.5 * beta;
  for (std::size_t n = gamma_factor_terms; n >= 1; --n) {
    const Complex w = x / static_cast<double>(n);
    if (!product.multiply_one_plus(w)) break;
    product.add_log(-w);
  }
  if (product.hit_zero()) return product.result(0.0);

  const double m = static_cast<double>(gamma_factor_terms);
  // sum_{n>M} [log(1 + x/n) - x/n] = -x^2/2 sum n^-2 + x^3/3 sum n^-3 - ...
  const double s3 = 1.0 / (2.0 * (m + 0.5) * (m + 0.5));
  product.add_log(-0.5 * x * x * trigamma(m + 1.0) + x * x * x / 3.0 * s3);

  auto r = product.result(0.0);
  // Omitted zeros: sum_{gamma > gamma_K} |beta^2 - beta| / gamma^2 ~ |beta^2 - beta| log(gamma_K) / (pi gamma_K).
  if (zero_count > 0) {
    const double gk = zeros[zero_count - 1];
    r.error_estimate = std::abs(r.value) * std::abs(b2) * std::log(gk / kTwoPi + 1.0) / (kPi * gk);
  } else {
    r.error_estimate = std::abs(r.value);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Explicit formula

/// psi(x) from the zeros:
///   x - 2 sum_{k <= K} Re(x^{rho_k} / rho_k) - ln 2 pi - 1/2 ln(1 - x^{-2}),
/// with rho_k = 1/2 + i gamma_k. Warns within 1e-6 of a prime power, where
/// psi jumps and the formula converges to the midpoint.
inline EvaluationResult explicit_formula_psi(double x, const ZetaZeroTable& zeros, std::size_t zero_count) {
  if (!(x > 1.0) || !std::isfinite(x)) throw DomainError("explicit_formula_psi: requires x > 1");
  if (zero_count > zeros.size()) throw InvalidArgument("explicit_formula_psi: zero_count exceeds table size");
  const double lx = std::log(x);
  CompensatedSum<double> sum;
  sum.add(x);
  sum.add(-kLogTwoPi);
  sum.add(-0.5 * std::log1p(-1.0 / (x * x)));
  double last = 0.0;
  for (std::size_t k = 0; k < zero_count; ++k) {
    const Complex rho(0.5, zeros[k]);
    const double term = 2.0 * (std::exp(rho * lx) / rho).real();
    sum.add(-term);
    last = std::abs(term);
  }
  EvaluationResult r;
  r.value = sum.value();
  r.log_value = std::log(r.value);
  r.error_estimate = zero_count > 0 ? last : std::sqrt(x);
  r.terms_used = zero_count;
  if (near_prime_power(x, 1e-6)) r.warning = "explicit_formula_psi: x is within 1e-6 of a prime power";
  return r;
}

}  // namespace spz
