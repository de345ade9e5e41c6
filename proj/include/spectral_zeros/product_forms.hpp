#pragma once

// Zero/pole sets and partition functions written as products over them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "spectral_zeros/core_numerics.hpp"
#include "spectral_zeros/spectra.hpp"

namespace spz {

enum class ZeroKind { zero, pole };
enum class Symmetry { none, conjugate, reflection };
enum class Pairing { unpaired, conjugate_pairs, reflection_pairs };

struct ZeroEntry {
  Complex location;
  int multiplicity = 1;
  ZeroKind kind = ZeroKind::zero;
};

namespace detail {

inline bool same_location(Complex a, Complex b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a));
}

}  // namespace detail

/// Zeros and poles of a meromorphic function, with an optional symmetry tag.
///
/// Entries are kept in canonical factor order (ascending |location|, ties by
/// argument). Coincident entries are merged on construction; a zero and a pole
/// at one location cancel down to their net multiplicity. A symmetry tag is
/// validated: `conjugate` requires closure under z -> conj(z), `reflection`
/// closure under z -> -conj(z).
class ZeroSet {
 public:
  ZeroSet() = default;

  ZeroSet(std::vector<ZeroEntry> entries, Symmetry symmetry) : symmetry_(symmetry) {
    for (const auto& e : entries) {
      if (e.multiplicity < 1) throw InvalidArgument("ZeroSet: multiplicity must be positive");
      if (!std::isfinite(e.location.real()) || !std::isfinite(e.location.imag())) {
        throw InvalidArgument("ZeroSet: non-finite location");
      }
    }
    std::stable_sort(entries.begin(), entries.end(), canonical_less);
    for (const auto& e : entries) merge(e);
    std::erase_if(entries_, [](const ZeroEntry& e) { return e.multiplicity == 0; });
    std::stable_sort(entries_.begin(), entries_.end(), canonical_less);
    if (symmetry_ == Symmetry::conjugate) check_closed([](Complex z) { return std::conj(z); }, "conjugation");
    if (symmetry_ == Symmetry::reflection) check_closed([](Complex z) { return -std::conj(z); }, "reflection");
  }

  const std::vector<ZeroEntry>& entries() const noexcept { return entries_; }
  Symmetry symmetry() const noexcept { return symmetry_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Index range [first, last) of entries whose modulus is within tolerance of `radius`.
  std::pair<std::size_t, std::size_t> radius_window(double radius) const {
    const double tol = 1e-12 * std::max(1.0, radius);
    auto lo = std::lower_bound(entries_.begin(), entries_.end(), radius - tol,
                               [](const ZeroEntry& e, double r) { return std::abs(e.location) < r; });
    auto hi = std::upper_bound(lo, entries_.end(), radius + tol,
                               [](double r, const ZeroEntry& e) { return r < std::abs(e.location); });
    return {static_cast<std::size_t>(lo - entries_.begin()), static_cast<std::size_t>(hi - entries_.begin())};
  }

 private:
  static bool canonical_less(const ZeroEntry& a, const ZeroEntry& b) {
    const double ra = std::abs(a.location);
    const double rb = std::abs(b.location);
    if (ra != rb) return ra < rb;
    return std::arg(a.location) < std::arg(b.location);
  }

  // Input arrives sorted by modulus, so coincident entries sit in a short trailing window.
  void merge(const ZeroEntry& e) {
    const double radius = std::abs(e.location);
    const double tol = 1e-12 * std::max(1.0, radius);
    for (std::size_t i = entries_.size(); i-- > 0;) {
      auto& existing = entries_[i];
      if (std::abs(existing.location) < radius - tol) break;
      if (!detail::same_location(existing.location, e.location)) continue;
      const int net = (existing.kind == ZeroKind::zero ? existing.multiplicity : -existing.multiplicity) +
                      (e.kind == ZeroKind::zero ? e.multiplicity : -e.multiplicity);
      existing.kind = net >= 0 ? ZeroKind::zero : ZeroKind::pole;
      existing.multiplicity = std::abs(net);
      return;
    }
    entries_.push_back(e);
  }

  template <typename Map>
  void check_closed(Map image, const char* name) const {
    for (const auto& e : entries_) {
      const Complex target = image(e.location);
      const auto [first, last] = radius_window(std::abs(target));
      bool found = false;
      for (std::size_t j = first; j < last && !found; ++j) {
        const auto& o = entries_[j];
        found = o.kind == e.kind && o.multiplicity == e.multiplicity && detail::same_location(o.location, target);
      }
      if (!found) throw InvalidArgument(std::string("ZeroSet: entries not closed under ") + name);
    }
  }

  std::vector<ZeroEntry> entries_;
  Symmetry symmetry_ = Symmetry::none;
};

inline Pairing default_pairing(const ZeroSet& zeros) {
  switch (zeros.symmetry()) {
    case Symmetry::conjugate: return Pairing::conjugate_pairs;
    case Symmetry::reflection: return Pairing::reflection_pairs;
    case Symmetry::none: break;
  }
  return Pairing::unpaired;
}

/// Poles of the oscillator partition function, beta = 2 pi i k / E0 for
/// k = -count..count. k = 0 is included: the closed form diverges like
/// 1/(beta E0) at the origin.
inline ZeroSet oscillator_pole_set(double e0, int count) {
  if (!(e0 > 0.0)) throw InvalidArgument("oscillator_pole_set: E0 must be positive");
  if (count < 1) throw InvalidArgument("oscillator_pole_set: count must be >= 1");
  std::vector<ZeroEntry> entries;
  entries.reserve(2 * static_cast<std::size_t>(count) + 1);
  for (int k = -count; k <= count; ++k) {
    entries.push_back({Complex(0.0, kTwoPi * k / e0), 1, ZeroKind::pole});
  }
  return ZeroSet(std::move(entries), Symmetry::conjugate);
}

namespace detail {

inline void check_oscillator_pole(Complex x, double e0, const char* who) {
  const double k = std::round(x.imag() / kTwoPi);
  if (std::abs(x - Complex(0.0, kTwoPi * k)) < 1e-12) {
    throw PoleError(std::string(who) + ": pole at beta = 2 pi i k / E0", Complex(0.0, kTwoPi * k / e0),
                    static_cast<long long>(k));
  }
}

// sum_{n=1}^{N} log(1 + c / n^2)
inline Complex log_sinh_product(Complex c, std::size_t n_factors) {
  CompensatedSum<Complex> sum;
  for (std::size_t n = n_factors; n >= 1; --n) {
    const double nn = static_cast<double>(n);
    sum.add(spz::log1p(c / (nn * nn)));
  }
  return sum.value();
}

}  // namespace detail

/// Oscillator partition function as a product over its poles:
///   Z = [ x prod_{n>0} (1 + x^2 / (4 pi^2 n^2)) ]^{-1},  x = beta E0,
/// which follows from 1 - e^{-x} = x e^{-x/2} prod (1 + x^2/4 pi^2 n^2).
///
/// With `tail_correction`, the omitted factors are estimated by
/// exp(-c psi'(N+1)), c = x^2/(4 pi^2); the leftover error is O(c^2 / N^3).
inline EvaluationResult pole_product_oscillator(Complex beta, double e0, std::size_t n_factors,
                                                bool tail_correction) {
  if (!(e0 > 0.0)) throw InvalidArgument("pole_product_oscillator: E0 must be positive");
  if (n_factors < 1) throw InvalidArgument("pole_product_oscillator: n_factors must be >= 1");
  const Complex x = beta * e0;
  detail::check_oscillator_pole(x, e0, "pole_product_oscillator");

  const Complex c = x * x / (4.0 * kPi * kPi);
  const double n = static_cast<double>(n_factors);
  Complex log_den = std::log(x) + detail::log_sinh_product(c, n_factors);
  double rel_err = std::abs(c) * trigamma(n + 1.0);
  if (tail_correction) {
    log_den += c * trigamma(n + 1.0);
    rel_err = std::norm(c) / (6.0 * n * n * n);
  }
  auto r = result_from_log(-log_den, 0.0, n_factors);
  r.error_estimate = rel_err * std::abs(r.value);
  return r;
}

/// The pole product with the factors placed in the numerator and an
/// exp(-x/2) prefactor:  exp(-x/2)/x * prod_{n>0}(1 + x^2/4 pi^2 n^2).
/// This does NOT equal the closed form; it is kept so the discrepancy can be
/// demonstrated and regression-tested.
inline EvaluationResult pole_product_oscillator_uncorrected(Complex beta, double e0, std::size_t n_factors,
                                                            bool tail_correction) {
  if (!(e0 > 0.0)) throw InvalidArgument("pole_product_oscillator_uncorrected: E0 must be positive");
  if (n_factors < 1) throw InvalidArgument("pole_product_oscillator_uncorrected: n_factors must be >= 1");
  const Complex x = beta * e0;
  if (std::abs(x) < 1e-12) throw PoleError("pole_product_oscillator_uncorrected: pole at beta = 0", 0.0, 0);
  const Complex c = x * x / (4.0 * kPi * kPi);
  Complex log_value = -0.5 * x - std::log(x) + detail::log_sinh_product(c, n_factors);
  if (tail_correction) log_value += c * trigamma(static_cast<double>(n_factors) + 1.0);
  return result_from_log(log_value, 0.0, n_factors);
}

struct DualitySpacing {
  double delta_energy;
  Complex delta_beta;
  Complex product;
};

/// Level spacing, pole spacing 2 pi i / gap, and their product 2 pi i.
///
/// The product is returned as the identity value 2 pi i; delta_energy *
/// delta_beta reproduces it up to one rounding.
inline DualitySpacing duality_spacing(const Spectrum& spec) {
  if (!spec.equally_spaced()) {
    throw UnsupportedSpectrum("duality_spacing: requires an oscillator or affine spectrum");
  }
  const double gap = spec.spacing();
  return {gap, Complex(0.0, kTwoPi / gap), Complex(0.0, kTwoPi)};
}

/// Weierstrass product over a zero/pole set evaluated in the log domain.
///
/// Each entry a != 0 contributes (1 - z/a) (genus 0) or (1 - z/a) exp(z/a)
/// (genus 1), raised to its multiplicity and inverted for poles. An entry at
/// the origin contributes z^{+-m}. With a pairing strategy, an entry and its
/// image (conj(a) or -conj(a)) are combined into one factor before the log is
/// taken, so partial products of symmetric sets stay on one branch.
inline EvaluationResult general_weierstrass_eval(Complex z, const ZeroSet& zeros, int genus, Pairing pairing) {
  if (genus != 0 && genus != 1) throw InvalidArgument("general_weierstrass_eval: genus must be 0 or 1");
  if (pairing == Pairing::conjugate_pairs && zeros.symmetry() != Symmetry::conjugate) {
    throw InvalidArgument("general_weierstrass_eval: conjugate pairing needs a conjugation-closed set");
  }
  if (pairing == Pairing::reflection_pairs && zeros.symmetry() != Symmetry::reflection) {
    throw InvalidArgument("general_weierstrass_eval: reflection pairing needs a reflection-closed set");
  }

  const auto& entries = zeros.entries();
  std::vector<bool> used(entries.size(), false);

  auto check_hit = [&](std::size_t idx) {
    const auto& e = entries[idx];
    if (!detail::same_location(z, e.location)) return;
    if (e.kind == ZeroKind::zero) {
      throw ZeroHitError("general_weierstrass_eval: z coincides with a zero", e.location,
                         static_cast<long long>(idx));
    }
    throw PoleError("general_weierstrass_eval: z coincides with a pole", e.location, static_cast<long long>(idx));
  };

  auto find_partner = [&](std::size_t idx, Complex target) -> std::optional<std::size_t> {
    const auto& self = entries[idx];
    const auto [first, last] = zeros.radius_window(std::abs(target));
    for (std::size_t j = first; j < last; ++j) {
      const auto& cand = entries[j];
      if (j != idx && !used[j] && cand.kind == self.kind && cand.multiplicity == self.multiplicity &&
          detail::same_location(cand.location, target)) {
        return j;
      }
    }
    return std::nullopt;
  };

  CompensatedSum<Complex> log_sum;
  double last_deviation = 0.0;
  std::size_t groups = 0;

  for (std::size_t idx = 0; idx < entries.size(); ++idx) {
    if (used[idx]) continue;
    used[idx] = true;
    const auto& e = entries[idx];
    check_hit(idx);
    const double sign = (e.kind == ZeroKind::zero ? 1.0 : -1.0) * e.multiplicity;

    if (e.location == Complex(0.0, 0.0)) {
      log_sum.add(sign * std::log(z));
      ++groups;
      continue;
    }

    const Complex inv = 1.0 / e.location;
    Complex deviation;     // factor - 1
    Complex exponent = 0;  // genus-1 convergence exponent
    std::optional<std::size_t> partner;
    if (pairing == Pairing::conjugate_pairs && e.location.imag() != 0.0) {
      partner = find_partner(idx, std::conj(e.location));
      if (partner) {
        // (1 - z/a)(1 - z/conj a) = 1 - 2 z Re(1/a) + z^2 / |a|^2
        deviation = -2.0 * z * inv.real() + z * z * std::norm(inv);
        exponent = 2.0 * z * inv.real();
      }
    } else if (pairing == Pairing::reflection_pairs && e.location.real() != 0.0) {
      partner = find_partner(idx, -std::conj(e.location));
      if (partner) {
        // (1 - z/a)(1 + z/conj a) = 1 - 2 i z Im(1/a) - z^2 / |a|^2
        deviation = Complex(0.0, -2.0) * z * inv.imag() - z * z * std::norm(inv);
        exponent = Complex(0.0, 2.0) * z * inv.imag();
      }
    }
    if (partner) {
      used[*partner] = true;
      check_hit(*partner);
    } else {
      deviation = -z * inv;
      exponent = z * inv;
    }
    if (deviation == Complex(-1.0, 0.0)) {
      // Exact cancellation without an exact location hit (z on the pair's product zero).
      if (e.kind == ZeroKind::zero) {
        throw ZeroHitError("general_weierstrass_eval: product vanishes at z", e.location, static_cast<long long>(idx));
      }
      throw PoleError("general_weierstrass_eval: product has a pole at z", e.location, static_cast<long long>(idx));
    }
    Complex log_factor = spz::log1p(deviation);
    if (genus == 1) log_factor += exponent;
    log_sum.add(sign * log_factor);
    last_deviation = std::abs(deviation);
    ++groups;
  }
  return result_from_log(log_sum.value(), last_deviation, groups);
}

}  // namespace spz
