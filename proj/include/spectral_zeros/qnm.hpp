#pragma once

// Quasinormal-mode partition functions: the zeta-regularized one-loop
// determinant, the zero-product partition function over the modes, and the
// asymptotic spacing fit of a mode list.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "spectral_zeros/core_numerics.hpp"
#include "spectral_zeros/product_forms.hpp"

namespace spz {

/// A finite list of quasinormal frequencies plus the thermal and classical
/// data needed by the partition functions.
struct QNMSpectrum {
  std::vector<Complex> modes;
  double temperature = 1.0;
  std::vector<double> pol_coefficients;  // Pol(Delta) = sum c_k Delta^k
  double euclidean_action = 0.0;
  Symmetry symmetry = Symmetry::none;  // none or reflection (z -> -conj z)

  /// Throws InvalidArgument when an invariant is violated.
  void validate() const {
    if (modes.empty()) throw InvalidArgument("QNMSpectrum: no modes");
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
      throw InvalidArgument("QNMSpectrum: temperature must be positive and finite");
    }
    if (!(euclidean_action >= 0.0) || !std::isfinite(euclidean_action)) {
      throw InvalidArgument("QNMSpectrum: action must be finite and >= 0");
    }
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const Complex z = modes[i];
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidArgument("QNMSpectrum: mode " + std::to_string(i) + " is not finite");
      }
      if (z == Complex(0.0, 0.0)) throw InvalidArgument("QNMSpectrum: mode " + std::to_string(i) + " is zero");
    }
    if (symmetry == Symmetry::conjugate) {
      throw InvalidArgument("QNMSpectrum: symmetry must be none or reflection");
    }
    if (symmetry == Symmetry::reflection) {
      for (std::size_t i = 0; i < modes.size(); ++i) {
        const Complex image = -std::conj(modes[i]);
        const bool closed = std::any_of(modes.begin(), modes.end(),
                                        [&](Complex m) { return std::abs(m - image) <= 1e-12 * std::max(1.0, std::abs(image)); });
        if (!closed) {
          throw InvalidArgument("QNMSpectrum: mode " + std::to_string(i) + " has no reflection partner");
        }
      }
    }
  }

  double pol(double delta) const {
    double acc = 0.0;
    for (auto it = pol_coefficients.rbegin(); it != pol_coefficients.rend(); ++it) acc = acc * delta + *it;
    return acc;
  }
};

/// Zeta-regularized log of prod_{n>=0} (n + a)^{-1}:  log Gamma(a) - 1/2 ln 2 pi.
inline Complex gamma_regularized_tower(Complex a) {
  try {
    return log_gamma(a) - 0.5 * kLogTwoPi;
  } catch (const PoleError& e) {
    throw PoleError("gamma_regularized_tower: a is a non-positive integer", e.location(), e.index());
  }
}

/// log Z_B = Pol(Delta) + sum_z [ ln(|z| / 2 pi T) + tower(i z / 2 pi T) + tower(-i conj(z) / 2 pi T) ].
///
/// PoleError::index() is the offending mode index; the message names which
/// tower argument hit the pole.
inline Complex one_loop_log_partition(const QNMSpectrum& spec, double delta = 0.0) {
  spec.validate();
  const double scale = kTwoPi * spec.temperature;
  CompensatedSum<Complex> sum;
  sum.add(spec.pol(delta));
  for (std::size_t i = 0; i < spec.modes.size(); ++i) {
    const Complex z = spec.modes[i];
    const Complex a = Complex(0.0, 1.0) * z / scale;
    const Complex b = Complex(0.0, -1.0) * std::conj(z) / scale;
    sum.add(std::log(std::abs(z) / scale));
    for (int which = 0; which < 2; ++which) {
      const Complex arg = which == 0 ? a : b;
      try {
        sum.add(gamma_regularized_tower(arg));
      } catch (const PoleError&) {
        throw PoleError("one_loop_log_partition: mode " + std::to_string(i) +
                            (which == 0 ? " puts i z/2piT" : " puts -i conj(z)/2piT") +
                            " on a non-positive integer",
                        z, static_cast<long long>(i));
      }
    }
  }
  return sum.value();
}

/// Partition function with the modes as its zeros:
///   log Z(z) = -S_E + sum_modes log(1 - z / z*),
/// evaluated over the finite mode list. Builds its ZeroSet once, so repeated
/// evaluation (grid scans) is cheap.
class ConjecturedPartition {
 public:
  ConjecturedPartition(QNMSpectrum spec, Pairing pairing) : spec_(std::move(spec)), pairing_(pairing) {
    spec_.validate();
    if (pairing_ == Pairing::reflection_pairs && spec_.symmetry != Symmetry::reflection) {
      throw InvalidArgument("conjectured_partition_log: reflection pairing needs a reflection-symmetric spectrum");
    }
    Symmetry tag = Symmetry::none;
    if (pairing_ == Pairing::reflection_pairs) tag = Symmetry::reflection;
    if (pairing_ == Pairing::conjugate_pairs) tag = Symmetry::conjugate;
    std::vector<ZeroEntry> entries;
    entries.reserve(spec_.modes.size());
    for (Complex m : spec_.modes) entries.push_back({m, 1, ZeroKind::zero});
    zeros_ = ZeroSet(std::move(entries), tag);
  }

  /// ZeroHitError::index() is the index of the hit mode in the input list.
  EvaluationResult operator()(Complex z) const {
    EvaluationResult r;
    try {
      r = general_weierstrass_eval(z, zeros_, 0, pairing_);
    } catch (const ZeroHitError& e) {
      throw ZeroHitError("conjectured_partition_log: z coincides with a mode", e.location(),
                         static_cast<long long>(mode_index(e.location())));
    }
    r.log_value -= spec_.euclidean_action;
    r.value = std::exp(r.log_value);
    return r;
  }

  const QNMSpectrum& spectrum() const noexcept { return spec_; }
  const ZeroSet& zeros() const noexcept { return zeros_; }

 private:
  std::size_t mode_index(Complex location) const {
    for (std::size_t i = 0; i < spec_.modes.size(); ++i) {
      if (detail::same_location(spec_.modes[i], location)) return i;
    }
    return spec_.modes.size();
  }

  QNMSpectrum spec_;
  Pairing pairing_;
  ZeroSet zeros_;
};

inline EvaluationResult conjectured_partition_log(Complex z, const QNMSpectrum& spec, Pairing pairing) {
  return ConjecturedPartition(spec, pairing)(z);
}

struct SpacingFit {
  Complex gap;
  Complex offset;
  double residual_rms;  // RMS deviation from the fitted line, in units of |gap|
};

/// Least-squares fit z_n ~ offset + n gap over the last ceil(tail_fraction N)
/// modes, n being the index in the full list. Modes must be sorted by
/// ascending |Im z|.
inline SpacingFit asymptotic_spacing_fit(const QNMSpectrum& spec, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw InvalidArgument("asymptotic_spacing_fit: tail_fraction must lie in (0, 1]");
  }
  const auto& modes = spec.modes;
  for (std::size_t i = 1; i < modes.size(); ++i) {
    if (std::abs(modes[i].imag()) < std::abs(modes[i - 1].imag())) {
      throw InvalidArgument("asymptotic_spacing_fit: modes must be sorted by ascending |Im|");
    }
  }
  const std::size_t n_total = modes.size();
  const auto m = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n_total) - 1e-12));
  if (m < 3) throw InvalidArgument("asymptotic_spacing_fit: fewer than 3 modes in the fitted tail");

  const std::size_t first = n_total - m;
  double mean_n = 0.0;
  Complex mean_z = 0.0;
  for (std::size_t n = first; n < n_total; ++n) {
    mean_n += static_cast<double>(n);
    mean_z += modes[n];
  }
  mean_n /= static_cast<double>(m);
  mean_z /= static_cast<double>(m);
  double sxx = 0.0;
  Complex sxz = 0.0;
  for (std::size_t n = first; n < n_total; ++n) {
    const double dn = static_cast<double>(n) - mean_n;
    sxx += dn * dn;
    sxz += dn * (modes[n] - mean_z);
  }
  const Complex gap = sxz / sxx;
  const Complex offset = mean_z - gap * mean_n;
  double ss = 0.0;
  for (std::size_t n = first; n < n_total; ++n) {
    ss += std::norm(modes[n] - (offset + gap * static_cast<double>(n)));
  }
  const double rms = std::sqrt(ss / static_cast<double>(m));
  const double scale = std::abs(gap);
  return {gap, offset, scale > 0.0 ? rms / scale : std::numeric_limits<double>::infinity()};
}

// ---------------------------------------------------------------------------
// Synthetic spectra

/// z_n = offset + n gap, n = 0..count-1.
inline QNMSpectrum synthetic_affine_spectrum(std::size_t count, Complex offset, Complex gap,
                                             double temperature = 1.0, double action = 0.0) {
  QNMSpectrum spec;
  spec.temperature = temperature;
  spec.euclidean_action = action;
  for (std::size_t n = 0; n < count; ++n) spec.modes.push_back(offset + static_cast<double>(n) * gap);
  return spec;
}

/// Affine spectrum with each mode displaced by amplitude * (u + i v), u, v uniform in [-1, 1].
inline QNMSpectrum synthetic_perturbed_spectrum(std::size_t count, Complex offset, Complex gap, double amplitude,
                                                std::uint64_t seed, double temperature = 1.0) {
  auto spec = synthetic_affine_spectrum(count, offset, gap, temperature);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& z : spec.modes) {
    const double dr = u(rng);
    const double di = u(rng);
    z += amplitude * Complex(dr, di);
  }
  return spec;
}

/// Modes +-re_part + i (im_offset + n im_gap) for n = 0..pairs-1: closed under z -> -conj(z).
inline QNMSpectrum synthetic_reflection_spectrum(std::size_t pairs, double re_part, double im_offset, double im_gap,
                                                 double temperature = 1.0, double action = 0.0) {
  QNMSpectrum spec;
  spec.temperature = temperature;
  spec.euclidean_action = action;
  spec.symmetry = Symmetry::reflection;
  for (std::size_t n = 0; n < pairs; ++n) {
    const double im = im_offset + static_cast<double>(n) * im_gap;
    spec.modes.emplace_back(re_part, im);
    spec.modes.emplace_back(-re_part, im);
  }
  return spec;
}

}  // namespace spz
