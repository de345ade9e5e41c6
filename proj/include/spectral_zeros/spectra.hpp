#pragma once

// Energy spectra and their partition functions by direct Boltzmann summation.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spectral_zeros/core_numerics.hpp"
#include "spectral_zeros/text_table.hpp"

namespace spz {

enum class SpectrumKind { oscillator, primon, affine, explicit_levels };

/// Immutable energy-level sequence.
///
/// - oscillator(E0): E_n = (n + 1/2) E0, n >= 0
/// - primon:         E_n = ln n,          n >= 1
/// - affine(a, d):   E_n = a + n d,       n >= 0
/// - explicit:       a finite ascending list, n >= 0
class Spectrum {
 public:
  static Spectrum oscillator(double e0, std::string label = "oscillator") {
    if (!(e0 > 0.0) || !std::isfinite(e0)) throw InvalidArgument("oscillator: E0 must be positive and finite");
    return Spectrum(SpectrumKind::oscillator, 0.5 * e0, e0, {}, std::move(label));
  }

  static Spectrum primon(std::string label = "primon") {
    return Spectrum(SpectrumKind::primon, 0.0, 0.0, {}, std::move(label));
  }

  static Spectrum affine(double offset, double gap, std::string label = "affine") {
    if (!(gap > 0.0) || !std::isfinite(gap)) throw InvalidArgument("affine: gap must be positive and finite");
    if (!std::isfinite(offset)) throw InvalidArgument("affine: offset must be finite");
    return Spectrum(SpectrumKind::affine, offset, gap, {}, std::move(label));
  }

  static Spectrum explicit_levels(std::vector<double> levels, std::string label = "explicit") {
    if (levels.empty()) throw InvalidArgument("explicit spectrum: no levels");
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (!std::isfinite(levels[i])) throw InvalidArgument("explicit spectrum: non-finite level");
      if (i > 0 && !(levels[i] > levels[i - 1])) {
        throw InvalidArgument("explicit spectrum: levels must be strictly ascending (index " + std::to_string(i) + ")");
      }
    }
    return Spectrum(SpectrumKind::explicit_levels, 0.0, 0.0, std::move(levels), std::move(label));
  }

  SpectrumKind kind() const noexcept { return kind_; }
  const std::string& label() const noexcept { return label_; }

  /// E0 for oscillators, gap for affine spectra.
  double spacing() const noexcept { return gap_; }
  /// Ground level for oscillator/affine (E0/2 or offset).
  double offset() const noexcept { return offset_; }
  const std::vector<double>& levels() const noexcept { return levels_; }

  bool equally_spaced() const noexcept {
    return kind_ == SpectrumKind::oscillator || kind_ == SpectrumKind::affine;
  }

 private:
  Spectrum(SpectrumKind kind, double offset, double gap, std::vector<double> levels, std::string label)
      : kind_(kind), offset_(offset), gap_(gap), levels_(std::move(levels)), label_(std::move(label)) {}

  SpectrumKind kind_;
  double offset_;
  double gap_;
  std::vector<double> levels_;
  std::string label_;
};

/// The n-th level of the spectrum.
inline double energy_level(const Spectrum& spec, long long n) {
  if (n < 0) throw IndexError("energy_level: negative index");
  switch (spec.kind()) {
    case SpectrumKind::oscillator:
      return (static_cast<double>(n) + 0.5) * spec.spacing();
    case SpectrumKind::primon:
      if (n == 0) throw IndexError("energy_level: primon levels start at n = 1");
      return std::log(static_cast<double>(n));
    case SpectrumKind::affine:
      return spec.offset() + static_cast<double>(n) * spec.spacing();
    case SpectrumKind::explicit_levels:
      if (static_cast<std::size_t>(n) >= spec.levels().size()) {
        throw IndexError("energy_level: index beyond the explicit level list");
      }
      return spec.levels()[static_cast<std::size_t>(n)];
  }
  return 0.0;
}

enum class TailMode { none, geometric };

inline std::size_t default_term_count(const Spectrum& spec) {
  return spec.kind() == SpectrumKind::primon ? 100'000 : 1'000;
}

/// Z(beta) = sum_n exp(-beta E_n), truncated after `n_terms` levels.
///
/// For primon the summed levels are n = 1..n_terms, so the result is the
/// truncated Dirichlet series of zeta(beta). With TailMode::geometric the exact
/// remainder of an equally spaced spectrum is added; other kinds ignore it.
/// error_estimate bounds the omitted tail.
inline EvaluationResult partition_direct(const Spectrum& spec, Complex beta,
                                         std::optional<std::size_t> n_terms = std::nullopt,
                                         TailMode tail = TailMode::none) {
  const std::size_t count = n_terms.value_or(default_term_count(spec));
  if (count < 1) throw InvalidArgument("partition_direct: n_terms must be >= 1");
  const double sigma = beta.real();

  switch (spec.kind()) {
    case SpectrumKind::oscillator:
    case SpectrumKind::affine: {
      const double gap = spec.spacing();
      if (!(sigma * gap > 0.0)) {
        throw DomainError("partition_direct: sum diverges unless Re(beta) * gap > 0");
      }
      // Terms decrease geometrically; add smallest first.
      CompensatedSum<Complex> sum;
      for (std::size_t i = count; i-- > 0;) {
        sum.add(std::exp(-beta * energy_level(spec, static_cast<long long>(i))));
      }
      const Complex first_omitted = std::exp(-beta * energy_level(spec, static_cast<long long>(count)));
      const Complex denom = -spz::expm1(-beta * gap);  // 1 - exp(-beta gap)
      if (tail == TailMode::geometric) {
        sum.add(first_omitted / denom);
        return result_from_value(sum.value(), std::numeric_limits<double>::epsilon() * std::abs(sum.value()), count);
      }
      const double bound = std::abs(first_omitted) / (-std::expm1(-sigma * gap));
      return result_from_value(sum.value(), bound, count);
    }
    case SpectrumKind::primon: {
      if (!(sigma > 1.0)) {
        throw DomainError("partition_direct: primon sum converges only for Re(beta) > 1 (abscissa of convergence 1)");
      }
      CompensatedSum<Complex> sum;
      for (std::size_t n = count; n >= 1; --n) {
        sum.add(std::exp(-beta * std::log(static_cast<double>(n))));
      }
      // integral bound of sum_{n > N} n^{-sigma}
      const double bound = std::pow(static_cast<double>(count), 1.0 - sigma) / (sigma - 1.0);
      return result_from_value(sum.value(), bound, count);
    }
    case SpectrumKind::explicit_levels: {
      const auto& levels = spec.levels();
      const std::size_t used = std::min(count, levels.size());
      CompensatedSum<Complex> sum;
      for (std::size_t i = used; i-- > 0;) sum.add(std::exp(-beta * levels[i]));
      double bound = 0.0;
      if (used < levels.size()) {
        bound = std::exp(-sigma * levels[used]) * static_cast<double>(levels.size() - used);
      }
      return result_from_value(sum.value(), bound, used);
    }
  }
  return {};
}

/// exp(-beta a) / (1 - exp(-beta d)): the resummed partition function of an
/// affine spectrum, continued to the whole beta plane.
///
/// Throws PoleError carrying k when beta d is within 1e-12 of 2 pi i k.
inline Complex closed_form_affine(Complex beta, double offset, double gap) {
  if (!(gap > 0.0)) throw InvalidArgument("closed_form_affine: gap must be positive");
  const Complex x = beta * gap;
  const double k = std::round(x.imag() / kTwoPi);
  if (std::abs(x - Complex(0.0, kTwoPi * k)) < 1e-12) {
    throw PoleError("partition function pole at beta = 2 pi i k / gap", Complex(0.0, kTwoPi * k / gap),
                    static_cast<long long>(k));
  }
  return std::exp(-beta * offset) / (-spz::expm1(-x));
}

/// exp(-beta E0 / 2) / (1 - exp(-beta E0)), evaluated as 1 / (2 sinh(beta E0 / 2)).
inline Complex closed_form_oscillator(Complex beta, double e0) {
  if (!(e0 > 0.0)) throw InvalidArgument("closed_form_oscillator: E0 must be positive");
  const Complex x = beta * e0;
  const double k = std::round(x.imag() / kTwoPi);
  if (std::abs(x - Complex(0.0, kTwoPi * k)) < 1e-12) {
    throw PoleError("oscillator partition pole at beta = 2 pi i k / E0", Complex(0.0, kTwoPi * k / e0),
                    static_cast<long long>(k));
  }
  return 1.0 / (2.0 * std::sinh(0.5 * x));
}

/// Explicit spectrum from a text file: one level per line, ascending, '#' comments.
inline Spectrum load_levels_file(const std::string& path) {
  auto rows = read_real_column(path);
  if (rows.empty()) throw ParseError("levels file '" + path + "' contains no levels", 0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].value > rows[i - 1].value)) {
      throw ParseError("levels file '" + path + "': levels not strictly ascending", rows[i].line);
    }
  }
  std::vector<double> levels;
  levels.reserve(rows.size());
  for (const auto& r : rows) levels.push_back(r.value);
  return Spectrum::explicit_levels(std::move(levels), path);
}

}  // namespace spz
