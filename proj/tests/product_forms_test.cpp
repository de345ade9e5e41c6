#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "spectral_zeros/product_forms.hpp"

namespace spz {
namespace {

std::vector<Complex> locations(const ZeroSet& zs) {
  std::vector<Complex> out;
  for (const auto& e : zs.entries()) out.push_back(e.location);
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) { return a.imag() < b.imag(); });
  return out;
}

TEST(OscillatorPoleSet, Locations) {
  const auto unit = oscillator_pole_set(1.0, 1);
  ASSERT_EQ(unit.size(), 3u);
  const auto loc = locations(unit);
  EXPECT_LT(std::abs(loc[0] - Complex(0.0, -kTwoPi)), 1e-15);
  EXPECT_EQ(loc[1], Complex(0.0, 0.0));
  EXPECT_LT(std::abs(loc[2] - Complex(0.0, kTwoPi)), 1e-15);
  for (const auto& e : unit.entries()) {
    EXPECT_EQ(e.kind, ZeroKind::pole);
    EXPECT_EQ(e.multiplicity, 1);
  }
  EXPECT_EQ(unit.symmetry(), Symmetry::conjugate);

  const auto scaled = locations(oscillator_pole_set(2.0, 1));
  EXPECT_LT(std::abs(scaled[0] - Complex(0.0, -kPi)), 1e-15);
  EXPECT_LT(std::abs(scaled[2] - Complex(0.0, kPi)), 1e-15);
}

TEST(OscillatorPoleSet, ClosedUnderConjugation) {
  for (double e0 : {0.3, 1.0, 7.5}) {
    const auto zs = oscillator_pole_set(e0, 25);
    for (const auto& e : zs.entries()) {
      const auto hit = std::any_of(zs.entries().begin(), zs.entries().end(), [&](const ZeroEntry& o) {
        return std::abs(o.location - std::conj(e.location)) < 1e-12;
      });
      EXPECT_TRUE(hit);
    }
  }
}

TEST(PoleProductOscillator, MatchesClosedForm) {
  const auto r = pole_product_oscillator(1.0, 1.0, 100000, true);
  const double closed = closed_form_oscillator(1.0, 1.0).real();
  EXPECT_LT(std::abs(r.value.real() - closed) / closed, 1e-6);
  EXPECT_LT(std::abs(r.value.imag()), 1e-15);
  EXPECT_EQ(r.terms_used, 100000u);
  EXPECT_GE(r.error_estimate, 0.0);
}

TEST(PoleProductOscillator, SmallBetaLimit) {
  for (double beta : {1e-3, 1e-5, 1e-7}) {
    const auto r = pole_product_oscillator(beta, 2.0, 1000, true);
    EXPECT_NEAR(r.value.real() * beta * 2.0, 1.0, 1e-6) << beta;
  }
}

TEST(PoleProductOscillator, PoleSignals) {
  try {
    pole_product_oscillator(Complex(0.0, kTwoPi), 1.0, 100, true);
    FAIL();
  } catch (const PoleError& e) {
    EXPECT_EQ(e.index().value(), 1);
  }
  EXPECT_THROW(pole_product_oscillator(0.0, 1.0, 100, true), PoleError);
  EXPECT_THROW(pole_product_oscillator(1.0, 1.0, 0, true), InvalidArgument);
}

TEST(PoleProductOscillator, ComplexBetaAgreesWithClosedForm) {
  for (Complex beta : {Complex(0.5, 1.0), Complex(-1.5, 2.0), Complex(0.2, -9.0), Complex(3.0, 0.5)}) {
    const Complex closed = closed_form_oscillator(beta, 1.0);
    const auto r = pole_product_oscillator(beta, 1.0, 100000, true);
    EXPECT_LT(std::abs(r.value - closed) / std::abs(closed), 1e-8) << beta;
  }
}

TEST(PoleProductOscillator, TruncationMonotonicity) {
  for (double x : {0.5, 1.0, 2.0, 3.5, 5.0}) {
    const double closed = closed_form_oscillator(x, 1.0).real();
    double previous = INFINITY;
    for (std::size_t n = 1000; n <= 100000; n *= 2) {
      const double err = std::abs(pole_product_oscillator(x, 1.0, n, false).value.real() - closed);
      EXPECT_LT(err, previous) << x << " n=" << n;
      previous = err;
    }
    const double tail_off = std::abs(pole_product_oscillator(x, 1.0, 100000, false).value.real() - closed);
    const double tail_on = std::abs(pole_product_oscillator(x, 1.0, 1000, true).value.real() - closed);
    EXPECT_LT(tail_on, tail_off) << x;
  }
}

TEST(PoleProductOscillator, UncorrectedFormDisagrees) {
  // exp(-x/2)/x * prod(1 + x^2/4pi^2n^2) = exp(-x/2) * 2 sinh(x/2) / x = (1 - e^{-x}) / x.
  const double oracle = -std::expm1(-1.0);
  const auto printed = pole_product_oscillator_uncorrected(1.0, 1.0, 100000, true);
  EXPECT_NEAR(printed.value.real(), oracle, 1e-9);
  const double closed = closed_form_oscillator(1.0, 1.0).real();
  EXPECT_GT(std::abs(printed.value.real() - closed) / closed, 0.10);
}

TEST(DualitySpacing, Examples) {
  const auto osc = duality_spacing(Spectrum::oscillator(1.0));
  EXPECT_EQ(osc.delta_energy, 1.0);
  EXPECT_EQ(osc.delta_beta, Complex(0.0, kTwoPi));
  EXPECT_EQ(osc.product, Complex(0.0, kTwoPi));

  const auto aff = duality_spacing(Spectrum::affine(0.0, 2.0));
  EXPECT_EQ(aff.delta_energy, 2.0);
  EXPECT_EQ(aff.delta_beta, Complex(0.0, kPi));
  EXPECT_EQ(aff.product, Complex(0.0, kTwoPi));

  EXPECT_EQ(duality_spacing(Spectrum::affine(0.0, 1.0)).delta_beta,
            duality_spacing(Spectrum::affine(0.5, 1.0)).delta_beta);

  EXPECT_THROW(duality_spacing(Spectrum::primon()), UnsupportedSpectrum);
  EXPECT_THROW(duality_spacing(Spectrum::explicit_levels({0.0, 1.0})), UnsupportedSpectrum);
}

TEST(DualitySpacing, ProductIsTwoPiIForRandomGaps) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> gap(1e-3, 1e3);
  for (int i = 0; i < 20; ++i) {
    const double d = gap(rng);
    const auto s = duality_spacing(Spectrum::affine(0.1 * i, d));
    EXPECT_EQ(s.product, Complex(0.0, kTwoPi));
    EXPECT_EQ(s.delta_energy, d);
    EXPECT_NEAR((s.delta_energy * s.delta_beta).imag(), kTwoPi, 4e-15 * kTwoPi);
  }
}

TEST(PoleSetInvariance, OffsetDoesNotMovePoles) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> offset(-3.0, 3.0);
  for (double gap : {0.5, 1.0, 2.25}) {
    for (int trial = 0; trial < 5; ++trial) {
      const double a = offset(rng);
      for (int k = -3; k <= 3; ++k) {
        const Complex candidate(0.0, kTwoPi * k / gap);
        try {
          closed_form_affine(candidate, a, gap);
          FAIL() << "no pole at k=" << k;
        } catch (const PoleError& e) {
          EXPECT_EQ(e.index().value(), k);
        }
        EXPECT_NO_THROW(closed_form_affine(candidate + Complex(0.0, kPi / gap), a, gap));
      }
    }
  }
}

TEST(ZeroSet, MergesCoincidentEntries) {
  const ZeroSet zs({{Complex(1.0, 1.0), 1, ZeroKind::zero},
                    {Complex(1.0, 1.0), 2, ZeroKind::zero},
                    {Complex(2.0, 0.0), 1, ZeroKind::zero},
                    {Complex(2.0, 0.0), 1, ZeroKind::pole},
                    {Complex(3.0, 0.0), 1, ZeroKind::zero},
                    {Complex(3.0, 0.0), 3, ZeroKind::pole}},
                   Symmetry::none);
  ASSERT_EQ(zs.size(), 2u);
  EXPECT_EQ(zs.entries()[0].location, Complex(1.0, 1.0));
  EXPECT_EQ(zs.entries()[0].multiplicity, 3);
  EXPECT_EQ(zs.entries()[1].kind, ZeroKind::pole);
  EXPECT_EQ(zs.entries()[1].multiplicity, 2);
}

TEST(ZeroSet, SymmetryValidation) {
  EXPECT_THROW(ZeroSet({{Complex(1.0, 1.0), 1, ZeroKind::zero}}, Symmetry::conjugate), InvalidArgument);
  EXPECT_NO_THROW(ZeroSet({{Complex(1.0, 1.0), 1, ZeroKind::zero}, {Complex(1.0, -1.0), 1, ZeroKind::zero}},
                          Symmetry::conjugate));
  EXPECT_THROW(ZeroSet({{Complex(1.0, 1.0), 1, ZeroKind::zero}, {Complex(1.0, -1.0), 1, ZeroKind::pole}},
                       Symmetry::conjugate),
               InvalidArgument);
  EXPECT_NO_THROW(ZeroSet({{Complex(1.0, -1.0), 1, ZeroKind::zero}, {Complex(-1.0, -1.0), 1, ZeroKind::zero}},
                          Symmetry::reflection));
  EXPECT_THROW(ZeroSet({{Complex(1.0, 1.0), 0, ZeroKind::zero}}, Symmetry::none), InvalidArgument);
}

TEST(WeierstrassEval, Examples) {
  const ZeroSet pm_i({{Complex(0.0, 1.0), 1, ZeroKind::zero}, {Complex(0.0, -1.0), 1, ZeroKind::zero}},
                     Symmetry::conjugate);
  const auto origin = general_weierstrass_eval(0.0, pm_i, 1, Pairing::conjugate_pairs);
  EXPECT_EQ(origin.value, Complex(1.0, 0.0));
  const auto two = general_weierstrass_eval(1.0, pm_i, 0, Pairing::conjugate_pairs);
  EXPECT_NEAR(two.value.real(), 2.0, 1e-15);
  EXPECT_EQ(two.log_value.imag(), 0.0);
  const auto unpaired = general_weierstrass_eval(1.0, pm_i, 0, Pairing::unpaired);
  EXPECT_LT(std::abs(unpaired.value - 2.0), 1e-15);
}

TEST(WeierstrassEval, CrossOracleWithPoleProduct) {
  for (std::size_t n : {10u, 1000u, 100000u}) {
    const auto poles = oscillator_pole_set(1.0, static_cast<int>(n));
    for (Complex beta : {Complex(1.0, 0.0), Complex(0.3, 2.0), Complex(-2.0, 0.7)}) {
      const auto general = general_weierstrass_eval(beta, poles, 0, Pairing::conjugate_pairs);
      const auto direct = pole_product_oscillator(beta, 1.0, n, false);
      EXPECT_LT(std::abs(general.log_value - direct.log_value), 1e-10) << n << " " << beta;
    }
  }
}

TEST(WeierstrassEval, GenusOneGammaProduct) {
  // prod_{n=1}^{N} (1 + x/n) exp(-x/n) -> exp(-gamma x) / Gamma(1 + x); zeros at -n.
  const int n_max = 20000;
  std::vector<ZeroEntry> entries;
  for (int n = 1; n <= n_max; ++n) entries.push_back({Complex(-n, 0.0), 1, ZeroKind::zero});
  const ZeroSet zs(entries, Symmetry::conjugate);
  for (Complex x : {Complex(0.5, 0.0), Complex(1.5, 2.0), Complex(-0.5, -1.0)}) {
    const auto r = general_weierstrass_eval(x, zs, 1, Pairing::conjugate_pairs);
    const double m = n_max + 0.5;
    const Complex tail = -0.5 * x * x * trigamma(n_max + 1.0) + x * x * x / (6.0 * m * m);
    const Complex oracle = -kEulerGamma * x - log_gamma(1.0 + x) - tail;
    EXPECT_LT(std::abs(r.log_value - oracle), 1e-9) << x;
  }
}

TEST(WeierstrassEval, ConjugatePairsGiveRealValuesOnRealAxis) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_int_distribution<int> mult(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ZeroEntry> entries;
    for (int k = 0; k < 30; ++k) {
      const Complex a(u(rng), u(rng));
      const int m = mult(rng);
      const ZeroKind kind = k % 3 == 0 ? ZeroKind::pole : ZeroKind::zero;
      entries.push_back({a, m, kind});
      entries.push_back({std::conj(a), m, kind});
    }
    entries.push_back({Complex(u(rng), 0.0), 1, ZeroKind::zero});
    const ZeroSet zs(entries, Symmetry::conjugate);
    for (int g = 0; g <= 1; ++g) {
      const double z = u(rng);
      const auto r = general_weierstrass_eval(z, zs, g, Pairing::conjugate_pairs);
      EXPECT_LT(std::abs(principal_angle(r.log_value.imag())) * (r.value.real() > 0 ? 1.0 : 0.0) +
                    (r.value.real() > 0 ? 0.0 : std::abs(std::abs(principal_angle(r.log_value.imag())) - kPi)),
                1e-10);
      EXPECT_LT(std::abs(r.value.imag()), 1e-10 * std::abs(r.value));
    }
  }
}

TEST(WeierstrassEval, PairedLogIsExactlyRealForPositiveFactors) {
  // Zeros off the real axis only: every paired factor |1 - z/a|^2 is positive.
  std::vector<ZeroEntry> entries;
  for (int k = 1; k <= 50; ++k) {
    entries.push_back({Complex(0.3 * k, 1.0 + k), 1, ZeroKind::zero});
    entries.push_back({Complex(0.3 * k, -1.0 - k), 1, ZeroKind::zero});
  }
  const ZeroSet zs(entries, Symmetry::conjugate);
  for (double z : {-3.0, 0.5, 2.0, 40.0}) {
    EXPECT_LT(std::abs(general_weierstrass_eval(z, zs, 0, Pairing::conjugate_pairs).log_value.imag()), 1e-10);
  }
}

TEST(WeierstrassEval, ReflectionPairsRealOnImaginaryAxis) {
  std::vector<ZeroEntry> entries;
  for (int k = 0; k < 10; ++k) {
    entries.push_back({Complex(1.0 + 0.1 * k, -0.5 - k), 1, ZeroKind::zero});
    entries.push_back({Complex(-1.0 - 0.1 * k, -0.5 - k), 1, ZeroKind::zero});
  }
  const ZeroSet zs(entries, Symmetry::reflection);
  for (double t : {-4.0, 0.3, 2.5}) {
    const auto r = general_weierstrass_eval(Complex(0.0, t), zs, 0, Pairing::reflection_pairs);
    EXPECT_LT(std::abs(r.log_value.imag()), 1e-10) << t;
  }
  EXPECT_THROW(general_weierstrass_eval(1.0, zs, 0, Pairing::conjugate_pairs), InvalidArgument);
}

TEST(WeierstrassEval, HitsAreSignalled) {
  const ZeroSet zs({{Complex(2.0, 1.0), 1, ZeroKind::zero},
                    {Complex(2.0, -1.0), 1, ZeroKind::zero},
                    {Complex(-4.0, 0.0), 2, ZeroKind::pole}},
                   Symmetry::conjugate);
  try {
    general_weierstrass_eval(Complex(2.0, -1.0), zs, 0, Pairing::conjugate_pairs);
    FAIL();
  } catch (const ZeroHitError& e) {
    EXPECT_EQ(e.location(), Complex(2.0, -1.0));
    ASSERT_TRUE(e.index().has_value());
    EXPECT_EQ(zs.entries()[static_cast<std::size_t>(*e.index())].location, Complex(2.0, -1.0));
  }
  EXPECT_THROW(general_weierstrass_eval(Complex(-4.0, 0.0), zs, 1, Pairing::unpaired), PoleError);
  EXPECT_THROW(general_weierstrass_eval(1.0, zs, 2, Pairing::unpaired), InvalidArgument);
}

TEST(WeierstrassEval, OriginEntryContributesPower) {
  const ZeroSet zs({{Complex(0.0, 0.0), 2, ZeroKind::zero}, {Complex(1.0, 0.0), 1, ZeroKind::pole}}, Symmetry::none);
  const Complex z(0.5, 0.25);
  const auto r = general_weierstrass_eval(z, zs, 0, Pairing::unpaired);
  EXPECT_LT(std::abs(r.value - z * z / (1.0 - z)), 1e-15);
}

}  // namespace
}  // namespace spz
