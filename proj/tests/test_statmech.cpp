#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "idstat/error.hpp"
#include "idstat/statmech.hpp"

using namespace idstat;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

// Every level tuple of length N with non-decreasing (BE) or increasing (FD)
// entries, i.e. one representative per occupation state.
void for_each_multiset(int levels, int n, bool strict, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> tuple(static_cast<std::size_t>(n));
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == n) {
      f(tuple);
      return;
    }
    for (int l = start; l < levels; ++l) {
      tuple[static_cast<std::size_t>(pos)] = l;
      rec(pos + 1, strict ? l + 1 : l);
    }
  };
  rec(0, 0);
}

double brute_Z(const std::vector<double>& eps, int n, double beta, bool fermions) {
  double z = 0.0;
  for_each_multiset(static_cast<int>(eps.size()), n, fermions, [&](const std::vector<int>& t) {
    double e = 0.0;
    for (int l : t) e += eps[static_cast<std::size_t>(l)];
    z += std::exp(-beta * e);
  });
  return z;
}

}  // namespace

TEST(Statistics, ParseRoundTrip) {
  for (auto s : {Statistics::BoseEinstein, Statistics::FermiDirac, Statistics::MaxwellBoltzmannNN,
                 Statistics::MaxwellBoltzmannFactorial}) {
    EXPECT_EQ(parse_statistics(to_string(s)), s);
  }
  EXPECT_THROW(parse_statistics("boltzmann"), InvalidInput);
}

TEST(Occupations, MatchBruteForceMultisets) {
  for (int levels = 1; levels <= 5; ++levels) {
    for (int n = 0; n <= 4; ++n) {
      for (auto stat : {Statistics::BoseEinstein, Statistics::FermiDirac}) {
        std::set<std::vector<int>> oracle;
        for_each_multiset(levels, n, stat == Statistics::FermiDirac, [&](const std::vector<int>& t) {
          std::vector<int> occ(static_cast<std::size_t>(levels), 0);
          for (int l : t) ++occ[static_cast<std::size_t>(l)];
          oracle.insert(occ);
        });
        const auto got = enumerate_occupations(levels, n, stat);
        EXPECT_EQ(std::set<std::vector<int>>(got.begin(), got.end()), oracle);
        EXPECT_EQ(got.size(), oracle.size());
        EXPECT_EQ(occupation_count(levels, n, stat), oracle.size());
        // Decreasing lexicographic order.
        for (std::size_t k = 1; k < got.size(); ++k) EXPECT_GT(got[k - 1], got[k]);
      }
    }
  }
}

TEST(Occupations, StreamRestarts) {
  OccupationStream stream(4, 3, Statistics::BoseEinstein);
  int first = 0;
  while (stream.next()) ++first;
  stream.reset();
  int second = 0;
  while (stream.next()) ++second;
  EXPECT_EQ(first, 20);
  EXPECT_EQ(second, 20);
  EXPECT_THROW(enumerate_occupations(kMaxOccupationLevels + 1, 2, Statistics::BoseEinstein), CapacityExceeded);
  EXPECT_THROW(enumerate_occupations(3, kMaxOccupationParticles + 1, Statistics::BoseEinstein), CapacityExceeded);
  EXPECT_EQ(to_occupation_state({0, 2, 0, 1}).counts, (std::map<int, int>{{1, 2}, {3, 1}}));
}

TEST(CanonicalZ, MatchesBruteForce) {
  const std::vector<double> eps{0.0, 0.4, 0.4, 1.1, 2.5, 3.0};
  const auto spec = spectrum_from_energies(eps);
  for (int n = 0; n <= 5; ++n) {
    for (double beta : {0.3, 1.0, 4.0}) {
      EXPECT_LT(rel(canonical_Z(spec, n, beta, Statistics::BoseEinstein), brute_Z(eps, n, beta, false)), 1e-13);
      if (n <= 6) {
        EXPECT_LT(rel(canonical_Z(spec, n, beta, Statistics::FermiDirac), brute_Z(eps, n, beta, true)), 1e-13);
      }
    }
  }
}

TEST(CanonicalZ, FermionsBeyondTheLevelCount) {
  const auto spec = spectrum_from_energies({0.0, 1.0});
  EXPECT_EQ(canonical_Z(spec, 3, 1.0, Statistics::FermiDirac), 0.0);
}

TEST(CanonicalZ, ThreeStateFermionExample) {
  const auto spec = spectrum_from_energies({0.0, 1.0, 2.0});
  EXPECT_NEAR(canonical_Z(spec, 2, 1.0, Statistics::FermiDirac), std::exp(-1.0) + std::exp(-2.0) + std::exp(-3.0),
              1e-15);
}

TEST(CanonicalZ, MaxwellBoltzmannAgainstDistinguishableSum) {
  const std::vector<double> eps{0.0, 0.5, 1.5};
  const auto spec = spectrum_from_energies(eps);
  const double beta = 0.8;
  for (int n = 1; n <= 4; ++n) {
    // Sum over all n-tuples of levels, one per distinguishable particle.
    double distinguishable = 0.0;
    std::vector<int> t(static_cast<std::size_t>(n), 0);
    for (;;) {
      double e = 0.0;
      for (int l : t) e += eps[static_cast<std::size_t>(l)];
      distinguishable += std::exp(-beta * e);
      int pos = 0;
      while (pos < n && ++t[static_cast<std::size_t>(pos)] == 3) t[static_cast<std::size_t>(pos++)] = 0;
      if (pos == n) break;
    }
    EXPECT_LT(rel(canonical_Z(spec, n, beta, Statistics::MaxwellBoltzmannFactorial), distinguishable / std::tgamma(n + 1.0)),
              1e-13);
    EXPECT_LT(rel(canonical_Z(spec, n, beta, Statistics::MaxwellBoltzmannNN), distinguishable / std::pow(n, n)), 1e-13);
  }
}

TEST(CanonicalZ, ParallelMatchesSerial) {
  const auto spec = build_spectrum(DimensionlessSource{}, 12);
  for (auto stat : {Statistics::BoseEinstein, Statistics::FermiDirac}) {
    for (int n = 1; n <= 8; ++n) {
      for (double beta : {0.01, 0.2}) {
        EXPECT_LT(rel(ln_canonical_Z(spec, n, beta, stat), serial::ln_canonical_Z(spec, n, beta, stat)), 1e-13);
      }
    }
  }
}

TEST(CanonicalZ, SweepMatchesSerialSweep) {
  const auto spec = build_spectrum(DimensionlessSource{}, 10);
  std::vector<SweepPoint> grid;
  for (int n = 1; n <= 6; ++n) {
    for (double beta : {0.05, 0.5, 2.0}) grid.push_back({n, beta});
  }
  const auto par = sweep_ln_canonical_Z(spec, Statistics::BoseEinstein, grid);
  const auto ser = serial::sweep_ln_canonical_Z(spec, Statistics::BoseEinstein, grid);
  ASSERT_EQ(par.size(), ser.size());
  for (std::size_t k = 0; k < par.size(); ++k) EXPECT_EQ(par[k], ser[k]);
  grid.push_back({-1, 1.0});
  EXPECT_THROW(sweep_ln_canonical_Z(spec, Statistics::BoseEinstein, grid), InvalidInput);
}

TEST(Recursion, AgreesWithEnumerationWhereWellConditioned) {
  const auto spec = spectrum_from_energies({0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7});
  for (int n = 1; n <= 5; ++n) {
    EXPECT_LT(rel(canonical_Z(spec, n, 1.0, Statistics::BoseEinstein), canonical_Z_recursive(spec, n, 1.0, 1)), 1e-12);
    EXPECT_LT(rel(canonical_Z(spec, n, 1.0, Statistics::FermiDirac), canonical_Z_recursive(spec, n, 1.0, -1)), 1e-12);
  }
  EXPECT_THROW(canonical_Z_recursive(spec, 2, 1.0, 0), InvalidInput);
  EXPECT_THROW(canonical_Z_recursive(spec, kMaxRecursionParticles + 1, 1.0, 1), CapacityExceeded);
}

TEST(Recursion, IntegerVariantSurvivesCancellation) {
  // eps_n = n^2, five fermions: Z ~ exp(-50) relative to the z(k beta) terms.
  std::vector<long long> squares;
  std::vector<double> eps;
  for (long long n = 1; n <= 8; ++n) {
    squares.push_back(n * n);
    eps.push_back(static_cast<double>(n * n));
  }
  const double brute = brute_Z(eps, 5, 1.0, true);
  EXPECT_LT(rel(std::exp(ln_canonical_Z_recursive_integer(squares, 5, 1.0, -1)), brute), 1e-12);
  EXPECT_LT(rel(std::exp(ln_canonical_Z_recursive_integer(squares, 5, 1.0, 1)), brute_Z(eps, 5, 1.0, false)), 1e-12);
  EXPECT_THROW(ln_canonical_Z_recursive_integer({-1, 2}, 2, 1.0, 1), InvalidInput);
}

TEST(Grand, ProductAgainstSeries) {
  const auto spec = spectrum_from_energies({0.0, 0.7, 1.2});
  const double beta = 1.3;
  const double mu = -0.4;
  EXPECT_LT(rel(grand_Xi(spec, beta, mu, Statistics::FermiDirac),
                fugacity_series(spec, beta, mu, Statistics::FermiDirac, 3)), 1e-14);
  EXPECT_LT(rel(grand_Xi(spec, beta, mu, Statistics::BoseEinstein),
                fugacity_series(spec, beta, mu, Statistics::BoseEinstein, kMaxRecursionParticles)), 1e-10);
  // Single level, x = 1/2.
  EXPECT_NEAR(grand_Xi(spectrum_from_energies({0.0}), 1.0, -std::log(2.0), Statistics::BoseEinstein), 2.0, 1e-14);
}

TEST(Grand, BoseDivergence) {
  const auto spec = spectrum_from_energies({0.5, 1.0});
  EXPECT_THROW(grand_Xi(spec, 1.0, 0.5, Statistics::BoseEinstein), BoseDivergence);
  EXPECT_THROW(grand_Xi(spec, 1.0, 0.7, Statistics::BoseEinstein), BoseDivergence);
  EXPECT_NO_THROW(grand_Xi(spec, 1.0, 0.49, Statistics::BoseEinstein));
  EXPECT_NO_THROW(grand_Xi(spec, 1.0, 5.0, Statistics::FermiDirac));
  EXPECT_THROW(grand_Xi(spec, 1.0, 0.0, Statistics::MaxwellBoltzmannNN), InvalidInput);
}

TEST(MultisetSum, EqualsSingleParticlePower) {
  const std::vector<double> grid{-2.0, -1.0, 0.0, 1.0, 2.0};
  double z1 = 0.0;
  for (double p : grid) z1 += std::exp(-0.5 * p * p / (2.0 * 1.5));
  for (int n = 1; n <= 4; ++n) EXPECT_LT(rel(degeneracy_weighted_sum(grid, n, 0.5, 1.5), std::pow(z1, n)), 1e-12);
}

TEST(Spectrum, Box1DAndDimensionless) {
  const auto d = build_spectrum(DimensionlessSource{}, 4);
  EXPECT_EQ(d.energies, (std::vector<double>{1, 4, 9, 16}));
  const auto b = build_spectrum(Box1DSource{2.0, Units::dimensionless()}, 3);
  EXPECT_NEAR(b.energies[2], 9.0 / 32.0, 1e-15);  // h^2 n^2 / (8 m L^2)
  EXPECT_THROW(build_spectrum(DimensionlessSource{}, kMaxSpectrumLevels + 1), CutoffTooLarge);
}

TEST(Spectrum, Box3DAgainstBruteForce) {
  std::vector<double> oracle;
  for (int x = 1; x <= 12; ++x) {
    for (int y = 1; y <= 12; ++y) {
      for (int z = 1; z <= 12; ++z) oracle.push_back((x * x + y * y + z * z) / 8.0);
    }
  }
  std::sort(oracle.begin(), oracle.end());
  const auto spec = build_spectrum(Box3DSource{1.0, Units::dimensionless()}, 60);
  ASSERT_EQ(spec.size(), 60);
  for (int k = 0; k < 60; ++k) EXPECT_NEAR(spec.energies[static_cast<std::size_t>(k)], oracle[static_cast<std::size_t>(k)], 1e-14);
}

TEST(Spectrum, CsvWithDegeneracy) {
  std::istringstream in("# levels\nenergy,degeneracy\n0.5,2\n0,1\n");
  const auto spec = read_spectrum_csv(in);
  EXPECT_EQ(spec.energies, (std::vector<double>{0.0, 0.5, 0.5}));
  std::istringstream bad("value\n1\n");
  EXPECT_THROW(read_spectrum_csv(bad), InvalidInput);
}

TEST(Continuum, ClosedForms) {
  const ThermoPoint tp{1.0, 1.0, 2.0, 0.0, Units::dimensionless()};
  const double lambda = 1.0 / std::sqrt(2.0 * M_PI);
  EXPECT_NEAR(thermal_wavelength(tp), lambda, 1e-15);
  EXPECT_NEAR(ln_continuum_Z(tp, Statistics::MaxwellBoltzmannNN), 2.0 * std::log(1.0 / (2.0 * std::pow(lambda, 3))),
              1e-13);
  EXPECT_NEAR(ln_continuum_Z(tp, Statistics::MaxwellBoltzmannFactorial),
              2.0 * std::log(1.0 / std::pow(lambda, 3)) - std::log(2.0), 1e-13);
  EXPECT_THROW(ln_continuum_Z(tp, Statistics::BoseEinstein), InvalidInput);
}

TEST(Continuum, SiWavelength) {
  // Helium-4 at 300 K: about 0.5 angstrom.
  const ThermoPoint tp{300.0, 1.0, 1.0, 0.0, Units::si(6.6464731e-27)};
  EXPECT_NEAR(thermal_wavelength(tp), 6.62607015e-34 / std::sqrt(2 * M_PI * 6.6464731e-27 * 1.380649e-23 * 300.0),
              1e-25);
  EXPECT_GT(thermal_wavelength(tp), 4e-11);
  EXPECT_LT(thermal_wavelength(tp), 6e-11);
}

TEST(Extensivity, NNIsExtensiveFactorialDrifts) {
  std::vector<VolumeAndCount> sizes{{1, 1}, {2, 2}, {10, 10}, {100, 100}, {10000, 10000}};
  const auto nn = extensivity_report_continuum(Statistics::MaxwellBoltzmannNN, 1.0, Units::dimensionless(), sizes);
  for (const auto& row : nn) EXPECT_LT(std::abs(row.drift), 1e-12 * std::abs(row.free_energy_per_particle));
  const auto fact = extensivity_report_continuum(Statistics::MaxwellBoltzmannFactorial, 1.0, Units::dimensionless(), sizes);
  for (const auto& row : fact) {
    const double n = row.n_particles;
    EXPECT_LT(rel((row.drift + 1.0) * n, std::lgamma(n + 1.0) - n * std::log(n) + n), 1e-9);
  }
}

TEST(Extensivity, DiscreteSpectraRebuiltPerVolume) {
  const auto rows = extensivity_report(
      [](double v) { return build_spectrum(Box1DSource{v, Units::dimensionless()}, 16); }, Statistics::BoseEinstein, 1.0,
      Units::dimensionless(), {{1, 1}, {2, 2}, {3, 3}});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].drift, 0.0);
  for (const auto& r : rows) EXPECT_TRUE(std::isfinite(r.free_energy));
}

TEST(NFactor, Definition) {
  EXPECT_DOUBLE_EQ(nfactor_correction(2.0, 3.0, 0.0), 54.0);
  EXPECT_NEAR(ln_nfactor_correction(std::log(2.0), 3.0, -1.0), std::log(54.0) - 3.0, 1e-14);
}

TEST(FreeEnergy, Sign) {
  const ThermoPoint tp{2.0, 1.0, 1.0, 0.0, Units::dimensionless()};
  EXPECT_DOUBLE_EQ(free_energy_from_ln_Z(3.0, tp), -6.0);
}
