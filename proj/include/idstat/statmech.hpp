#pragma once

// Occupation-number enumeration and canonical / grand-canonical partition
// functions for Bose-Einstein, Fermi-Dirac and the two Maxwell-Boltzmann
// counting conventions.
//
// The partition-sum kernels come in two flavours: the OpenMP kernels in this
// namespace, and the straightforward serial references in idstat::serial that
// the tests and the benchmark compare against. Parallel reductions use a
// fixed block partition with an ordered merge, so results are bitwise
// independent of the thread count.

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace idstat {

inline constexpr int kMaxOccupationParticles = 12;
inline constexpr int kMaxOccupationLevels = 20;
inline constexpr int kMaxRecursionParticles = 50;
inline constexpr int kMaxSpectrumLevels = 10'000;

enum class Statistics { BoseEinstein, FermiDirac, MaxwellBoltzmannNN, MaxwellBoltzmannFactorial };

std::string to_string(Statistics s);
/// "be", "fd", "mb-nn", "mb-factorial".
Statistics parse_statistics(const std::string& text);
bool is_quantum(Statistics s);

/// Physical constants; dimensionless mode sets h = k = m = 1.
struct Units {
  double planck = 1.0;
  double boltzmann = 1.0;
  double mass = 1.0;

  static Units dimensionless() { return {}; }
  /// SI constants with the given particle mass in kg.
  static Units si(double mass_kg);
};

struct Box1DSource {
  double length = 1.0;
  Units units;
};
struct Box3DSource {
  double length = 1.0;
  Units units;
};
/// eps_n = n^2.
struct DimensionlessSource {};
using SpectrumSource = std::variant<Box1DSource, Box3DSource, DimensionlessSource>;

struct Spectrum {
  std::vector<double> energies;  // ascending, degeneracies expanded
  std::string source;

  int size() const { return static_cast<int>(energies.size()); }
  double ground() const { return energies.front(); }
};

/// Throws CutoffTooLarge above kMaxSpectrumLevels.
Spectrum build_spectrum(const SpectrumSource& source, int cutoff);
/// Explicit energies; sorted ascending, must be finite.
Spectrum spectrum_from_energies(std::vector<double> energies, std::string source = "levels");
/// CSV with header "energy" and an optional "degeneracy" column.
Spectrum read_spectrum_csv(std::istream& in);

/// Nonzero occupations only.
struct OccupationState {
  std::map<int, int> counts;

  int total() const;
  friend bool operator==(const OccupationState&, const OccupationState&) = default;
};
OccupationState to_occupation_state(const std::vector<int>& dense);

/// Streams dense occupation vectors (length n_levels, sum N) in decreasing
/// lexicographic order. Fermi-Dirac caps each entry at 1; the other kinds share
/// the Bose-Einstein support. Single consumer; reset() restarts.
class OccupationStream {
 public:
  OccupationStream(int n_levels, int n_particles, Statistics stat);

  std::optional<std::vector<int>> next();
  void reset();

 private:
  int n_levels_;
  int n_particles_;
  int cap_;
  std::vector<int> current_;
  bool started_ = false;
  bool done_ = false;
};

/// Materialized stream. Throws CapacityExceeded past the caps.
std::vector<std::vector<int>> enumerate_occupations(int n_levels, int n_particles, Statistics stat);
/// C(n+N-1, N) for BE/MB, C(n, N) for FD.
std::uint64_t occupation_count(int n_levels, int n_particles, Statistics stat);

/// ln of sum_k exp(-beta eps_k).
double ln_single_particle_z(const Spectrum& spec, double beta);

/// ln Z_N. BE/FD by exhaustive enumeration (parallel kernel), MB kinds closed form.
double ln_canonical_Z(const Spectrum& spec, int n_particles, double beta, Statistics stat);
double canonical_Z(const Spectrum& spec, int n_particles, double beta, Statistics stat);

/// Z_N = (1/N) sum_{k=1}^{N} parity^(k+1) z(k beta) Z_{N-k}; +1 BE, -1 FD.
double canonical_Z_recursive(const Spectrum& spec, int n_particles, double beta, int parity);
/// The same recursion run exactly on polynomials in q = exp(-beta) for
/// non-negative integer level energies. The finished polynomial has
/// non-negative coefficients, so evaluating it does not cancel; the float
/// recursion loses all digits when Z_N is tiny against the z(k beta) terms.
/// Returns ln Z_N.
double ln_canonical_Z_recursive_integer(const std::vector<long long>& energies, int n_particles, double beta,
                                        int parity);
/// Z_0..Z_N from the same recursion.
std::vector<double> canonical_Z_recursive_all(const Spectrum& spec, int n_particles, double beta, int parity);

/// ln Xi: FD prod (1 + x_k), BE prod 1/(1 - x_k), x_k = exp(-beta (eps_k - mu)).
/// Throws BoseDivergence when any x_k >= 1.
double ln_grand_Xi(const Spectrum& spec, double beta, double mu, Statistics stat);
double grand_Xi(const Spectrum& spec, double beta, double mu, Statistics stat);

/// sum_{N=0}^{max_N} z^N Z_N, z = exp(beta mu).
double fugacity_series(const Spectrum& spec, double beta, double mu, Statistics stat, int max_particles);

/// Sum over momentum multisets of (multinomial degeneracy) x Boltzmann weight,
/// built from plane-wave states on a grid of 1-D momenta.
double degeneracy_weighted_sum(const std::vector<double>& momentum_grid, int n_particles, double beta,
                               double mass);

struct ThermoPoint {
  double temperature = 1.0;
  double volume = 1.0;
  double n_particles = 1.0;
  double mu = 0.0;
  Units units;

  double beta() const { return 1.0 / (units.boltzmann * temperature); }
};

/// Lambda = h / sqrt(2 pi m k T).
double thermal_wavelength(const ThermoPoint& tp);

/// Continuum ideal gas in 3-D: MB-NN ln Z = N ln(V / (N Lambda^3)),
/// MB-Factorial ln Z = N ln(V / Lambda^3) - ln N!.
double ln_continuum_Z(const ThermoPoint& tp, Statistics stat);

/// F = -kT ln Z. The printed form kT ln Z is treated as a sign slip.
double free_energy_from_ln_Z(double ln_z, const ThermoPoint& tp);
/// MB-NN continuum free energy, -N kT ln(V / (N Lambda^3)).
double mb_free_energy(const ThermoPoint& tp);

/// Z N^N e^{aN}, and its log form.
double nfactor_correction(double z, double n_particles, double a = 0.0);
double ln_nfactor_correction(double ln_z, double n_particles, double a = 0.0);

struct VolumeAndCount {
  double volume;
  int n_particles;
};

struct ExtensivityRow {
  double volume;
  int n_particles;
  double ln_z;
  double free_energy;
  double free_energy_per_particle;
  double drift;  // F/N minus F/N of the first row
};

/// MB kinds on the continuum gas.
std::vector<ExtensivityRow> extensivity_report_continuum(Statistics stat, double temperature, const Units& units,
                                                         const std::vector<VolumeAndCount>& sizes);

using SpectrumBuilder = std::function<Spectrum(double volume)>;
/// Any statistics on spectra rebuilt for each volume.
std::vector<ExtensivityRow> extensivity_report(const SpectrumBuilder& builder, Statistics stat, double temperature,
                                               const Units& units, const std::vector<VolumeAndCount>& sizes);

struct SweepPoint {
  int n_particles;
  double beta;
};
/// ln Z over a grid; points are independent and evaluated in parallel.
std::vector<double> sweep_ln_canonical_Z(const Spectrum& spec, Statistics stat, const std::vector<SweepPoint>& grid);

namespace serial {
/// Reference enumeration through OccupationStream.
double ln_canonical_Z(const Spectrum& spec, int n_particles, double beta, Statistics stat);
std::vector<double> sweep_ln_canonical_Z(const Spectrum& spec, Statistics stat, const std::vector<SweepPoint>& grid);
}  // namespace serial

}  // namespace idstat
