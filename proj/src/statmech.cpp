#include "idstat/statmech.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <sstream>

#include "idstat/error.hpp"
#include "idstat/exactnum.hpp"
#include "idstat/observables.hpp"
#include "statmech_internal.hpp"

namespace idstat {

std::string to_string(Statistics s) {
  switch (s) {
    case Statistics::BoseEinstein: return "be";
    case Statistics::FermiDirac: return "fd";
    case Statistics::MaxwellBoltzmannNN: return "mb-nn";
    case Statistics::MaxwellBoltzmannFactorial: return "mb-factorial";
  }
  return "?";
}

Statistics parse_statistics(const std::string& text) {
  if (text == "be" || text == "bose") return Statistics::BoseEinstein;
  if (text == "fd" || text == "fermi") return Statistics::FermiDirac;
  if (text == "mb-nn" || text == "mb") return Statistics::MaxwellBoltzmannNN;
  if (text == "mb-factorial" || text == "mb-fact") return Statistics::MaxwellBoltzmannFactorial;
  throw InvalidInput("unknown statistics '" + text + "' (be, fd, mb-nn, mb-factorial)");
}

bool is_quantum(Statistics s) { return s == Statistics::BoseEinstein || s == Statistics::FermiDirac; }

Units Units::si(double mass_kg) { return {6.62607015e-34, 1.380649e-23, mass_kg}; }

namespace {

void check_units(const Units& u) {
  if (!(u.planck > 0 && u.boltzmann > 0 && u.mass > 0)) throw InvalidInput("constants must be positive");
}

void check_cutoff(int cutoff) {
  if (cutoff < 1) throw InvalidInput("spectrum cutoff must be >= 1");
  if (cutoff > kMaxSpectrumLevels) {
    throw CutoffTooLarge("cutoff " + std::to_string(cutoff) + " exceeds " + std::to_string(kMaxSpectrumLevels));
  }
}

}  // namespace

Spectrum build_spectrum(const SpectrumSource& source, int cutoff) {
  check_cutoff(cutoff);
  return std::visit(
      [cutoff](const auto& src) -> Spectrum {
        using S = std::decay_t<decltype(src)>;
        Spectrum out;
        if constexpr (std::is_same_v<S, DimensionlessSource>) {
          out.source = "dimensionless";
          for (int n = 1; n <= cutoff; ++n) out.energies.push_back(static_cast<double>(n) * n);
        } else {
          check_units(src.units);
          if (!(src.length > 0)) throw InvalidInput("box length must be positive");
          const double unit = src.units.planck * src.units.planck /
                              (8.0 * src.units.mass * src.length * src.length);
          if constexpr (std::is_same_v<S, Box1DSource>) {
            out.source = "box1d";
            for (int n = 1; n <= cutoff; ++n) out.energies.push_back(unit * n * n);
          } else {
            out.source = "box3d";
            // Grow the radius until the ball holds at least `cutoff` states, then
            // keep the lowest `cutoff` with degeneracies expanded.
            std::vector<long long> sums;
            for (long long radius = 2;; radius *= 2) {
              sums.clear();
              const long long r2 = radius * radius;
              for (long long x = 1; x * x + 2 <= r2; ++x) {
                for (long long y = 1; x * x + y * y + 1 <= r2; ++y) {
                  for (long long z = 1; x * x + y * y + z * z <= r2; ++z) sums.push_back(x * x + y * y + z * z);
                }
              }
              std::sort(sums.begin(), sums.end());
              // Every state with n^2 <= r2 is present, so the lowest `cutoff` are final.
              if (static_cast<long long>(sums.size()) >= cutoff) break;
            }
            for (int k = 0; k < cutoff; ++k) out.energies.push_back(unit * static_cast<double>(sums[static_cast<std::size_t>(k)]));
          }
        }
        return out;
      },
      source);
}

Spectrum spectrum_from_energies(std::vector<double> energies, std::string source) {
  if (energies.empty()) throw InvalidInput("spectrum needs at least one level");
  for (double e : energies) {
    if (!std::isfinite(e)) throw InvalidInput("spectrum energies must be finite");
  }
  if (energies.size() > static_cast<std::size_t>(kMaxSpectrumLevels)) {
    throw CutoffTooLarge("spectrum has more than " + std::to_string(kMaxSpectrumLevels) + " levels");
  }
  std::sort(energies.begin(), energies.end());
  return {std::move(energies), std::move(source)};
}

Spectrum read_spectrum_csv(std::istream& in) {
  std::string line;
  int energy_col = -1;
  int degeneracy_col = -1;
  std::vector<double> energies;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cell.erase(0, cell.find_first_not_of(" \t\r"));
      cell.erase(cell.find_last_not_of(" \t\r") + 1);
      cells.push_back(cell);
    }
    return cells;
  };
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    const auto cells = split(line);
    if (energy_col < 0) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c] == "energy") energy_col = static_cast<int>(c);
        if (cells[c] == "degeneracy") degeneracy_col = static_cast<int>(c);
      }
      if (energy_col < 0) throw InvalidInput("spectrum CSV needs an 'energy' header");
      continue;
    }
    const auto at = [&](int col) -> const std::string& {
      if (col >= static_cast<int>(cells.size())) {
        throw InvalidInput("spectrum CSV line " + std::to_string(line_no) + " is short");
      }
      return cells[static_cast<std::size_t>(col)];
    };
    double e = 0.0;
    int degeneracy = 1;
    try {
      std::size_t used = 0;
      e = std::stod(at(energy_col), &used);
      if (used != at(energy_col).size()) throw std::invalid_argument("trailing");
      if (degeneracy_col >= 0) {
        degeneracy = std::stoi(at(degeneracy_col), &used);
        if (used != at(degeneracy_col).size()) throw std::invalid_argument("trailing");
      }
    } catch (const std::logic_error&) {
      throw InvalidInput("spectrum CSV line " + std::to_string(line_no) + " is not numeric");
    }
    if (degeneracy < 1) throw InvalidInput("degeneracy must be >= 1");
    for (int d = 0; d < degeneracy; ++d) energies.push_back(e);
  }
  if (energy_col < 0) throw InvalidInput("empty spectrum CSV");
  return spectrum_from_energies(std::move(energies), "file");
}

int OccupationState::total() const {
  int n = 0;
  for (const auto& [k, c] : counts) n += c;
  return n;
}

OccupationState to_occupation_state(const std::vector<int>& dense) {
  OccupationState out;
  for (std::size_t k = 0; k < dense.size(); ++k) {
    if (dense[k] > 0) out.counts[static_cast<int>(k)] = dense[k];
  }
  return out;
}

namespace {

void check_occupation_caps(int n_levels, int n_particles) {
  if (n_levels < 1) throw InvalidInput("need at least one level");
  if (n_particles < 0) throw InvalidInput("particle count must be >= 0");
  if (n_particles > kMaxOccupationParticles || n_levels > kMaxOccupationLevels) {
    throw CapacityExceeded("occupation enumeration capped at N <= " + std::to_string(kMaxOccupationParticles) +
                           " and " + std::to_string(kMaxOccupationLevels) + " levels");
  }
}

}  // namespace

OccupationStream::OccupationStream(int n_levels, int n_particles, Statistics stat)
    : n_levels_(n_levels),
      n_particles_(n_particles),
      cap_(stat == Statistics::FermiDirac ? 1 : n_particles) {
  check_occupation_caps(n_levels, n_particles);
}

void OccupationStream::reset() {
  started_ = false;
  done_ = false;
}

std::optional<std::vector<int>> OccupationStream::next() {
  if (done_) return std::nullopt;
  auto fill_greedy = [this](std::size_t from, int amount) {
    for (std::size_t k = from; k < current_.size(); ++k) {
      current_[k] = std::min(cap_, amount);
      amount -= current_[k];
    }
    return amount == 0;
  };
  if (!started_) {
    started_ = true;
    current_.assign(static_cast<std::size_t>(n_levels_), 0);
    if (!fill_greedy(0, n_particles_)) {
      done_ = true;
      return std::nullopt;
    }
    return current_;
  }
  // Next smaller vector: lower the rightmost entry whose suffix can absorb one more.
  int suffix = 0;
  for (int j = n_levels_ - 2; j >= 0; --j) {
    const auto uj = static_cast<std::size_t>(j);
    suffix += current_[uj + 1];
    const int room = cap_ * (n_levels_ - 1 - j);
    if (current_[uj] > 0 && suffix + 1 <= room) {
      --current_[uj];
      fill_greedy(uj + 1, suffix + 1);
      return current_;
    }
  }
  done_ = true;
  return std::nullopt;
}

std::vector<std::vector<int>> enumerate_occupations(int n_levels, int n_particles, Statistics stat) {
  OccupationStream stream(n_levels, n_particles, stat);
  std::vector<std::vector<int>> out;
  while (auto s = stream.next()) out.push_back(std::move(*s));
  return out;
}

std::uint64_t occupation_count(int n_levels, int n_particles, Statistics stat) {
  auto binomial = [](std::uint64_t n, std::uint64_t k) -> std::uint64_t {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  const auto n = static_cast<std::uint64_t>(n_levels);
  const auto big_n = static_cast<std::uint64_t>(n_particles);
  if (stat == Statistics::FermiDirac) return binomial(n, big_n);
  return binomial(n + big_n - 1, big_n);
}

double ln_single_particle_z(const Spectrum& spec, double beta) {
  if (spec.energies.empty()) throw InvalidInput("empty spectrum");
  const double e0 = spec.ground();
  double sum = 0.0;
  for (double e : spec.energies) sum += std::exp(-beta * (e - e0));
  return -beta * e0 + std::log(sum);
}

namespace detail {

double lowest_energy(const Spectrum& spec, int n_particles, Statistics stat) {
  if (stat == Statistics::FermiDirac) {
    double e = 0.0;
    for (int k = 0; k < n_particles; ++k) e += spec.energies[static_cast<std::size_t>(k)];
    return e;
  }
  return n_particles * spec.ground();
}

void check_canonical_args(const Spectrum& spec, int n_particles, double beta) {
  if (spec.energies.empty()) throw InvalidInput("empty spectrum");
  if (n_particles < 0) throw InvalidInput("particle count must be >= 0");
  if (!(beta > 0) || !std::isfinite(beta)) throw InvalidInput("beta must be positive and finite");
}

double ln_mb_discrete(const Spectrum& spec, int n_particles, double beta, Statistics stat) {
  if (n_particles == 0) return 0.0;
  const double n = n_particles;
  const double ln_z1 = ln_single_particle_z(spec, beta);
  if (stat == Statistics::MaxwellBoltzmannNN) return n * ln_z1 - n * std::log(n);
  return n * ln_z1 - std::lgamma(n + 1.0);
}

}  // namespace detail

namespace {

struct SuffixSum {
  const std::vector<double>& eps;
  double beta;
  double e_min;
  int cap;

  // Boltzmann weights of every completion of levels [level, end) holding `remaining`.
  double operator()(std::size_t level, int remaining, double energy) const {
    if (remaining == 0) return std::exp(-beta * (energy - e_min));
    if (level + 1 == eps.size()) {
      if (remaining > cap) return 0.0;
      return std::exp(-beta * (energy + remaining * eps[level] - e_min));
    }
    const int room = cap * static_cast<int>(eps.size() - level);
    if (remaining > room) return 0.0;
    double acc = 0.0;
    for (int n = std::min(cap, remaining); n >= 0; --n) acc += (*this)(level + 1, remaining - n, energy + n * eps[level]);
    return acc;
  }
};

struct Block {
  std::vector<int> prefix;
};

std::vector<Block> prefix_blocks(int n_levels, int n_particles, int cap) {
  const int width = std::min(2, n_levels);
  std::vector<Block> blocks;
  std::vector<int> prefix(static_cast<std::size_t>(width), 0);
  // Decreasing lexicographic over prefixes with sum <= N, matching the stream order.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == width) {
      blocks.push_back({prefix});
      return;
    }
    for (int n = std::min(cap, remaining); n >= 0; --n) {
      prefix[static_cast<std::size_t>(pos)] = n;
      self(self, pos + 1, remaining - n);
    }
  };
  rec(rec, 0, n_particles);
  return blocks;
}

}  // namespace

double ln_canonical_Z(const Spectrum& spec, int n_particles, double beta, Statistics stat) {
  detail::check_canonical_args(spec, n_particles, beta);
  if (!is_quantum(stat)) return detail::ln_mb_discrete(spec, n_particles, beta, stat);
  check_occupation_caps(spec.size(), n_particles);
  if (n_particles == 0) return 0.0;
  const int cap = stat == Statistics::FermiDirac ? 1 : n_particles;
  if (stat == Statistics::FermiDirac && n_particles > spec.size()) return -std::numeric_limits<double>::infinity();

  const double e_min = detail::lowest_energy(spec, n_particles, stat);
  const SuffixSum suffix{spec.energies, beta, e_min, cap};
  const auto blocks = prefix_blocks(spec.size(), n_particles, cap);
  const auto width = blocks.front().prefix.size();
  std::vector<double> partial(blocks.size(), 0.0);
  const auto count = static_cast<std::ptrdiff_t>(blocks.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t b = 0; b < count; ++b) {
    const auto& prefix = blocks[static_cast<std::size_t>(b)].prefix;
    int used = 0;
    double energy = 0.0;
    for (std::size_t k = 0; k < width; ++k) {
      used += prefix[k];
      energy += prefix[k] * spec.energies[k];
    }
    const int remaining = n_particles - used;
    double value = 0.0;
    if (width == spec.energies.size()) {
      value = remaining == 0 ? std::exp(-beta * (energy - e_min)) : 0.0;
    } else {
      value = suffix(width, remaining, energy);
    }
    partial[static_cast<std::size_t>(b)] = value;
  }
  double sum = 0.0;
  for (double p : partial) sum += p;
  return -beta * e_min + std::log(sum);
}

double canonical_Z(const Spectrum& spec, int n_particles, double beta, Statistics stat) {
  return std::exp(ln_canonical_Z(spec, n_particles, beta, stat));
}

std::vector<double> canonical_Z_recursive_all(const Spectrum& spec, int n_particles, double beta, int parity) {
  detail::check_canonical_args(spec, n_particles, beta);
  if (parity != 1 && parity != -1) throw InvalidInput("parity must be +1 (BE) or -1 (FD)");
  if (n_particles > kMaxRecursionParticles) {
    throw CapacityExceeded("recursion capped at N <= " + std::to_string(kMaxRecursionParticles));
  }
  std::vector<double> z_k(static_cast<std::size_t>(n_particles) + 1, 0.0);
  for (int k = 1; k <= n_particles; ++k) z_k[static_cast<std::size_t>(k)] = std::exp(ln_single_particle_z(spec, k * beta));
  std::vector<double> z_n(static_cast<std::size_t>(n_particles) + 1, 0.0);
  z_n[0] = 1.0;
  for (int n = 1; n <= n_particles; ++n) {
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double sign = (parity == 1 || k % 2 == 1) ? 1.0 : -1.0;
      acc += sign * z_k[static_cast<std::size_t>(k)] * z_n[static_cast<std::size_t>(n - k)];
    }
    z_n[static_cast<std::size_t>(n)] = acc / n;
  }
  return z_n;
}

double canonical_Z_recursive(const Spectrum& spec, int n_particles, double beta, int parity) {
  return canonical_Z_recursive_all(spec, n_particles, beta, parity).back();
}

double ln_canonical_Z_recursive_integer(const std::vector<long long>& energies, int n_particles, double beta,
                                        int parity) {
  if (energies.empty()) throw InvalidInput("spectrum is empty");
  if (parity != 1 && parity != -1) throw InvalidInput("parity must be +1 (BE) or -1 (FD)");
  if (n_particles < 0 || n_particles > kMaxRecursionParticles) {
    throw CapacityExceeded("recursion capped at N <= " + std::to_string(kMaxRecursionParticles));
  }
  if (!(beta > 0)) throw InvalidInput("beta must be positive");
  const long long e_min = *std::min_element(energies.begin(), energies.end());
  const long long e_max = *std::max_element(energies.begin(), energies.end());
  if (e_min < 0) throw InvalidInput("integer energies must be non-negative");
  if ((e_max - e_min) * n_particles > 100'000) throw CapacityExceeded("polynomial degree too large");
  using Poly = std::vector<Rational>;
  const auto degree = static_cast<std::size_t>((e_max - e_min) * n_particles);
  auto z_k = [&](int k) {
    Poly p(degree + 1, Rational(0));
    for (long long e : energies) {
      const auto d = static_cast<std::size_t>(k * (e - e_min));
      if (d <= degree) p[d] += Rational(1);
    }
    return p;
  };
  std::vector<Poly> z_n(static_cast<std::size_t>(n_particles) + 1, Poly(degree + 1, Rational(0)));
  z_n[0][0] = Rational(1);
  for (int n = 1; n <= n_particles; ++n) {
    Poly acc(degree + 1, Rational(0));
    for (int k = 1; k <= n; ++k) {
      const Poly zk = z_k(k);
      const Rational sign((parity == 1 || k % 2 == 1) ? 1 : -1);
      const Poly& prev = z_n[static_cast<std::size_t>(n - k)];
      for (std::size_t a = 0; a <= degree; ++a) {
        if (zk[a].is_zero()) continue;
        for (std::size_t b = 0; a + b <= degree; ++b) {
          if (!prev[b].is_zero()) acc[a + b] += sign * zk[a] * prev[b];
        }
      }
    }
    for (auto& c : acc) c = c / Rational(n);
    z_n[static_cast<std::size_t>(n)] = std::move(acc);
  }
  const Poly& z = z_n.back();
  // ln sum_d c_d q^d, shifted by the lowest nonzero power.
  std::size_t lowest = degree + 1;
  for (std::size_t d = 0; d <= degree; ++d) {
    if (z[d].sign() < 0) throw InvalidInput("recursion produced a negative count");
    if (!z[d].is_zero() && lowest > degree) lowest = d;
  }
  if (lowest > degree) return -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::size_t d = lowest; d <= degree; ++d) {
    if (!z[d].is_zero()) sum += z[d].to_double() * std::exp(-beta * static_cast<double>(d - lowest));
  }
  return -beta * static_cast<double>(static_cast<long long>(lowest) + n_particles * e_min) + std::log(sum);
}

double ln_grand_Xi(const Spectrum& spec, double beta, double mu, Statistics stat) {
  if (!is_quantum(stat)) throw InvalidInput("grand partition function needs be or fd statistics");
  if (!(beta > 0)) throw InvalidInput("beta must be positive");
  double ln_xi = 0.0;
  for (double e : spec.energies) {
    const double x = std::exp(-beta * (e - mu));
    if (stat == Statistics::FermiDirac) {
      ln_xi += std::log1p(x);
    } else {
      if (x >= 1.0) {
        throw BoseDivergence("mu = " + std::to_string(mu) + " is not below level energy " + std::to_string(e));
      }
      ln_xi -= std::log1p(-x);
    }
  }
  return ln_xi;
}

double grand_Xi(const Spectrum& spec, double beta, double mu, Statistics stat) {
  return std::exp(ln_grand_Xi(spec, beta, mu, stat));
}

double fugacity_series(const Spectrum& spec, double beta, double mu, Statistics stat, int max_particles) {
  if (!is_quantum(stat)) throw InvalidInput("fugacity series needs be or fd statistics");
  const double z = std::exp(beta * mu);
  double sum = 0.0;
  if (stat == Statistics::FermiDirac && spec.size() <= kMaxOccupationParticles) {
    const int top = std::min(max_particles, spec.size());
    for (int n = 0; n <= top; ++n) sum += std::pow(z, n) * canonical_Z(spec, n, beta, stat);
    return sum;
  }
  const auto z_n = canonical_Z_recursive_all(spec, max_particles, beta, stat == Statistics::BoseEinstein ? 1 : -1);
  for (int n = 0; n <= max_particles; ++n) sum += std::pow(z, n) * z_n[static_cast<std::size_t>(n)];
  return sum;
}

double degeneracy_weighted_sum(const std::vector<double>& momentum_grid, int n_particles, double beta,
                               double mass) {
  if (momentum_grid.empty()) throw InvalidInput("empty momentum grid");
  OccupationStream stream(static_cast<int>(momentum_grid.size()), n_particles, Statistics::BoseEinstein);
  double sum = 0.0;
  while (auto occ = stream.next()) {
    PlaneWaveState<double> pw;
    pw.mass = mass;
    for (std::size_t k = 0; k < occ->size(); ++k) {
      for (int c = 0; c < (*occ)[k]; ++c) pw.momenta.push_back({momentum_grid[k], 0.0, 0.0});
    }
    sum += static_cast<double>(momentum_degeneracy(pw)) * std::exp(-beta * plane_wave_energy(pw));
  }
  return sum;
}

double thermal_wavelength(const ThermoPoint& tp) {
  check_units(tp.units);
  if (!(tp.temperature > 0)) throw InvalidInput("temperature must be positive");
  return tp.units.planck /
         std::sqrt(2.0 * std::numbers::pi * tp.units.mass * tp.units.boltzmann * tp.temperature);
}

double ln_continuum_Z(const ThermoPoint& tp, Statistics stat) {
  if (is_quantum(stat)) throw InvalidInput("continuum partition function is defined for MB statistics only");
  if (!(tp.volume > 0) || !(tp.n_particles > 0)) throw InvalidInput("volume and N must be positive");
  const double lambda = thermal_wavelength(tp);
  const double n = tp.n_particles;
  const double lambda3 = lambda * lambda * lambda;
  if (stat == Statistics::MaxwellBoltzmannNN) return n * std::log(tp.volume / (n * lambda3));
  return n * std::log(tp.volume / lambda3) - std::lgamma(n + 1.0);
}

double free_energy_from_ln_Z(double ln_z, const ThermoPoint& tp) {
  return -tp.units.boltzmann * tp.temperature * ln_z;
}

double mb_free_energy(const ThermoPoint& tp) {
  return free_energy_from_ln_Z(ln_continuum_Z(tp, Statistics::MaxwellBoltzmannNN), tp);
}

double ln_nfactor_correction(double ln_z, double n_particles, double a) {
  if (!(n_particles > 0)) throw InvalidInput("N must be positive");
  return ln_z + n_particles * std::log(n_particles) + a * n_particles;
}

double nfactor_correction(double z, double n_particles, double a) {
  if (!(z > 0)) throw InvalidInput("Z must be positive");
  return std::exp(ln_nfactor_correction(std::log(z), n_particles, a));
}

namespace {

void fill_drift(std::vector<ExtensivityRow>& rows) {
  for (auto& row : rows) row.drift = row.free_energy_per_particle - rows.front().free_energy_per_particle;
}

}  // namespace

std::vector<ExtensivityRow> extensivity_report_continuum(Statistics stat, double temperature, const Units& units,
                                                         const std::vector<VolumeAndCount>& sizes) {
  std::vector<ExtensivityRow> rows;
  for (const auto& [volume, n] : sizes) {
    const ThermoPoint tp{temperature, volume, static_cast<double>(n), 0.0, units};
    const double ln_z = ln_continuum_Z(tp, stat);
    const double f = free_energy_from_ln_Z(ln_z, tp);
    rows.push_back({volume, n, ln_z, f, f / n, 0.0});
  }
  if (!rows.empty()) fill_drift(rows);
  return rows;
}

std::vector<ExtensivityRow> extensivity_report(const SpectrumBuilder& builder, Statistics stat, double temperature,
                                               const Units& units, const std::vector<VolumeAndCount>& sizes) {
  std::vector<ExtensivityRow> rows;
  for (const auto& [volume, n] : sizes) {
    if (n < 1) throw InvalidInput("extensivity rows need N >= 1");
    const ThermoPoint tp{temperature, volume, static_cast<double>(n), 0.0, units};
    const Spectrum spec = builder(volume);
    const double ln_z = ln_canonical_Z(spec, n, tp.beta(), stat);
    const double f = free_energy_from_ln_Z(ln_z, tp);
    rows.push_back({volume, n, ln_z, f, f / n, 0.0});
  }
  if (!rows.empty()) fill_drift(rows);
  return rows;
}

std::vector<double> sweep_ln_canonical_Z(const Spectrum& spec, Statistics stat, const std::vector<SweepPoint>& grid) {
  std::vector<double> out(grid.size(), 0.0);
  // Validate up front: exceptions must not escape the parallel region.
  for (const auto& point : grid) {
    detail::check_canonical_args(spec, point.n_particles, point.beta);
    if (is_quantum(stat)) check_occupation_caps(spec.size(), point.n_particles);
  }
  const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto& point = grid[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = serial::ln_canonical_Z(spec, point.n_particles, point.beta, stat);
  }
  return out;
}

}  // namespace idstat
