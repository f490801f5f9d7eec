#include <cmath>
#include <limits>

#include "idstat/statmech.hpp"
#include "statmech_internal.hpp"

namespace idstat::serial {

double ln_canonical_Z(const Spectrum& spec, int n_particles, double beta, Statistics stat) {
  detail::check_canonical_args(spec, n_particles, beta);
  if (!is_quantum(stat)) return detail::ln_mb_discrete(spec, n_particles, beta, stat);
  OccupationStream stream(spec.size(), n_particles, stat);
  if (stat == Statistics::FermiDirac && n_particles > spec.size()) return -std::numeric_limits<double>::infinity();
  const double e_min = detail::lowest_energy(spec, n_particles, stat);
  double sum = 0.0;
  while (auto occ = stream.next()) {
    double energy = 0.0;
    for (std::size_t k = 0; k < occ->size(); ++k) energy += (*occ)[k] * spec.energies[k];
    sum += std::exp(-beta * (energy - e_min));
  }
  return -beta * e_min + std::log(sum);
}

std::vector<double> sweep_ln_canonical_Z(const Spectrum& spec, Statistics stat, const std::vector<SweepPoint>& grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (const auto& point : grid) out.push_back(serial::ln_canonical_Z(spec, point.n_particles, point.beta, stat));
  return out;
}

}  // namespace idstat::serial
