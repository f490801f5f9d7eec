#pragma once

#include "idstat/statmech.hpp"

namespace idstat::detail {

/// Ground energy of N particles: N eps_0, or the lowest N levels for FD.
double lowest_energy(const Spectrum& spec, int n_particles, Statistics stat);
void check_canonical_args(const Spectrum& spec, int n_particles, double beta);
/// MB kinds on a discrete spectrum: N ln z1 - ln N^N  or  - ln N!.
double ln_mb_discrete(const Spectrum& spec, int n_particles, double beta, Statistics stat);

}  // namespace idstat::detail
