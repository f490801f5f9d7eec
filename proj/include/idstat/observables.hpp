#pragma once

// One-body operator expectations over StateVectors, the particle-in-a-box
// position matrix, and the plane-wave (constant |psi|^2) sector.

#include <array>
#include <functional>
#include <map>
#include <variant>
#include <vector>

#include "idstat/error.hpp"
#include "idstat/exactnum.hpp"
#include "idstat/symmetry.hpp"

namespace idstat {

/// Dense single-particle operator; applied to one particle of an N-particle state.
template <class T>
class OneBodyOperator {
 public:
  OneBodyOperator(int dim, std::vector<T> entries, bool hermitian = true)
      : dim_(dim), entries_(std::move(entries)), hermitian_(hermitian) {
    if (dim < 1 || entries_.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
      throw InvalidInput("operator entries must be dim x dim");
    }
  }

  static OneBodyOperator diagonal(const std::vector<T>& values) {
    const int dim = static_cast<int>(values.size());
    std::vector<T> entries(values.size() * values.size(), T(0));
    for (int k = 0; k < dim; ++k) entries[static_cast<std::size_t>(k * dim + k)] = values[static_cast<std::size_t>(k)];
    return OneBodyOperator(dim, std::move(entries), true);
  }

  int dim() const { return dim_; }
  bool hermitian() const { return hermitian_; }
  const T& operator()(int m, int n) const { return entries_[static_cast<std::size_t>(m * dim_ + n)]; }

 private:
  int dim_;
  std::vector<T> entries_;
  bool hermitian_;
};

using ExactOperator = OneBodyOperator<Rational>;
using RealOperator = OneBodyOperator<double>;

/// True when entries(m,n) == entries(n,m) within tol (real entries).
bool is_hermitian(const RealOperator& op, double tol = 0.0);
bool is_hermitian(const ExactOperator& op);

struct Box1D {
  double length = 1.0;
  double mass = 1.0;
  double planck = 1.0;
};
struct PlaneWaveBox {
  double volume = 1.0;
};
/// Energies strictly ascending.
struct AbstractLevels {
  std::vector<Rational> energies;
};
struct SingleParticleBasis {
  std::variant<Box1D, PlaneWaveBox, AbstractLevels> kind;
  int n_levels = 1;
};
/// Validates the basis invariants; throws InvalidInput.
void validate(const SingleParticleBasis& basis);

/// <v| O acting on particle `particle` (1-based) |v>, exact.
/// Throws NotNormalized unless norm^2 == 1 and DimensionMismatch when the
/// operator is smaller than the state's basis.
RadicalRational one_body_expectation(const StateVector& v, const ExactOperator& op, int particle);

/// Floating-point path. Spectator groups are reduced in parallel and merged
/// in a fixed order, so the result does not depend on the thread count.
double one_body_expectation(const StateVector& v, const RealOperator& op, int particle);

namespace serial {
/// Reference: the literal double sum over (s, s') pairs.
double one_body_expectation(const StateVector& v, const RealOperator& op, int particle);
}  // namespace serial

/// Energy expectation as a linear form in symbolic level energies: entry k is
/// the coefficient of eps_k in <H_particle>.
std::vector<RadicalRational> energy_expectation_form(const StateVector& v, int particle);

/// sum_i <H_i> for a diagonal energy operator.
RadicalRational energy_sum_rule(const StateVector& v, const ExactOperator& h);

/// x_mn = int_0^L phi_m x phi_n dx for phi_n = sqrt(2/L) sin(n pi x / L), with
/// level index k holding quantum number n = k + 1.
RealOperator box_position_operator(double length, int n_levels);

/// <x_particle> in the (anti)symmetrized box state built on distinct levels.
double position_expectation_symmetrized(const ProductState& levels, Parity parity, double length,
                                        int particle);

/// N momenta (any unit consistent with mass), one per particle.
template <class T>
struct PlaneWaveState {
  std::vector<std::array<T, 3>> momenta;
  T mass{1};
  T volume{1};
};

template <class T>
T plane_wave_energy(const PlaneWaveState<T>& pw) {
  T sum{0};
  for (const auto& p : pw.momenta) sum += (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
  return sum / (T(2) * pw.mass);
}

/// E = sum_j hbar^2 |a_j|^2 / 2m for the phase f = sum_j a_j . q_j.
template <class T>
T phase_energy(const std::vector<std::array<T, 3>>& wavevectors, const T& mass, const T& hbar) {
  T sum{0};
  for (const auto& a : wavevectors) sum += (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  return hbar * hbar * sum / (T(2) * mass);
}

/// a_j = p_j / hbar.
template <class T>
std::vector<std::array<T, 3>> wavevectors_from_momenta(const PlaneWaveState<T>& pw, const T& hbar) {
  std::vector<std::array<T, 3>> out;
  out.reserve(pw.momenta.size());
  for (const auto& p : pw.momenta) out.push_back({p[0] / hbar, p[1] / hbar, p[2] / hbar});
  return out;
}

/// N! / prod_j n_j! over groups of equal momentum vectors.
template <class T>
std::uint64_t momentum_degeneracy(const PlaneWaveState<T>& pw) {
  std::map<std::array<T, 3>, int> counts;
  for (const auto& p : pw.momenta) ++counts[p];
  std::vector<int> multiplicities;
  for (const auto& [p, n] : counts) multiplicities.push_back(n);
  return multinomial(multiplicities);
}

using Coordinates = std::vector<std::array<Rational, 3>>;
using PhaseFunction = std::function<Rational(const Coordinates&)>;

/// The linear phase f = sum_j a_j . q_j.
PhaseFunction linear_phase(const std::vector<std::array<Rational, 3>>& coefficients);

/// sum_j lap_j f at `point`, from exact central second differences with the
/// given step (exact for polynomials up to degree 3).
Rational laplacian_condition_residual(const PhaseFunction& f, const Coordinates& point, const Rational& step);
/// Residual for the linear phase with these coefficients.
Rational laplacian_condition_residual(const std::vector<std::array<Rational, 3>>& coefficients);

}  // namespace idstat
