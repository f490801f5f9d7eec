#include "idstat/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace idstat {

bool is_hermitian(const RealOperator& op, double tol) {
  for (int m = 0; m < op.dim(); ++m) {
    for (int n = m + 1; n < op.dim(); ++n) {
      if (std::abs(op(m, n) - op(n, m)) > tol) return false;
    }
  }
  return true;
}

bool is_hermitian(const ExactOperator& op) {
  for (int m = 0; m < op.dim(); ++m) {
    for (int n = m + 1; n < op.dim(); ++n) {
      if (!(op(m, n) == op(n, m))) return false;
    }
  }
  return true;
}

void validate(const SingleParticleBasis& basis) {
  if (basis.n_levels < 1) throw InvalidInput("basis needs at least one level");
  std::visit(
      [&](const auto& kind) {
        using K = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<K, Box1D>) {
          if (!(kind.length > 0 && kind.mass > 0 && kind.planck > 0)) {
            throw InvalidInput("box length, mass and Planck constant must be positive");
          }
        } else if constexpr (std::is_same_v<K, PlaneWaveBox>) {
          if (!(kind.volume > 0)) throw InvalidInput("plane-wave volume must be positive");
        } else {
          for (std::size_t k = 1; k < kind.energies.size(); ++k) {
            if (!(kind.energies[k - 1] < kind.energies[k])) {
              throw InvalidInput("abstract energies must be strictly ascending");
            }
          }
          if (kind.energies.size() != static_cast<std::size_t>(basis.n_levels)) {
            throw InvalidInput("abstract energies must list n_levels values");
          }
        }
      },
      basis.kind);
}

namespace {

struct Slot {
  int level;
  const RadicalRational* amplitude;
};

// Terms of v grouped by the levels of every particle except `particle`.
std::vector<std::vector<Slot>> spectator_groups(const StateVector& v, int particle) {
  const auto slot = static_cast<std::size_t>(particle - 1);
  std::map<std::vector<int>, std::vector<Slot>> groups;
  for (const auto& [s, c] : v.amplitudes()) {
    std::vector<int> key = s.levels;
    key.erase(key.begin() + static_cast<std::ptrdiff_t>(slot));
    groups[std::move(key)].push_back({s.levels[slot], &c});
  }
  std::vector<std::vector<Slot>> out;
  out.reserve(groups.size());
  for (auto& [key, g] : groups) out.push_back(std::move(g));
  return out;
}

template <class T>
void check_expectation_args(const StateVector& v, const OneBodyOperator<T>& op, int particle) {
  if (particle < 1 || particle > v.n_particles()) {
    throw InvalidInput("particle label " + std::to_string(particle) + " outside 1.." +
                       std::to_string(v.n_particles()));
  }
  if (op.dim() < v.basis_size()) {
    throw DimensionMismatch("operator dimension " + std::to_string(op.dim()) + " below basis size " +
                            std::to_string(v.basis_size()));
  }
  if (v.norm2() != RadicalRational(1)) {
    throw NotNormalized("state has norm^2 " + v.norm2().to_string());
  }
}

}  // namespace

RadicalRational one_body_expectation(const StateVector& v, const ExactOperator& op, int particle) {
  check_expectation_args(v, op, particle);
  RadicalRational sum;
  for (const auto& group : spectator_groups(v, particle)) {
    for (const auto& a : group) {
      for (const auto& b : group) {
        const Rational& entry = op(a.level, b.level);
        if (entry.is_zero()) continue;
        sum += (*a.amplitude) * (*b.amplitude) * RadicalRational(entry);
      }
    }
  }
  return sum;
}

double one_body_expectation(const StateVector& v, const RealOperator& op, int particle) {
  check_expectation_args(v, op, particle);
  const auto groups = spectator_groups(v, particle);
  std::vector<double> partial(groups.size(), 0.0);
  const auto count = static_cast<std::ptrdiff_t>(groups.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t g = 0; g < count; ++g) {
    const auto& group = groups[static_cast<std::size_t>(g)];
    double acc = 0.0;
    for (const auto& a : group) {
      const double ca = a.amplitude->to_double();
      for (const auto& b : group) acc += ca * b.amplitude->to_double() * op(a.level, b.level);
    }
    partial[static_cast<std::size_t>(g)] = acc;
  }
  double sum = 0.0;
  for (double p : partial) sum += p;
  return sum;
}

namespace serial {

double one_body_expectation(const StateVector& v, const RealOperator& op, int particle) {
  check_expectation_args(v, op, particle);
  const auto slot = static_cast<std::size_t>(particle - 1);
  double sum = 0.0;
  for (const auto& [s, cs] : v.amplitudes()) {
    for (const auto& [t, ct] : v.amplitudes()) {
      bool spectators_match = true;
      for (std::size_t j = 0; j < s.levels.size(); ++j) {
        if (j != slot && s.levels[j] != t.levels[j]) {
          spectators_match = false;
          break;
        }
      }
      if (spectators_match) sum += cs.to_double() * ct.to_double() * op(s.levels[slot], t.levels[slot]);
    }
  }
  return sum;
}

}  // namespace serial

std::vector<RadicalRational> energy_expectation_form(const StateVector& v, int particle) {
  std::vector<RadicalRational> form;
  for (int k = 0; k < v.basis_size(); ++k) {
    std::vector<Rational> unit(static_cast<std::size_t>(v.basis_size()), Rational(0));
    unit[static_cast<std::size_t>(k)] = Rational(1);
    form.push_back(one_body_expectation(v, ExactOperator::diagonal(unit), particle));
  }
  return form;
}

RadicalRational energy_sum_rule(const StateVector& v, const ExactOperator& h) {
  RadicalRational sum;
  for (int i = 1; i <= v.n_particles(); ++i) sum += one_body_expectation(v, h, i);
  return sum;
}

RealOperator box_position_operator(double length, int n_levels) {
  if (n_levels < 1) throw InvalidInput("box position operator needs n_levels >= 1");
  if (!(length > 0)) throw InvalidInput("box length must be positive");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  std::vector<double> entries(static_cast<std::size_t>(n_levels) * static_cast<std::size_t>(n_levels), 0.0);
  for (int a = 0; a < n_levels; ++a) {
    for (int b = 0; b < n_levels; ++b) {
      const double m = a + 1;
      const double n = b + 1;
      double x = 0.0;
      if (a == b) {
        x = length / 2.0;
      } else if ((a - b) % 2 != 0) {
        const double d = m * m - n * n;
        x = -8.0 * length * m * n / (pi2 * d * d);
      }
      entries[static_cast<std::size_t>(a * n_levels + b)] = x;
    }
  }
  return RealOperator(n_levels, std::move(entries), true);
}

double position_expectation_symmetrized(const ProductState& levels, Parity parity, double length,
                                        int particle) {
  auto sorted = levels.levels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw RequiresDistinctLevels("position expectation needs distinct levels");
  }
  const auto sym = symmetrize(levels, parity);
  const auto x = box_position_operator(length, sym.vector.basis_size());
  return one_body_expectation(sym.vector, x, particle);
}

PhaseFunction linear_phase(const std::vector<std::array<Rational, 3>>& coefficients) {
  return [coefficients](const Coordinates& q) {
    if (q.size() != coefficients.size()) throw LengthMismatch("phase evaluated at wrong particle count");
    Rational f(0);
    for (std::size_t j = 0; j < q.size(); ++j) {
      for (std::size_t d = 0; d < 3; ++d) f += coefficients[j][d] * q[j][d];
    }
    return f;
  };
}

Rational laplacian_condition_residual(const PhaseFunction& f, const Coordinates& point, const Rational& step) {
  if (step.is_zero()) throw InvalidInput("finite-difference step must be nonzero");
  const Rational center = f(point);
  Rational sum(0);
  for (std::size_t j = 0; j < point.size(); ++j) {
    for (std::size_t d = 0; d < 3; ++d) {
      Coordinates plus = point;
      Coordinates minus = point;
      plus[j][d] += step;
      minus[j][d] -= step;
      sum += (f(plus) - Rational(2) * center + f(minus)) / (step * step);
    }
  }
  return sum;
}

Rational laplacian_condition_residual(const std::vector<std::array<Rational, 3>>& coefficients) {
  Coordinates point(coefficients.size());
  for (std::size_t j = 0; j < point.size(); ++j) {
    const auto base = static_cast<long long>(j + 1);
    point[j] = {Rational(base, 3), Rational(-base, 5), Rational(base * 2, 7)};
  }
  return laplacian_condition_residual(linear_phase(coefficients), point, Rational(1, 2));
}

}  // namespace idstat
