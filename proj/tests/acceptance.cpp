// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <set>
#include <string>

#include "idstat/observables.hpp"
#include "idstat/statmech.hpp"
#include "idstat/symmetry.hpp"
#include "json.hpp"

using namespace idstat;

namespace {

using Clock = std::chrono::steady_clock;
using Form = std::vector<RadicalRational>;

const ProductState kABC{{0, 1, 2}};

Form form(std::initializer_list<std::pair<long long, long long>> xs) {
  Form out;
  for (auto [p, q] : xs) out.emplace_back(Rational(p, q));
  return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  if (!o.pass) ++failures;
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.1f ms", ms);
  std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title << "  [" << o.detail << "; "
            << timing << "]\n";
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::pair<int, std::string> run_cli_binary(const std::string& args) {
  const std::string cmd = std::string(IDSTAT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

}  // namespace

int main() {
  criterion(1, "mean energy (e1+e2+e3)/3 for every particle of psi^S and psi^A", [] {
    const auto start = Clock::now();
    const Form third = form({{1, 3}, {1, 3}, {1, 3}});
    int bad = 0;
    for (Parity parity : {Parity::Symmetric, Parity::Antisymmetric}) {
      const auto v = symmetrize(kABC, parity).vector;
      for (int i = 1; i <= 3; ++i) bad += energy_expectation_form(v, i) != third;
    }
    const double t = seconds_since(start);
    return Outcome{bad == 0 && t < 1.0, std::to_string(bad) + " mismatches, " + num(t) + " s (< 1 s)"};
  });

  criterion(2, "mixed-symmetry energy splittings and the sum rule", [] {
    const auto m = mixed_basis_n3(kABC);
    bool ok = energy_expectation_form(m.s1, 1) == form({{5, 12}, {5, 12}, {2, 12}}) &&
              energy_expectation_form(m.s1, 2) == form({{5, 12}, {5, 12}, {2, 12}}) &&
              energy_expectation_form(m.s1, 3) == form({{2, 12}, {2, 12}, {8, 12}}) &&
              energy_expectation_form(m.s2, 1) == form({{1, 4}, {1, 4}, {2, 4}}) &&
              energy_expectation_form(m.s2, 2) == form({{1, 4}, {1, 4}, {2, 4}}) &&
              energy_expectation_form(m.s2, 3) == form({{1, 2}, {1, 2}, {0, 1}});
    // Sum rule with generic energies on all six vectors.
    const auto h = ExactOperator::diagonal({Rational(2, 3), Rational(7, 5), Rational(19, 4)});
    const RadicalRational e = Rational(2, 3) + Rational(7, 5) + Rational(19, 4);
    int bad_sum = 0;
    for (const auto& v : full_basis_n3(kABC)) bad_sum += energy_sum_rule(v, h) != e;
    return Outcome{ok && bad_sum == 0, std::string(ok ? "splittings exact" : "splitting mismatch") + ", " +
                                           std::to_string(bad_sum) + " sum-rule violations"};
  });

  criterion(3, "orthonormal basis, stable mixed pairs, dim(S + A) = 2 of 6", [] {
    const auto b = full_basis_n3(kABC);
    int gram_bad = 0;
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) gram_bad += inner_product(b[i], b[j]) != RadicalRational(i == j ? 1 : 0);
    }
    int leaks = 0;
    for (const auto& p : PermutationRange(3)) {
      for (std::size_t k : {2u, 3u}) leaks += !decompose(permute_vector(p, b[k]), {b[2], b[3]}).residual.is_zero();
      for (std::size_t k : {4u, 5u}) leaks += !decompose(permute_vector(p, b[k]), {b[4], b[5]}).residual.is_zero();
    }
    std::vector<StateVector> sa;
    for (const auto& p : PermutationRange(3)) {
      sa.push_back(symmetrize(apply(p, kABC), Parity::Symmetric).vector);
      sa.push_back(symmetrize(apply(p, kABC), Parity::Antisymmetric).vector);
    }
    const int dim = span_dimension(sa);
    const int total = span_dimension({b.begin(), b.end()});
    return Outcome{gram_bad == 0 && leaks == 0 && dim == 2 && total == 6,
                   std::to_string(gram_bad) + " Gram errors, " + std::to_string(leaks) + " pair leaks, dim " +
                       std::to_string(dim) + " of " + std::to_string(total)};
  });

  criterion(4, "psi(1,2,3) = (1/sqrt6, -1/sqrt6, 1/sqrt3, 0, 1/sqrt3, 0), zero residual", [] {
    const auto b = full_basis_n3(kABC);
    const auto d = decompose(product_state_vector(kABC), {b.begin(), b.end()});
    const auto r6 = RadicalRational::sqrt(Rational(1, 6));
    const auto r3 = RadicalRational::sqrt(Rational(1, 3));
    const std::vector<RadicalRational> expected{r6, -r6, r3, RadicalRational(), r3, RadicalRational()};
    RadicalRational squares;
    for (const auto& c : d.coefficients) squares += c * c;
    const bool ok = d.coefficients == expected && d.residual.is_zero() && squares == RadicalRational(1);
    return Outcome{ok, "squares sum to " + squares.to_string()};
  });

  criterion(5, "degeneracy 1/3/6 and multinomial = orbit size for all partitions of N <= 6", [] {
    const bool counts = exchange_degeneracy_dimension(ProductState{{0, 0, 0}}) == 1 &&
                        exchange_degeneracy_dimension(ProductState{{0, 0, 1}}) == 3 &&
                        exchange_degeneracy_dimension(ProductState{{0, 1, 2}}) == 6;
    int partitions = 0;
    int mismatches = 0;
    for (int n = 1; n <= 6; ++n) {
      std::vector<int> parts;
      std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
          ++partitions;
          ProductState s;
          for (std::size_t level = 0; level < parts.size(); ++level) {
            for (int k = 0; k < parts[level]; ++k) s.levels.push_back(static_cast<int>(level));
          }
          std::set<ProductState> orbit;
          for (const auto& p : PermutationRange(n)) orbit.insert(apply(p, s));
          mismatches += orbit.size() != multinomial(parts);
          return;
        }
        for (int k = std::min(remaining, max_part); k >= 1; --k) {
          parts.push_back(k);
          rec(remaining - k, k);
          parts.pop_back();
        }
      };
      rec(n, n);
    }
    return Outcome{counts && mismatches == 0 && partitions == 29,
                   std::to_string(partitions) + " partitions, " + std::to_string(mismatches) + " mismatches"};
  });

  criterion(6, "<x_i> = L/2 within 1e-10, N = 2,3, distinct levels up to 5", [] {
    double worst = 0.0;
    for (double length : {1.0, 3.7}) {
      for (int a = 0; a < 5; ++a) {
        for (int b = a + 1; b < 5; ++b) {
          for (Parity parity : {Parity::Symmetric, Parity::Antisymmetric}) {
            for (int i = 1; i <= 2; ++i) {
              worst = std::max(worst, std::abs(position_expectation_symmetrized(ProductState{{a, b}}, parity, length, i) -
                                               length / 2));
            }
            for (int c = b + 1; c < 5; ++c) {
              for (int i = 1; i <= 3; ++i) {
                worst = std::max(worst, std::abs(position_expectation_symmetrized(ProductState{{a, b, c}}, parity,
                                                                                   length, i) - length / 2));
              }
            }
          }
        }
      }
    }
    return Outcome{worst <= 1e-10, "max error " + num(worst)};
  });

  criterion(7, "plane waves: linear phase, E = sum p^2/2m, multiset sum = z1^N", [] {
    std::vector<std::array<Rational, 3>> a{{Rational(2), Rational(-3, 4), Rational(1, 9)},
                                           {Rational(-5), Rational(0), Rational(8, 3)},
                                           {Rational(1, 2), Rational(1), Rational(-1)}};
    const bool lap = laplacian_condition_residual(a).is_zero();
    PlaneWaveState<Rational> pw;
    pw.mass = Rational(5, 2);
    pw.momenta = {{Rational(1), Rational(2), Rational(3)}, {Rational(-1, 3), Rational(0), Rational(4)}};
    const Rational hbar(3, 17);
    const bool energy = phase_energy(wavevectors_from_momenta(pw, hbar), pw.mass, hbar) == plane_wave_energy(pw);
    const std::vector<double> grid{-2, -1, 0, 1, 2};
    const double beta = 1.3;
    const double mass = 0.8;
    double z1 = 0.0;
    for (double p : grid) z1 += std::exp(-beta * p * p / (2 * mass));
    double worst = 0.0;
    for (int n = 1; n <= 4; ++n) worst = std::max(worst, rel(degeneracy_weighted_sum(grid, n, beta, mass), std::pow(z1, n)));
    return Outcome{lap && energy && worst <= 1e-12,
                   std::string(lap ? "laplacian 0" : "laplacian nonzero") + ", energy " + (energy ? "exact" : "differs") +
                       ", multiset rel err " + num(worst)};
  });

  criterion(8, "enumeration = recursion (1e-12), grand product = series, Bose divergence iff mu >= eps_min", [] {
    double worst = 0.0;
    for (int levels = 1; levels <= 8; ++levels) {
      std::vector<double> spaced;
      std::vector<long long> squares;
      for (int k = 0; k < levels; ++k) {
        spaced.push_back(0.15 * k);
        squares.push_back(static_cast<long long>(k + 1) * (k + 1));
      }
      const auto even = spectrum_from_energies(spaced);
      const auto square = build_spectrum(DimensionlessSource{}, levels);
      for (int n = 1; n <= 5; ++n) {
        for (double beta : {0.2, 1.0}) {
          for (int parity : {1, -1}) {
            const auto stat = parity == 1 ? Statistics::BoseEinstein : Statistics::FermiDirac;
            if (parity == -1 && n > levels) continue;
            worst = std::max(worst, rel(canonical_Z(even, n, beta, stat), canonical_Z_recursive(even, n, beta, parity)));
            worst = std::max(worst, std::abs(std::expm1(ln_canonical_Z(square, n, beta, stat) -
                                                        ln_canonical_Z_recursive_integer(squares, n, beta, parity))));
          }
        }
      }
    }
    const auto spec = spectrum_from_energies({0.2, 0.9, 1.4, 2.2});
    const double fd = rel(grand_Xi(spec, 1.1, -0.3, Statistics::FermiDirac),
                          fugacity_series(spec, 1.1, -0.3, Statistics::FermiDirac, spec.size()));
    const double be = rel(grand_Xi(spec, 1.1, -0.3, Statistics::BoseEinstein),
                          fugacity_series(spec, 1.1, -0.3, Statistics::BoseEinstein, kMaxRecursionParticles));
    int divergence_errors = 0;
    for (double mu : {-1.0, 0.0, 0.19, 0.2, 0.21, 1.0}) {
      bool threw = false;
      try {
        grand_Xi(spec, 1.0, mu, Statistics::BoseEinstein);
      } catch (const BoseDivergence&) {
        threw = true;
      }
      divergence_errors += threw != (mu >= 0.2);
    }
    return Outcome{worst <= 1e-12 && fd <= 1e-12 && be <= 1e-10 && divergence_errors == 0,
                   "canonical " + num(worst) + ", fd " + num(fd) + ", be " + num(be) +
                       ", divergence errors " + std::to_string(divergence_errors)};
  });

  criterion(9, "F(T,V,N) = N F(T,V/N,1) for MB-NN (1e-12); MB-Factorial drift shrinks like ln N! - N ln N + N", [] {
    const auto start = Clock::now();
    double worst = 0.0;
    for (double n : {1.0, 2.0, 10.0, 100.0, 1e4}) {
      for (double temperature : {0.5, 1.0, 3.0}) {
        const ThermoPoint whole{temperature, 2.0 * n, n, 0.0, Units::dimensionless()};
        const ThermoPoint one{temperature, 2.0, 1.0, 0.0, Units::dimensionless()};
        worst = std::max(worst, rel(mb_free_energy(whole), n * mb_free_energy(one)));
      }
    }
    const auto rows = extensivity_report_continuum(Statistics::MaxwellBoltzmannFactorial, 1.0, Units::dimensionless(),
                                                   {{1, 1}, {2, 2}, {10, 10}, {100, 100}, {10000, 10000}});
    bool drift_ok = true;
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < rows.size(); ++k) {
      const double n = rows[k].n_particles;
      const double excess = rows[k].drift + 1.0;  // kT = 1
      drift_ok = drift_ok && rows[k].drift != 0.0 && excess < previous &&
                 rel(excess * n, std::lgamma(n + 1) - n * std::log(n) + n) <= 1e-9;
      previous = excess;
    }
    const double t = seconds_since(start);
    return Outcome{worst <= 1e-12 && drift_ok && t < 5.0,
                   "rel err " + num(worst) + ", drift " + (drift_ok ? "as expected" : "off") + ", " +
                       num(t) + " s (< 5 s)"};
  });

  criterion(10, "verify-paper: exit 0 with exactly 2 noted and 0 failed; negative control exits 1", [] {
    const auto [code, out] = run_cli_binary("--output json verify-paper");
    const auto [bad_code, bad_out] = run_cli_binary("--output json verify-paper --negative-control");
    const auto j = nlohmann::json::parse(out);
    const auto bad = nlohmann::json::parse(bad_out);
    bool m1_failed = false;
    for (const auto& c : bad["checks"]) {
      if (c["id"] == "M1") m1_failed = c["status"] == "fail";
    }
    const int noted = j["summary"]["noted"];
    const int failed = j["summary"]["failed"];
    return Outcome{code == 0 && noted == 2 && failed == 0 && bad_code == 1 && m1_failed,
                   "exit " + std::to_string(code) + ", noted " + std::to_string(noted) + ", failed " +
                       std::to_string(failed) + "; negative control exit " + std::to_string(bad_code) +
                       (m1_failed ? ", M1 failed" : ", M1 did not fail")};
  });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
