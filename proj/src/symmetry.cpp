#include "idstat/symmetry.hpp"

#include <algorithm>

#include "idstat/error.hpp"

namespace idstat {

namespace {

int derived_basis_size(const ProductState& s, int requested) {
  if (requested > 0) return requested;
  int top = 0;
  for (int level : s.levels) top = std::max(top, level + 1);
  return std::max(top, 1);
}

bool all_distinct(const ProductState& s) {
  auto levels = s.levels;
  std::sort(levels.begin(), levels.end());
  return std::adjacent_find(levels.begin(), levels.end()) == levels.end();
}

}  // namespace

StateVector::StateVector(int n_particles, int basis_size)
    : n_particles_(n_particles), basis_size_(basis_size) {
  if (n_particles < 1) throw InvalidInput("state vector needs at least one particle");
  if (basis_size < 1) throw InvalidInput("state vector needs a positive basis size");
}

StateVector StateVector::from_product(const ProductState& s, int basis_size) {
  StateVector v(s.size(), derived_basis_size(s, basis_size));
  v.add(s, RadicalRational(1));
  return v;
}

void StateVector::check(const ProductState& s) const {
  if (s.size() != n_particles_) {
    throw LengthMismatch("product state has " + std::to_string(s.size()) + " slots, vector has " +
                         std::to_string(n_particles_) + " particles");
  }
  for (int level : s.levels) {
    if (level < 0 || level >= basis_size_) {
      throw InvalidInput("level " + std::to_string(level) + " outside basis of size " +
                         std::to_string(basis_size_));
    }
  }
}

RadicalRational StateVector::amplitude(const ProductState& s) const {
  auto it = amplitudes_.find(s);
  return it == amplitudes_.end() ? RadicalRational() : it->second;
}

void StateVector::add(const ProductState& s, const RadicalRational& c) {
  check(s);
  if (c.is_zero()) return;
  auto [it, inserted] = amplitudes_.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) amplitudes_.erase(it);
  }
}

RadicalRational StateVector::norm2() const {
  RadicalRational sum;
  for (const auto& [s, c] : amplitudes_) sum += c * c;
  return sum;
}

StateVector& StateVector::operator+=(const StateVector& o) {
  if (o.n_particles_ != n_particles_) throw DimensionMismatch("adding vectors of different N");
  basis_size_ = std::max(basis_size_, o.basis_size_);
  for (const auto& [s, c] : o.amplitudes_) add(s, c);
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& o) {
  if (o.n_particles_ != n_particles_) throw DimensionMismatch("subtracting vectors of different N");
  basis_size_ = std::max(basis_size_, o.basis_size_);
  for (const auto& [s, c] : o.amplitudes_) add(s, -c);
  return *this;
}

StateVector& StateVector::operator*=(const RadicalRational& c) {
  if (c.is_zero()) {
    amplitudes_.clear();
    return *this;
  }
  for (auto& [s, a] : amplitudes_) a *= c;
  return *this;
}

StateVector StateVector::operator-() const {
  StateVector out = *this;
  for (auto& [s, a] : out.amplitudes_) a = -a;
  return out;
}

StateVector product_state_vector(const ProductState& s, int basis_size) {
  return StateVector::from_product(s, basis_size);
}

StateVector symmetrize_raw(const ProductState& s, Parity parity, int basis_size) {
  const int n = s.size();
  if (n > kMaxSymmetrizeParticles) {
    throw CapacityExceeded("symmetrize supports at most " + std::to_string(kMaxSymmetrizeParticles) +
                           " particles");
  }
  StateVector out(n, derived_basis_size(s, basis_size));
  const RadicalRational norm = RadicalRational::sqrt(Rational(1, static_cast<long long>(factorial(n))));
  for (const auto& p : PermutationRange(n)) {
    const bool negate = parity == Parity::Antisymmetric && p.sign() < 0;
    out.add(apply(p, s), negate ? -norm : norm);
  }
  return out;
}

SymmetrizeResult symmetrize(const ProductState& s, Parity parity, int basis_size) {
  StateVector raw = symmetrize_raw(s, parity, basis_size);
  RadicalRational raw_norm2 = raw.norm2();
  if (raw.is_zero()) return {std::move(raw), std::move(raw_norm2), true};
  if (raw_norm2 != RadicalRational(1)) {
    if (!raw_norm2.is_rational()) throw InvalidInput("raw norm is not rational");
    raw *= RadicalRational::sqrt(Rational(1) / raw_norm2.rational_part());
  }
  return {std::move(raw), std::move(raw_norm2), false};
}

const std::array<std::array<int, 3>, 6>& n3_argument_orders() {
  static const std::array<std::array<int, 3>, 6> orders{{
      {1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1},
  }};
  return orders;
}

const N3CoefficientTable& default_n3_table() {
  static const N3CoefficientTable table = [] {
    const RadicalRational inv_sqrt6 = RadicalRational::sqrt(Rational(1, 6));
    const RadicalRational inv_2sqrt3 = RadicalRational::sqrt(Rational(1, 12));
    const RadicalRational half = Rational(1, 2);
    //                      (123) (132) (213) (231) (312) (321)
    return N3CoefficientTable{{{
        {"psi_S", inv_sqrt6, {1, 1, 1, 1, 1, 1}},
        // Sign fixed by the coefficient of psi(1,2,3) being -1/sqrt(6).
        {"psi_A", inv_sqrt6, {-1, 1, 1, -1, -1, 1}},
        {"s1", inv_2sqrt3, {2, -1, 2, -1, -1, -1}},
        {"s2", half, {0, 1, 0, -1, 1, -1}},
        {"s1p", inv_2sqrt3, {2, 1, -2, -1, -1, 1}},
        {"s2p", half, {0, 1, 0, 1, -1, -1}},
    }}};
  }();
  return table;
}

StateVector build_n3_vector(const ProductState& base, const CoefficientRow& row, int basis_size) {
  if (base.size() != 3) throw LengthMismatch("N = 3 basis needs a three-particle state");
  StateVector out(3, derived_basis_size(base, basis_size));
  const auto& orders = n3_argument_orders();
  for (std::size_t k = 0; k < orders.size(); ++k) {
    const auto& o = orders[k];
    const ProductState s = apply(Permutation::from_one_based({o[0], o[1], o[2]}), base);
    out.add(s, row.prefactor * RadicalRational(row.numerators[k]));
  }
  return out;
}

MixedBasisN3 mixed_basis_n3(const ProductState& base, const N3CoefficientTable& table) {
  if (base.size() != 3 || !all_distinct(base)) {
    throw RequiresDistinctLevels("mixed-symmetry basis needs three distinct levels");
  }
  return {build_n3_vector(base, table.rows[2]), build_n3_vector(base, table.rows[3]),
          build_n3_vector(base, table.rows[4]), build_n3_vector(base, table.rows[5])};
}

std::array<StateVector, 6> full_basis_n3(const ProductState& base, const N3CoefficientTable& table) {
  auto mixed = mixed_basis_n3(base, table);
  return {build_n3_vector(base, table.rows[0]), build_n3_vector(base, table.rows[1]),
          std::move(mixed.s1), std::move(mixed.s2), std::move(mixed.s1p), std::move(mixed.s2p)};
}

RadicalRational inner_product(const StateVector& u, const StateVector& v) {
  if (u.n_particles() != v.n_particles()) {
    throw DimensionMismatch("inner product of " + std::to_string(u.n_particles()) + "- and " +
                            std::to_string(v.n_particles()) + "-particle vectors");
  }
  const StateVector& small = u.size() <= v.size() ? u : v;
  const StateVector& large = u.size() <= v.size() ? v : u;
  RadicalRational sum;
  for (const auto& [s, c] : small.amplitudes()) {
    auto it = large.amplitudes().find(s);
    if (it != large.amplitudes().end()) sum += c * it->second;
  }
  return sum;
}

StateVector permute_vector(const Permutation& p, const StateVector& v) {
  StateVector out(v.n_particles(), v.basis_size());
  for (const auto& [s, c] : v.amplitudes()) out.add(apply(p, s), c);
  return out;
}

Decomposition decompose(const StateVector& v, const std::vector<StateVector>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      const RadicalRational expected = i == j ? RadicalRational(1) : RadicalRational();
      if (inner_product(basis[i], basis[j]) != expected) {
        throw BasisNotOrthonormal("basis vectors " + std::to_string(i) + " and " + std::to_string(j) +
                                  " violate orthonormality");
      }
    }
  }
  Decomposition out{{}, v};
  for (const auto& b : basis) {
    RadicalRational c = inner_product(b, v);
    out.residual -= c * b;
    out.coefficients.push_back(std::move(c));
  }
  return out;
}

std::uint64_t multinomial(const std::vector<int>& multiplicities) {
  // Product of binomials keeps intermediates small and exact.
  std::uint64_t result = 1;
  int placed = 0;
  for (int m : multiplicities) {
    for (int k = 1; k <= m; ++k) {
      result = result * static_cast<std::uint64_t>(placed + k) / static_cast<std::uint64_t>(k);
    }
    placed += m;
  }
  return result;
}

std::uint64_t exchange_degeneracy_dimension(const ProductState& s) {
  std::map<int, int> counts;
  for (int level : s.levels) ++counts[level];
  std::vector<int> multiplicities;
  for (const auto& [level, m] : counts) multiplicities.push_back(m);
  return multinomial(multiplicities);
}

namespace {

using Matrix = std::vector<std::vector<RadicalRational>>;

RadicalRational determinant(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return RadicalRational(1);
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  RadicalRational det;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    Matrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<RadicalRational> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(m[r][c]);
      }
      minor.push_back(std::move(row));
    }
    RadicalRational term = m[0][col] * determinant(minor);
    if (col % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

}  // namespace

int span_dimension(const std::vector<StateVector>& vectors) {
  // Greedy independent subset: a vector joins when the Gram determinant stays nonzero.
  std::vector<const StateVector*> chosen;
  for (const auto& v : vectors) {
    if (v.is_zero()) continue;
    chosen.push_back(&v);
    Matrix gram(chosen.size(), std::vector<RadicalRational>(chosen.size()));
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      for (std::size_t j = i; j < chosen.size(); ++j) {
        gram[i][j] = inner_product(*chosen[i], *chosen[j]);
        gram[j][i] = gram[i][j];
      }
    }
    if (determinant(gram).is_zero()) chosen.pop_back();
  }
  return static_cast<int>(chosen.size());
}

std::string SymmetryClass::to_string() const {
  switch (kind) {
    case Kind::Symmetric: return "Symmetric";
    case Kind::Antisymmetric: return "Antisymmetric";
    case Kind::Mixed:
      return "Mixed(" + std::to_string(pair) + "," + std::to_string(member) + ")";
    case Kind::None: return "None";
  }
  return "None";
}

namespace {

// Locates v inside the named N = 3 mixed pairs when its support is a single
// orbit of three distinct levels.
void identify_mixed_member(const StateVector& v, SymmetryClass& out) {
  ProductState base = v.amplitudes().begin()->first;
  if (!all_distinct(base)) return;
  std::sort(base.levels.begin(), base.levels.end());
  const auto mixed = mixed_basis_n3(base);
  const std::array<std::array<const StateVector*, 2>, 2> pairs{{{&mixed.s1, &mixed.s2}, {&mixed.s1p, &mixed.s2p}}};
  for (int k = 0; k < 2; ++k) {
    const auto& [a, b] = pairs[static_cast<std::size_t>(k)];
    const auto d = decompose(v, {*a, *b});
    if (!d.residual.is_zero()) continue;
    out.pair = k + 1;
    if (d.coefficients[1].is_zero()) out.member = 1;
    if (d.coefficients[0].is_zero()) out.member = 2;
    return;
  }
}

}  // namespace

SymmetryClass classify_symmetry(const StateVector& v) {
  if (v.is_zero()) throw ZeroVectorInput("cannot classify the zero vector");
  const int n = v.n_particles();
  bool symmetric = true;
  bool antisymmetric = true;
  const StateVector minus_v = -v;
  for (int i = 1; i < n; ++i) {
    const StateVector moved = permute_vector(Permutation::transposition(n, i, i + 1), v);
    symmetric = symmetric && moved == v;
    antisymmetric = antisymmetric && moved == minus_v;
  }
  if (symmetric) return {SymmetryClass::Kind::Symmetric};
  if (antisymmetric) return {SymmetryClass::Kind::Antisymmetric};
  if (n != 3) return {SymmetryClass::Kind::None};

  std::vector<StateVector> orbit;
  for (const auto& p : PermutationRange(3)) orbit.push_back(permute_vector(p, v));
  if (span_dimension(orbit) != 2) return {SymmetryClass::Kind::None};
  SymmetryClass out{SymmetryClass::Kind::Mixed};
  identify_mixed_member(v, out);
  return out;
}

nlohmann::json to_json(const StateVector& v) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [s, c] : v.amplitudes()) {
    terms.push_back({{"state", s.levels}, {"amp", to_json(c)}});
  }
  return {{"n", v.n_particles()}, {"terms", terms}};
}

StateVector state_vector_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("terms") || !j["terms"].is_array()) {
    throw InvalidInput("state vector JSON must be {\"n\": N, \"terms\": [...]}");
  }
  const int n = j["n"].get<int>();
  std::vector<std::pair<ProductState, RadicalRational>> parsed;
  int basis = 1;
  for (const auto& t : j["terms"]) {
    ProductState s{t.at("state").get<std::vector<int>>()};
    for (int level : s.levels) basis = std::max(basis, level + 1);
    parsed.emplace_back(std::move(s), radical_from_json(t.at("amp")));
  }
  StateVector v(n, basis);
  for (const auto& [s, c] : parsed) v.add(s, c);
  return v;
}

}  // namespace idstat
