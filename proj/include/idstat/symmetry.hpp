#pragma once

// N-particle state vectors over the product basis, permutation-symmetry
// projections, and the explicit N = 3 basis with the two mixed-symmetry pairs.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "idstat/exactnum.hpp"
#include "idstat/perm.hpp"
#include "json.hpp"

namespace idstat {

inline constexpr int kMaxSymmetrizeParticles = 8;

/// Sparse real wavefunction in the (orthonormal) product basis.
class StateVector {
 public:
  using Amplitudes = std::map<ProductState, RadicalRational>;

  StateVector(int n_particles, int basis_size);
  static StateVector from_product(const ProductState& s, int basis_size = 0);

  int n_particles() const { return n_particles_; }
  int basis_size() const { return basis_size_; }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  std::size_t size() const { return amplitudes_.size(); }
  bool is_zero() const { return amplitudes_.empty(); }

  /// Zero when the state is absent.
  RadicalRational amplitude(const ProductState& s) const;
  /// Adds c to the amplitude of s, dropping the entry if it cancels.
  void add(const ProductState& s, const RadicalRational& c);

  RadicalRational norm2() const;

  StateVector& operator+=(const StateVector& o);
  StateVector& operator-=(const StateVector& o);
  StateVector& operator*=(const RadicalRational& c);
  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend StateVector operator*(const RadicalRational& c, StateVector v) { return v *= c; }
  StateVector operator-() const;
  friend bool operator==(const StateVector& a, const StateVector& b) {
    return a.n_particles_ == b.n_particles_ && a.amplitudes_ == b.amplitudes_;
  }

 private:
  void check(const ProductState& s) const;

  int n_particles_;
  int basis_size_;
  Amplitudes amplitudes_;
};

/// Single-term vector with amplitude 1.
StateVector product_state_vector(const ProductState& s, int basis_size = 0);

enum class Parity { Symmetric, Antisymmetric };

struct SymmetrizeResult {
  StateVector vector;        // unit norm, or zero
  RadicalRational raw_norm2;  // norm^2 of the bare 1/sqrt(N!) sum
  bool zero_vector = false;
};

/// (1/sqrt(N!)) sum_P (+-1)^P P(s), with no renormalization.
StateVector symmetrize_raw(const ProductState& s, Parity parity, int basis_size = 0);
/// The raw sum renormalized to unit length when levels repeat.
SymmetrizeResult symmetrize(const ProductState& s, Parity parity, int basis_size = 0);

/// Integer numerators over the six argument orders of psi(x,y,z) and a common
/// prefactor. psi(x,y,z) means phi_{e1}(x) phi_{e2}(y) phi_{e3}(z).
struct CoefficientRow {
  std::string name;
  RadicalRational prefactor;
  std::array<int, 6> numerators;
};

/// Argument orders (x,y,z) indexing CoefficientRow::numerators.
const std::array<std::array<int, 3>, 6>& n3_argument_orders();

/// Rows for psi^S, psi^A, s1, s2, s1', s2' (in that order).
struct N3CoefficientTable {
  std::array<CoefficientRow, 6> rows;
};
const N3CoefficientTable& default_n3_table();

/// Builds one row of the table over the distinct levels of `base`.
StateVector build_n3_vector(const ProductState& base, const CoefficientRow& row, int basis_size = 0);

struct MixedBasisN3 {
  StateVector s1, s2, s1p, s2p;
};
/// Throws RequiresDistinctLevels unless base has three distinct levels.
MixedBasisN3 mixed_basis_n3(const ProductState& base, const N3CoefficientTable& table = default_n3_table());
/// (psi^S, psi^A, s1, s2, s1', s2').
std::array<StateVector, 6> full_basis_n3(const ProductState& base, const N3CoefficientTable& table = default_n3_table());

RadicalRational inner_product(const StateVector& u, const StateVector& v);

/// Transports amplitudes along apply(p, .).
StateVector permute_vector(const Permutation& p, const StateVector& v);

struct Decomposition {
  std::vector<RadicalRational> coefficients;
  StateVector residual;
};
/// Throws BasisNotOrthonormal after an exact Gram check.
Decomposition decompose(const StateVector& v, const std::vector<StateVector>& basis);

/// N! / prod_j (multiplicity of level j)!.
std::uint64_t exchange_degeneracy_dimension(const ProductState& s);
std::uint64_t multinomial(const std::vector<int>& multiplicities);

/// Exact dimension of span(vectors).
int span_dimension(const std::vector<StateVector>& vectors);

struct SymmetryClass {
  enum class Kind { Symmetric, Antisymmetric, Mixed, None };
  Kind kind = Kind::None;
  // For Mixed: pair 1 = {s1, s2}, 2 = {s1', s2'}; member 1/2 within the pair.
  // 0 marks a vector that is not one of the named N = 3 vectors.
  int pair = 0;
  int member = 0;

  std::string to_string() const;
  friend bool operator==(const SymmetryClass&, const SymmetryClass&) = default;
};

/// Throws ZeroVectorInput on the zero vector.
SymmetryClass classify_symmetry(const StateVector& v);

/// {"n": N, "terms": [{"state": [...], "amp": {...}}, ...]}, states sorted.
nlohmann::json to_json(const StateVector& v);
StateVector state_vector_from_json(const nlohmann::json& j);

}  // namespace idstat
