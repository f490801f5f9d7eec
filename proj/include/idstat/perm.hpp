#pragma once

// The symmetric group S_N acting on product states by relabelling particles.

#include <compare>
#include <cstddef>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace idstat {

inline constexpr int kMaxPermutationSize = 10;

/// A bijection on particle labels. Labels are 1-based at the API surface and
/// 0-based in storage: image(i) is the 0-based image of 0-based label i.
class Permutation {
 public:
  Permutation() = default;
  /// From 0-based images; throws InvalidInput unless a bijection.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// Transposition of 1-based labels i and j.
  static Permutation transposition(int n, int i, int j);
  /// From 1-based images, as written in the paper's argument tuples.
  static Permutation from_one_based(const std::vector<int>& images);

  int size() const { return static_cast<int>(images_.size()); }
  int image(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  /// +1 or -1 from the inversion count.
  int sign() const;

  /// "(1 2)(3)": every label appears, fixed points included.
  std::string cycle_notation() const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// p∘q, i.e. q acts first.
Permutation compose(const Permutation& p, const Permutation& q);
inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

inline int sign(const Permutation& p) { return p.sign(); }

/// Single-particle level per particle label: levels[i] is the level of particle i+1.
struct ProductState {
  std::vector<int> levels;

  int size() const { return static_cast<int>(levels.size()); }
  friend auto operator<=>(const ProductState&, const ProductState&) = default;
};

/// Relabels particles: result.levels[p(i)] = s.levels[i].
/// apply(p∘q, s) == apply(p, apply(q, s)).
ProductState apply(const Permutation& p, const ProductState& s);

/// Lexicographic stream over S_n. Restartable: each begin() starts from identity.
class PermutationRange {
 public:
  explicit PermutationRange(int n);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Permutation;
    using difference_type = std::ptrdiff_t;
    using pointer = const Permutation*;
    using reference = const Permutation&;

    iterator() = default;
    explicit iterator(int n);

    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_ && (a.done_ || a.current_ == b.current_); }

   private:
    Permutation current_;
    bool done_ = true;
  };

  iterator begin() const { return iterator(n_); }
  iterator end() const { return iterator(); }
  int size() const { return n_; }

 private:
  int n_;
};

/// All n! permutations in lexicographic order of the image array. n <= 10.
std::vector<Permutation> enumerate_permutations(int n);

std::uint64_t factorial(int n);

/// Two transpositions sharing one label whose composition orders differ.
/// Throws NoWitness for n < 3.
std::pair<Permutation, Permutation> noncommutation_witness(int n);

nlohmann::json to_json(const Permutation& p);  // 1-based image array

}  // namespace idstat
