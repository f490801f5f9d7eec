#include "idstat/perm.hpp"

#include <algorithm>

#include "idstat/error.hpp"

namespace idstat {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)]) {
      throw InvalidInput("permutation images are not a bijection");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = i;
  return Permutation(std::move(images));
}

Permutation Permutation::transposition(int n, int i, int j) {
  if (i < 1 || j < 1 || i > n || j > n) throw InvalidInput("transposition label out of range");
  auto images = identity(n).images_;
  std::swap(images[static_cast<std::size_t>(i - 1)], images[static_cast<std::size_t>(j - 1)]);
  return Permutation(std::move(images));
}

Permutation Permutation::from_one_based(const std::vector<int>& images) {
  std::vector<int> zero_based;
  zero_based.reserve(images.size());
  for (int v : images) zero_based.push_back(v - 1);
  return Permutation(std::move(zero_based));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i) {
    if (image(i) != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < size(); ++i) inv[static_cast<std::size_t>(image(i))] = i;
  return Permutation(std::move(inv));
}

int Permutation::sign() const {
  int inversions = 0;
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) {
      if (image(i) > image(j)) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

std::string Permutation::cycle_notation() const {
  std::string out;
  std::vector<bool> visited(images_.size(), false);
  for (int start = 0; start < size(); ++start) {
    if (visited[static_cast<std::size_t>(start)]) continue;
    out += "(";
    int i = start;
    bool first = true;
    while (!visited[static_cast<std::size_t>(i)]) {
      visited[static_cast<std::size_t>(i)] = true;
      if (!first) out += " ";
      out += std::to_string(i + 1);
      first = false;
      i = image(i);
    }
    out += ")";
  }
  return out;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw LengthMismatch("composing permutations of different size");
  std::vector<int> images(static_cast<std::size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i) images[static_cast<std::size_t>(i)] = p.image(q.image(i));
  return Permutation(std::move(images));
}

ProductState apply(const Permutation& p, const ProductState& s) {
  if (p.size() != s.size()) {
    throw LengthMismatch("permutation of size " + std::to_string(p.size()) +
                         " applied to a " + std::to_string(s.size()) + "-particle state");
  }
  ProductState out{std::vector<int>(s.levels.size())};
  for (int i = 0; i < p.size(); ++i) {
    out.levels[static_cast<std::size_t>(p.image(i))] = s.levels[static_cast<std::size_t>(i)];
  }
  return out;
}

PermutationRange::PermutationRange(int n) : n_(n) {
  if (n < 1) throw InvalidInput("permutation size must be >= 1");
  if (n > kMaxPermutationSize) {
    throw CapacityExceeded("permutation size " + std::to_string(n) + " exceeds " +
                           std::to_string(kMaxPermutationSize));
  }
}

PermutationRange::iterator::iterator(int n) : current_(Permutation::identity(n)), done_(false) {}

PermutationRange::iterator& PermutationRange::iterator::operator++() {
  auto images = current_.images();
  if (std::next_permutation(images.begin(), images.end())) {
    current_ = Permutation(std::move(images));
  } else {
    done_ = true;
  }
  return *this;
}

std::vector<Permutation> enumerate_permutations(int n) {
  PermutationRange range(n);
  std::vector<Permutation> out;
  out.reserve(factorial(n));
  for (const auto& p : range) out.push_back(p);
  return out;
}

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw CapacityExceeded("factorial argument out of range");
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

std::pair<Permutation, Permutation> noncommutation_witness(int n) {
  if (n < 3) throw NoWitness("S_" + std::to_string(n) + " is abelian");
  return {Permutation::transposition(n, 1, 2), Permutation::transposition(n, 2, 3)};
}

nlohmann::json to_json(const Permutation& p) {
  nlohmann::json images = nlohmann::json::array();
  for (int v : p.images()) images.push_back(v + 1);
  return images;
}

}  // namespace idstat
