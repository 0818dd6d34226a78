#pragma once

#include <cstddef>
#include <vector>

#include "affine/translation.hpp"

namespace affine {

// An equivalence relation on {0..n-1} in normal form: ids[i] is the smallest
// element of i's block, so ids[ids[i]] == ids[i] and ids[i] <= i. Equality of
// partitions is equality of the id vectors.
class Partition {
public:
  explicit Partition(std::size_t n);  // discrete

  static Partition from_block_ids(std::vector<Elem> ids);
  static Partition from_blocks(std::size_t n, const std::vector<std::vector<Elem>>& blocks);
  static Partition single_block(std::size_t n);

  std::size_t size() const { return ids_.size(); }
  Elem rep(Elem a) const { return ids_.at(a); }
  bool same(Elem a, Elem b) const { return ids_.at(a) == ids_.at(b); }
  std::size_t block_count() const;
  std::vector<std::vector<Elem>> blocks() const;  // ordered by smallest member
  const std::vector<Elem>& ids() const { return ids_; }

  // Every block of this partition lies inside a block of other.
  bool refines(const Partition& other) const;

  // Smallest equivalence containing both: transitive closure of the union.
  static Partition join(const Partition& a, const Partition& b);

  friend bool operator==(const Partition& a, const Partition& b) = default;

private:
  std::vector<Elem> ids_;
};

struct Congruence {
  Partition partition;
  bool verified = false;
};

// Invariance under every element of the translation monoid; equivalent to
// compatibility with every operation. The monoid overloads let callers reuse
// one closure across many queries.
bool is_congruence(const FiniteAlgebra& alg, const Partition& p);
bool is_congruence(const TranslationMonoid& monoid, const Partition& p);

// Smallest congruence identifying a and b.
Congruence principal_congruence(const FiniteAlgebra& alg, Elem a, Elem b);
Congruence principal_congruence(const TranslationMonoid& monoid, Elem a, Elem b);

// Largest congruence contained in p: relates a and b iff every monoid element
// keeps (f(a), f(b)) inside p.
Congruence largest_congruence_below(const FiniteAlgebra& alg, const Partition& p);
Congruence largest_congruence_below(const TranslationMonoid& monoid, const Partition& p);

// All congruences: the join closure of the principal ones plus the diagonal,
// sorted finest first, coarsest last. Carrier must be <= 7.
std::vector<Congruence> congruence_lattice(const FiniteAlgebra& alg);

// Carrier = blocks ordered by smallest member; tables computed on
// representatives and re-checked exhaustively for independence of the choice.
FiniteAlgebra quotient(const FiniteAlgebra& alg, const Congruence& c);

// True iff the diagonal and the full relation are the only congruences;
// false for a one-element carrier. Carrier must be <= 7.
bool is_simple(const FiniteAlgebra& alg);

}  // namespace affine
