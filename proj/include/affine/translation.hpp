#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "affine/skeleton.hpp"
#include "affine/term.hpp"

namespace affine {

// A self-map of the carrier, tabulated; image[z] is the value at z. Equality
// is extensional: witnesses are provenance and never compared.
using Image = std::vector<Elem>;

struct UnaryMap {
  Image image;
  std::optional<AffineTerm> witness;
};

inline bool operator==(const UnaryMap& a, const UnaryMap& b) { return a.image == b.image; }

struct ImageHash {
  std::size_t operator()(const Image& img) const {
    std::size_t h = 14695981039346656037ull;
    for (Elem e : img) {
      h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

Image identity_image(std::size_t carrier);
// f after g: (f * g)(z) = f(g(z)).
Image compose(const Image& f, const Image& g);

struct Limits {
  std::size_t monoid_cap = 1000000;
  std::size_t enumeration_budget = 200000000;
};

// psi: evaluates t at x = z. Defined for every term, linear or not.
Elem eval_affine(const FiniteAlgebra& alg, const TermPtr& t, Elem z);

// Psi: tabulates eval_affine over the carrier; witness is t itself.
UnaryMap induced_map(const FiniteAlgebra& alg, const TermPtr& t);

// Phi: evaluates a skeleton under a parameter filling; agrees with
// induced_map of the reassembled term.
UnaryMap eval_skeleton(const FiniteAlgebra& alg, const SkeletonPtr& sk, const ParamTuplePtr& p);

// One map per (symbol of arity >= 1, slot, constant tuple), deduplicated
// keeping the first occurrence; symbols in signature order, slots left to
// right, tuples in lexicographic order. Each witness is the height-1 term
// with x at the slot and constants elsewhere.
std::vector<UnaryMap> translations(const FiniteAlgebra& alg);

struct TranslationMonoid {
  std::vector<UnaryMap> elements;    // breadth-first discovery order; [0] is id
  std::vector<std::size_t> depths;   // composition length; equals witness height
  std::vector<UnaryMap> generators;  // translations(alg)

  std::optional<std::size_t> index_of(const Image& img) const {
    auto it = index.find(img);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Image& img) const { return index.count(img) > 0; }
  std::size_t max_depth() const;

  std::unordered_map<Image, std::size_t, ImageHash> index;
};

// Breadth-first closure of {id} and the translations under composition.
// Composites are generated generator-outer (tau after f), so an element
// found at depth d carries a witness of height exactly d; depth is therefore
// the least number of translations composing to the element, which is also
// the least height of any proper term inducing it.
TranslationMonoid translation_monoid(const FiniteAlgebra& alg, const Limits& limits = {});

// Every map induced by a proper term of height <= max_height and arity
// <= max_arity, each with the first witness in enumeration order (skeletons
// by height, then arity, then serialization; parameters in catalog order).
// Computed by a set-valued recursion over skeleton nodes with memoization
// across shared subtrees; the result set and every first-found witness agree
// with direct enumeration of all (skeleton, parameter) pairs.
std::vector<UnaryMap> brute_force_affine_maps(const FiniteAlgebra& alg, std::size_t max_height,
                                              std::size_t max_arity, const Limits& limits = {});

// Test oracle: literal skeleton x parameter enumeration, first-found
// witnesses; small inputs only.
std::vector<UnaryMap> brute_force_affine_maps_naive(const FiniteAlgebra& alg,
                                                    std::size_t max_height, std::size_t max_arity,
                                                    std::size_t max_count = 1000000);

}  // namespace affine
