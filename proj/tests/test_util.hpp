#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "affine/algebra.hpp"
#include "affine/boundedness.hpp"
#include "affine/congruence.hpp"
#include "affine/term.hpp"
#include "affine/translation.hpp"

namespace testutil {

using affine::Elem;
using affine::FiniteAlgebra;
using affine::Partition;
using affine::Symbol;
using affine::TermPtr;

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Random algebra: carrier 1..4, 1..3 symbols of arity <= 2, uniform tables.
inline FiniteAlgebra random_algebra(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t carrier = 1 + pick(rng, 4);
  std::size_t sym_count = 1 + pick(rng, 3);
  static const std::string names[] = {"f", "g", "h"};
  std::vector<Symbol> symbols;
  std::vector<std::vector<Elem>> tables;
  for (std::size_t s = 0; s < sym_count; ++s) {
    std::size_t arity = pick(rng, 3);
    symbols.push_back({names[s], arity});
    std::size_t size = 1;
    for (std::size_t i = 0; i < arity; ++i) size *= carrier;
    std::vector<Elem> table(size);
    for (Elem& e : table) e = pick(rng, carrier);
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra("rand" + std::to_string(seed), carrier,
                       affine::Signature(std::move(symbols)), std::move(tables));
}

// Random ground term (no x) over alg, height <= max_height.
inline TermPtr random_ground_term(std::mt19937_64& rng, const FiniteAlgebra& alg,
                                  std::size_t max_height) {
  const affine::Signature& sig = alg.signature();
  if (max_height == 0 || sig.size() == 0 || pick(rng, 3) == 0) {
    return affine::constant(pick(rng, alg.carrier()));
  }
  std::size_t s = pick(rng, sig.size());
  std::vector<TermPtr> children;
  for (std::size_t i = 0; i < sig.at(s).arity; ++i) {
    children.push_back(random_ground_term(rng, alg, max_height - 1));
  }
  return affine::apply(sig.at(s), std::move(children));
}

// Random term with x exactly once, height <= max_height.
inline TermPtr random_proper_term(std::mt19937_64& rng, const FiniteAlgebra& alg,
                                  std::size_t max_height) {
  const affine::Signature& sig = alg.signature();
  std::vector<std::size_t> positive;
  for (std::size_t s = 0; s < sig.size(); ++s) {
    if (sig.at(s).arity >= 1) positive.push_back(s);
  }
  if (max_height == 0 || positive.empty() || pick(rng, 3) == 0) {
    return affine::variable();
  }
  std::size_t s = positive[pick(rng, positive.size())];
  std::size_t slot = pick(rng, sig.at(s).arity);
  std::vector<TermPtr> children;
  for (std::size_t i = 0; i < sig.at(s).arity; ++i) {
    children.push_back(i == slot ? random_proper_term(rng, alg, max_height - 1)
                                 : random_ground_term(rng, alg, max_height - 1));
  }
  return affine::apply(sig.at(s), std::move(children));
}

// Random term with x at most once.
inline TermPtr random_affine_term(std::mt19937_64& rng, const FiniteAlgebra& alg,
                                  std::size_t max_height) {
  return pick(rng, 2) ? random_proper_term(rng, alg, max_height)
                      : random_ground_term(rng, alg, max_height);
}

// Direct compatibility: for every operation and every pointwise-related
// argument pair, the results are related.
inline bool compatible_with_operations(const FiniteAlgebra& alg, const Partition& p) {
  std::size_t n = alg.carrier();
  for (std::size_t s = 0; s < alg.signature().size(); ++s) {
    std::size_t k = alg.signature().at(s).arity;
    std::size_t tuples = 1;
    for (std::size_t i = 0; i < k; ++i) tuples *= n;
    std::vector<Elem> a(k), b(k);
    for (std::size_t ia = 0; ia < tuples; ++ia) {
      std::size_t rest = ia;
      for (std::size_t i = k; i-- > 0;) {
        a[i] = rest % n;
        rest /= n;
      }
      for (std::size_t ib = 0; ib < tuples; ++ib) {
        rest = ib;
        bool related = true;
        for (std::size_t i = k; i-- > 0;) {
          b[i] = rest % n;
          rest /= n;
          related = related && p.same(a[i], b[i]);
        }
        if (!related) continue;
        if (!p.same(alg.apply(s, a), alg.apply(s, b))) return false;
      }
    }
  }
  return true;
}

// All partitions of {0..n-1} as restricted growth strings; n <= 5 intended.
inline std::vector<Partition> all_partitions(std::size_t n) {
  std::vector<Partition> out;
  std::vector<Elem> label(n, 0);
  auto emit = [&] {
    std::vector<Elem> ids(n);
    std::vector<Elem> first(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (first[label[i]] == n) first[label[i]] = i;
      ids[i] = first[label[i]];
    }
    out.push_back(Partition::from_block_ids(std::move(ids)));
  };
  auto rec = [&](auto&& self, std::size_t i, Elem max_used) -> void {
    if (i == n) {
      emit();
      return;
    }
    for (Elem v = 0; v <= max_used + 1 && v < n; ++v) {
      label[i] = v;
      self(self, i + 1, std::max(max_used, v));
    }
  };
  if (n > 0) rec(rec, 1, 0);
  return out;
}

// A certificate is sound when each witness is a proper term within both
// bounds that induces its map, and the maps are exactly the monoid.
inline bool certificate_sound(const FiniteAlgebra& alg, const affine::TranslationMonoid& monoid,
                              const affine::BoundednessCertificate& cert) {
  if (cert.witnesses.size() != monoid.elements.size()) return false;
  std::size_t covered = 0;
  for (const affine::UnaryMap& w : cert.witnesses) {
    if (!w.witness || !w.witness->proper()) return false;
    affine::TermMeasures m = affine::term_measures(w.witness->term());
    if (m.height > cert.m || m.arity > cert.m || m.x_count != 1) return false;
    if (affine::induced_map(alg, w.witness->term()).image != w.image) return false;
    if (!monoid.contains(w.image)) return false;
    ++covered;
  }
  // Witness images are pairwise distinct by construction; distinctness plus
  // membership plus equal cardinality gives coverage.
  for (std::size_t i = 0; i < cert.witnesses.size(); ++i) {
    for (std::size_t j = i + 1; j < cert.witnesses.size(); ++j) {
      if (cert.witnesses[i].image == cert.witnesses[j].image) return false;
    }
  }
  return covered == monoid.elements.size();
}

}  // namespace testutil
