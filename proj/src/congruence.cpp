#include "affine/congruence.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace affine {

namespace {

// Plain union-find; normalization to smallest-representative form happens on
// conversion back to a Partition.
struct UnionFind {
  std::vector<Elem> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), Elem{0});
  }
  explicit UnionFind(const Partition& p) : parent(p.ids()) {}

  Elem find(Elem a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }

  // Keeps the smaller root so normal form is cheap to restore.
  bool unite(Elem a, Elem b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }

  std::vector<Elem> to_ids() {
    std::vector<Elem> ids(parent.size());
    for (Elem i = 0; i < parent.size(); ++i) ids[i] = find(i);
    return ids;
  }
};

}  // namespace

Partition::Partition(std::size_t n) : ids_(n) {
  if (n == 0) throw ValidationError("partition of an empty carrier");
  std::iota(ids_.begin(), ids_.end(), Elem{0});
}

Partition Partition::from_block_ids(std::vector<Elem> ids) {
  if (ids.empty()) throw ValidationError("partition of an empty carrier");
  // Accepts any labeling where equal labels mean same block, then renames
  // every label to the block's smallest element.
  std::vector<Elem> smallest(ids.size(), ids.size());
  for (Elem i = 0; i < ids.size(); ++i) {
    Elem label = ids[i];
    if (label >= ids.size()) throw ValidationError("block label out of range");
    if (smallest[label] == ids.size()) smallest[label] = i;
  }
  Partition p(ids.size());
  for (Elem i = 0; i < ids.size(); ++i) p.ids_[i] = smallest[ids[i]];
  return p;
}

Partition Partition::from_blocks(std::size_t n, const std::vector<std::vector<Elem>>& blocks) {
  Partition p(n);
  std::vector<char> seen(n, 0);
  for (const std::vector<Elem>& block : blocks) {
    if (block.empty()) throw ValidationError("empty block");
    Elem least = *std::min_element(block.begin(), block.end());
    for (Elem e : block) {
      if (e >= n) throw ValidationError("block element out of range");
      if (seen[e]) throw ValidationError("element " + std::to_string(e) + " listed twice");
      seen[e] = 1;
      p.ids_[e] = least;
    }
  }
  for (Elem e = 0; e < n; ++e) {
    if (!seen[e]) throw ValidationError("element " + std::to_string(e) + " missing from blocks");
  }
  return p;
}

Partition Partition::single_block(std::size_t n) {
  Partition p(n);
  std::fill(p.ids_.begin(), p.ids_.end(), Elem{0});
  return p;
}

std::size_t Partition::block_count() const {
  std::size_t count = 0;
  for (Elem i = 0; i < ids_.size(); ++i) {
    if (ids_[i] == i) ++count;
  }
  return count;
}

std::vector<std::vector<Elem>> Partition::blocks() const {
  std::map<Elem, std::vector<Elem>> by_rep;
  for (Elem i = 0; i < ids_.size(); ++i) by_rep[ids_[i]].push_back(i);
  std::vector<std::vector<Elem>> out;
  out.reserve(by_rep.size());
  for (auto& [rep, block] : by_rep) out.push_back(std::move(block));
  return out;
}

bool Partition::refines(const Partition& other) const {
  if (size() != other.size()) throw ValidationError("partition sizes disagree");
  for (Elem i = 0; i < ids_.size(); ++i) {
    if (!other.same(i, ids_[i])) return false;
  }
  return true;
}

Partition Partition::join(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) throw ValidationError("partition sizes disagree");
  UnionFind uf(a);
  for (Elem i = 0; i < b.size(); ++i) uf.unite(i, b.rep(i));
  return from_block_ids(uf.to_ids());
}

bool is_congruence(const FiniteAlgebra& alg, const Partition& p) {
  return is_congruence(translation_monoid(alg), p);
}

bool is_congruence(const TranslationMonoid& monoid, const Partition& p) {
  // Pairs (a, rep(a)) generate the relation, so invariance on them implies
  // invariance everywhere.
  for (const UnaryMap& f : monoid.elements) {
    if (f.image.size() != p.size()) throw ValidationError("partition size does not match carrier");
    for (Elem a = 0; a < p.size(); ++a) {
      if (!p.same(f.image[a], f.image[p.rep(a)])) return false;
    }
  }
  return true;
}

namespace {

// Closes the relation under every monoid element, worklist style: whenever a
// merged pair maps to a split pair, merge the images too.
Partition monoid_closure(const TranslationMonoid& monoid, UnionFind uf,
                         std::vector<std::pair<Elem, Elem>> worklist) {
  while (!worklist.empty()) {
    auto [a, b] = worklist.back();
    worklist.pop_back();
    for (const UnaryMap& f : monoid.elements) {
      Elem fa = uf.find(f.image[a]);
      Elem fb = uf.find(f.image[b]);
      if (fa != fb && uf.unite(fa, fb)) worklist.emplace_back(fa, fb);
    }
  }
  return Partition::from_block_ids(uf.to_ids());
}

}  // namespace

Congruence principal_congruence(const FiniteAlgebra& alg, Elem a, Elem b) {
  return principal_congruence(translation_monoid(alg), a, b);
}

Congruence principal_congruence(const TranslationMonoid& monoid, Elem a, Elem b) {
  std::size_t n = monoid.elements.at(0).image.size();
  if (a >= n || b >= n) throw ValidationError("element out of range");
  UnionFind uf(n);
  std::vector<std::pair<Elem, Elem>> worklist;
  if (uf.unite(a, b)) worklist.emplace_back(a, b);
  return Congruence{monoid_closure(monoid, std::move(uf), std::move(worklist)), true};
}

Congruence largest_congruence_below(const FiniteAlgebra& alg, const Partition& p) {
  return largest_congruence_below(translation_monoid(alg), p);
}

Congruence largest_congruence_below(const TranslationMonoid& monoid, const Partition& p) {
  std::size_t n = p.size();
  // a ~ b iff the fibers (rep(f(a)))_f agree; closure under composition makes
  // the fiber partition itself invariant.
  std::map<std::vector<Elem>, Elem> fibers;
  std::vector<Elem> ids(n);
  for (Elem a = 0; a < n; ++a) {
    std::vector<Elem> key(monoid.elements.size());
    for (std::size_t i = 0; i < monoid.elements.size(); ++i) {
      const Image& img = monoid.elements[i].image;
      if (img.size() != n) throw ValidationError("partition size does not match carrier");
      key[i] = p.rep(img[a]);
    }
    ids[a] = fibers.emplace(std::move(key), a).first->second;
  }
  return Congruence{Partition::from_block_ids(std::move(ids)), true};
}

std::vector<Congruence> congruence_lattice(const FiniteAlgebra& alg) {
  if (alg.carrier() > 7) {
    throw ValidationError("congruence lattice needs carrier <= 7, got " +
                          std::to_string(alg.carrier()));
  }
  TranslationMonoid monoid = translation_monoid(alg);
  std::size_t n = alg.carrier();
  std::vector<Partition> found{Partition(n)};
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = a + 1; b < n; ++b) {
      Partition p = principal_congruence(monoid, a, b).partition;
      if (std::find(found.begin(), found.end(), p) == found.end()) found.push_back(p);
    }
  }
  // Join closure. Joins of congruences are congruences; the monoid closure
  // after each join keeps that explicit.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Partition joined = Partition::join(found[i], found[j]);
      UnionFind uf(joined);
      std::vector<std::pair<Elem, Elem>> worklist;
      for (Elem e = 0; e < n; ++e) {
        if (joined.rep(e) != e) worklist.emplace_back(e, joined.rep(e));
      }
      Partition closed = monoid_closure(monoid, std::move(uf), std::move(worklist));
      if (std::find(found.begin(), found.end(), closed) == found.end()) {
        found.push_back(closed);
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const Partition& a, const Partition& b) {
    if (a.block_count() != b.block_count()) return a.block_count() > b.block_count();
    return a.ids() < b.ids();
  });
  std::vector<Congruence> out;
  out.reserve(found.size());
  for (Partition& p : found) out.push_back(Congruence{std::move(p), true});
  return out;
}

FiniteAlgebra quotient(const FiniteAlgebra& alg, const Congruence& c) {
  if (!is_congruence(alg, c.partition)) {
    throw ValidationError("quotient by a partition that is not a congruence");
  }
  const Partition& p = c.partition;
  std::vector<std::vector<Elem>> blocks = p.blocks();
  std::vector<Elem> block_of(alg.carrier());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (Elem e : blocks[b]) block_of[e] = b;
  }
  std::size_t q = blocks.size();
  std::vector<std::vector<Elem>> tables;
  for (std::size_t sym = 0; sym < alg.signature().size(); ++sym) {
    std::size_t ar = alg.signature().at(sym).arity;
    std::size_t rows = 1;
    for (std::size_t i = 0; i < ar; ++i) rows *= q;
    std::vector<Elem> table(rows);
    std::vector<Elem> tuple(ar, 0);
    for (std::size_t row = 0; row < rows; ++row) {
      std::size_t rest = row;
      for (std::size_t i = ar; i-- > 0;) {
        tuple[i] = rest % q;
        rest /= q;
      }
      std::vector<Elem> reps(ar);
      for (std::size_t i = 0; i < ar; ++i) reps[i] = blocks[tuple[i]][0];
      table[row] = block_of[alg.apply(sym, reps)];
    }
    tables.push_back(std::move(table));
  }
  FiniteAlgebra result(alg.name() + "/" + std::to_string(q), q, alg.signature(), tables,
                       alg.choe_order());
  // Exhaustive well-definedness check: any choice of representatives lands in
  // the block the table names.
  for (std::size_t sym = 0; sym < alg.signature().size(); ++sym) {
    std::size_t ar = alg.signature().at(sym).arity;
    std::vector<Elem> tuple(ar, 0);
    bool done = false;
    while (!done) {
      std::vector<Elem> quots(ar);
      for (std::size_t i = 0; i < ar; ++i) quots[i] = block_of[tuple[i]];
      if (result.apply(sym, quots) != block_of[alg.apply(sym, tuple)]) {
        throw ValidationError("quotient tables depend on representative choice");
      }
      done = true;
      for (std::size_t i = ar; i-- > 0;) {
        if (++tuple[i] < alg.carrier()) {
          done = false;
          break;
        }
        tuple[i] = 0;
      }
    }
  }
  return result;
}

bool is_simple(const FiniteAlgebra& alg) {
  if (alg.carrier() > 7) {
    throw ValidationError("simplicity check needs carrier <= 7, got " +
                          std::to_string(alg.carrier()));
  }
  if (alg.carrier() < 2) return false;
  // Simple iff every pair generates the full relation.
  TranslationMonoid monoid = translation_monoid(alg);
  Partition full = Partition::single_block(alg.carrier());
  for (Elem a = 0; a < alg.carrier(); ++a) {
    for (Elem b = a + 1; b < alg.carrier(); ++b) {
      if (!(principal_congruence(monoid, a, b).partition == full)) return false;
    }
  }
  return true;
}

}  // namespace affine
