#include "affine/translation.hpp"

#include <algorithm>
#include <string>

namespace affine {

Image identity_image(std::size_t carrier) {
  Image img(carrier);
  for (Elem z = 0; z < carrier; ++z) img[z] = z;
  return img;
}

Image compose(const Image& f, const Image& g) {
  Image img(g.size());
  for (std::size_t z = 0; z < g.size(); ++z) img[z] = f.at(g[z]);
  return img;
}

Elem eval_affine(const FiniteAlgebra& alg, const TermPtr& t, Elem z) {
  if (!t) throw ValidationError("null term");
  if (z >= alg.carrier()) throw ValidationError("element out of range");
  switch (t->kind) {
    case TermKind::Variable:
      return z;
    case TermKind::Constant:
      if (t->constant >= alg.carrier()) {
        throw ValidationError("constant #" + std::to_string(t->constant) + " out of range");
      }
      return t->constant;
    case TermKind::Apply: {
      std::size_t sym = alg.signature().index_of(t->symbol.name);
      if (alg.signature().at(sym).arity != t->children.size()) {
        throw ValidationError("arity mismatch at '" + t->symbol.name + "'");
      }
      std::vector<Elem> args(t->children.size());
      for (std::size_t i = 0; i < t->children.size(); ++i) {
        args[i] = eval_affine(alg, t->children[i], z);
      }
      return alg.apply(sym, args);
    }
  }
  throw ValidationError("corrupt term");
}

UnaryMap induced_map(const FiniteAlgebra& alg, const TermPtr& t) {
  UnaryMap m;
  m.image.resize(alg.carrier());
  for (Elem z = 0; z < alg.carrier(); ++z) m.image[z] = eval_affine(alg, t, z);
  m.witness = AffineTerm(t);
  return m;
}

namespace {

Elem eval_skeleton_at(const FiniteAlgebra& alg, const SkeletonPtr& sk, const ParamTuplePtr& p,
                      Elem z) {
  if (sk->kind != p->kind) throw ValidationError("skeleton and parameter shapes disagree");
  switch (sk->kind) {
    case SkelKind::X:
      return z;
    case SkelKind::Star:
      if (p->element >= alg.carrier()) throw ValidationError("parameter element out of range");
      return p->element;
    case SkelKind::ZeroLeaf:
      return alg.apply(alg.signature().index_of(p->symbol.name), {});
    case SkelKind::Node: {
      if (sk->children.size() != p->children.size() ||
          p->symbol.arity != sk->children.size()) {
        throw ValidationError("skeleton and parameter shapes disagree");
      }
      std::vector<Elem> args(sk->children.size());
      for (std::size_t i = 0; i < sk->children.size(); ++i) {
        args[i] = eval_skeleton_at(alg, sk->children[i], p->children[i], z);
      }
      return alg.apply(alg.signature().index_of(p->symbol.name), args);
    }
  }
  throw ValidationError("corrupt skeleton");
}

}  // namespace

UnaryMap eval_skeleton(const FiniteAlgebra& alg, const SkeletonPtr& sk, const ParamTuplePtr& p) {
  if (!sk || !p) throw ValidationError("null skeleton or parameter tuple");
  UnaryMap m;
  m.image.resize(alg.carrier());
  for (Elem z = 0; z < alg.carrier(); ++z) m.image[z] = eval_skeleton_at(alg, sk, p, z);
  m.witness = AffineTerm(unskeletonize(sk, p));
  return m;
}

std::vector<UnaryMap> translations(const FiniteAlgebra& alg) {
  std::vector<UnaryMap> out;
  std::unordered_map<Image, std::size_t, ImageHash> seen;
  std::size_t n = alg.carrier();
  for (std::size_t sym = 0; sym < alg.signature().size(); ++sym) {
    std::size_t ar = alg.signature().at(sym).arity;
    if (ar < 1) continue;
    for (std::size_t slot = 0; slot < ar; ++slot) {
      // Constant tuples in lexicographic order over the non-slot positions.
      std::vector<Elem> consts(ar - 1, 0);
      bool done = false;
      while (!done) {
        Image img(n);
        std::vector<Elem> args(ar);
        for (Elem z = 0; z < n; ++z) {
          for (std::size_t i = 0, src = 0; i < ar; ++i) {
            args[i] = (i == slot) ? z : consts[src++];
          }
          img[z] = alg.apply(sym, args);
        }
        if (seen.emplace(img, out.size()).second) {
          std::vector<TermPtr> children(ar);
          for (std::size_t i = 0, src = 0; i < ar; ++i) {
            children[i] = (i == slot) ? variable() : constant(consts[src++]);
          }
          out.push_back(
              UnaryMap{std::move(img), AffineTerm(apply(alg.signature().at(sym), children))});
        }
        done = true;
        for (std::size_t i = consts.size(); i-- > 0;) {
          if (++consts[i] < n) {
            done = false;
            break;
          }
          consts[i] = 0;
        }
      }
    }
  }
  return out;
}

std::size_t TranslationMonoid::max_depth() const {
  std::size_t d = 0;
  for (std::size_t x : depths) d = std::max(d, x);
  return d;
}

TranslationMonoid translation_monoid(const FiniteAlgebra& alg, const Limits& limits) {
  TranslationMonoid m;
  m.generators = translations(alg);
  m.elements.push_back(UnaryMap{identity_image(alg.carrier()), AffineTerm(variable())});
  m.depths.push_back(0);
  m.index.emplace(m.elements[0].image, 0);
  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t fi : frontier) {
      for (const UnaryMap& tau : m.generators) {
        Image img = compose(tau.image, m.elements[fi].image);
        if (m.index.count(img)) continue;
        if (m.elements.size() >= limits.monoid_cap) {
          throw BudgetError("translation monoid exceeds cap of " +
                            std::to_string(limits.monoid_cap) + " elements");
        }
        std::size_t idx = m.elements.size();
        m.index.emplace(img, idx);
        m.elements.push_back(
            UnaryMap{std::move(img), concat(*tau.witness, *m.elements[fi].witness)});
        m.depths.push_back(m.depths[fi] + 1);
        next.push_back(idx);
      }
    }
    frontier = std::move(next);
  }
  return m;
}

namespace {

struct GroundEntry {
  Elem value;
  TermPtr witness;
};

struct ProperEntry {
  Image image;
  TermPtr witness;
};

// Distinct results of filling one skeleton subtree, in order of first
// appearance over the catalog-ordered parameter space. Keyed by the subtree's
// serialization: results depend only on shape and algebra.
struct BruteContext {
  const FiniteAlgebra& alg;
  std::size_t remaining;
  std::unordered_map<std::string, std::shared_ptr<const std::vector<GroundEntry>>> ground_memo;
  std::unordered_map<std::string, std::shared_ptr<const std::vector<ProperEntry>>> proper_memo;

  void charge(std::size_t units) {
    if (units > remaining) throw BudgetError("enumeration budget exceeded");
    remaining -= units;
  }
};

std::shared_ptr<const std::vector<GroundEntry>> ground_results(BruteContext& ctx,
                                                               const SkeletonPtr& sk);

std::shared_ptr<const std::vector<ProperEntry>> proper_results(BruteContext& ctx,
                                                               const SkeletonPtr& sk);

std::shared_ptr<const std::vector<GroundEntry>> ground_results(BruteContext& ctx,
                                                               const SkeletonPtr& sk) {
  std::string key = format_skeleton(sk);
  auto it = ctx.ground_memo.find(key);
  if (it != ctx.ground_memo.end()) return it->second;

  auto out = std::make_shared<std::vector<GroundEntry>>();
  const Signature& sig = ctx.alg.signature();
  switch (sk->kind) {
    case SkelKind::Star:
      ctx.charge(ctx.alg.carrier());
      for (Elem a = 0; a < ctx.alg.carrier(); ++a) out->push_back({a, constant(a)});
      break;
    case SkelKind::ZeroLeaf: {
      std::vector<char> seen(ctx.alg.carrier(), 0);
      for (std::size_t s : sig.symbols_of_arity(0)) {
        ctx.charge(1);
        Elem v = ctx.alg.apply(s, {});
        if (!seen[v]) {
          seen[v] = 1;
          out->push_back({v, apply(sig.at(s), {})});
        }
      }
      break;
    }
    case SkelKind::Node: {
      std::size_t w = sk->children.size();
      std::vector<std::shared_ptr<const std::vector<GroundEntry>>> kids(w);
      bool empty = false;
      for (std::size_t i = 0; i < w; ++i) {
        kids[i] = ground_results(ctx, sk->children[i]);
        empty = empty || kids[i]->empty();
      }
      std::vector<char> seen(ctx.alg.carrier(), 0);
      if (!empty) {
        std::vector<Elem> args(w);
        std::vector<std::size_t> idx(w, 0);
        for (std::size_t s : sig.symbols_of_arity(w)) {
          std::fill(idx.begin(), idx.end(), 0);
          bool done = false;
          while (!done) {
            ctx.charge(1);
            for (std::size_t i = 0; i < w; ++i) args[i] = (*kids[i])[idx[i]].value;
            Elem v = ctx.alg.apply(s, args);
            if (!seen[v]) {
              seen[v] = 1;
              std::vector<TermPtr> children(w);
              for (std::size_t i = 0; i < w; ++i) children[i] = (*kids[i])[idx[i]].witness;
              out->push_back({v, apply(sig.at(s), std::move(children))});
            }
            done = true;
            for (std::size_t i = w; i-- > 0;) {
              if (++idx[i] < kids[i]->size()) {
                done = false;
                break;
              }
              idx[i] = 0;
            }
          }
        }
      }
      break;
    }
    case SkelKind::X:
      throw ValidationError("ground evaluation reached x");
  }
  ctx.ground_memo.emplace(std::move(key), out);
  return out;
}

std::shared_ptr<const std::vector<ProperEntry>> proper_results(BruteContext& ctx,
                                                               const SkeletonPtr& sk) {
  std::string key = format_skeleton(sk);
  auto it = ctx.proper_memo.find(key);
  if (it != ctx.proper_memo.end()) return it->second;

  auto out = std::make_shared<std::vector<ProperEntry>>();
  const Signature& sig = ctx.alg.signature();
  std::size_t n = ctx.alg.carrier();
  switch (sk->kind) {
    case SkelKind::X:
      ctx.charge(n);
      out->push_back({identity_image(n), variable()});
      break;
    case SkelKind::Node: {
      std::size_t w = sk->children.size();
      std::size_t x_slot = w;
      for (std::size_t i = 0; i < w; ++i) {
        if (skeleton_measures(sk->children[i]).x_count == 1) {
          x_slot = i;
          break;
        }
      }
      if (x_slot == w) throw ValidationError("proper evaluation of an x-free skeleton");
      auto proper_kid = proper_results(ctx, sk->children[x_slot]);
      std::vector<std::shared_ptr<const std::vector<GroundEntry>>> ground_kids(w);
      bool empty = proper_kid->empty();
      for (std::size_t i = 0; i < w; ++i) {
        if (i == x_slot) continue;
        ground_kids[i] = ground_results(ctx, sk->children[i]);
        empty = empty || ground_kids[i]->empty();
      }
      if (!empty) {
        std::unordered_map<Image, std::size_t, ImageHash> seen;
        std::vector<Elem> args(w);
        std::vector<std::size_t> idx(w, 0);
        for (std::size_t s : sig.symbols_of_arity(w)) {
          std::fill(idx.begin(), idx.end(), 0);
          bool done = false;
          while (!done) {
            ctx.charge(n);
            const ProperEntry& pe = (*proper_kid)[idx[x_slot]];
            Image img(n);
            for (Elem z = 0; z < n; ++z) {
              for (std::size_t i = 0; i < w; ++i) {
                args[i] = (i == x_slot) ? pe.image[z] : (*ground_kids[i])[idx[i]].value;
              }
              img[z] = ctx.alg.apply(s, args);
            }
            if (seen.emplace(img, out->size()).second) {
              std::vector<TermPtr> children(w);
              for (std::size_t i = 0; i < w; ++i) {
                children[i] = (i == x_slot) ? pe.witness : (*ground_kids[i])[idx[i]].witness;
              }
              out->push_back({std::move(img), apply(sig.at(s), std::move(children))});
            }
            done = true;
            for (std::size_t i = w; i-- > 0;) {
              std::size_t limit = (i == x_slot) ? proper_kid->size() : ground_kids[i]->size();
              if (++idx[i] < limit) {
                done = false;
                break;
              }
              idx[i] = 0;
            }
          }
        }
      }
      break;
    }
    default:
      throw ValidationError("proper evaluation of an x-free skeleton");
  }
  ctx.proper_memo.emplace(std::move(key), out);
  return out;
}

std::vector<std::size_t> present_widths(const Signature& sig, std::size_t max_arity) {
  std::vector<std::size_t> widths;
  for (std::size_t w = 1; w <= std::min(max_arity, kMaxArity); ++w) {
    if (!sig.symbols_of_arity(w).empty()) widths.push_back(w);
  }
  return widths;
}

}  // namespace

std::vector<UnaryMap> brute_force_affine_maps(const FiniteAlgebra& alg, std::size_t max_height,
                                              std::size_t max_arity, const Limits& limits) {
  if (max_arity > kMaxArity) {
    throw ValidationError("max_arity exceeds " + std::to_string(kMaxArity));
  }
  std::vector<std::size_t> widths = present_widths(alg.signature(), max_arity);
  bool zero_leaf = !alg.signature().symbols_of_arity(0).empty();
  // Shapes a signature cannot fill contribute no parameters, so restricting
  // to present widths leaves the result unchanged.
  std::size_t skeleton_cap = std::min<std::size_t>(limits.enumeration_budget, 1000000);
  std::vector<SkeletonPtr> skeletons =
      enumerate_skeletons(max_height, widths, zero_leaf, skeleton_cap);
  BruteContext ctx{alg, limits.enumeration_budget, {}, {}};
  std::vector<UnaryMap> out;
  std::unordered_map<Image, std::size_t, ImageHash> seen;
  for (const SkeletonPtr& sk : skeletons) {
    auto results = proper_results(ctx, sk);
    for (const ProperEntry& e : *results) {
      if (seen.emplace(e.image, out.size()).second) {
        out.push_back(UnaryMap{e.image, AffineTerm(e.witness)});
      }
    }
  }
  return out;
}

std::vector<UnaryMap> brute_force_affine_maps_naive(const FiniteAlgebra& alg,
                                                    std::size_t max_height, std::size_t max_arity,
                                                    std::size_t max_count) {
  std::vector<SkeletonPtr> skeletons = enumerate_skeletons(max_height, max_arity, max_count);
  std::vector<UnaryMap> out;
  std::unordered_map<Image, std::size_t, ImageHash> seen;
  std::size_t evals = 0;
  for (const SkeletonPtr& sk : skeletons) {
    for (const ParamTuplePtr& p : enumerate_param_tuples(alg, sk, max_count)) {
      if (++evals > max_count) throw BudgetError("naive enumeration exceeds budget");
      UnaryMap m = eval_skeleton(alg, sk, p);
      if (seen.emplace(m.image, out.size()).second) out.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace affine
