#include "affine/skeleton.hpp"

#include <algorithm>
#include <tuple>

namespace affine {

SkeletonPtr skel_x() {
  static const SkeletonPtr x = std::make_shared<Skeleton>(Skeleton{SkelKind::X, {}});
  return x;
}

SkeletonPtr skel_star() {
  static const SkeletonPtr s = std::make_shared<Skeleton>(Skeleton{SkelKind::Star, {}});
  return s;
}

SkeletonPtr skel_zero() {
  static const SkeletonPtr z = std::make_shared<Skeleton>(Skeleton{SkelKind::ZeroLeaf, {}});
  return z;
}

SkeletonPtr skel_node(std::vector<SkeletonPtr> children) {
  if (children.empty() || children.size() > kMaxArity) {
    throw ValidationError("skeleton node width must be 1.." + std::to_string(kMaxArity));
  }
  for (const SkeletonPtr& c : children) {
    if (!c) throw ValidationError("null skeleton child");
  }
  return std::make_shared<Skeleton>(Skeleton{SkelKind::Node, std::move(children)});
}

bool skeleton_equal(const SkeletonPtr& a, const SkeletonPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind != b->kind) return false;
  if (a->kind != SkelKind::Node) return true;
  if (a->children.size() != b->children.size()) return false;
  for (std::size_t i = 0; i < a->children.size(); ++i) {
    if (!skeleton_equal(a->children[i], b->children[i])) return false;
  }
  return true;
}

namespace {

void format_into(const SkeletonPtr& sk, std::string& out) {
  switch (sk->kind) {
    case SkelKind::X:
      out += 'x';
      return;
    case SkelKind::Star:
      out += '*';
      return;
    case SkelKind::ZeroLeaf:
      out += '0';
      return;
    case SkelKind::Node:
      out += '(';
      out += std::to_string(sk->children.size());
      for (const SkeletonPtr& c : sk->children) {
        out += ' ';
        format_into(c, out);
      }
      out += ')';
      return;
  }
}

}  // namespace

std::string format_skeleton(const SkeletonPtr& sk) {
  if (!sk) throw ValidationError("null skeleton");
  std::string out;
  format_into(sk, out);
  return out;
}

SkeletonMeasures skeleton_measures(const SkeletonPtr& sk) {
  if (!sk) throw ValidationError("null skeleton");
  switch (sk->kind) {
    case SkelKind::X:
      return {0, 0, 1};
    case SkelKind::Star:
    case SkelKind::ZeroLeaf:
      return {0, 0, 0};
    case SkelKind::Node: {
      SkeletonMeasures m{0, sk->children.size(), 0};
      for (const SkeletonPtr& c : sk->children) {
        SkeletonMeasures cm = skeleton_measures(c);
        m.height = std::max(m.height, cm.height);
        m.arity = std::max(m.arity, cm.arity);
        m.x_count += cm.x_count;
      }
      m.height += 1;
      return m;
    }
  }
  return {};
}

ParamTuplePtr param_x() {
  static const ParamTuplePtr x = std::make_shared<ParamTuple>(ParamTuple{SkelKind::X, {}, 0, {}});
  return x;
}

ParamTuplePtr param_star(Elem element) {
  return std::make_shared<ParamTuple>(ParamTuple{SkelKind::Star, {}, element, {}});
}

ParamTuplePtr param_zero(Symbol symbol) {
  if (symbol.arity != 0) throw ValidationError("0-leaf parameter must be a nullary symbol");
  return std::make_shared<ParamTuple>(ParamTuple{SkelKind::ZeroLeaf, std::move(symbol), 0, {}});
}

ParamTuplePtr param_node(Symbol symbol, std::vector<ParamTuplePtr> children) {
  if (symbol.arity == 0 || symbol.arity != children.size()) {
    throw ValidationError("node parameter arity mismatch at '" + symbol.name + "'");
  }
  for (const ParamTuplePtr& c : children) {
    if (!c) throw ValidationError("null parameter child");
  }
  return std::make_shared<ParamTuple>(
      ParamTuple{SkelKind::Node, std::move(symbol), 0, std::move(children)});
}

std::pair<SkeletonPtr, ParamTuplePtr> skeletonize(const TermPtr& t) {
  if (!t) throw ValidationError("null term");
  switch (t->kind) {
    case TermKind::Variable:
      return {skel_x(), param_x()};
    case TermKind::Constant:
      return {skel_star(), param_star(t->constant)};
    case TermKind::Apply: {
      if (t->children.empty()) return {skel_zero(), param_zero(t->symbol)};
      std::vector<SkeletonPtr> sk_children;
      std::vector<ParamTuplePtr> p_children;
      sk_children.reserve(t->children.size());
      p_children.reserve(t->children.size());
      for (const TermPtr& c : t->children) {
        auto [sk, p] = skeletonize(c);
        sk_children.push_back(std::move(sk));
        p_children.push_back(std::move(p));
      }
      return {skel_node(std::move(sk_children)), param_node(t->symbol, std::move(p_children))};
    }
  }
  return {skel_x(), param_x()};
}

TermPtr unskeletonize(const SkeletonPtr& sk, const ParamTuplePtr& p) {
  if (!sk || !p) throw ValidationError("null skeleton or parameter tuple");
  if (sk->kind != p->kind) throw ValidationError("skeleton and parameter shapes disagree");
  switch (sk->kind) {
    case SkelKind::X:
      return variable();
    case SkelKind::Star:
      return constant(p->element);
    case SkelKind::ZeroLeaf:
      return apply(p->symbol, {});
    case SkelKind::Node: {
      if (sk->children.size() != p->children.size()) {
        throw ValidationError("skeleton and parameter shapes disagree");
      }
      std::vector<TermPtr> children;
      children.reserve(sk->children.size());
      for (std::size_t i = 0; i < sk->children.size(); ++i) {
        children.push_back(unskeletonize(sk->children[i], p->children[i]));
      }
      return apply(p->symbol, std::move(children));
    }
  }
  return variable();
}

namespace {

std::size_t sat_add(std::size_t a, std::size_t b, std::size_t cap) {
  if (a > cap || b > cap || a + b > cap) return cap + 1;
  return a + b;
}

std::size_t sat_mul(std::size_t a, std::size_t b, std::size_t cap) {
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) return cap + 1;
  return a * b;
}

// Counts ground trees (no x) and linear trees (x exactly once) of height
// <= h, saturating just past max_count.
struct SkeletonCounter {
  std::vector<std::size_t> widths;
  std::size_t leaf_count;  // * plus optionally 0
  std::size_t cap;
  std::vector<std::size_t> ground;  // by height bound
  std::vector<std::size_t> linear;

  void grow_to(std::size_t h) {
    if (ground.empty()) {
      ground.push_back(leaf_count);
      linear.push_back(1);
    }
    while (ground.size() <= h) {
      std::size_t g = ground.back();
      std::size_t l = linear.back();
      std::size_t ng = leaf_count;
      std::size_t nl = 1;
      for (std::size_t w : widths) {
        // w-tuples of ground subtrees; for linear, one slot is linear.
        std::size_t gw = 1;
        for (std::size_t i = 0; i < w; ++i) gw = sat_mul(gw, g, cap);
        ng = sat_add(ng, gw, cap);
        std::size_t gw1 = 1;
        for (std::size_t i = 0; i + 1 < w; ++i) gw1 = sat_mul(gw1, g, cap);
        nl = sat_add(nl, sat_mul(sat_mul(w, l, cap), gw1, cap), cap);
      }
      ground.push_back(ng);
      linear.push_back(nl);
    }
  }
};

struct SkeletonGen {
  std::vector<std::size_t> widths;
  bool with_zero_leaf;
  // by height bound: all ground / linear trees of height <= h
  std::vector<std::vector<SkeletonPtr>> ground;
  std::vector<std::vector<SkeletonPtr>> linear;

  void grow_to(std::size_t h) {
    if (ground.empty()) {
      std::vector<SkeletonPtr> g0{skel_star()};
      if (with_zero_leaf) g0.push_back(skel_zero());
      ground.push_back(std::move(g0));
      linear.push_back({skel_x()});
    }
    while (ground.size() <= h) {
      const std::vector<SkeletonPtr>& g = ground.back();
      const std::vector<SkeletonPtr>& l = linear.back();
      // A tree of height <= h is a leaf or a node whose children all have
      // height <= h-1; seeding from the leaves keeps the pools duplicate-free.
      std::vector<SkeletonPtr> ng{skel_star()};
      if (with_zero_leaf) ng.push_back(skel_zero());
      std::vector<SkeletonPtr> nl{skel_x()};
      for (std::size_t w : widths) {
        std::vector<SkeletonPtr> tuple(w);
        emit_ground(g, tuple, 0, w, ng);
        for (std::size_t slot = 0; slot < w; ++slot) {
          emit_linear(g, l, tuple, 0, w, slot, nl);
        }
      }
      ground.push_back(std::move(ng));
      linear.push_back(std::move(nl));
    }
  }

  void emit_ground(const std::vector<SkeletonPtr>& g, std::vector<SkeletonPtr>& tuple,
                   std::size_t i, std::size_t w, std::vector<SkeletonPtr>& out) {
    if (i == w) {
      out.push_back(skel_node(tuple));
      return;
    }
    for (const SkeletonPtr& c : g) {
      tuple[i] = c;
      emit_ground(g, tuple, i + 1, w, out);
    }
  }

  void emit_linear(const std::vector<SkeletonPtr>& g, const std::vector<SkeletonPtr>& l,
                   std::vector<SkeletonPtr>& tuple, std::size_t i, std::size_t w,
                   std::size_t slot, std::vector<SkeletonPtr>& out) {
    if (i == w) {
      out.push_back(skel_node(tuple));
      return;
    }
    const std::vector<SkeletonPtr>& pool = (i == slot) ? l : g;
    for (const SkeletonPtr& c : pool) {
      tuple[i] = c;
      emit_linear(g, l, tuple, i + 1, w, slot, out);
    }
  }
};

std::vector<std::size_t> checked_widths(const std::vector<std::size_t>& widths) {
  std::vector<std::size_t> ws = widths;
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  for (std::size_t w : ws) {
    if (w == 0 || w > kMaxArity) {
      throw ValidationError("skeleton widths must lie in 1.." + std::to_string(kMaxArity));
    }
  }
  return ws;
}

}  // namespace

std::size_t count_skeletons(std::size_t max_height, const std::vector<std::size_t>& widths,
                            bool with_zero_leaf, std::size_t max_count) {
  SkeletonCounter counter{checked_widths(widths), with_zero_leaf ? std::size_t{2} : std::size_t{1},
                          max_count, {}, {}};
  counter.grow_to(max_height);
  return counter.linear[max_height];
}

std::vector<SkeletonPtr> enumerate_skeletons(std::size_t max_height,
                                             const std::vector<std::size_t>& widths,
                                             bool with_zero_leaf, std::size_t max_count) {
  std::vector<std::size_t> ws = checked_widths(widths);
  if (count_skeletons(max_height, ws, with_zero_leaf, max_count) > max_count) {
    throw BudgetError("skeleton enumeration exceeds " + std::to_string(max_count) +
                      " trees at height " + std::to_string(max_height));
  }
  SkeletonGen gen{ws, with_zero_leaf, {}, {}};
  gen.grow_to(max_height);
  std::vector<SkeletonPtr> result = gen.linear[max_height];
  // Canonical order: height, then arity, then serialization.
  std::vector<std::pair<std::tuple<std::size_t, std::size_t, std::string>, SkeletonPtr>> keyed;
  keyed.reserve(result.size());
  for (SkeletonPtr& sk : result) {
    SkeletonMeasures m = skeleton_measures(sk);
    keyed.emplace_back(std::tuple{m.height, m.arity, format_skeleton(sk)}, std::move(sk));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  result.clear();
  for (auto& [key, sk] : keyed) result.push_back(std::move(sk));
  return result;
}

std::vector<SkeletonPtr> enumerate_skeletons(std::size_t max_height, std::size_t max_arity,
                                             std::size_t max_count) {
  if (max_arity > kMaxArity) {
    throw ValidationError("max_arity exceeds " + std::to_string(kMaxArity));
  }
  std::vector<std::size_t> widths;
  for (std::size_t w = 1; w <= max_arity; ++w) widths.push_back(w);
  return enumerate_skeletons(max_height, widths, true, max_count);
}

namespace {

void fill_params(const FiniteAlgebra& alg, const SkeletonPtr& sk,
                 std::vector<ParamTuplePtr>& out, std::size_t max_count) {
  switch (sk->kind) {
    case SkelKind::X:
      out.push_back(param_x());
      return;
    case SkelKind::Star:
      for (Elem a = 0; a < alg.carrier(); ++a) out.push_back(param_star(a));
      return;
    case SkelKind::ZeroLeaf:
      for (std::size_t s : alg.signature().symbols_of_arity(0)) {
        out.push_back(param_zero(alg.signature().at(s)));
      }
      return;
    case SkelKind::Node: {
      std::size_t w = sk->children.size();
      std::vector<std::vector<ParamTuplePtr>> child_fills(w);
      for (std::size_t i = 0; i < w; ++i) {
        fill_params(alg, sk->children[i], child_fills[i], max_count);
      }
      for (std::size_t s : alg.signature().symbols_of_arity(w)) {
        bool empty = false;
        for (std::size_t i = 0; i < w; ++i) empty = empty || child_fills[i].empty();
        if (empty) continue;
        std::vector<std::size_t> idx(w, 0);
        bool done = false;
        while (!done) {
          std::vector<ParamTuplePtr> children(w);
          for (std::size_t i = 0; i < w; ++i) children[i] = child_fills[i][idx[i]];
          out.push_back(param_node(alg.signature().at(s), std::move(children)));
          if (out.size() > max_count) {
            throw BudgetError("parameter enumeration exceeds " + std::to_string(max_count));
          }
          done = true;
          for (std::size_t i = w; i-- > 0;) {
            if (++idx[i] < child_fills[i].size()) {
              done = false;
              break;
            }
            idx[i] = 0;
          }
        }
      }
      return;
    }
  }
}

}  // namespace

std::vector<ParamTuplePtr> enumerate_param_tuples(const FiniteAlgebra& alg, const SkeletonPtr& sk,
                                                  std::size_t max_count) {
  if (!sk) throw ValidationError("null skeleton");
  std::vector<ParamTuplePtr> out;
  fill_params(alg, sk, out, max_count);
  if (out.size() > max_count) {
    throw BudgetError("parameter enumeration exceeds " + std::to_string(max_count));
  }
  return out;
}

}  // namespace affine
