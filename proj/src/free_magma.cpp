#include "affine/free_magma.hpp"

#include <map>
#include <random>

namespace affine {

MagmaPtr magma_leaf(char label) {
  if (label != 'a' && label != 'b') throw ValidationError("magma leaves are 'a' or 'b'");
  static const MagmaPtr a = std::make_shared<MagmaElem>(MagmaElem{true, 'a', nullptr, nullptr});
  static const MagmaPtr b = std::make_shared<MagmaElem>(MagmaElem{true, 'b', nullptr, nullptr});
  return label == 'a' ? a : b;
}

MagmaPtr magma_pair(MagmaPtr left, MagmaPtr right) {
  if (!left || !right) throw ValidationError("null magma element");
  return std::make_shared<MagmaElem>(
      MagmaElem{false, ' ', std::move(left), std::move(right)});
}

std::size_t magma_size(const MagmaPtr& v) {
  if (!v) throw ValidationError("null magma element");
  if (v->is_leaf) return 1;
  return magma_size(v->left) + magma_size(v->right);
}

bool magma_equal(const MagmaPtr& u, const MagmaPtr& v) {
  if (u.get() == v.get()) return true;
  if (!u || !v || u->is_leaf != v->is_leaf) return false;
  if (u->is_leaf) return u->label == v->label;
  return magma_equal(u->left, v->left) && magma_equal(u->right, v->right);
}

std::string format_magma(const MagmaPtr& v) {
  if (!v) throw ValidationError("null magma element");
  if (v->is_leaf) return std::string(1, v->label);
  return "(" + format_magma(v->left) + "*" + format_magma(v->right) + ")";
}

namespace {

bool contains_b(const MagmaPtr& v) {
  if (v->is_leaf) return v->label == 'b';
  return contains_b(v->left) || contains_b(v->right);
}

// The sampled terms use b-free constants, so the b-leaf is unique.
std::size_t depth_of_b(const MagmaPtr& v) {
  if (v->is_leaf) {
    if (v->label == 'b') return 0;
    throw ValidationError("value contains no b");
  }
  if (contains_b(v->left)) return 1 + depth_of_b(v->left);
  return 1 + depth_of_b(v->right);
}

struct Searcher {
  std::size_t const_size_cap;
  // Memoized on (node, height budget); nodes are shared subtrees of the
  // target value.
  std::map<std::pair<const MagmaElem*, std::size_t>, bool> proper_memo;
  std::map<std::pair<const MagmaElem*, std::size_t>, bool> ground_memo;

  // Whether a ground term of height <= budget, with constants of size <=
  // const_size_cap, evaluates to v. Constants are a-only trees, so v must be
  // b-free; larger values need a pair split.
  bool ground_buildable(const MagmaPtr& v, std::size_t budget) {
    auto key = std::make_pair(v.get(), budget);
    auto it = ground_memo.find(key);
    if (it != ground_memo.end()) return it->second;
    bool ok = false;
    if (!contains_b(v)) {
      if (magma_size(v) <= const_size_cap) {
        ok = true;
      } else if (!v->is_leaf && budget >= 1) {
        ok = ground_buildable(v->left, budget - 1) && ground_buildable(v->right, budget - 1);
      }
    }
    ground_memo.emplace(key, ok);
    return ok;
  }

  // Whether a proper term of height <= budget evaluates at b to v. A proper
  // term is x (value b) or a pair with exactly one proper child, so the
  // search mirrors v's own decomposition.
  bool can_make_proper(const MagmaPtr& v, std::size_t budget) {
    if (v->is_leaf) return v->label == 'b';
    if (budget == 0) return false;
    auto key = std::make_pair(v.get(), budget);
    auto it = proper_memo.find(key);
    if (it != proper_memo.end()) return it->second;
    bool ok = (can_make_proper(v->left, budget - 1) && ground_buildable(v->right, budget - 1)) ||
              (ground_buildable(v->left, budget - 1) && can_make_proper(v->right, budget - 1));
    proper_memo.emplace(key, ok);
    return ok;
  }
};

// Random a-only tree of size <= cap.
MagmaPtr random_constant(std::mt19937_64& rng, std::size_t cap) {
  std::size_t size = 1 + rng() % cap;
  MagmaPtr v = magma_leaf('a');
  for (std::size_t i = 1; i < size; ++i) {
    if (rng() % 2) {
      v = magma_pair(v, magma_leaf('a'));
    } else {
      v = magma_pair(magma_leaf('a'), v);
    }
  }
  return v;
}

struct SampledTerm {
  MagmaPtr value;      // evaluated at x = b
  std::size_t height;  // term height; constants are height-0 leaves
};

SampledTerm random_ground(std::mt19937_64& rng, std::size_t cap, std::size_t max_height) {
  if (max_height == 0 || rng() % 2 == 0) {
    return {random_constant(rng, cap), 0};
  }
  SampledTerm l = random_ground(rng, cap, max_height - 1);
  SampledTerm r = random_ground(rng, cap, max_height - 1);
  return {magma_pair(l.value, r.value), 1 + std::max(l.height, r.height)};
}

SampledTerm random_proper(std::mt19937_64& rng, std::size_t cap, std::size_t max_height) {
  if (max_height == 0 || rng() % 4 == 0) {
    return {magma_leaf('b'), 0};
  }
  SampledTerm proper = random_proper(rng, cap, max_height - 1);
  SampledTerm ground = random_ground(rng, cap, max_height - 1);
  if (rng() % 2) {
    return {magma_pair(proper.value, ground.value), 1 + std::max(proper.height, ground.height)};
  }
  return {magma_pair(ground.value, proper.value), 1 + std::max(proper.height, ground.height)};
}

}  // namespace

FreeMagmaReport free_magma_witness(std::size_t i_max, std::size_t const_size_cap,
                                   std::uint64_t seed, std::size_t depth_samples) {
  if (i_max > 6) throw ValidationError("i_max exceeds 6");
  if (const_size_cap < 1 || const_size_cap > 2 * i_max) {
    throw ValidationError("const_size_cap must lie in 1..2*i_max");
  }
  FreeMagmaReport report;
  report.i_max = i_max;
  report.const_size_cap = const_size_cap;
  report.depth_samples = depth_samples;

  Searcher search{const_size_cap, {}, {}};
  MagmaPtr v = magma_leaf('b');
  for (std::size_t i = 1; i <= i_max; ++i) {
    v = magma_pair(v, magma_leaf('a'));
    FreeMagmaItem item;
    item.i = i;
    item.value = format_magma(v);
    item.shorter_term_exists = search.can_make_proper(v, i - 1);
    item.matched_at_height = search.can_make_proper(v, i);
    report.items.push_back(std::move(item));
  }

  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < depth_samples; ++s) {
    SampledTerm t = random_proper(rng, const_size_cap, 1 + rng() % 6);
    if (depth_of_b(t.value) > t.height) ++report.depth_violations;
  }

  report.ok = report.depth_violations == 0;
  for (const FreeMagmaItem& item : report.items) {
    report.ok = report.ok && !item.shorter_term_exists && item.matched_at_height;
  }
  return report;
}

}  // namespace affine
