#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "affine/term.hpp"

namespace affine {

// Term shapes: the variable, a constant placeholder (*), a nullary-symbol
// placeholder (0), or an n-ary node holding only its width.
enum class SkelKind { X, Star, ZeroLeaf, Node };

struct Skeleton;
using SkeletonPtr = std::shared_ptr<const Skeleton>;

struct Skeleton {
  SkelKind kind = SkelKind::X;
  std::vector<SkeletonPtr> children;  // Node; width == children.size()
};

SkeletonPtr skel_x();
SkeletonPtr skel_star();
SkeletonPtr skel_zero();
SkeletonPtr skel_node(std::vector<SkeletonPtr> children);

bool skeleton_equal(const SkeletonPtr& a, const SkeletonPtr& b);

// Serialization with tokens "x", "*", "0" and widths as node heads,
// e.g. "(2 (2 * x) *)".
std::string format_skeleton(const SkeletonPtr& sk);

struct SkeletonMeasures {
  std::size_t height = 0;
  std::size_t arity = 0;  // max node width
  std::size_t x_count = 0;
};

SkeletonMeasures skeleton_measures(const SkeletonPtr& sk);

// The data stripped from a term, mirroring a skeleton's shape: the symbol at
// each node and 0-leaf, the carrier element at each *-leaf.
struct ParamTuple;
using ParamTuplePtr = std::shared_ptr<const ParamTuple>;

struct ParamTuple {
  SkelKind kind = SkelKind::X;
  Symbol symbol;                          // Node, ZeroLeaf
  Elem element = 0;                       // Star
  std::vector<ParamTuplePtr> children;    // Node
};

ParamTuplePtr param_x();
ParamTuplePtr param_star(Elem element);
ParamTuplePtr param_zero(Symbol symbol);
ParamTuplePtr param_node(Symbol symbol, std::vector<ParamTuplePtr> children);

// Splits a term into shape and data. Inverse pair: unskeletonize after
// skeletonize is the identity, and conversely on matching pairs.
std::pair<SkeletonPtr, ParamTuplePtr> skeletonize(const TermPtr& t);
TermPtr unskeletonize(const SkeletonPtr& sk, const ParamTuplePtr& p);

// All skeletons containing x exactly once, of height <= max_height and arity
// <= max_arity, ordered by height, then arity, then serialization. Node
// widths run over 1..max_arity and 0-leaves are allowed everywhere; the
// width-restricted overload keeps only the listed widths (0-leaves only if
// with_zero_leaf), which drops exactly the shapes a signature cannot fill.
std::vector<SkeletonPtr> enumerate_skeletons(std::size_t max_height, std::size_t max_arity,
                                             std::size_t max_count = 1000000);
std::vector<SkeletonPtr> enumerate_skeletons(std::size_t max_height,
                                             const std::vector<std::size_t>& widths,
                                             bool with_zero_leaf, std::size_t max_count);

// Counts what the matching enumerate_skeletons call would return, without
// building anything; saturates at max_count + 1.
std::size_t count_skeletons(std::size_t max_height, const std::vector<std::size_t>& widths,
                            bool with_zero_leaf, std::size_t max_count);

// Every way to fill sk from the algebra's symbols and carrier, in catalog
// order: lexicographic with the node symbol most significant, then the
// children left to right; symbols run in signature order, elements in
// carrier order. A test oracle; throws BudgetError past max_count.
std::vector<ParamTuplePtr> enumerate_param_tuples(const FiniteAlgebra& alg, const SkeletonPtr& sk,
                                                  std::size_t max_count = 1000000);

}  // namespace affine
