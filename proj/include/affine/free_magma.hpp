#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "affine/errors.hpp"

namespace affine {

// Elements of the free magma over generators {a, b}: binary trees with the
// product as pairing. b marks the variable's value, so constants are a-only
// trees and the b-leaf of an evaluated proper term is unique.
struct MagmaElem;
using MagmaPtr = std::shared_ptr<const MagmaElem>;

struct MagmaElem {
  bool is_leaf = true;
  char label = 'a';  // leaves only
  MagmaPtr left, right;
};

MagmaPtr magma_leaf(char label);
MagmaPtr magma_pair(MagmaPtr left, MagmaPtr right);

std::size_t magma_size(const MagmaPtr& v);  // leaf count
bool magma_equal(const MagmaPtr& u, const MagmaPtr& v);
std::string format_magma(const MagmaPtr& v);  // "(((b*a)*a)*a)"

struct FreeMagmaItem {
  std::size_t i = 0;
  std::string value;                 // ((b*a)*a)...*a with i pairings
  bool shorter_term_exists = false;  // some proper term of height < i matches
  bool matched_at_height = false;    // some proper term of height exactly <= i matches
};

struct FreeMagmaReport {
  std::size_t i_max = 0;
  std::size_t const_size_cap = 0;
  std::size_t depth_samples = 0;
  std::size_t depth_violations = 0;
  std::vector<FreeMagmaItem> items;
  bool ok = false;
};

// For each i <= i_max, decides by exact backward decomposition whether any
// proper term of height < i, with constants of size <= const_size_cap,
// evaluates at b to ((b*a)*a)...*a; expected answer no, with a match at
// height i. Also samples random proper terms and checks that the depth of b
// in the value never exceeds the term height. Requires i_max <= 6 and
// const_size_cap <= 2 * i_max.
FreeMagmaReport free_magma_witness(std::size_t i_max, std::size_t const_size_cap,
                                   std::uint64_t seed, std::size_t depth_samples = 200);

}  // namespace affine
