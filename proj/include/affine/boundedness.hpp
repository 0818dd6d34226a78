#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "affine/congruence.hpp"
#include "affine/laws.hpp"
#include "affine/translation.hpp"

#include "json.hpp"

namespace affine {

// A witness per translation-monoid element, each a proper term of height and
// arity at most m, listed in the monoid's discovery order.
struct BoundednessCertificate {
  std::size_t m = 0;
  std::vector<UnaryMap> witnesses;
};

// The monoid elements no proper term within the bounds induces.
struct BoundednessFailure {
  std::size_t m = 0;
  std::vector<Image> missing;
};

using BoundednessResult = std::variant<BoundednessCertificate, BoundednessFailure>;

inline bool bounded(const BoundednessResult& r) {
  return std::holds_alternative<BoundednessCertificate>(r);
}

struct BoundOptions {
  // Drops the arity cap (heights only). Same verdict whenever the maximum
  // symbol arity is at most m, where the two enumerations coincide.
  bool height_only = false;
  Limits limits{};
};

// Decides whether every translation-monoid element is induced by a proper
// term of height <= m and arity <= m, with first-found witnesses.
BoundednessResult check_bounded_by(const FiniteAlgebra& alg, std::size_t m,
                                   const BoundOptions& options = {});
BoundednessResult check_bounded_by(const FiniteAlgebra& alg, const TranslationMonoid& monoid,
                                   std::size_t m, const BoundOptions& options = {});

struct MinimalBound {
  std::size_t m_min = 0;
  BoundednessCertificate certificate;
};

// Least m that certifies. The search ceiling max(max monoid depth, max
// signature arity) always certifies: depth-d elements carry height-d
// witnesses whose arity is at most the signature's.
MinimalBound minimal_bound(const FiniteAlgebra& alg, const BoundOptions& options = {});

// Bound for associative algebras ordered by distributivity: twice the number
// of arity >= 2 symbols, plus the cyclic-monoid size (identity included) of
// each unary symbol, minus the number of unary symbols. Throws unless every
// later symbol distributes over every earlier one, every unary distributes
// over everything, and every arity >= 1 symbol is associative.
std::size_t choe_bound(const FiniteAlgebra& alg, const ChoeOrder& order);

struct DecompositionCheck {
  bool ok = false;
  std::size_t monoid_size = 0;      // |M(A)|
  std::size_t composite_count = 0;  // |{f o g}|
  std::optional<Image> missing;     // first monoid element not a composite
  explicit operator bool() const { return ok; }
};

// Whether M(A) = {f o g} with f from the reduct on part1 and g from the
// reduct on part2; the two parts must partition the arity >= 1 symbols.
// Composites always lie in M(A), so only coverage can fail.
DecompositionCheck commuting_decomposition_check(const FiniteAlgebra& alg,
                                                 const std::vector<std::string>& part1,
                                                 const std::vector<std::string>& part2);

enum class AlgebraClass { Semigroup, Group, Ring, Semiring, Boolean, Semimodule, Unary };

std::optional<AlgebraClass> algebra_class_from_name(const std::string& name);
std::string algebra_class_name(AlgebraClass cls);

// Shape and law checks for the class, then check_bounded_by at the class
// constant: semigroups 2, groups 3, rings/semirings 3, Boolean algebras 3,
// semimodules 2, unary algebras |M(A)| - 1.
struct ClassCheck {
  AlgebraClass cls = AlgebraClass::Semigroup;
  bool laws_ok = false;
  std::vector<std::string> violations;
  std::size_t bound = 0;
  bool bounded = false;
  std::optional<BoundednessCertificate> certificate;
  bool ok() const { return laws_ok && bounded; }
};

ClassCheck verify_class_bound(const FiniteAlgebra& alg, AlgebraClass cls,
                              const BoundOptions& options = {});

nlohmann::json certificate_to_json(const BoundednessCertificate& cert);
nlohmann::json failure_to_json(const BoundednessFailure& failure);
nlohmann::json result_to_json(const BoundednessResult& result);

}  // namespace affine
