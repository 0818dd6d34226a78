#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "affine/algebra.hpp"
#include "affine/errors.hpp"

namespace affine {

// Terms over a signature extended by carrier constants, with the single
// variable x. Trees are immutable and freely shared.
enum class TermKind { Variable, Constant, Apply };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind = TermKind::Variable;
  Elem constant = 0;              // Constant
  Symbol symbol;                  // Apply
  std::vector<TermPtr> children;  // Apply; size == symbol.arity
};

TermPtr variable();
TermPtr constant(Elem k);
TermPtr apply(Symbol symbol, std::vector<TermPtr> children);

bool term_equal(const TermPtr& a, const TermPtr& b);

// Grammar: term := "x" | "#" digits | "(" symbol term* ")" | symbol
// where a bare symbol is a nullary application. Whitespace-insensitive.
std::string format_term(const TermPtr& t);
TermPtr parse_term(std::string_view src, const Signature& sig, std::size_t carrier_size);

// Checks symbols against `sig` (by name and arity) and constants against the
// carrier; parse_term output is always valid.
void validate_term(const TermPtr& t, const Signature& sig, std::size_t carrier_size);

struct TermMeasures {
  std::size_t height = 0;  // leaves and nullary applications are 0
  std::size_t arity = 0;   // max over applications of max(symbol arity, child arities)
  std::size_t x_count = 0;
};

TermMeasures term_measures(const TermPtr& t);

// A term in which x occurs at most once; proper means exactly once.
class AffineTerm {
public:
  explicit AffineTerm(TermPtr t);

  const TermPtr& term() const { return term_; }
  bool proper() const { return proper_; }

private:
  TermPtr term_;
  bool proper_ = false;
};

// Substitutes t for the x in s (if any); the concatenation monoid product.
AffineTerm concat(const AffineTerm& s, const AffineTerm& t);

}  // namespace affine
