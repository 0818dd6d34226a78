#pragma once

#include <string>
#include <vector>

#include "affine/algebra.hpp"

namespace affine {

// Result of check_associative. For arity >= 2 a failure carries the first
// violating (2n-1)-tuple in lexicographic order and the index k of the
// failed equation (nesting at slot k vs slot k+1, 0-based). Arity-1
// symbols are always associative on a finite carrier; the result then
// reports the cyclic monoid generated by the map together with the
// identity: size = index + period, f^index = f^(index+period).
struct AssociativityCheck {
  bool ok = false;
  std::vector<Elem> witness;
  std::size_t equation = 0;
  std::size_t monoid_index = 0;
  std::size_t monoid_period = 0;
  std::size_t monoid_size = 0;

  explicit operator bool() const { return ok; }
};

AssociativityCheck check_associative(const FiniteAlgebra& alg, const std::string& sym);

// Size, index and period of {id, f, f^2, ...} for a unary symbol.
struct UnaryMonoidInfo {
  std::size_t size = 0;
  std::size_t index = 0;
  std::size_t period = 0;
};

UnaryMonoidInfo unary_monoid_info(const FiniteAlgebra& alg, const std::string& sym);

// Does g distribute over f?
//
// Unary g: true iff the full form g(f(a_1..a_n)) = f(g(a_1)..g(a_n)) holds
// everywhere, or some single-slot form g(f(a_1..a_n)) = f(a_1..g(a_k)..a_n)
// does. g of arity m >= 2: true iff for every slot k the identity
//   g(b_1..b_{k-1}, f(a_1..a_n), b_{k+1}..b_m)
//     = f(g(..a_1..), ..., g(..a_n..))
// holds for all tuples. On failure, `slot` (1-based; 0 = full unary form),
// `outer` (g's fixed arguments) and `inner` (f's arguments) give the first
// violation of the last form tried.
struct DistributivityCheck {
  bool ok = false;
  std::size_t slot = 0;
  std::vector<Elem> outer;
  std::vector<Elem> inner;

  explicit operator bool() const { return ok; }
};

DistributivityCheck check_distributes(const FiniteAlgebra& alg, const std::string& g,
                                      const std::string& f);

// Layered distributivity along a linear order on the arity >= 2 symbols:
// (1) for s before p in the order, p distributes over s;
// (2) every unary symbol distributes over every symbol of arity >= 1.
// With require_associativity set, every symbol of arity >= 1 must also
// pass check_associative. Violations are human-readable, one per law.
struct ChoeCheck {
  bool ok = false;
  std::vector<std::string> violations;

  explicit operator bool() const { return ok; }
};

ChoeCheck check_choe_distributive(const FiniteAlgebra& alg, const ChoeOrder& order,
                                  bool require_associativity = false);

}  // namespace affine
