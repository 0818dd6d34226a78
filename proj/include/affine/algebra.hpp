#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "affine/errors.hpp"

namespace affine {

using Elem = std::size_t;

// Operation arities are capped so exhaustive table scans stay tractable.
inline constexpr std::size_t kMaxArity = 4;

struct Symbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

// An ordered list of operation symbols with unique, parse-safe names.
// "x" is reserved for the term variable; '(', ')', '#' and whitespace
// cannot appear in names.
class Signature {
public:
  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols);

  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  const Symbol& at(std::size_t i) const { return symbols_.at(i); }

  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;  // throws ValidationError
  std::vector<std::size_t> symbols_of_arity(std::size_t n) const;
  std::size_t max_arity() const;

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.symbols_ == b.symbols_;
  }

private:
  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Linear order on the arity >= 2 symbols, used by the layered
// distributivity check and the layered bound formula.
struct ChoeOrder {
  std::vector<std::string> symbols;
};

// A finite algebra: carrier {0, ..., carrier-1} plus one flat operation
// table per symbol. Tables are row major: the entry for (a_1, ..., a_k)
// sits at index sum a_i * carrier^(k-i). Immutable after construction.
class FiniteAlgebra {
public:
  FiniteAlgebra(std::string name, std::size_t carrier, Signature signature,
                std::vector<std::vector<Elem>> tables,
                std::optional<ChoeOrder> choe_order = std::nullopt);

  const std::string& name() const { return name_; }
  std::size_t carrier() const { return carrier_; }
  const Signature& signature() const { return signature_; }
  const std::vector<std::vector<Elem>>& tables() const { return tables_; }
  const std::vector<Elem>& table(std::size_t sym) const { return tables_.at(sym); }
  const std::optional<ChoeOrder>& choe_order() const { return choe_order_; }

  Elem apply(std::size_t sym, std::span<const Elem> args) const;
  Elem apply(const std::string& sym, std::span<const Elem> args) const;

private:
  std::string name_;
  std::size_t carrier_ = 1;
  Signature signature_;
  std::vector<std::vector<Elem>> tables_;
  std::optional<ChoeOrder> choe_order_;
};

// Checks that `order` lists exactly the arity >= 2 symbols of `alg`, each once.
void validate_choe_order(const FiniteAlgebra& alg, const ChoeOrder& order);

// Keeps only the named symbols (with their tables). Order follows the
// original signature. Symbols listed twice or missing are an error.
FiniteAlgebra reduct(const FiniteAlgebra& alg, const std::vector<std::string>& keep,
                     std::string name = "");

// Fixed 64-bit linear congruential generator (multiplier
// 6364136223846793005, increment 1442695040888963407; output is the top
// 32 bits of the state). The sequence is part of the interface: tables
// built from a seed must reproduce across platforms and versions.
class Lcg {
public:
  explicit Lcg(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_ >> 32;
  }

  std::uint64_t bounded(std::uint64_t n) { return next() % n; }

private:
  std::uint64_t state_;
};

// Catalog of stock algebras:
//   zn_ring:n              ({0..n-1}, +, *) mod n
//   zn_group:n             cyclic group of order n  (*, e, inv)
//   sym_group:k            symmetric group on k points, carrier k!
//   left_zero_semigroup:n  x * y = x
//   divisor_lattice:n      divisors of n under lcm (v) and gcd (^)
//   boolean_algebra:k      subsets of a k-set (v, ^, ~, 0, 1), k <= 4
//   boolean_semimodule:k   subsets of a k-set (s0, s1, +), k <= 4
//   random_magma:n,seed    one binary symbol, table drawn from Lcg(seed)
FiniteAlgebra builtin_algebra(const std::string& kind,
                              const std::vector<std::uint64_t>& params);

// JSON round trip for the algebra file format:
//   {"name": str, "carrier": int >= 1,
//    "operations": [{"symbol": str, "arity": int, "table": [ints]}],
//    "choe_order": [str] (optional)}
// Unknown fields are rejected.
std::string algebra_to_json(const FiniteAlgebra& alg);
FiniteAlgebra algebra_from_json(const std::string& text);
FiniteAlgebra load_algebra_file(const std::string& path);

}  // namespace affine
