#include "affine/algebra.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace affine {

namespace {

bool legal_symbol_name(const std::string& name) {
  if (name.empty() || name == "x") return false;
  for (unsigned char c : name) {
    if (c <= 0x20 || c == 0x7f) return false;
    if (c == '(' || c == ')' || c == '#') return false;
  }
  return true;
}

std::size_t table_size_for(std::size_t carrier, std::size_t arity) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    if (size > 10'000'000 / std::max<std::size_t>(carrier, 1)) {
      throw ValidationError("operation table too large");
    }
    size *= carrier;
  }
  return size;
}

}  // namespace

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const Symbol& s = symbols_[i];
    if (!legal_symbol_name(s.name)) {
      throw ValidationError("illegal symbol name '" + s.name + "'");
    }
    if (s.arity > kMaxArity) {
      throw ValidationError("symbol '" + s.name + "' has arity " +
                            std::to_string(s.arity) + ", maximum is " +
                            std::to_string(kMaxArity));
    }
    if (!index_.emplace(s.name, i).second) {
      throw ValidationError("duplicate symbol name '" + s.name + "'");
    }
  }
}

std::optional<std::size_t> Signature::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Signature::index_of(const std::string& name) const {
  auto idx = find(name);
  if (!idx) throw ValidationError("unknown symbol '" + name + "'");
  return *idx;
}

std::vector<std::size_t> Signature::symbols_of_arity(std::size_t n) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].arity == n) out.push_back(i);
  }
  return out;
}

std::size_t Signature::max_arity() const {
  std::size_t m = 0;
  for (const Symbol& s : symbols_) m = std::max(m, s.arity);
  return m;
}

FiniteAlgebra::FiniteAlgebra(std::string name, std::size_t carrier, Signature signature,
                             std::vector<std::vector<Elem>> tables,
                             std::optional<ChoeOrder> choe_order)
    : name_(std::move(name)),
      carrier_(carrier),
      signature_(std::move(signature)),
      tables_(std::move(tables)),
      choe_order_(std::move(choe_order)) {
  if (carrier_ == 0) throw ValidationError("carrier must have at least one element");
  if (tables_.size() != signature_.size()) {
    throw ValidationError("expected one table per symbol");
  }
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    const Symbol& s = signature_.at(i);
    std::size_t want = table_size_for(carrier_, s.arity);
    if (tables_[i].size() != want) {
      throw ValidationError("table for '" + s.name + "' has " +
                            std::to_string(tables_[i].size()) + " entries, expected " +
                            std::to_string(want));
    }
    for (Elem e : tables_[i]) {
      if (e >= carrier_) {
        throw ValidationError("table for '" + s.name + "' contains element " +
                              std::to_string(e) + " outside the carrier");
      }
    }
  }
  if (choe_order_) validate_choe_order(*this, *choe_order_);
}

Elem FiniteAlgebra::apply(std::size_t sym, std::span<const Elem> args) const {
  if (sym >= signature_.size()) throw ValidationError("symbol index out of range");
  const Symbol& s = signature_.at(sym);
  if (args.size() != s.arity) {
    throw ValidationError("'" + s.name + "' expects " + std::to_string(s.arity) +
                          " arguments, got " + std::to_string(args.size()));
  }
  std::size_t idx = 0;
  for (Elem a : args) {
    if (a >= carrier_) throw ValidationError("argument outside the carrier");
    idx = idx * carrier_ + a;
  }
  return tables_[sym][idx];
}

Elem FiniteAlgebra::apply(const std::string& sym, std::span<const Elem> args) const {
  return apply(signature_.index_of(sym), args);
}

void validate_choe_order(const FiniteAlgebra& alg, const ChoeOrder& order) {
  std::vector<std::size_t> want = alg.signature().symbols_of_arity(2);
  for (std::size_t n = 3; n <= alg.signature().max_arity(); ++n) {
    for (std::size_t i : alg.signature().symbols_of_arity(n)) want.push_back(i);
  }
  std::vector<bool> seen(alg.signature().size(), false);
  for (const std::string& name : order.symbols) {
    std::size_t i = alg.signature().index_of(name);
    if (alg.signature().at(i).arity < 2) {
      throw ValidationError("order lists '" + name + "', which has arity < 2");
    }
    if (seen[i]) throw ValidationError("order lists '" + name + "' twice");
    seen[i] = true;
  }
  if (order.symbols.size() != want.size()) {
    throw ValidationError("order must list every symbol of arity >= 2 exactly once");
  }
}

FiniteAlgebra reduct(const FiniteAlgebra& alg, const std::vector<std::string>& keep,
                     std::string name) {
  std::vector<bool> chosen(alg.signature().size(), false);
  for (const std::string& s : keep) {
    std::size_t i = alg.signature().index_of(s);
    if (chosen[i]) throw ValidationError("symbol '" + s + "' listed twice");
    chosen[i] = true;
  }
  std::vector<Symbol> symbols;
  std::vector<std::vector<Elem>> tables;
  for (std::size_t i = 0; i < alg.signature().size(); ++i) {
    if (!chosen[i]) continue;
    symbols.push_back(alg.signature().at(i));
    tables.push_back(alg.table(i));
  }
  if (name.empty()) name = alg.name() + " reduct";
  return FiniteAlgebra(std::move(name), alg.carrier(), Signature(std::move(symbols)),
                       std::move(tables));
}

namespace {

std::vector<Elem> binary_table(std::size_t n, auto&& f) {
  std::vector<Elem> t(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = f(a, b);
  }
  return t;
}

std::vector<Elem> unary_table(std::size_t n, auto&& f) {
  std::vector<Elem> t(n);
  for (std::size_t a = 0; a < n; ++a) t[a] = f(a);
  return t;
}

std::uint64_t the_param(const std::vector<std::uint64_t>& params, const std::string& kind,
                        std::size_t count = 1, std::size_t which = 0) {
  if (params.size() != count) {
    throw ValidationError(kind + " expects " + std::to_string(count) +
                          " parameter(s), got " + std::to_string(params.size()));
  }
  return params[which];
}

// Lexicographic rank <-> permutation of {0..k-1}, via the factorial number
// system. Carrier index i names the i-th permutation in lex order.
std::vector<std::size_t> unrank_permutation(std::size_t rank, std::size_t k) {
  std::vector<std::size_t> pool(k);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<std::size_t> fact(k, 1);
  for (std::size_t i = 1; i < k; ++i) fact[i] = fact[i - 1] * i;
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t f = fact[k - 1 - i];
    std::size_t d = rank / f;
    rank %= f;
    perm.push_back(pool[d]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return perm;
}

std::size_t rank_permutation(const std::vector<std::size_t>& perm) {
  std::size_t k = perm.size();
  std::vector<std::size_t> fact(k, 1);
  for (std::size_t i = 1; i < k; ++i) fact[i] = fact[i - 1] * i;
  std::size_t rank = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (perm[j] < perm[i]) ++smaller;
    }
    rank += smaller * fact[k - 1 - i];
  }
  return rank;
}

FiniteAlgebra make_sym_group(std::size_t k) {
  if (k < 1 || k > 5) throw ValidationError("sym_group expects 1 <= k <= 5");
  std::size_t n = 1;
  for (std::size_t i = 2; i <= k; ++i) n *= i;
  std::vector<std::vector<std::size_t>> perms(n);
  for (std::size_t i = 0; i < n; ++i) perms[i] = unrank_permutation(i, k);
  // product applies the right factor first: (s * t)(i) = s(t(i))
  auto mul = [&](std::size_t a, std::size_t b) {
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = perms[a][perms[b][i]];
    return rank_permutation(c);
  };
  auto inv = [&](std::size_t a) {
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[perms[a][i]] = i;
    return rank_permutation(c);
  };
  Signature sig({{"*", 2}, {"e", 0}, {"inv", 1}});
  return FiniteAlgebra("sym_group(" + std::to_string(k) + ")", n, sig,
                       {binary_table(n, mul), {0}, unary_table(n, inv)});
}

std::vector<std::size_t> divisors_of(std::size_t n) {
  std::vector<std::size_t> ds;
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d == 0) ds.push_back(d);
  }
  return ds;
}

FiniteAlgebra make_divisor_lattice(std::size_t n) {
  if (n < 1 || n > 1'000'000) throw ValidationError("divisor_lattice expects 1 <= n <= 10^6");
  std::vector<std::size_t> ds = divisors_of(n);
  auto index = [&](std::size_t v) {
    return static_cast<Elem>(std::lower_bound(ds.begin(), ds.end(), v) - ds.begin());
  };
  auto gcd = [](std::size_t a, std::size_t b) { return std::gcd(a, b); };
  auto join = [&](std::size_t a, std::size_t b) {
    return index(ds[a] / gcd(ds[a], ds[b]) * ds[b]);
  };
  auto meet = [&](std::size_t a, std::size_t b) { return index(gcd(ds[a], ds[b])); };
  Signature sig({{"v", 2}, {"^", 2}});
  return FiniteAlgebra("divisor_lattice(" + std::to_string(n) + ")", ds.size(), sig,
                       {binary_table(ds.size(), join), binary_table(ds.size(), meet)});
}

}  // namespace

FiniteAlgebra builtin_algebra(const std::string& kind,
                              const std::vector<std::uint64_t>& params) {
  if (kind == "zn_ring") {
    std::size_t n = the_param(params, kind);
    if (n < 1 || n > 256) throw ValidationError("zn_ring expects 1 <= n <= 256");
    Signature sig({{"+", 2}, {"*", 2}});
    return FiniteAlgebra("zn_ring(" + std::to_string(n) + ")", n, sig,
                         {binary_table(n, [n](auto a, auto b) { return (a + b) % n; }),
                          binary_table(n, [n](auto a, auto b) { return (a * b) % n; })});
  }
  if (kind == "zn_group") {
    std::size_t n = the_param(params, kind);
    if (n < 1 || n > 256) throw ValidationError("zn_group expects 1 <= n <= 256");
    Signature sig({{"*", 2}, {"e", 0}, {"inv", 1}});
    return FiniteAlgebra("zn_group(" + std::to_string(n) + ")", n, sig,
                         {binary_table(n, [n](auto a, auto b) { return (a + b) % n; }),
                          {0},
                          unary_table(n, [n](auto a) { return (n - a) % n; })});
  }
  if (kind == "sym_group") return make_sym_group(the_param(params, kind));
  if (kind == "left_zero_semigroup") {
    std::size_t n = the_param(params, kind);
    if (n < 1 || n > 256) throw ValidationError("left_zero_semigroup expects 1 <= n <= 256");
    Signature sig({{"*", 2}});
    return FiniteAlgebra("left_zero_semigroup(" + std::to_string(n) + ")", n, sig,
                         {binary_table(n, [](auto a, auto) { return a; })});
  }
  if (kind == "divisor_lattice") return make_divisor_lattice(the_param(params, kind));
  if (kind == "boolean_algebra") {
    std::size_t k = the_param(params, kind);
    if (k < 1 || k > 4) throw ValidationError("boolean_algebra expects 1 <= k <= 4");
    std::size_t n = std::size_t{1} << k;
    Elem top = static_cast<Elem>(n - 1);
    Signature sig({{"v", 2}, {"^", 2}, {"~", 1}, {"0", 0}, {"1", 0}});
    return FiniteAlgebra("boolean_algebra(" + std::to_string(k) + ")", n, sig,
                         {binary_table(n, [](auto a, auto b) { return a | b; }),
                          binary_table(n, [](auto a, auto b) { return a & b; }),
                          unary_table(n, [top](auto a) { return top & ~a; }),
                          {0},
                          {top}});
  }
  if (kind == "boolean_semimodule") {
    std::size_t k = the_param(params, kind);
    if (k < 1 || k > 4) throw ValidationError("boolean_semimodule expects 1 <= k <= 4");
    std::size_t n = std::size_t{1} << k;
    Signature sig({{"s0", 1}, {"s1", 1}, {"+", 2}});
    return FiniteAlgebra("boolean_semimodule(" + std::to_string(k) + ")", n, sig,
                         {unary_table(n, [](auto) { return 0; }),
                          unary_table(n, [](auto a) { return a; }),
                          binary_table(n, [](auto a, auto b) { return a | b; })});
  }
  if (kind == "random_magma") {
    if (params.size() != 2) throw ValidationError("random_magma expects parameters n,seed");
    std::size_t n = params[0];
    if (n < 1 || n > 16) throw ValidationError("random_magma expects 1 <= n <= 16");
    Lcg rng(params[1]);
    std::vector<Elem> t(n * n);
    for (Elem& e : t) e = static_cast<Elem>(rng.bounded(n));
    Signature sig({{"*", 2}});
    return FiniteAlgebra(
        "random_magma(" + std::to_string(n) + "," + std::to_string(params[1]) + ")", n,
        sig, {std::move(t)});
  }
  throw ValidationError("unknown builtin kind '" + kind + "'");
}

namespace {

using nlohmann::json;

void reject_unknown_fields(const json& obj, std::initializer_list<const char*> allowed,
                           const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) {
      if (it.key() == k) { ok = true; break; }
    }
    if (!ok) throw ValidationError("unknown field '" + it.key() + "' in " + where);
  }
}

std::size_t require_uint(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ValidationError("missing field '" + std::string(key) + "' in " + where);
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) {
    throw ValidationError("field '" + std::string(key) + "' in " + where +
                          " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ValidationError("missing field '" + std::string(key) + "' in " + where);
  const json& v = obj.at(key);
  if (!v.is_string()) {
    throw ValidationError("field '" + std::string(key) + "' in " + where + " must be a string");
  }
  return v.get<std::string>();
}

}  // namespace

std::string algebra_to_json(const FiniteAlgebra& alg) {
  json ops = json::array();
  for (std::size_t i = 0; i < alg.signature().size(); ++i) {
    const Symbol& s = alg.signature().at(i);
    ops.push_back({{"symbol", s.name}, {"arity", s.arity}, {"table", alg.table(i)}});
  }
  json doc = {{"name", alg.name()}, {"carrier", alg.carrier()}, {"operations", ops}};
  if (alg.choe_order()) doc["choe_order"] = alg.choe_order()->symbols;
  return doc.dump(2) + "\n";
}

FiniteAlgebra algebra_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports 1-based byte positions
    std::size_t off = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError("algebra file is not valid JSON: " + std::string(e.what()), off);
  }
  if (!doc.is_object()) throw ValidationError("algebra file must be a JSON object");
  reject_unknown_fields(doc, {"name", "carrier", "operations", "choe_order"}, "algebra");
  std::string name = require_string(doc, "name", "algebra");
  std::size_t carrier = require_uint(doc, "carrier", "algebra");
  if (!doc.contains("operations") || !doc.at("operations").is_array()) {
    throw ValidationError("algebra file needs an 'operations' array");
  }
  std::vector<Symbol> symbols;
  std::vector<std::vector<Elem>> tables;
  for (const json& op : doc.at("operations")) {
    if (!op.is_object()) throw ValidationError("each operation must be a JSON object");
    reject_unknown_fields(op, {"symbol", "arity", "table"}, "operation");
    Symbol s{require_string(op, "symbol", "operation"), require_uint(op, "arity", "operation")};
    if (!op.contains("table") || !op.at("table").is_array()) {
      throw ValidationError("operation '" + s.name + "' needs a 'table' array");
    }
    std::vector<Elem> table;
    for (const json& v : op.at("table")) {
      if (!v.is_number_unsigned()) {
        throw ValidationError("table for '" + s.name + "' must contain non-negative integers");
      }
      table.push_back(v.get<Elem>());
    }
    symbols.push_back(std::move(s));
    tables.push_back(std::move(table));
  }
  std::optional<ChoeOrder> order;
  if (doc.contains("choe_order")) {
    if (!doc.at("choe_order").is_array()) {
      throw ValidationError("'choe_order' must be an array of symbol names");
    }
    ChoeOrder o;
    for (const json& v : doc.at("choe_order")) {
      if (!v.is_string()) throw ValidationError("'choe_order' must contain symbol names");
      o.symbols.push_back(v.get<std::string>());
    }
    order = std::move(o);
  }
  return FiniteAlgebra(std::move(name), carrier, Signature(std::move(symbols)),
                       std::move(tables), std::move(order));
}

FiniteAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open algebra file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return algebra_from_json(buf.str());
}

}  // namespace affine
