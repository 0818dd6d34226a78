#include "affine/laws.hpp"

#include <algorithm>
#include <sstream>

namespace affine {

namespace {

// Odometer over {0..carrier-1}^k in lexicographic order.
bool advance(std::vector<Elem>& tuple, std::size_t carrier) {
  for (std::size_t i = tuple.size(); i-- > 0;) {
    if (++tuple[i] < carrier) return true;
    tuple[i] = 0;
  }
  return false;
}

std::vector<Elem> unary_image(const FiniteAlgebra& alg, std::size_t sym) {
  std::vector<Elem> img(alg.carrier());
  for (Elem z = 0; z < alg.carrier(); ++z) {
    Elem a[1] = {z};
    img[z] = alg.apply(sym, a);
  }
  return img;
}

}  // namespace

UnaryMonoidInfo unary_monoid_info(const FiniteAlgebra& alg, const std::string& sym) {
  std::size_t idx = alg.signature().index_of(sym);
  if (alg.signature().at(idx).arity != 1) {
    throw ValidationError("'" + sym + "' is not unary");
  }
  std::vector<Elem> f = unary_image(alg, idx);
  std::vector<Elem> cur(alg.carrier());
  for (Elem z = 0; z < alg.carrier(); ++z) cur[z] = z;
  std::vector<std::vector<Elem>> powers;  // id, f, f^2, ...
  for (;;) {
    auto it = std::find(powers.begin(), powers.end(), cur);
    if (it != powers.end()) {
      std::size_t index = static_cast<std::size_t>(it - powers.begin());
      return {powers.size(), index, powers.size() - index};
    }
    powers.push_back(cur);
    std::vector<Elem> next(alg.carrier());
    for (Elem z = 0; z < alg.carrier(); ++z) next[z] = f[cur[z]];
    cur = std::move(next);
  }
}

AssociativityCheck check_associative(const FiniteAlgebra& alg, const std::string& sym) {
  std::size_t idx = alg.signature().index_of(sym);
  std::size_t n = alg.signature().at(idx).arity;
  if (n == 0) throw ValidationError("'" + sym + "' is nullary");
  if (n == 1) {
    UnaryMonoidInfo info = unary_monoid_info(alg, sym);
    AssociativityCheck r;
    r.ok = true;
    r.monoid_index = info.index;
    r.monoid_period = info.period;
    r.monoid_size = info.size;
    return r;
  }
  // Compare nesting the inner application at slot k against slot k+1, for
  // every (2n-1)-tuple of arguments.
  std::vector<Elem> tuple(2 * n - 1, 0);
  std::vector<Elem> args(n);
  auto nested = [&](std::size_t k) {
    std::vector<Elem> inner(tuple.begin() + static_cast<std::ptrdiff_t>(k),
                            tuple.begin() + static_cast<std::ptrdiff_t>(k + n));
    Elem mid = alg.apply(idx, inner);
    // outer args are the tuple entries outside [k, k+n), in order
    std::size_t src = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) {
        args[i] = mid;
      } else {
        if (src == k) src = k + n;
        args[i] = tuple[src++];
      }
    }
    return alg.apply(idx, args);
  };
  do {
    Elem prev = nested(0);
    for (std::size_t k = 1; k < n; ++k) {
      Elem cur = nested(k);
      if (cur != prev) {
        AssociativityCheck r;
        r.ok = false;
        r.witness = tuple;
        r.equation = k - 1;
        return r;
      }
      prev = cur;
    }
  } while (advance(tuple, alg.carrier()));
  AssociativityCheck r;
  r.ok = true;
  return r;
}

namespace {

// One candidate law: g applied around f's output at `slot`, with g's other
// arguments fixed. slot 0 with unary g means the full form.
bool holds_everywhere(const FiniteAlgebra& alg, std::size_t g, std::size_t f,
                      std::size_t slot, bool full_form, std::vector<Elem>& outer_out,
                      std::vector<Elem>& inner_out) {
  std::size_t m = alg.signature().at(g).arity;
  std::size_t n = alg.signature().at(f).arity;
  std::size_t carrier = alg.carrier();
  std::vector<Elem> outer(m > 0 ? m - 1 : 0, 0);
  std::vector<Elem> inner(n, 0);
  std::vector<Elem> gargs(m);
  std::vector<Elem> fargs(n);
  auto lhs = [&]() {
    Elem fv = alg.apply(f, inner);
    for (std::size_t i = 0, src = 0; i < m; ++i) {
      gargs[i] = (i + 1 == slot) ? fv : outer[src++];
    }
    return alg.apply(g, gargs);
  };
  auto rhs = [&]() {
    for (std::size_t j = 0; j < n; ++j) {
      if (full_form) {
        Elem one[1] = {inner[j]};
        fargs[j] = alg.apply(g, one);
      } else {
        for (std::size_t i = 0, src = 0; i < m; ++i) {
          gargs[i] = (i + 1 == slot) ? inner[j] : outer[src++];
        }
        fargs[j] = alg.apply(g, gargs);
      }
    }
    return alg.apply(f, fargs);
  };
  for (;;) {
    for (;;) {
      if (lhs() != rhs()) {
        outer_out = outer;
        inner_out = inner;
        return false;
      }
      if (inner.empty() || !advance(inner, carrier)) break;
    }
    std::fill(inner.begin(), inner.end(), 0);
    if (outer.empty() || !advance(outer, carrier)) break;
  }
  return true;
}

// Full unary form: g(f(a...)) = f(g(a_1)..g(a_n)).
bool unary_full_form(const FiniteAlgebra& alg, std::size_t g, std::size_t f,
                     std::vector<Elem>& inner_out) {
  std::size_t n = alg.signature().at(f).arity;
  std::vector<Elem> inner(n, 0);
  std::vector<Elem> fargs(n);
  do {
    Elem fv = alg.apply(f, inner);
    Elem l[1] = {fv};
    Elem lhs = alg.apply(g, l);
    for (std::size_t j = 0; j < n; ++j) {
      Elem one[1] = {inner[j]};
      fargs[j] = alg.apply(g, one);
    }
    if (lhs != alg.apply(f, fargs)) {
      inner_out = inner;
      return false;
    }
  } while (advance(inner, alg.carrier()));
  return true;
}

}  // namespace

DistributivityCheck check_distributes(const FiniteAlgebra& alg, const std::string& g,
                                      const std::string& f) {
  std::size_t gi = alg.signature().index_of(g);
  std::size_t fi = alg.signature().index_of(f);
  std::size_t m = alg.signature().at(gi).arity;
  std::size_t n = alg.signature().at(fi).arity;
  if (m == 0 || n == 0) throw ValidationError("distributivity needs arity >= 1 on both sides");
  DistributivityCheck r;
  if (m == 1) {
    // Disjunction: the full form or any one single-slot form.
    if (unary_full_form(alg, gi, fi, r.inner)) {
      r.ok = true;
      return r;
    }
    r.slot = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      std::vector<Elem> outer, inner;
      // single-slot form for unary g: g(f(a...)) = f(a_1.. g(a_k) ..a_n)
      std::vector<Elem> tuple(n, 0);
      bool all = true;
      std::vector<Elem> fargs(n);
      do {
        Elem fv = alg.apply(fi, tuple);
        Elem one[1] = {fv};
        Elem lhs = alg.apply(gi, one);
        for (std::size_t j = 0; j < n; ++j) {
          if (j + 1 == k) {
            Elem o[1] = {tuple[j]};
            fargs[j] = alg.apply(gi, o);
          } else {
            fargs[j] = tuple[j];
          }
        }
        if (lhs != alg.apply(fi, fargs)) {
          all = false;
          r.slot = k;
          r.inner = tuple;
          break;
        }
      } while (advance(tuple, alg.carrier()));
      if (all) {
        r.ok = true;
        return r;
      }
    }
    r.ok = false;
    return r;
  }
  // Conjunction over every slot of g.
  for (std::size_t k = 1; k <= m; ++k) {
    if (!holds_everywhere(alg, gi, fi, k, false, r.outer, r.inner)) {
      r.ok = false;
      r.slot = k;
      return r;
    }
  }
  r.ok = true;
  return r;
}

ChoeCheck check_choe_distributive(const FiniteAlgebra& alg, const ChoeOrder& order,
                                  bool require_associativity) {
  validate_choe_order(alg, order);
  ChoeCheck result;
  auto name_of = [&](std::size_t i) { return alg.signature().at(i).name; };
  // (1) later symbols distribute over earlier ones
  for (std::size_t i = 0; i < order.symbols.size(); ++i) {
    for (std::size_t j = i + 1; j < order.symbols.size(); ++j) {
      DistributivityCheck d = check_distributes(alg, order.symbols[j], order.symbols[i]);
      if (!d) {
        std::ostringstream os;
        os << "'" << order.symbols[j] << "' does not distribute over '" << order.symbols[i]
           << "' (slot " << d.slot << ")";
        result.violations.push_back(os.str());
      }
    }
  }
  // (2) unary symbols distribute over everything of arity >= 1
  for (std::size_t u : alg.signature().symbols_of_arity(1)) {
    for (std::size_t i = 0; i < alg.signature().size(); ++i) {
      if (alg.signature().at(i).arity < 1) continue;
      DistributivityCheck d = check_distributes(alg, name_of(u), name_of(i));
      if (!d) {
        result.violations.push_back("unary '" + name_of(u) + "' does not distribute over '" +
                                    name_of(i) + "'");
      }
    }
  }
  if (require_associativity) {
    for (std::size_t i = 0; i < alg.signature().size(); ++i) {
      if (alg.signature().at(i).arity < 1) continue;
      AssociativityCheck a = check_associative(alg, name_of(i));
      if (!a) {
        std::ostringstream os;
        os << "'" << name_of(i) << "' is not associative (witness";
        for (Elem e : a.witness) os << ' ' << e;
        os << ")";
        result.violations.push_back(os.str());
      }
    }
  }
  result.ok = result.violations.empty();
  return result;
}

}  // namespace affine
