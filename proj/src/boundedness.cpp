#include "affine/boundedness.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace affine {

BoundednessResult check_bounded_by(const FiniteAlgebra& alg, std::size_t m,
                                   const BoundOptions& options) {
  return check_bounded_by(alg, translation_monoid(alg, options.limits), m, options);
}

BoundednessResult check_bounded_by(const FiniteAlgebra& alg, const TranslationMonoid& monoid,
                                   std::size_t m, const BoundOptions& options) {
  std::size_t arity_cap =
      options.height_only ? alg.signature().max_arity() : std::min(m, kMaxArity);
  std::vector<UnaryMap> reached = brute_force_affine_maps(alg, m, arity_cap, options.limits);
  std::unordered_map<Image, const UnaryMap*, ImageHash> by_image;
  for (const UnaryMap& u : reached) {
    if (!monoid.contains(u.image)) {
      // Every proper-term map is a composite of translations, hence in M(A).
      throw Error("enumerated map escapes the translation monoid");
    }
    by_image.emplace(u.image, &u);
  }
  BoundednessCertificate cert{m, {}};
  BoundednessFailure failure{m, {}};
  for (const UnaryMap& elem : monoid.elements) {
    auto it = by_image.find(elem.image);
    if (it == by_image.end()) {
      failure.missing.push_back(elem.image);
    } else {
      cert.witnesses.push_back(*it->second);
    }
  }
  if (!failure.missing.empty()) return failure;
  return cert;
}

MinimalBound minimal_bound(const FiniteAlgebra& alg, const BoundOptions& options) {
  TranslationMonoid monoid = translation_monoid(alg, options.limits);
  std::size_t ceiling = std::max(monoid.max_depth(), alg.signature().max_arity());
  for (std::size_t m = 0; m <= ceiling; ++m) {
    BoundednessResult r = check_bounded_by(alg, monoid, m, options);
    if (bounded(r)) return MinimalBound{m, std::get<BoundednessCertificate>(std::move(r))};
  }
  throw Error("search ceiling failed to certify");
}

std::size_t choe_bound(const FiniteAlgebra& alg, const ChoeOrder& order) {
  ChoeCheck laws = check_choe_distributive(alg, order, /*require_associativity=*/true);
  if (!laws.ok) {
    std::string msg = "bound formula preconditions fail:";
    for (const std::string& v : laws.violations) msg += "\n  " + v;
    throw ValidationError(msg);
  }
  std::size_t wide = 0;
  std::size_t unary_total = 0;
  std::size_t unary_count = 0;
  for (std::size_t s = 0; s < alg.signature().size(); ++s) {
    std::size_t ar = alg.signature().at(s).arity;
    if (ar >= 2) ++wide;
    if (ar == 1) {
      unary_total += unary_monoid_info(alg, alg.signature().at(s).name).size;
      ++unary_count;
    }
  }
  return 2 * wide + unary_total - unary_count;
}

DecompositionCheck commuting_decomposition_check(const FiniteAlgebra& alg,
                                                 const std::vector<std::string>& part1,
                                                 const std::vector<std::string>& part2) {
  std::vector<std::string> all;
  all.insert(all.end(), part1.begin(), part1.end());
  all.insert(all.end(), part2.begin(), part2.end());
  std::vector<char> covered(alg.signature().size(), 0);
  for (const std::string& name : all) {
    std::size_t idx = alg.signature().index_of(name);
    if (alg.signature().at(idx).arity < 1) {
      throw ValidationError("'" + name + "' is nullary; the parts list arity >= 1 symbols");
    }
    if (covered[idx]) throw ValidationError("'" + name + "' appears in both parts");
    covered[idx] = 1;
  }
  for (std::size_t s = 0; s < alg.signature().size(); ++s) {
    if (alg.signature().at(s).arity >= 1 && !covered[s]) {
      throw ValidationError("'" + alg.signature().at(s).name +
                            "' belongs to neither part; the parts must cover the arity >= 1 "
                            "symbols");
    }
  }
  TranslationMonoid whole = translation_monoid(alg);
  TranslationMonoid left = translation_monoid(reduct(alg, part1));
  TranslationMonoid right = translation_monoid(reduct(alg, part2));
  std::unordered_set<Image, ImageHash> composites;
  for (const UnaryMap& f : left.elements) {
    for (const UnaryMap& g : right.elements) {
      composites.insert(compose(f.image, g.image));
    }
  }
  DecompositionCheck result;
  result.monoid_size = whole.elements.size();
  result.composite_count = composites.size();
  result.ok = true;
  for (const UnaryMap& elem : whole.elements) {
    if (!composites.count(elem.image)) {
      result.ok = false;
      result.missing = elem.image;
      break;
    }
  }
  // Composites are monoid elements by closure, so equal coverage means equal
  // sets even without the reverse scan.
  return result;
}

std::optional<AlgebraClass> algebra_class_from_name(const std::string& name) {
  if (name == "semigroup") return AlgebraClass::Semigroup;
  if (name == "group") return AlgebraClass::Group;
  if (name == "ring") return AlgebraClass::Ring;
  if (name == "semiring") return AlgebraClass::Semiring;
  if (name == "boolean") return AlgebraClass::Boolean;
  if (name == "semimodule") return AlgebraClass::Semimodule;
  if (name == "unary") return AlgebraClass::Unary;
  return std::nullopt;
}

std::string algebra_class_name(AlgebraClass cls) {
  switch (cls) {
    case AlgebraClass::Semigroup: return "semigroup";
    case AlgebraClass::Group: return "group";
    case AlgebraClass::Ring: return "ring";
    case AlgebraClass::Semiring: return "semiring";
    case AlgebraClass::Boolean: return "boolean";
    case AlgebraClass::Semimodule: return "semimodule";
    case AlgebraClass::Unary: return "unary";
  }
  return "unknown";
}

namespace {

struct LawSink {
  const FiniteAlgebra& alg;
  std::vector<std::string>& violations;

  void require(bool ok, const std::string& what) {
    if (!ok) violations.push_back(what);
  }

  Elem op2(std::size_t sym, Elem a, Elem b) {
    Elem args[2] = {a, b};
    return alg.apply(sym, args);
  }
  Elem op1(std::size_t sym, Elem a) {
    Elem args[1] = {a};
    return alg.apply(sym, args);
  }
  Elem op0(std::size_t sym) { return alg.apply(sym, {}); }

  std::string sym_name(std::size_t sym) { return alg.signature().at(sym).name; }

  void check_assoc(std::size_t sym) {
    AssociativityCheck a = check_associative(alg, sym_name(sym));
    if (!a) {
      std::ostringstream os;
      os << "'" << sym_name(sym) << "' is not associative at (";
      for (std::size_t i = 0; i < a.witness.size(); ++i) os << (i ? "," : "") << a.witness[i];
      os << ")";
      violations.push_back(os.str());
    }
  }

  void check_comm(std::size_t sym) {
    for (Elem a = 0; a < alg.carrier(); ++a) {
      for (Elem b = a + 1; b < alg.carrier(); ++b) {
        if (op2(sym, a, b) != op2(sym, b, a)) {
          violations.push_back("'" + sym_name(sym) + "' is not commutative at (" +
                               std::to_string(a) + "," + std::to_string(b) + ")");
          return;
        }
      }
    }
  }

  void check_distrib(std::size_t outer, std::size_t inner) {
    DistributivityCheck d = check_distributes(alg, sym_name(outer), sym_name(inner));
    if (!d) {
      violations.push_back("'" + sym_name(outer) + "' does not distribute over '" +
                           sym_name(inner) + "'");
    }
  }

  void check_identity(std::size_t prod, std::size_t unit) {
    Elem e = op0(unit);
    for (Elem a = 0; a < alg.carrier(); ++a) {
      if (op2(prod, a, e) != a || op2(prod, e, a) != a) {
        violations.push_back("'" + sym_name(unit) + "' is not a two-sided identity for '" +
                             sym_name(prod) + "' at " + std::to_string(a));
        return;
      }
    }
  }

  void check_inverse(std::size_t prod, std::size_t unit, std::size_t inv) {
    Elem e = op0(unit);
    for (Elem a = 0; a < alg.carrier(); ++a) {
      if (op2(prod, a, op1(inv, a)) != e || op2(prod, op1(inv, a), a) != e) {
        violations.push_back("'" + sym_name(inv) + "' is not an inverse for '" + sym_name(prod) +
                             "' at " + std::to_string(a));
        return;
      }
    }
  }

  void check_absorption(std::size_t join, std::size_t meet) {
    for (Elem a = 0; a < alg.carrier(); ++a) {
      for (Elem b = 0; b < alg.carrier(); ++b) {
        if (op2(join, a, op2(meet, a, b)) != a || op2(meet, a, op2(join, a, b)) != a) {
          violations.push_back("absorption fails between '" + sym_name(join) + "' and '" +
                               sym_name(meet) + "' at (" + std::to_string(a) + "," +
                               std::to_string(b) + ")");
          return;
        }
      }
    }
  }

  void check_complement(std::size_t join, std::size_t meet, std::size_t neg, std::size_t bot,
                        std::size_t top) {
    Elem zero = op0(bot);
    Elem one = op0(top);
    for (Elem a = 0; a < alg.carrier(); ++a) {
      if (op2(join, a, op1(neg, a)) != one || op2(meet, a, op1(neg, a)) != zero) {
        violations.push_back("'" + sym_name(neg) + "' is not a complement at " +
                             std::to_string(a));
        return;
      }
      if (op2(join, a, zero) != a || op2(meet, a, one) != a) {
        violations.push_back("bounds are not neutral at " + std::to_string(a));
        return;
      }
    }
  }
};

std::vector<std::size_t> symbols_of_arity(const FiniteAlgebra& alg, std::size_t ar) {
  return alg.signature().symbols_of_arity(ar);
}

bool shape_is(const FiniteAlgebra& alg, std::size_t nullary, std::size_t unary,
              std::size_t binary, std::vector<std::string>& violations) {
  bool ok = symbols_of_arity(alg, 0).size() == nullary &&
            symbols_of_arity(alg, 1).size() == unary &&
            symbols_of_arity(alg, 2).size() == binary &&
            alg.signature().size() == nullary + unary + binary;
  if (!ok) {
    std::ostringstream os;
    os << "signature shape is not (" << nullary << " nullary, " << unary << " unary, " << binary
       << " binary)";
    violations.push_back(os.str());
  }
  return ok;
}

// Semiring laws for a fixed (plus, times) assignment, into a fresh sink.
std::vector<std::string> semiring_violations(const FiniteAlgebra& alg, std::size_t plus,
                                             std::size_t times) {
  std::vector<std::string> violations;
  LawSink sink{alg, violations};
  sink.check_assoc(plus);
  sink.check_comm(plus);
  sink.check_assoc(times);
  sink.check_distrib(times, plus);
  return violations;
}

std::vector<std::string> boolean_violations(const FiniteAlgebra& alg, std::size_t join,
                                            std::size_t meet, std::size_t neg, std::size_t bot,
                                            std::size_t top) {
  std::vector<std::string> violations;
  LawSink sink{alg, violations};
  sink.check_assoc(join);
  sink.check_comm(join);
  sink.check_assoc(meet);
  sink.check_comm(meet);
  sink.check_absorption(join, meet);
  sink.check_distrib(meet, join);
  sink.check_distrib(join, meet);
  sink.check_complement(join, meet, neg, bot, top);
  return violations;
}

}  // namespace

ClassCheck verify_class_bound(const FiniteAlgebra& alg, AlgebraClass cls,
                              const BoundOptions& options) {
  ClassCheck result;
  result.cls = cls;
  std::optional<std::size_t> bound;
  switch (cls) {
    case AlgebraClass::Semigroup: {
      if (shape_is(alg, 0, 0, 1, result.violations)) {
        LawSink sink{alg, result.violations};
        sink.check_assoc(symbols_of_arity(alg, 2)[0]);
      }
      bound = 2;
      break;
    }
    case AlgebraClass::Group: {
      if (shape_is(alg, 1, 1, 1, result.violations)) {
        LawSink sink{alg, result.violations};
        std::size_t prod = symbols_of_arity(alg, 2)[0];
        std::size_t unit = symbols_of_arity(alg, 0)[0];
        std::size_t inv = symbols_of_arity(alg, 1)[0];
        sink.check_assoc(prod);
        sink.check_identity(prod, unit);
        sink.check_inverse(prod, unit, inv);
      }
      bound = 3;
      break;
    }
    case AlgebraClass::Ring:
    case AlgebraClass::Semiring: {
      if (shape_is(alg, 0, 0, 2, result.violations)) {
        std::vector<std::size_t> bins = symbols_of_arity(alg, 2);
        // Either symbol may be the addition; accept whichever assignment
        // satisfies the laws.
        std::vector<std::string> forward = semiring_violations(alg, bins[0], bins[1]);
        if (!forward.empty()) {
          std::vector<std::string> backward = semiring_violations(alg, bins[1], bins[0]);
          if (!backward.empty()) {
            result.violations.insert(result.violations.end(), forward.begin(), forward.end());
          }
        }
      }
      bound = 3;
      break;
    }
    case AlgebraClass::Boolean: {
      if (shape_is(alg, 2, 1, 2, result.violations)) {
        std::vector<std::size_t> bins = symbols_of_arity(alg, 2);
        std::vector<std::size_t> nils = symbols_of_arity(alg, 0);
        std::size_t neg = symbols_of_arity(alg, 1)[0];
        bool any = false;
        std::vector<std::string> first;
        for (int swap_bin = 0; swap_bin < 2 && !any; ++swap_bin) {
          for (int swap_nil = 0; swap_nil < 2 && !any; ++swap_nil) {
            std::vector<std::string> v =
                boolean_violations(alg, bins[swap_bin], bins[1 - swap_bin], neg, nils[swap_nil],
                                   nils[1 - swap_nil]);
            if (v.empty()) any = true;
            if (first.empty()) first = std::move(v);
          }
        }
        if (!any) result.violations.insert(result.violations.end(), first.begin(), first.end());
      }
      bound = 3;
      break;
    }
    case AlgebraClass::Semimodule: {
      std::vector<std::size_t> bins = symbols_of_arity(alg, 2);
      std::vector<std::size_t> uns = symbols_of_arity(alg, 1);
      if (bins.size() != 1 || uns.empty() || !symbols_of_arity(alg, 0).empty() ||
          alg.signature().size() != 1 + uns.size()) {
        result.violations.push_back("signature shape is not (one binary, some unary)");
      } else {
        LawSink sink{alg, result.violations};
        std::size_t plus = bins[0];
        sink.check_assoc(plus);
        sink.check_comm(plus);
        for (std::size_t u : uns) {
          DistributivityCheck d = check_distributes(alg, alg.signature().at(u).name,
                                                    alg.signature().at(plus).name);
          // Scalings must act on every argument of a sum, the full form.
          sink.require(bool(d), "'" + alg.signature().at(u).name + "' does not distribute over '" +
                                    alg.signature().at(plus).name + "'");
        }
        // Scalings must be closed under composition, so every chain of them
        // collapses to height 1.
        std::vector<Image> scalings;
        for (std::size_t u : uns) {
          Image img(alg.carrier());
          for (Elem z = 0; z < alg.carrier(); ++z) img[z] = sink.op1(u, z);
          scalings.push_back(std::move(img));
        }
        for (std::size_t i = 0; i < scalings.size(); ++i) {
          for (std::size_t j = 0; j < scalings.size(); ++j) {
            Image comp = compose(scalings[i], scalings[j]);
            if (std::find(scalings.begin(), scalings.end(), comp) == scalings.end()) {
              sink.require(false, "scalings are not closed under composition ('" +
                                      alg.signature().at(uns[i]).name + "' after '" +
                                      alg.signature().at(uns[j]).name + "')");
            }
          }
        }
      }
      bound = 2;
      break;
    }
    case AlgebraClass::Unary: {
      bool all_small = true;
      for (std::size_t s = 0; s < alg.signature().size(); ++s) {
        all_small = all_small && alg.signature().at(s).arity <= 1;
      }
      if (!all_small || symbols_of_arity(alg, 1).empty()) {
        result.violations.push_back("signature is not purely unary");
      }
      break;
    }
  }
  result.laws_ok = result.violations.empty();
  if (!result.laws_ok) return result;

  TranslationMonoid monoid = translation_monoid(alg, options.limits);
  if (cls == AlgebraClass::Unary) bound = monoid.elements.size() - 1;
  result.bound = *bound;
  BoundednessResult r = check_bounded_by(alg, monoid, result.bound, options);
  result.bounded = affine::bounded(r);
  if (result.bounded) result.certificate = std::get<BoundednessCertificate>(std::move(r));
  return result;
}

nlohmann::json certificate_to_json(const BoundednessCertificate& cert) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const UnaryMap& w : cert.witnesses) {
    witnesses.push_back({{"map", w.image}, {"term", format_term(w.witness->term())}});
  }
  return {{"m", cert.m}, {"witnesses", std::move(witnesses)}};
}

nlohmann::json failure_to_json(const BoundednessFailure& failure) {
  nlohmann::json missing = nlohmann::json::array();
  for (const Image& img : failure.missing) missing.push_back(img);
  return {{"m", failure.m}, {"missing", std::move(missing)}};
}

nlohmann::json result_to_json(const BoundednessResult& result) {
  if (const auto* cert = std::get_if<BoundednessCertificate>(&result)) {
    return certificate_to_json(*cert);
  }
  return failure_to_json(std::get<BoundednessFailure>(result));
}

}  // namespace affine
