#include "affine/cli.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "affine/algebra.hpp"
#include "affine/boundedness.hpp"
#include "affine/congruence.hpp"
#include "affine/free_magma.hpp"
#include "affine/translation.hpp"

#include "CLI11.hpp"
#include "json.hpp"

namespace affine::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kTextListCap = 50;

struct Outcome {
  bool ok = true;  // false = negative verdict, exit 1
  json payload;
  std::string text;
};

struct CommonFlags {
  bool json_mode = false;
  bool list_all = false;
  std::size_t budget = Limits{}.enumeration_budget;
};

struct SourceFlags {
  std::string algebra;
  std::string builtin;
};

std::vector<std::uint64_t> parse_builtin_params(const std::string& text) {
  std::vector<std::uint64_t> params;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string piece = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                    : comma - pos);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (ec != std::errc{} || ptr != piece.data() + piece.size()) {
      throw ValidationError("bad builtin parameter '" + piece + "'");
    }
    params.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return params;
}

FiniteAlgebra load_source(const SourceFlags& source, const std::string* stdin_text) {
  if (!source.algebra.empty() && !source.builtin.empty()) {
    throw ValidationError("give exactly one of --algebra and --builtin");
  }
  if (!source.algebra.empty()) {
    if (source.algebra == "-") {
      if (!stdin_text) throw ValidationError("--algebra - requires input on stdin");
      return algebra_from_json(*stdin_text);
    }
    return load_algebra_file(source.algebra);
  }
  if (!source.builtin.empty()) {
    std::size_t colon = source.builtin.find(':');
    std::string kind = source.builtin.substr(0, colon);
    std::vector<std::uint64_t> params;
    if (colon != std::string::npos) {
      params = parse_builtin_params(source.builtin.substr(colon + 1));
    }
    return builtin_algebra(kind, params);
  }
  throw ValidationError("an algebra source is required: --algebra or --builtin");
}

Limits limits_from(const CommonFlags& common) {
  Limits limits;
  limits.enumeration_budget = common.budget;
  return limits;
}

std::string format_image(const Image& img) {
  std::string out = "[";
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(img[i]);
  }
  out += ']';
  return out;
}

std::string format_blocks(const std::vector<std::vector<Elem>>& blocks) {
  std::string out;
  for (const std::vector<Elem>& block : blocks) {
    if (!out.empty()) out += ' ';
    out += '{';
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(block[i]);
    }
    out += '}';
  }
  return out;
}

json blocks_to_json(const std::vector<std::vector<Elem>>& blocks) {
  json out = json::array();
  for (const std::vector<Elem>& block : blocks) out.push_back(block);
  return out;
}

template <typename T, typename Line>
void render_capped(std::string& out, const std::vector<T>& items, bool list_all, Line line) {
  std::size_t limit = list_all ? items.size() : std::min(items.size(), kTextListCap);
  for (std::size_t i = 0; i < limit; ++i) out += line(items[i], i);
  if (limit < items.size()) {
    out += "  ... " + std::to_string(items.size() - limit) + " more (use --all)\n";
  }
}

std::string witness_text(const UnaryMap& map) {
  return map.witness ? format_term(map.witness->term()) : std::string("?");
}

std::string render_certificate(const BoundednessCertificate& cert, bool list_all) {
  std::string out = "witnesses: " + std::to_string(cert.witnesses.size()) + "\n";
  render_capped(out, cert.witnesses, list_all, [](const UnaryMap& w, std::size_t) {
    return "  " + format_image(w.image) + "  " + witness_text(w) + "\n";
  });
  return out;
}

std::string render_failure(const BoundednessFailure& failure, bool list_all) {
  std::string out = "missing maps: " + std::to_string(failure.missing.size()) + "\n";
  render_capped(out, failure.missing, list_all, [](const Image& img, std::size_t) {
    return "  " + format_image(img) + "\n";
  });
  return out;
}

Outcome run_info(const FiniteAlgebra& alg) {
  Outcome o;
  json symbols = json::array();
  std::string text = "name: " + alg.name() + "\ncarrier: " + std::to_string(alg.carrier()) +
                     "\nsymbols:\n";
  for (std::size_t s = 0; s < alg.signature().size(); ++s) {
    const Symbol& sym = alg.signature().at(s);
    symbols.push_back({{"name", sym.name}, {"arity", sym.arity}});
    text += "  " + sym.name + "  arity " + std::to_string(sym.arity) + "\n";
  }
  o.payload = {{"name", alg.name()}, {"carrier", alg.carrier()}, {"symbols", symbols}};
  o.text = text;
  return o;
}

Outcome run_monoid(const FiniteAlgebra& alg, const CommonFlags& common) {
  TranslationMonoid monoid = translation_monoid(alg, limits_from(common));
  Outcome o;
  json elements = json::array();
  for (std::size_t i = 0; i < monoid.elements.size(); ++i) {
    elements.push_back({{"map", monoid.elements[i].image},
                        {"depth", monoid.depths[i]},
                        {"term", witness_text(monoid.elements[i])}});
  }
  o.payload = {{"size", monoid.elements.size()},
               {"generator_count", monoid.generators.size()},
               {"max_depth", monoid.max_depth()},
               {"elements", elements}};
  o.text = "size: " + std::to_string(monoid.elements.size()) +
           "\ngenerators: " + std::to_string(monoid.generators.size()) +
           "\nmax depth: " + std::to_string(monoid.max_depth()) + "\nelements:\n";
  render_capped(o.text, monoid.elements, common.list_all, [&](const UnaryMap& m, std::size_t i) {
    return "  " + format_image(m.image) + "  depth " + std::to_string(monoid.depths[i]) + "  " +
           witness_text(m) + "\n";
  });
  return o;
}

Outcome run_congruences(const FiniteAlgebra& alg, const CommonFlags& common) {
  std::vector<Congruence> lattice = congruence_lattice(alg);
  Outcome o;
  json list = json::array();
  for (const Congruence& c : lattice) {
    list.push_back({{"blocks", blocks_to_json(c.partition.blocks())}});
  }
  o.payload = {{"count", lattice.size()}, {"congruences", list}};
  o.text = "count: " + std::to_string(lattice.size()) + "\n";
  render_capped(o.text, lattice, common.list_all, [](const Congruence& c, std::size_t i) {
    return "  " + std::to_string(i + 1) + ": " + format_blocks(c.partition.blocks()) + "\n";
  });
  return o;
}

Outcome run_quotient(const FiniteAlgebra& alg, const std::vector<Elem>& pair) {
  Congruence c = principal_congruence(alg, pair[0], pair[1]);
  FiniteAlgebra q = quotient(alg, c);
  Outcome o;
  o.payload = {{"pair", pair},
               {"blocks", blocks_to_json(c.partition.blocks())},
               {"quotient", json::parse(algebra_to_json(q))}};
  o.text = "congruence: " + format_blocks(c.partition.blocks()) + "\n" + algebra_to_json(q);
  return o;
}

Outcome run_simple(const FiniteAlgebra& alg) {
  bool simple = is_simple(alg);
  Outcome o;
  o.ok = simple;
  o.payload = {{"simple", simple}};
  o.text = simple ? "simple: yes\n" : "simple: no\n";
  return o;
}

Outcome run_bound(const FiniteAlgebra& alg, std::size_t m, const CommonFlags& common) {
  BoundOptions options;
  options.limits = limits_from(common);
  BoundednessResult result = check_bounded_by(alg, m, options);
  Outcome o;
  o.ok = bounded(result);
  o.payload = result_to_json(result);
  o.text = "bounded by " + std::to_string(m) + ": " + (o.ok ? "yes" : "no") + "\n";
  if (const auto* cert = std::get_if<BoundednessCertificate>(&result)) {
    o.text += render_certificate(*cert, common.list_all);
  } else {
    o.text += render_failure(std::get<BoundednessFailure>(result), common.list_all);
  }
  return o;
}

Outcome run_minimal_bound(const FiniteAlgebra& alg, const CommonFlags& common) {
  BoundOptions options;
  options.limits = limits_from(common);
  MinimalBound mb = minimal_bound(alg, options);
  Outcome o;
  o.payload = {{"m_min", mb.m_min}, {"certificate", certificate_to_json(mb.certificate)}};
  o.text = "minimal bound: " + std::to_string(mb.m_min) + "\n" +
           render_certificate(mb.certificate, common.list_all);
  return o;
}

Outcome run_choe(const FiniteAlgebra& alg, const std::vector<std::string>& order,
                 const CommonFlags& common) {
  std::size_t bound = choe_bound(alg, ChoeOrder{order});
  BoundOptions options;
  options.limits = limits_from(common);
  BoundednessResult result = check_bounded_by(alg, bound, options);
  Outcome o;
  o.ok = bounded(result);
  o.payload = {{"bound", bound}, {"result", result_to_json(result)}};
  o.text = "choe bound: " + std::to_string(bound) + "\nverified: " + (o.ok ? "yes" : "no") + "\n";
  if (const auto* cert = std::get_if<BoundednessCertificate>(&result)) {
    o.text += render_certificate(*cert, common.list_all);
  } else {
    o.text += render_failure(std::get<BoundednessFailure>(result), common.list_all);
  }
  return o;
}

Outcome run_verify_class(const FiniteAlgebra& alg, const std::string& class_name,
                         const CommonFlags& common) {
  std::optional<AlgebraClass> cls = algebra_class_from_name(class_name);
  if (!cls) throw ValidationError("unknown class '" + class_name + "'");
  BoundOptions options;
  options.limits = limits_from(common);
  ClassCheck check = verify_class_bound(alg, *cls, options);
  Outcome o;
  o.ok = check.ok();
  o.payload = {{"class", algebra_class_name(check.cls)},
               {"laws_ok", check.laws_ok},
               {"violations", check.violations},
               {"bound", check.bound},
               {"bounded", check.bounded},
               {"certificate",
                check.certificate ? certificate_to_json(*check.certificate) : json(nullptr)}};
  o.text = "class: " + algebra_class_name(check.cls) + "\nlaws: " +
           (check.laws_ok ? "ok" : "violated") + "\n";
  for (const std::string& v : check.violations) o.text += "  " + v + "\n";
  if (check.laws_ok) {
    o.text += "bound: " + std::to_string(check.bound) + "\nbounded: " +
              (check.bounded ? "yes" : "no") + "\n";
    if (check.certificate) o.text += render_certificate(*check.certificate, common.list_all);
  }
  return o;
}

Outcome run_oracle_compare(const FiniteAlgebra& alg, std::size_t max_height,
                           std::optional<std::size_t> max_arity, const CommonFlags& common) {
  Limits limits = limits_from(common);
  std::size_t arity = max_arity ? *max_arity : alg.signature().max_arity();
  TranslationMonoid monoid = translation_monoid(alg, limits);
  std::vector<UnaryMap> maps = brute_force_affine_maps(alg, max_height, arity, limits);
  bool contained = true;
  std::size_t height = 0;
  for (const UnaryMap& m : maps) {
    contained = contained && monoid.contains(m.image);
    if (m.witness) height = std::max(height, term_measures(m.witness->term()).height);
  }
  bool stabilized = contained && maps.size() == monoid.elements.size();
  Outcome o;
  o.ok = stabilized;
  o.payload = {{"monoid_size", monoid.elements.size()},
               {"enumerated", maps.size()},
               {"stabilized", stabilized},
               {"stabilization_height", stabilized ? json(height) : json(nullptr)}};
  o.text = "monoid size: " + std::to_string(monoid.elements.size()) +
           "\nenumerated maps: " + std::to_string(maps.size()) +
           "\nstabilized: " + (stabilized ? "yes" : "no") + "\n";
  if (stabilized) o.text += "stabilization height: " + std::to_string(height) + "\n";
  return o;
}

Outcome run_free_magma(std::size_t i_max, std::uint64_t seed) {
  FreeMagmaReport report = free_magma_witness(i_max, 2 * i_max, seed);
  Outcome o;
  o.ok = report.ok;
  json items = json::array();
  for (const FreeMagmaItem& item : report.items) {
    items.push_back({{"i", item.i},
                     {"value", item.value},
                     {"shorter_term_exists", item.shorter_term_exists},
                     {"matched_at_height", item.matched_at_height}});
    o.text += "i=" + std::to_string(item.i) + "  " + item.value + "  shorter term: " +
              (item.shorter_term_exists ? "yes" : "no") + "  matched at height: " +
              (item.matched_at_height ? "yes" : "no") + "\n";
  }
  o.payload = {{"i_max", report.i_max},
               {"const_size_cap", report.const_size_cap},
               {"depth_samples", report.depth_samples},
               {"depth_violations", report.depth_violations},
               {"ok", report.ok},
               {"items", items}};
  o.text += "depth samples: " + std::to_string(report.depth_samples) + ", violations: " +
            std::to_string(report.depth_violations) + "\nok: " + (report.ok ? "yes" : "no") + "\n";
  return o;
}

std::string report_string(const std::string& status, const std::string& verb,
                          const json& payload) {
  json report = {{"status", status}, {"verb", verb}, {"payload", payload}};
  return report.dump(2) + "\n";
}

void add_common(CLI::App* cmd, CommonFlags& common) {
  cmd->add_flag("--json", common.json_mode, "emit one JSON report on stdout");
  cmd->add_flag("--all", common.list_all, "list everything; default caps lists at 50");
  cmd->add_option("--budget", common.budget, "enumeration budget");
}

void add_source(CLI::App* cmd, SourceFlags& source) {
  cmd->add_option("--algebra", source.algebra, "algebra JSON file, or - for stdin");
  cmd->add_option("--builtin", source.builtin, "builtin algebra, e.g. zn_ring:6");
}

}  // namespace

RunResult run(const std::vector<std::string>& args, const std::string* stdin_text) {
  bool json_requested = std::find(args.begin(), args.end(), "--json") != args.end();

  CLI::App app{"affine boundedness toolkit for finite algebras", "affbound"};
  app.require_subcommand(1);
  CommonFlags common;
  SourceFlags source;
  add_common(&app, common);

  std::vector<Elem> pair;
  std::vector<std::string> order;
  std::string class_name;
  std::size_t m_value = 0;
  std::size_t max_height = 0;
  std::size_t max_arity_value = 0;
  std::size_t i_max = 5;
  std::uint64_t seed = 0;

  CLI::App* info = app.add_subcommand("info", "carrier and signature of an algebra");
  CLI::App* monoid = app.add_subcommand("monoid", "translation monoid with witnesses");
  CLI::App* congruences = app.add_subcommand("congruences", "the congruence lattice");
  CLI::App* quotient = app.add_subcommand("quotient", "quotient by a principal congruence");
  quotient->add_option("--pair", pair, "generating pair a,b")->required()->delimiter(',');
  CLI::App* simple = app.add_subcommand("simple", "whether the algebra is simple");
  CLI::App* bound = app.add_subcommand("bound", "check affine boundedness by m");
  CLI::Option* m_opt = bound->add_option("--m", m_value, "height and arity bound")->required();
  CLI::App* minimal = app.add_subcommand("minimal-bound", "least certified bound");
  CLI::App* choe = app.add_subcommand("choe", "distributive-chain bound, then verify it");
  choe->add_option("--order", order, "symbol order s1,s2,...")->required()->delimiter(',');
  CLI::App* verify_class = app.add_subcommand("verify-class", "class laws plus the class bound");
  verify_class
      ->add_option("--class", class_name,
                   "semigroup|group|ring|semiring|boolean|semimodule|unary")
      ->required();
  CLI::App* oracle = app.add_subcommand("oracle-compare",
                                        "brute-force maps against the translation monoid");
  oracle->add_option("--max-height", max_height, "term height cap")->required();
  CLI::Option* arity_opt =
      oracle->add_option("--max-arity", max_arity_value, "term arity cap; default signature max");
  CLI::App* free_magma = app.add_subcommand("free-magma", "free-magma unboundedness evidence");
  free_magma->add_option("--m", i_max, "witness sizes 1..m; default 5");
  free_magma->add_option("--seed", seed, "sampling seed")->required();

  for (CLI::App* cmd : {info, monoid, congruences, quotient, simple, bound, minimal, choe,
                        verify_class, oracle, free_magma}) {
    add_common(cmd, common);
  }
  for (CLI::App* cmd :
       {info, monoid, congruences, quotient, simple, bound, minimal, choe, verify_class, oracle}) {
    add_source(cmd, source);
  }

  RunResult result;
  try {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("affbound");
    for (const std::string& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    return result;
  } catch (const CLI::CallForAllHelp&) {
    result.out = app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = 2;
    result.err = std::string("error: ") + e.what() + "\n" + app.help();
    if (json_requested) {
      result.out = report_string("error", "", {{"message", e.what()}});
    }
    return result;
  }

  CLI::App* selected = app.get_subcommands().front();
  const std::string verb = selected->get_name();
  try {
    Outcome outcome;
    if (selected == info) {
      outcome = run_info(load_source(source, stdin_text));
    } else if (selected == monoid) {
      outcome = run_monoid(load_source(source, stdin_text), common);
    } else if (selected == congruences) {
      outcome = run_congruences(load_source(source, stdin_text), common);
    } else if (selected == quotient) {
      FiniteAlgebra alg = load_source(source, stdin_text);
      if (pair.size() != 2) throw ValidationError("--pair takes exactly two elements");
      outcome = run_quotient(alg, pair);
    } else if (selected == simple) {
      outcome = run_simple(load_source(source, stdin_text));
    } else if (selected == bound) {
      (void)m_opt;
      outcome = run_bound(load_source(source, stdin_text), m_value, common);
    } else if (selected == minimal) {
      outcome = run_minimal_bound(load_source(source, stdin_text), common);
    } else if (selected == choe) {
      outcome = run_choe(load_source(source, stdin_text), order, common);
    } else if (selected == verify_class) {
      outcome = run_verify_class(load_source(source, stdin_text), class_name, common);
    } else if (selected == oracle) {
      std::optional<std::size_t> arity;
      if (arity_opt->count() > 0) arity = max_arity_value;
      outcome = run_oracle_compare(load_source(source, stdin_text), max_height, arity, common);
    } else {
      outcome = run_free_magma(i_max, seed);
    }
    result.exit_code = outcome.ok ? 0 : 1;
    if (common.json_mode) {
      result.out = report_string(outcome.ok ? "ok" : "fail", verb, outcome.payload);
    } else {
      result.out = outcome.text;
    }
  } catch (const Error& e) {
    result.exit_code = 2;
    result.err = std::string("error: ") + e.what() + "\n";
    if (common.json_mode || json_requested) {
      result.out = report_string("error", verb, {{"message", e.what()}});
    }
  }
  return result;
}

}  // namespace affine::cli
