#include "affine/term.hpp"

#include <algorithm>
#include <sstream>

namespace affine {

TermPtr variable() {
  static const TermPtr x = std::make_shared<Term>(Term{TermKind::Variable, 0, {}, {}});
  return x;
}

TermPtr constant(Elem k) {
  return std::make_shared<Term>(Term{TermKind::Constant, k, {}, {}});
}

TermPtr apply(Symbol symbol, std::vector<TermPtr> children) {
  if (children.size() != symbol.arity) {
    throw ValidationError("'" + symbol.name + "' expects " + std::to_string(symbol.arity) +
                          " children, got " + std::to_string(children.size()));
  }
  for (const TermPtr& c : children) {
    if (!c) throw ValidationError("null child term");
  }
  return std::make_shared<Term>(Term{TermKind::Apply, 0, std::move(symbol), std::move(children)});
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Variable:
      return true;
    case TermKind::Constant:
      return a->constant == b->constant;
    case TermKind::Apply:
      if (!(a->symbol == b->symbol)) return false;
      for (std::size_t i = 0; i < a->children.size(); ++i) {
        if (!term_equal(a->children[i], b->children[i])) return false;
      }
      return true;
  }
  return false;
}

namespace {

void format_into(const TermPtr& t, std::string& out) {
  switch (t->kind) {
    case TermKind::Variable:
      out += 'x';
      return;
    case TermKind::Constant:
      out += '#';
      out += std::to_string(t->constant);
      return;
    case TermKind::Apply:
      if (t->children.empty()) {
        out += t->symbol.name;
        return;
      }
      out += '(';
      out += t->symbol.name;
      for (const TermPtr& c : t->children) {
        out += ' ';
        format_into(c, out);
      }
      out += ')';
      return;
  }
}

struct Parser {
  std::string_view src;
  std::size_t pos = 0;
  const Signature& sig;
  std::size_t carrier_size;

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, at);
  }

  void skip_ws() {
    while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t' || src[pos] == '\n' ||
                                src[pos] == '\r')) {
      ++pos;
    }
  }

  static bool token_char(char c) {
    return c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '(' && c != ')';
  }

  std::string_view read_token() {
    std::size_t start = pos;
    while (pos < src.size() && token_char(src[pos])) ++pos;
    if (pos == start) fail("expected a token", start);
    return src.substr(start, pos - start);
  }

  TermPtr parse_constant(std::string_view tok, std::size_t at) {
    if (tok.size() == 1) fail("expected digits after '#'", at);
    std::size_t value = 0;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      char c = tok[i];
      if (c < '0' || c > '9') fail("malformed constant", at);
      value = value * 10 + static_cast<std::size_t>(c - '0');
      if (value >= (std::size_t{1} << 32)) fail("constant out of range", at);
    }
    if (value >= carrier_size) {
      fail("constant #" + std::to_string(value) + " exceeds carrier size " +
               std::to_string(carrier_size),
           at);
    }
    return constant(value);
  }

  const Symbol& lookup(std::string_view tok, std::size_t at) {
    auto idx = sig.find(std::string(tok));
    if (!idx) fail("unknown symbol '" + std::string(tok) + "'", at);
    return sig.at(*idx);
  }

  TermPtr parse_term() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input", pos);
    if (src[pos] == ')') fail("unexpected ')'", pos);
    if (src[pos] == '(') {
      std::size_t open = pos;
      ++pos;
      skip_ws();
      if (pos >= src.size()) fail("unexpected end of input after '('", pos);
      if (src[pos] == '(' || src[pos] == ')') fail("expected a symbol after '('", pos);
      std::size_t sym_at = pos;
      std::string_view tok = read_token();
      if (tok[0] == '#') fail("a constant cannot head an application", sym_at);
      if (tok == "x") fail("the variable cannot head an application", sym_at);
      const Symbol& sym = lookup(tok, sym_at);
      std::vector<TermPtr> children;
      for (;;) {
        skip_ws();
        if (pos >= src.size()) fail("missing ')'", open);
        if (src[pos] == ')') {
          ++pos;
          break;
        }
        children.push_back(parse_term());
      }
      if (children.size() != sym.arity) {
        fail("'" + sym.name + "' expects " + std::to_string(sym.arity) + " arguments, got " +
                 std::to_string(children.size()),
             sym_at);
      }
      return apply(sym, std::move(children));
    }
    std::size_t at = pos;
    std::string_view tok = read_token();
    if (tok == "x") return variable();
    if (tok[0] == '#') return parse_constant(tok, at);
    const Symbol& sym = lookup(tok, at);
    if (sym.arity != 0) {
      fail("'" + sym.name + "' expects " + std::to_string(sym.arity) +
               " arguments, got 0 (bare symbols are nullary)",
           at);
    }
    return apply(sym, {});
  }
};

}  // namespace

std::string format_term(const TermPtr& t) {
  if (!t) throw ValidationError("null term");
  std::string out;
  format_into(t, out);
  return out;
}

TermPtr parse_term(std::string_view src, const Signature& sig, std::size_t carrier_size) {
  Parser p{src, 0, sig, carrier_size};
  TermPtr t = p.parse_term();
  p.skip_ws();
  if (p.pos != src.size()) p.fail("trailing input", p.pos);
  return t;
}

void validate_term(const TermPtr& t, const Signature& sig, std::size_t carrier_size) {
  if (!t) throw ValidationError("null term");
  switch (t->kind) {
    case TermKind::Variable:
      return;
    case TermKind::Constant:
      if (t->constant >= carrier_size) {
        throw ValidationError("constant #" + std::to_string(t->constant) +
                              " exceeds carrier size " + std::to_string(carrier_size));
      }
      return;
    case TermKind::Apply: {
      auto idx = sig.find(t->symbol.name);
      if (!idx) throw ValidationError("unknown symbol '" + t->symbol.name + "'");
      if (sig.at(*idx).arity != t->symbol.arity || t->children.size() != t->symbol.arity) {
        throw ValidationError("arity mismatch at '" + t->symbol.name + "'");
      }
      for (const TermPtr& c : t->children) validate_term(c, sig, carrier_size);
      return;
    }
  }
}

TermMeasures term_measures(const TermPtr& t) {
  if (!t) throw ValidationError("null term");
  switch (t->kind) {
    case TermKind::Variable:
      return {0, 0, 1};
    case TermKind::Constant:
      return {0, 0, 0};
    case TermKind::Apply: {
      TermMeasures m{0, t->symbol.arity, 0};
      std::size_t max_child_height = 0;
      for (const TermPtr& c : t->children) {
        TermMeasures cm = term_measures(c);
        max_child_height = std::max(max_child_height, cm.height);
        m.arity = std::max(m.arity, cm.arity);
        m.x_count += cm.x_count;
      }
      m.height = t->children.empty() ? 0 : max_child_height + 1;
      return m;
    }
  }
  return {};
}

AffineTerm::AffineTerm(TermPtr t) : term_(std::move(t)) {
  if (!term_) throw ValidationError("null term");
  std::size_t n = term_measures(term_).x_count;
  if (n > 1) throw ValidationError("term is not affine: x occurs " + std::to_string(n) + " times");
  proper_ = n == 1;
}

namespace {

// Shares x-free subtrees of s unchanged.
TermPtr substitute_x(const TermPtr& s, const TermPtr& t) {
  switch (s->kind) {
    case TermKind::Variable:
      return t;
    case TermKind::Constant:
      return s;
    case TermKind::Apply: {
      if (term_measures(s).x_count == 0) return s;
      std::vector<TermPtr> children;
      children.reserve(s->children.size());
      for (const TermPtr& c : s->children) children.push_back(substitute_x(c, t));
      return apply(s->symbol, std::move(children));
    }
  }
  return s;
}

}  // namespace

AffineTerm concat(const AffineTerm& s, const AffineTerm& t) {
  if (!s.proper()) return s;
  return AffineTerm(substitute_x(s.term(), t.term()));
}

}  // namespace affine
