#pragma once

// Recursive-descent parser for the theory DSL.
//
//   theory   := "theory" IDENT "sorts" IDENT+ ("functions" funDecl+)?
//               ("relations" relDecl+)? ("axioms" sequent+)?
//               ("operators" opDecl+)? ("judgments" sequent+)? "end"
//   funDecl  := IDENT ":" (IDENT ("*" IDENT)*)? "->" IDENT
//   relDecl  := IDENT ":" IDENT ("*" IDENT)*
//   opDecl   := IDENT ":" "[" ctx "|" formula "]" "->" IDENT
//   sequent  := formula ("|-" | "-||-") "[" ctx "]" formula
//   ctx      := (IDENT ":" IDENT ("," IDENT ":" IDENT)*)?
//   formula  := "top" | atom ("&" atom)*
//   atom     := term "=" term | term "!" | relation application
//   term     := factor ("." factor)*      -- "." applies the symbol named "."
//   factor   := IDENT ("(" term ("," term)* ")")? | "(" term ")"
//
// Identifiers are alphanumeric or one of the symbolic names "*", ".", "-".
// "#" starts a line comment.  Bisequents expand to two sequents.

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "phl/syntax.hpp"

namespace phl {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line, col;
};

namespace detail {

struct Token {
  enum Kind {
    Ident,    // alphanumeric or symbolic identifier
    Keyword,  // theory sorts functions relations axioms operators judgments end top
    Punct,    // : , ( ) [ ] | & = ! -> |- -||-
    End
  } kind;
  std::string text;
  int line, col;
};

inline bool is_keyword(const std::string& s) {
  return s == "theory" || s == "sorts" || s == "functions" ||
         s == "relations" || s == "axioms" || s == "operators" ||
         s == "judgments" || s == "end" || s == "top";
}

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Token::Kind k, std::string text, int l, int c) {
    out.push_back(Token{k, std::move(text), l, c});
  };
  while (i < src.size()) {
    char ch = src[i];
    if (ch == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++col;
      ++i;
      continue;
    }
    if (ch == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    int l = line, c = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_' || src[j] == '\''))
        ++j;
      std::string word = src.substr(i, j - i);
      push(is_keyword(word) ? Token::Keyword : Token::Ident, word, l, c);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    auto two = src.substr(i, 2);
    auto four = src.substr(i, 4);
    if (four == "-||-") {
      push(Token::Punct, "-||-", l, c);
      i += 4;
      col += 4;
      continue;
    }
    if (two == "->" || two == "|-") {
      push(Token::Punct, two, l, c);
      i += 2;
      col += 2;
      continue;
    }
    switch (ch) {
      case ':':
      case ',':
      case '(':
      case ')':
      case '[':
      case ']':
      case '|':
      case '&':
      case '=':
      case '!':
        push(Token::Punct, std::string(1, ch), l, c);
        break;
      case '*':
      case '.':
      case '-':
        // Symbolic identifiers; "*" and "." double as punctuation and the
        // parser decides by position.
        push(Token::Ident, std::string(1, ch), l, c);
        break;
      default:
        throw ParseError(l, c, std::string("unexpected character '") + ch + "'");
    }
    ++i;
    ++col;
  }
  out.push_back(Token{Token::End, "", line, col});
  return out;
}

// Unresolved term: leaf identifiers are classified against the context and
// signature only after the sequent's context has been read.
struct RawTerm {
  std::string head;
  bool applied = false;  // true when written with an argument list or infix
  std::vector<RawTerm> args;
  int line = 0, col = 0;
};

struct RawAtom {
  enum Kind { Eq, Defined, Rel } kind;
  RawTerm lhs, rhs;  // Rel uses lhs.head/args; Defined uses lhs
  int line = 0, col = 0;
};

struct RawFormula {
  std::vector<RawAtom> atoms;  // empty is top
};

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  ParsedTheory parse_theory() {
    expect_keyword("theory");
    Theory t;
    t.name = expect_ident("theory name");
    expect_keyword("sorts");
    while (at_ident()) t.signature.add_sort(take().text);
    if (t.signature.sorts.empty()) fail("expected at least one sort");
    if (at_keyword("functions")) {
      take();
      while (at_ident()) parse_fun_decl(t.signature);
    }
    if (at_keyword("relations")) {
      take();
      while (at_ident()) parse_rel_decl(t.signature);
    }
    if (at_keyword("axioms")) {
      take();
      while (!at_keyword("end") && !at_keyword("operators") &&
             !at_keyword("judgments"))
        parse_sequent_into(t.signature, t.axioms);
    }
    if (!at_keyword("operators") && !at_keyword("judgments")) {
      expect_keyword("end");
      expect_end();
      check_theory(t);
      return t;
    }
    RelativeTheory rt;
    rt.name = t.name;
    rt.base = std::move(t);
    if (at_keyword("operators")) {
      take();
      while (at_ident()) parse_op_decl(rt);
    }
    Theory expanded = expand_relative_theory(rt);
    if (at_keyword("judgments")) {
      take();
      while (!at_keyword("end"))
        parse_sequent_into(expanded.signature, rt.judgments);
    }
    expect_keyword("end");
    expect_end();
    check_relative_theory(rt);
    return rt;
  }

  // Entry points for command-line fragments.
  std::vector<Sequent> parse_sequent_fragment(const Signature& sig) {
    std::vector<Sequent> out;
    parse_sequent_raw(sig, out);
    expect_end();
    return out;
  }

  FormulaInContext parse_formula_fragment(const Signature& sig) {
    expect_punct("[");
    Context ctx = parse_context(sig);
    expect_punct("]");
    RawFormula raw = parse_raw_formula(sig);
    expect_end();
    return FormulaInContext{ctx, elaborate(raw, sig, ctx)};
  }

  Context parse_context_fragment(const Signature& sig) {
    bool bracketed = at_punct("[");
    if (bracketed) take();
    Context ctx = parse_context(sig);
    if (bracketed) expect_punct("]");
    expect_end();
    return ctx;
  }

  HornFormula parse_atoms_fragment(const Signature& sig, const Context& ctx) {
    RawFormula raw = parse_raw_formula(sig);
    expect_end();
    return elaborate(raw, sig, ctx);
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;

  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(peek().line, peek().col, msg);
  }
  bool at_ident() const { return peek().kind == Token::Ident; }
  bool at_keyword(const std::string& k) const {
    return peek().kind == Token::Keyword && peek().text == k;
  }
  bool at_punct(const std::string& p) const {
    return peek().kind == Token::Punct && peek().text == p;
  }
  void expect_keyword(const std::string& k) {
    if (!at_keyword(k)) fail("expected '" + k + "'");
    take();
  }
  void expect_punct(const std::string& p) {
    if (!at_punct(p)) fail("expected '" + p + "'");
    take();
  }
  std::string expect_ident(const std::string& what) {
    if (!at_ident()) fail("expected " + what);
    return take().text;
  }
  void expect_end() {
    if (peek().kind != Token::End) fail("unexpected trailing input");
  }

  void parse_fun_decl(Signature& sig) {
    int l = peek().line, c = peek().col;
    FunctionDecl f;
    f.name = take().text;
    expect_punct(":");
    if (at_ident()) {
      f.arg_sorts.push_back(take().text);
      // "*" alternates between separator and sort name position.
      while (at_ident() && peek().text == "*") {
        size_t save = pos_;
        take();
        if (!at_ident()) {
          pos_ = save;
          break;
        }
        f.arg_sorts.push_back(take().text);
      }
    }
    expect_punct("->");
    f.result_sort = expect_ident("result sort");
    wrap_at(l, c, [&] { sig.add_function(std::move(f)); });
  }

  void parse_rel_decl(Signature& sig) {
    int l = peek().line, c = peek().col;
    RelationDecl r;
    r.name = take().text;
    expect_punct(":");
    r.arg_sorts.push_back(expect_ident("argument sort"));
    while (at_ident() && peek().text == "*") {
      size_t save = pos_;
      take();
      if (!at_ident()) {
        pos_ = save;
        break;
      }
      r.arg_sorts.push_back(take().text);
    }
    wrap_at(l, c, [&] { sig.add_relation(std::move(r)); });
  }

  void parse_op_decl(RelativeTheory& rt) {
    OperatorDecl op;
    int l = peek().line, c = peek().col;
    op.name = take().text;
    expect_punct(":");
    expect_punct("[");
    Context ctx = parse_context(rt.base.signature);
    expect_punct("|");
    RawFormula raw = parse_raw_formula(rt.base.signature);
    expect_punct("]");
    expect_punct("->");
    op.type = expect_ident("result sort");
    op.arity =
        FormulaInContext{ctx, elaborate(raw, rt.base.signature, ctx)};
    try {
      rt.base.signature.require_sort(op.type);
      if (rt.op(op.name) || rt.base.signature.function(op.name) ||
          rt.base.signature.relation(op.name))
        throw ElaborationError("duplicate symbol: " + op.name);
    } catch (const ElaborationError& e) {
      throw ParseError(l, c, e.what());
    }
    rt.operators.push_back(std::move(op));
  }

  Context parse_context(const Signature& sig) {
    Context ctx;
    if (!at_ident()) return ctx;
    for (;;) {
      int l = peek().line, c = peek().col;
      std::string name = take().text;
      expect_punct(":");
      std::string sort = expect_ident("sort");
      try {
        sig.require_sort(sort);
        if (lookup(ctx, name))
          throw ElaborationError("duplicate context variable: " + name);
        if (sig.function(name) || sig.relation(name))
          throw ElaborationError("context variable shadows symbol: " + name);
      } catch (const ElaborationError& e) {
        throw ParseError(l, c, e.what());
      }
      ctx.push_back(Variable{name, sort});
      if (!at_punct(",")) break;
      take();
    }
    return ctx;
  }

  void parse_sequent_into(const Signature& sig, std::vector<Sequent>& out) {
    parse_sequent_raw(sig, out);
  }

  void parse_sequent_raw(const Signature& sig, std::vector<Sequent>& out) {
    RawFormula prem = parse_raw_formula(sig);
    bool bi;
    if (at_punct("|-"))
      bi = false;
    else if (at_punct("-||-"))
      bi = true;
    else
      fail("expected '|-' or '-||-'");
    take();
    expect_punct("[");
    Context ctx = parse_context(sig);
    expect_punct("]");
    RawFormula conc = parse_raw_formula(sig);
    Sequent s{ctx, elaborate(prem, sig, ctx), elaborate(conc, sig, ctx)};
    if (bi) {
      Sequent back{ctx, s.conclusion, s.premise};
      out.push_back(std::move(s));
      out.push_back(std::move(back));
    } else {
      out.push_back(std::move(s));
    }
  }

  RawFormula parse_raw_formula(const Signature& sig) {
    RawFormula f;
    if (at_keyword("top")) {
      take();
      return f;
    }
    f.atoms.push_back(parse_raw_atom(sig));
    while (at_punct("&")) {
      take();
      f.atoms.push_back(parse_raw_atom(sig));
    }
    return f;
  }

  RawAtom parse_raw_atom(const Signature& sig) {
    RawAtom a;
    a.line = peek().line;
    a.col = peek().col;
    a.lhs = parse_raw_term(sig);
    if (at_punct("=")) {
      take();
      a.kind = RawAtom::Eq;
      a.rhs = parse_raw_term(sig);
    } else if (at_punct("!")) {
      take();
      a.kind = RawAtom::Defined;
    } else {
      a.kind = RawAtom::Rel;
    }
    return a;
  }

  RawTerm parse_raw_term(const Signature& sig) {
    RawTerm t = parse_raw_factor(sig);
    while (at_ident() && peek().text == ".") {
      Token dot = take();
      RawTerm rhs = parse_raw_factor(sig);
      RawTerm app;
      app.head = ".";
      app.applied = true;
      app.args = {std::move(t), std::move(rhs)};
      app.line = dot.line;
      app.col = dot.col;
      t = std::move(app);
    }
    return t;
  }

  RawTerm parse_raw_factor(const Signature& sig) {
    if (at_punct("(")) {
      take();
      RawTerm t = parse_raw_term(sig);
      expect_punct(")");
      return t;
    }
    if (!at_ident()) fail("expected a term");
    RawTerm t;
    t.line = peek().line;
    t.col = peek().col;
    t.head = take().text;
    // A following "(" opens an argument list only for symbols declared with
    // arguments; otherwise it belongs to the next atom or sequent.  Nullary
    // symbols may still be written with an explicit empty "()".
    if (at_punct("(") && symbol_arity(sig, t.head) > 0) {
      take();
      t.applied = true;
      t.args.push_back(parse_raw_term(sig));
      while (at_punct(",")) {
        take();
        t.args.push_back(parse_raw_term(sig));
      }
      expect_punct(")");
    } else if (at_punct("(") && symbol_arity(sig, t.head) == 0 &&
               toks_[pos_ + 1].kind == Token::Punct &&
               toks_[pos_ + 1].text == ")") {
      take();
      take();
      t.applied = true;
    }
    return t;
  }

  // Arity of a declared function or relation symbol; -1 if undeclared.
  static int symbol_arity(const Signature& sig, const std::string& name) {
    if (const FunctionDecl* f = sig.function(name))
      return static_cast<int>(f->arg_sorts.size());
    if (const RelationDecl* r = sig.relation(name))
      return static_cast<int>(r->arg_sorts.size());
    return -1;
  }

  // Resolves raw identifiers: context variables, then nullary constants.
  Term elaborate_term(const RawTerm& raw, const Signature& sig,
                      const Context& ctx) {
    if (!raw.applied) {
      if (const Variable* v = lookup(ctx, raw.head))
        return Term::var(v->name, v->sort);
      if (sig.function(raw.head)) return Term::app(raw.head, {});
      throw ParseError(raw.line, raw.col, "unknown identifier: " + raw.head);
    }
    std::vector<Term> args;
    args.reserve(raw.args.size());
    for (const auto& a : raw.args) args.push_back(elaborate_term(a, sig, ctx));
    return Term::app(raw.head, std::move(args));
  }

  HornFormula elaborate(const RawFormula& raw, const Signature& sig,
                        const Context& ctx) {
    HornFormula out;
    for (const auto& a : raw.atoms) {
      try {
        switch (a.kind) {
          case RawAtom::Eq: {
            EqAtom eq{elaborate_term(a.lhs, sig, ctx),
                      elaborate_term(a.rhs, sig, ctx)};
            std::string ls = sort_of(eq.lhs, sig, ctx);
            if (ls != sort_of(eq.rhs, sig, ctx))
              throw ElaborationError("equality between different sorts");
            out.atoms.push_back(std::move(eq));
            break;
          }
          case RawAtom::Defined: {
            Term t = elaborate_term(a.lhs, sig, ctx);
            sort_of(t, sig, ctx);
            out.atoms.push_back(defined(std::move(t)));
            break;
          }
          case RawAtom::Rel: {
            if (!a.lhs.applied && lookup(ctx, a.lhs.head))
              throw ElaborationError(
                  "a bare variable is not an atom (missing '!'?)");
            if (!sig.relation(a.lhs.head))
              throw ElaborationError("undeclared relation: " + a.lhs.head);
            RelAtom rel{a.lhs.head, {}};
            for (const auto& arg : a.lhs.args)
              rel.args.push_back(elaborate_term(arg, sig, ctx));
            check_formula(HornFormula{{rel}}, sig, ctx);
            out.atoms.push_back(std::move(rel));
            break;
          }
        }
      } catch (const ElaborationError& e) {
        throw ParseError(a.line, a.col, e.what());
      }
    }
    return out;
  }

  template <typename F>
  void wrap(F&& f) {
    wrap_at(peek().line, peek().col, std::forward<F>(f));
  }

  template <typename F>
  void wrap_at(int l, int c, F&& f) {
    try {
      f();
    } catch (const ElaborationError& e) {
      throw ParseError(l, c, e.what());
    }
  }
};

}  // namespace detail

// Parses a complete theory file (plain or relative).
inline ParsedTheory parse_theory(const std::string& src) {
  return detail::Parser(src).parse_theory();
}

// Parses "premise |- [ctx] conclusion"; bisequents yield two sequents.
inline std::vector<Sequent> parse_sequent(const std::string& src,
                                          const Signature& sig) {
  return detail::Parser(src).parse_sequent_fragment(sig);
}

// Parses "[ctx] formula".
inline FormulaInContext parse_formula(const std::string& src,
                                      const Signature& sig) {
  return detail::Parser(src).parse_formula_fragment(sig);
}

// Parses "x:s, y:s".
inline Context parse_context(const std::string& src, const Signature& sig) {
  return detail::Parser(src).parse_context_fragment(sig);
}

// Parses "atom & ... & atom" (or "top") over the given variables.
inline HornFormula parse_atoms(const std::string& src, const Signature& sig,
                               const Context& ctx) {
  return detail::Parser(src).parse_atoms_fragment(sig, ctx);
}

}  // namespace phl
