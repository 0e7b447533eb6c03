#pragma once

// Pretty printer for the theory DSL.  print_theory(parse_theory(s)) parses
// back to a structurally equal theory.

#include <sstream>
#include <string>

#include "phl/syntax.hpp"

namespace phl {

inline std::string print_term(const Term& t) {
  if (t.is_var()) return t.as_var().name;
  const auto& app = t.as_app();
  if (app.fn == "." && app.args.size() == 2) {
    // Infix; parenthesize both sides so associativity survives reparsing.
    auto side = [](const Term& s) {
      std::string text = print_term(s);
      if (!s.is_var() && s.as_app().fn == "." && s.as_app().args.size() == 2)
        return "(" + text + ")";
      return text;
    };
    return side(app.args[0]) + "." + side(app.args[1]);
  }
  std::string out = app.fn;
  if (app.args.empty()) return out;
  out += "(";
  for (size_t i = 0; i < app.args.size(); ++i) {
    if (i) out += ", ";
    out += print_term(app.args[i]);
  }
  out += ")";
  return out;
}

// A term used where an atom is expected needs parentheses around infix ".".
inline std::string print_term_atomic(const Term& t) {
  std::string text = print_term(t);
  if (!t.is_var() && t.as_app().fn == "." && t.as_app().args.size() == 2)
    return "(" + text + ")";
  return text;
}

inline std::string print_atom(const Atom& atom) {
  if (const auto* rel = std::get_if<RelAtom>(&atom)) {
    std::string out = rel->rel + "(";
    for (size_t i = 0; i < rel->args.size(); ++i) {
      if (i) out += ", ";
      out += print_term(rel->args[i]);
    }
    return out + ")";
  }
  const auto& eq = std::get<EqAtom>(atom);
  if (eq.lhs == eq.rhs) return print_term_atomic(eq.lhs) + "!";
  return print_term_atomic(eq.lhs) + " = " + print_term_atomic(eq.rhs);
}

inline std::string print_formula(const HornFormula& phi) {
  if (phi.is_top()) return "top";
  std::string out;
  for (size_t i = 0; i < phi.atoms.size(); ++i) {
    if (i) out += " & ";
    out += print_atom(phi.atoms[i]);
  }
  return out;
}

namespace detail {

inline std::string print_context_bare(const Context& ctx) {
  std::string out;
  for (size_t i = 0; i < ctx.size(); ++i) {
    if (i) out += ", ";
    out += ctx[i].name + ":" + ctx[i].sort;
  }
  return out;
}

}  // namespace detail

inline std::string print_context(const Context& ctx) {
  return "[" + detail::print_context_bare(ctx) + "]";
}

inline std::string print_sequent(const Sequent& s) {
  return print_formula(s.premise) + " |- " + print_context(s.context) + " " +
         print_formula(s.conclusion);
}

inline std::string print_formula_in_context(const FormulaInContext& phi) {
  return print_context(phi.context) + " " + print_formula(phi.body);
}

namespace detail {

inline void print_signature_blocks(std::ostringstream& out,
                                   const Signature& sig) {
  out << "sorts";
  for (const auto& s : sig.sorts) out << " " << s;
  out << "\n";
  if (!sig.functions.empty()) {
    out << "functions\n";
    for (const auto& f : sig.functions) {
      out << "  " << f.name << " :";
      for (size_t i = 0; i < f.arg_sorts.size(); ++i)
        out << (i ? " * " : " ") << f.arg_sorts[i];
      out << " -> " << f.result_sort << "\n";
    }
  }
  if (!sig.relations.empty()) {
    out << "relations\n";
    for (const auto& r : sig.relations) {
      out << "  " << r.name << " :";
      for (size_t i = 0; i < r.arg_sorts.size(); ++i)
        out << (i ? " * " : " ") << r.arg_sorts[i];
      out << "\n";
    }
  }
}

}  // namespace detail

inline std::string print_theory(const Theory& t) {
  std::ostringstream out;
  out << "theory " << t.name << "\n";
  detail::print_signature_blocks(out, t.signature);
  if (!t.axioms.empty()) {
    out << "axioms\n";
    for (const auto& ax : t.axioms) out << "  " << print_sequent(ax) << "\n";
  }
  out << "end\n";
  return out.str();
}

inline std::string print_theory(const RelativeTheory& rt) {
  std::ostringstream out;
  out << "theory " << rt.name << "\n";
  detail::print_signature_blocks(out, rt.base.signature);
  if (!rt.base.axioms.empty()) {
    out << "axioms\n";
    for (const auto& ax : rt.base.axioms)
      out << "  " << print_sequent(ax) << "\n";
  }
  if (!rt.operators.empty()) {
    out << "operators\n";
    for (const auto& op : rt.operators)
      out << "  " << op.name << " : ["
          << detail::print_context_bare(op.arity.context) << " | "
          << print_formula(op.arity.body) << "] -> " << op.type << "\n";
  }
  if (!rt.judgments.empty()) {
    out << "judgments\n";
    for (const auto& j : rt.judgments)
      out << "  " << print_sequent(j) << "\n";
  }
  out << "end\n";
  return out.str();
}

inline std::string print_theory(const ParsedTheory& pt) {
  if (const auto* t = std::get_if<Theory>(&pt)) return print_theory(*t);
  return print_theory(std::get<RelativeTheory>(pt));
}

}  // namespace phl
