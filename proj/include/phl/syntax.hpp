#pragma once

// Multi-sorted partial Horn syntax: signatures, terms, Horn formulas,
// sequents, theories, and relative theories, plus substitution,
// signature translation, and relative-theory expansion.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace phl {

// Raised for ill-sorted or ill-formed input (undeclared symbol, arity
// mismatch, duplicate declaration, unbound variable).
class ElaborationError : public std::runtime_error {
 public:
  explicit ElaborationError(const std::string& msg) : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// Signatures

struct FunctionDecl {
  std::string name;
  std::vector<std::string> arg_sorts;
  std::string result_sort;

  bool operator==(const FunctionDecl&) const = default;
};

struct RelationDecl {
  std::string name;
  std::vector<std::string> arg_sorts;

  bool operator==(const RelationDecl&) const = default;
};

struct Signature {
  std::vector<std::string> sorts;  // declaration order, no duplicates
  std::vector<FunctionDecl> functions;
  std::vector<RelationDecl> relations;

  bool operator==(const Signature&) const = default;

  bool has_sort(const std::string& s) const {
    return std::find(sorts.begin(), sorts.end(), s) != sorts.end();
  }

  const FunctionDecl* function(const std::string& name) const {
    for (const auto& f : functions)
      if (f.name == name) return &f;
    return nullptr;
  }

  const RelationDecl* relation(const std::string& name) const {
    for (const auto& r : relations)
      if (r.name == name) return &r;
    return nullptr;
  }

  void add_sort(const std::string& s) {
    if (has_sort(s)) throw ElaborationError("duplicate sort: " + s);
    sorts.push_back(s);
  }

  void add_function(FunctionDecl f) {
    require_fresh(f.name);
    for (const auto& s : f.arg_sorts) require_sort(s);
    require_sort(f.result_sort);
    functions.push_back(std::move(f));
  }

  void add_relation(RelationDecl r) {
    require_fresh(r.name);
    for (const auto& s : r.arg_sorts) require_sort(s);
    relations.push_back(std::move(r));
  }

  void require_sort(const std::string& s) const {
    if (!has_sort(s)) throw ElaborationError("undeclared sort: " + s);
  }

 private:
  void require_fresh(const std::string& name) const {
    if (function(name) || relation(name))
      throw ElaborationError("duplicate symbol: " + name);
  }
};

// ---------------------------------------------------------------------------
// Terms

struct Variable {
  std::string name;
  std::string sort;

  bool operator==(const Variable&) const = default;
  auto operator<=>(const Variable&) const = default;
};

// A term is a context variable or a function application.  Value type with
// structural equality and ordering, so terms work as map/set keys.  Ordering
// is hand-rolled: defaulted <=> cannot see through the recursive variant.
class Term {
 public:
  struct App {
    std::string fn;
    std::vector<Term> args;

    bool operator==(const App&) const = default;
  };

  static Term var(std::string name, std::string sort) {
    Term t;
    t.node_ = Variable{std::move(name), std::move(sort)};
    return t;
  }

  static Term app(std::string fn, std::vector<Term> args) {
    Term t;
    t.node_ = App{std::move(fn), std::move(args)};
    return t;
  }

  bool is_var() const { return std::holds_alternative<Variable>(node_); }
  const Variable& as_var() const { return std::get<Variable>(node_); }
  const App& as_app() const { return std::get<App>(node_); }

  bool operator==(const Term&) const = default;

  bool operator<(const Term& o) const {
    if (node_.index() != o.node_.index()) return node_.index() < o.node_.index();
    if (is_var()) return as_var() < o.as_var();
    const App& a = as_app();
    const App& b = o.as_app();
    if (a.fn != b.fn) return a.fn < b.fn;
    if (a.args.size() != b.args.size()) return a.args.size() < b.args.size();
    for (size_t i = 0; i < a.args.size(); ++i) {
      if (a.args[i] < b.args[i]) return true;
      if (b.args[i] < a.args[i]) return false;
    }
    return false;
  }

 private:
  std::variant<Variable, App> node_;
};

// ---------------------------------------------------------------------------
// Formulas and sequents

// Equality is not a relation symbol: it is its own atom kind with the
// strict reading (both sides defined and equal).
struct RelAtom {
  std::string rel;
  std::vector<Term> args;

  bool operator==(const RelAtom&) const = default;

  bool operator<(const RelAtom& o) const {
    if (rel != o.rel) return rel < o.rel;
    if (args.size() != o.args.size()) return args.size() < o.args.size();
    for (size_t i = 0; i < args.size(); ++i) {
      if (args[i] < o.args[i]) return true;
      if (o.args[i] < args[i]) return false;
    }
    return false;
  }
};

struct EqAtom {
  Term lhs, rhs;

  bool operator==(const EqAtom&) const = default;

  bool operator<(const EqAtom& o) const {
    if (lhs < o.lhs) return true;
    if (o.lhs < lhs) return false;
    return rhs < o.rhs;
  }
};

using Atom = std::variant<RelAtom, EqAtom>;

// tau! (definedness) is sugar for tau = tau.
inline Atom defined(Term t) { return EqAtom{t, t}; }

// Conjunction of atoms; empty list is top.
struct HornFormula {
  std::vector<Atom> atoms;

  bool is_top() const { return atoms.empty(); }
  bool operator==(const HornFormula&) const = default;
};

// Deduplicates atoms, keeping first occurrences.
inline HornFormula dedup_atoms(const HornFormula& phi) {
  HornFormula out;
  std::set<Atom> seen;
  for (const auto& a : phi.atoms)
    if (seen.insert(a).second) out.atoms.push_back(a);
  return out;
}

using Context = std::vector<Variable>;  // distinct names, declared sorts

struct FormulaInContext {
  Context context;
  HornFormula body;

  bool operator==(const FormulaInContext&) const = default;
};

struct Sequent {
  Context context;
  HornFormula premise;
  HornFormula conclusion;

  bool operator==(const Sequent&) const = default;
};

struct Theory {
  std::string name;
  Signature signature;
  std::vector<Sequent> axioms;

  bool operator==(const Theory&) const = default;
};

// ---------------------------------------------------------------------------
// Relative theories

// Operator with Horn-formula arity over the base signature and result sort.
struct OperatorDecl {
  std::string name;
  FormulaInContext arity;
  std::string type;

  bool operator==(const OperatorDecl&) const = default;
};

struct RelativeTheory {
  std::string name;
  Theory base;
  std::vector<OperatorDecl> operators;
  std::vector<Sequent> judgments;  // premises must be operator-free

  bool operator==(const RelativeTheory&) const = default;

  const OperatorDecl* op(const std::string& name) const {
    for (const auto& o : operators)
      if (o.name == name) return &o;
    return nullptr;
  }
};

using ParsedTheory = std::variant<Theory, RelativeTheory>;

// ---------------------------------------------------------------------------
// Well-formedness

inline const Variable* lookup(const Context& ctx, const std::string& name) {
  for (const auto& v : ctx)
    if (v.name == name) return &v;
  return nullptr;
}

// Infers the sort of a well-formed term; throws on undeclared symbols,
// arity mismatch, or variables whose sort disagrees with the context.
inline std::string sort_of(const Term& t, const Signature& sig,
                           const Context& ctx) {
  if (t.is_var()) {
    const Variable& v = t.as_var();
    const Variable* bound = lookup(ctx, v.name);
    if (!bound) throw ElaborationError("unbound variable: " + v.name);
    if (bound->sort != v.sort)
      throw ElaborationError("variable " + v.name + " has sort " +
                             bound->sort + ", not " + v.sort);
    return v.sort;
  }
  const auto& app = t.as_app();
  const FunctionDecl* f = sig.function(app.fn);
  if (!f) throw ElaborationError("undeclared function: " + app.fn);
  if (f->arg_sorts.size() != app.args.size())
    throw ElaborationError("arity mismatch for " + app.fn);
  for (size_t i = 0; i < app.args.size(); ++i) {
    std::string got = sort_of(app.args[i], sig, ctx);
    if (got != f->arg_sorts[i])
      throw ElaborationError("argument " + std::to_string(i) + " of " +
                             app.fn + " has sort " + got + ", expected " +
                             f->arg_sorts[i]);
  }
  return f->result_sort;
}

inline void check_context(const Context& ctx, const Signature& sig) {
  std::set<std::string> names;
  for (const auto& v : ctx) {
    if (!names.insert(v.name).second)
      throw ElaborationError("duplicate context variable: " + v.name);
    sig.require_sort(v.sort);
  }
}

inline void check_formula(const HornFormula& phi, const Signature& sig,
                          const Context& ctx) {
  for (const auto& atom : phi.atoms) {
    if (const auto* rel = std::get_if<RelAtom>(&atom)) {
      const RelationDecl* r = sig.relation(rel->rel);
      if (!r) throw ElaborationError("undeclared relation: " + rel->rel);
      if (r->arg_sorts.size() != rel->args.size())
        throw ElaborationError("arity mismatch for " + rel->rel);
      for (size_t i = 0; i < rel->args.size(); ++i) {
        std::string got = sort_of(rel->args[i], sig, ctx);
        if (got != r->arg_sorts[i])
          throw ElaborationError("argument " + std::to_string(i) + " of " +
                                 rel->rel + " has sort " + got +
                                 ", expected " + r->arg_sorts[i]);
      }
    } else {
      const auto& eq = std::get<EqAtom>(atom);
      std::string ls = sort_of(eq.lhs, sig, ctx);
      std::string rs = sort_of(eq.rhs, sig, ctx);
      if (ls != rs)
        throw ElaborationError("equality between sorts " + ls + " and " + rs);
    }
  }
}

inline void check_sequent_wf(const Sequent& s, const Signature& sig) {
  check_context(s.context, sig);
  check_formula(s.premise, sig, s.context);
  check_formula(s.conclusion, sig, s.context);
}

inline void check_theory(const Theory& t) {
  for (const auto& ax : t.axioms) check_sequent_wf(ax, t.signature);
}

inline bool has_operator_atom(const HornFormula& phi,
                              const RelativeTheory& rt) {
  // Looks for applications of declared operators anywhere in the formula.
  auto term_has = [&](const Term& t, auto&& self) -> bool {
    if (t.is_var()) return false;
    if (rt.op(t.as_app().fn)) return true;
    for (const auto& a : t.as_app().args)
      if (self(a, self)) return true;
    return false;
  };
  for (const auto& atom : phi.atoms) {
    if (const auto* rel = std::get_if<RelAtom>(&atom)) {
      for (const auto& a : rel->args)
        if (term_has(a, term_has)) return true;
    } else {
      const auto& eq = std::get<EqAtom>(atom);
      if (term_has(eq.lhs, term_has) || term_has(eq.rhs, term_has))
        return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Substitution

// Applies bindings (variable name -> term) to a term.  Every variable must
// be bound and the substituted term must have the variable's sort; callers
// that need identity on some variable bind it to itself.
inline Term substitute(const Term& t, const std::map<std::string, Term>& bind,
                       const Signature& sig, const Context& result_ctx) {
  if (t.is_var()) {
    const Variable& v = t.as_var();
    auto it = bind.find(v.name);
    if (it == bind.end())
      throw ElaborationError("substitution misses variable: " + v.name);
    std::string got = sort_of(it->second, sig, result_ctx);
    if (got != v.sort)
      throw ElaborationError("substitution for " + v.name + " has sort " +
                             got + ", expected " + v.sort);
    return it->second;
  }
  const auto& app = t.as_app();
  std::vector<Term> args;
  args.reserve(app.args.size());
  for (const auto& a : app.args)
    args.push_back(substitute(a, bind, sig, result_ctx));
  return Term::app(app.fn, std::move(args));
}

inline HornFormula substitute(const HornFormula& phi,
                              const std::map<std::string, Term>& bind,
                              const Signature& sig,
                              const Context& result_ctx) {
  HornFormula out;
  for (const auto& atom : phi.atoms) {
    if (const auto* rel = std::get_if<RelAtom>(&atom)) {
      RelAtom r{rel->rel, {}};
      for (const auto& a : rel->args)
        r.args.push_back(substitute(a, bind, sig, result_ctx));
      out.atoms.push_back(std::move(r));
    } else {
      const auto& eq = std::get<EqAtom>(atom);
      out.atoms.push_back(EqAtom{substitute(eq.lhs, bind, sig, result_ctx),
                                 substitute(eq.rhs, bind, sig, result_ctx)});
    }
  }
  return out;
}

// Binds a formula's context variables to the given terms, in order.
inline HornFormula apply_terms(const FormulaInContext& phi,
                               const std::vector<Term>& terms,
                               const Signature& sig,
                               const Context& result_ctx) {
  if (terms.size() != phi.context.size())
    throw ElaborationError("term tuple length does not match context");
  std::map<std::string, Term> bind;
  for (size_t i = 0; i < terms.size(); ++i)
    bind.emplace(phi.context[i].name, terms[i]);
  return substitute(phi.body, bind, sig, result_ctx);
}

// ---------------------------------------------------------------------------
// Signature translation

// Syntactic data of a theory morphism: sort/function/relation renamings.
// Whether the translated axioms are theorems of the target is a separate,
// semantic question (see is_phl_theorem).
struct TheoryMorphism {
  std::map<std::string, std::string> sort_map;
  std::map<std::string, std::string> function_map;
  std::map<std::string, std::string> relation_map;

  static TheoryMorphism identity(const Signature& sig) {
    TheoryMorphism m;
    for (const auto& s : sig.sorts) m.sort_map[s] = s;
    for (const auto& f : sig.functions) m.function_map[f.name] = f.name;
    for (const auto& r : sig.relations) m.relation_map[r.name] = r.name;
    return m;
  }

  // Name-preserving inclusion of src into dst; every src symbol must exist
  // in dst with the translated arity.
  static TheoryMorphism inclusion(const Signature& src, const Signature& dst);

  const std::string& sort(const std::string& s) const {
    auto it = sort_map.find(s);
    if (it == sort_map.end()) throw ElaborationError("morphism misses sort: " + s);
    return it->second;
  }
  const std::string& function(const std::string& f) const {
    auto it = function_map.find(f);
    if (it == function_map.end())
      throw ElaborationError("morphism misses function: " + f);
    return it->second;
  }
  const std::string& relation(const std::string& r) const {
    auto it = relation_map.find(r);
    if (it == relation_map.end())
      throw ElaborationError("morphism misses relation: " + r);
    return it->second;
  }
};

// Checks that the morphism maps every src symbol to a dst symbol of the
// translated arity; throws otherwise.
inline void check_morphism(const TheoryMorphism& m, const Signature& src,
                           const Signature& dst) {
  for (const auto& s : src.sorts) dst.require_sort(m.sort(s));
  for (const auto& f : src.functions) {
    const FunctionDecl* g = dst.function(m.function(f.name));
    if (!g) throw ElaborationError("morphism target misses function: " +
                                   m.function(f.name));
    if (g->arg_sorts.size() != f.arg_sorts.size())
      throw ElaborationError("morphism changes arity of " + f.name);
    for (size_t i = 0; i < f.arg_sorts.size(); ++i)
      if (g->arg_sorts[i] != m.sort(f.arg_sorts[i]))
        throw ElaborationError("morphism breaks argument sort of " + f.name);
    if (g->result_sort != m.sort(f.result_sort))
      throw ElaborationError("morphism breaks result sort of " + f.name);
  }
  for (const auto& r : src.relations) {
    const RelationDecl* q = dst.relation(m.relation(r.name));
    if (!q) throw ElaborationError("morphism target misses relation: " +
                                   m.relation(r.name));
    if (q->arg_sorts.size() != r.arg_sorts.size())
      throw ElaborationError("morphism changes arity of " + r.name);
    for (size_t i = 0; i < r.arg_sorts.size(); ++i)
      if (q->arg_sorts[i] != m.sort(r.arg_sorts[i]))
        throw ElaborationError("morphism breaks argument sort of " + r.name);
  }
}

inline TheoryMorphism TheoryMorphism::inclusion(const Signature& src,
                                                const Signature& dst) {
  TheoryMorphism m = identity(src);
  check_morphism(m, src, dst);
  return m;
}

inline Term translate(const Term& t, const TheoryMorphism& m) {
  if (t.is_var()) {
    const Variable& v = t.as_var();
    return Term::var(v.name, m.sort(v.sort));
  }
  const auto& app = t.as_app();
  std::vector<Term> args;
  args.reserve(app.args.size());
  for (const auto& a : app.args) args.push_back(translate(a, m));
  return Term::app(m.function(app.fn), std::move(args));
}

inline HornFormula translate(const HornFormula& phi, const TheoryMorphism& m) {
  HornFormula out;
  for (const auto& atom : phi.atoms) {
    if (const auto* rel = std::get_if<RelAtom>(&atom)) {
      RelAtom r{m.relation(rel->rel), {}};
      for (const auto& a : rel->args) r.args.push_back(translate(a, m));
      out.atoms.push_back(std::move(r));
    } else {
      const auto& eq = std::get<EqAtom>(atom);
      out.atoms.push_back(EqAtom{translate(eq.lhs, m), translate(eq.rhs, m)});
    }
  }
  return out;
}

inline Context translate(const Context& ctx, const TheoryMorphism& m) {
  Context out;
  out.reserve(ctx.size());
  for (const auto& v : ctx) out.push_back(Variable{v.name, m.sort(v.sort)});
  return out;
}

inline Sequent translate(const Sequent& s, const TheoryMorphism& m) {
  return Sequent{translate(s.context, m), translate(s.premise, m),
                 translate(s.conclusion, m)};
}

// ---------------------------------------------------------------------------
// Relative-theory expansion

// Declares each operator as a partial function whose definedness is pinned
// to its arity formula by a pair of sequents, and appends the judgments.
inline Theory expand_relative_theory(const RelativeTheory& rt) {
  Theory t;
  t.name = rt.name;
  t.signature = rt.base.signature;
  t.axioms = rt.base.axioms;
  for (const auto& op : rt.operators) {
    FunctionDecl decl{op.name, {}, op.type};
    for (const auto& v : op.arity.context) decl.arg_sorts.push_back(v.sort);
    t.signature.add_function(std::move(decl));
  }
  for (const auto& op : rt.operators) {
    std::vector<Term> vars;
    for (const auto& v : op.arity.context)
      vars.push_back(Term::var(v.name, v.sort));
    HornFormula def{{defined(Term::app(op.name, vars))}};
    t.axioms.push_back(Sequent{op.arity.context, def, op.arity.body});
    t.axioms.push_back(Sequent{op.arity.context, op.arity.body, def});
  }
  for (const auto& j : rt.judgments) t.axioms.push_back(j);
  check_theory(t);
  return t;
}

// Validates a relative theory: base well-formed, operator arities
// well-formed over the base, judgment premises operator-free, judgments
// well-formed over the expanded signature.
inline void check_relative_theory(const RelativeTheory& rt) {
  check_theory(rt.base);
  for (const auto& op : rt.operators) {
    check_context(op.arity.context, rt.base.signature);
    check_formula(op.arity.body, rt.base.signature, op.arity.context);
    rt.base.signature.require_sort(op.type);
  }
  for (const auto& j : rt.judgments)
    if (has_operator_atom(j.premise, rt))
      throw ElaborationError("judgment premise mentions an operator");
  Theory expanded = expand_relative_theory(rt);
  for (const auto& j : rt.judgments) check_sequent_wf(j, expanded.signature);
}

}  // namespace phl
