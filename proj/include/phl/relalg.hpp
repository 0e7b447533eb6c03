#pragma once

// Relative algebras over a base theory: validation, judgment satisfaction
// with the where-defined reading, the arity-indexed copower endofunctor,
// the free-algebra chain, reducts along relative theory morphisms, and
// colimits of algebras via presentations under the expanded theory.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "phl/chase.hpp"
#include "phl/structure.hpp"
#include "phl/syntax.hpp"

namespace phl {

// ---------------------------------------------------------------------------
// Relative algebras

// An algebra is a base-theory model plus one table per operator, total on
// the arity subset and nowhere else.
struct RelativeAlgebra {
  RelativeTheory theory;
  PartialStructure underlying;  // over theory.base.signature
  OpTables ops;

  bool operator==(const RelativeAlgebra&) const = default;
};

// The algebra as a structure over the expanded signature: operator tables
// become partial function tables.
inline PartialStructure algebra_to_structure(const RelativeAlgebra& a) {
  PartialStructure m = a.underlying;
  m.signature = expand_relative_theory(a.theory).signature;
  m.signature_name = a.theory.name;
  for (const auto& [name, table] : a.ops)
    if (!table.empty()) m.functions[name] = table;
  return m;
}

// Splits operator tables back off a structure over the expanded signature.
inline RelativeAlgebra algebra_from_structure(const RelativeTheory& rt,
                                              const PartialStructure& m) {
  RelativeAlgebra a{rt, m, {}};
  a.underlying.signature = rt.base.signature;
  a.underlying.signature_name = rt.base.name;
  for (const auto& op : rt.operators) {
    auto it = a.underlying.functions.find(op.name);
    if (it == a.underlying.functions.end()) continue;
    if (!it->second.empty()) a.ops[op.name] = it->second;
    a.underlying.functions.erase(it);
  }
  return a;
}

struct AlgebraCheck {
  bool ok = true;
  std::string reason;              // empty when ok
  std::string op;                  // offending operator, when applicable
  std::optional<Tuple> tuple;      // offending arity or table tuple
  std::optional<ModelCheck> base;  // set when the underlying model fails
};

// The underlying structure must model the base theory and each operator
// table must be defined exactly on the arity's interpretation.
inline AlgebraCheck is_relative_algebra(const RelativeAlgebra& a) {
  AlgebraCheck out;
  ModelCheck mc = is_model(a.underlying, a.theory.base);
  if (!mc.ok) {
    out.ok = false;
    out.reason = "underlying structure is not a base model";
    out.base = mc;
    return out;
  }
  for (const auto& [name, table] : a.ops)
    if (!a.theory.op(name)) {
      out.ok = false;
      out.reason = "table for undeclared operator";
      out.op = name;
      return out;
    }
  for (const auto& op : a.theory.operators) {
    std::vector<Tuple> dom = interpret_formula(a.underlying, op.arity);
    std::set<Tuple> domain(dom.begin(), dom.end());
    static const std::map<Tuple, int> empty;
    auto it = a.ops.find(op.name);
    const auto& table = it == a.ops.end() ? empty : it->second;
    for (const auto& t : dom)
      if (!table.count(t)) {
        out.ok = false;
        out.reason = "operator undefined on an arity tuple";
        out.op = op.name;
        out.tuple = t;
        return out;
      }
    for (const auto& [args, value] : table) {
      if (!domain.count(args)) {
        out.ok = false;
        out.reason = "operator defined outside its arity";
        out.op = op.name;
        out.tuple = args;
        return out;
      }
      if (!a.underlying.has_elem(op.type, value)) {
        out.ok = false;
        out.reason = "operator value outside the carrier";
        out.op = op.name;
        out.tuple = args;
        return out;
      }
    }
  }
  return out;
}

struct JudgmentCheck {
  bool ok = true;
  std::optional<Tuple> witness;  // premise tuple with a failing conclusion
};

// Satisfaction of a relative judgment, with conclusion atoms evaluated
// where defined: an atom whose terms are not all defined at a premise
// tuple is skipped rather than failed.  (The strict reading would reject
// even standard algebras: monotonicity of a partial subtraction fails
// strictly at tuples where an instance is undefined.)  Definedness itself
// is constrained by arities, not judgments.
inline JudgmentCheck satisfies_judgment(const RelativeAlgebra& a,
                                        const Sequent& j) {
  if (has_operator_atom(j.premise, a.theory))
    throw ElaborationError("judgment premise mentions an operator");
  PartialStructure s = algebra_to_structure(a);
  check_sequent_wf(j, s.signature);
  for (const auto& env :
       interpret_formula(s, FormulaInContext{j.context, j.premise})) {
    for (const auto& atom : j.conclusion.atoms) {
      if (const auto* rel = std::get_if<RelAtom>(&atom)) {
        Tuple vals;
        bool all = true;
        for (const auto& arg : rel->args) {
          auto v = interpret_term(s, j.context, arg, env);
          if (!v) {
            all = false;
            break;
          }
          vals.push_back(*v);
        }
        if (!all) continue;
        auto it = s.relations.find(rel->rel);
        if (it == s.relations.end() || !it->second.count(vals))
          return {false, env};
      } else {
        const auto& eq = std::get<EqAtom>(atom);
        auto l = interpret_term(s, j.context, eq.lhs, env);
        auto r = interpret_term(s, j.context, eq.rhs, env);
        if (l && r && *l != *r) return {false, env};
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// The copower endofunctor

// Generator name for the copower summand indexed by (operator, tuple).
inline std::string h_generator_name(const std::string& op, const Tuple& t) {
  std::string name = op + "@";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) name += "_";
    name += std::to_string(t[i]);
  }
  return name;
}

// H(A): one generator of the operator's type per arity tuple, no facts,
// chased under the base theory.
inline Presentation h_omega_presentation(const RelativeTheory& rt,
                                         const PartialStructure& a) {
  Presentation p;
  p.theory = rt.base;
  for (const auto& op : rt.operators)
    for (const auto& t : interpret_formula(a, op.arity))
      p.generators.push_back(
          Variable{h_generator_name(op.name, t), op.type});
  return p;
}

inline ChaseOutcome h_omega(const RelativeTheory& rt,
                            const PartialStructure& a, int budget) {
  return chase(h_omega_presentation(rt, a), budget);
}

// H on morphisms: relabel generators along arity-tuple images.  ha and hb
// are the saturated copowers of h's source and target.
inline std::optional<Homomorphism> h_omega_map(const RelativeTheory& rt,
                                               const Homomorphism& h,
                                               const SaturatedResult& ha,
                                               const SaturatedResult& hb) {
  std::map<std::string, int> images;
  for (const auto& op : rt.operators) {
    std::vector<std::string> sorts;
    for (const auto& v : op.arity.context) sorts.push_back(v.sort);
    for (const auto& t : interpret_formula(h.source, op.arity)) {
      Tuple image = h.apply_tuple(sorts, t);
      images[h_generator_name(op.name, t)] =
          hb.generator_elem.at(h_generator_name(op.name, image));
    }
  }
  return induced_hom(ha, hb.model, images);
}

// ---------------------------------------------------------------------------
// The free-algebra chain

struct FreeChainResult {
  enum class Status { Stabilized, Unstabilized, StageBudgetExceeded } status =
      Status::Unstabilized;
  std::vector<size_t> sizes;  // total carrier sizes of K_0, K_1, ...
  int stage = 0;  // Stabilized: first stage n+1 with K_n+1 ~ K_n; else last
  std::optional<RelativeAlgebra> algebra;   // on Stabilized
  std::optional<Homomorphism> insertion;    // X -> K, on Stabilized
};

namespace detail {

// Presentation of H + X: prefixed copies of both diagrams, no equations
// between them.
inline Presentation stage_presentation(const Theory& base,
                                       const PartialStructure& h,
                                       const PartialStructure& x) {
  Presentation p;
  p.theory = base;
  auto add = [&](const std::string& prefix, const PartialStructure& m) {
    auto gen = [&](const std::string& sort, int id) {
      return Term::var(prefix + diagram_generator_name(sort, id), sort);
    };
    for (const auto& s : m.signature.sorts)
      for (int id : m.carrier(s))
        p.generators.push_back(
            Variable{prefix + diagram_generator_name(s, id), s});
    for (const auto& [name, table] : m.functions) {
      const FunctionDecl* f = m.signature.function(name);
      for (const auto& [args, value] : table) {
        std::vector<Term> ts;
        for (size_t i = 0; i < args.size(); ++i)
          ts.push_back(gen(f->arg_sorts[i], args[i]));
        p.facts.atoms.push_back(
            EqAtom{Term::app(name, std::move(ts)), gen(f->result_sort, value)});
      }
    }
    for (const auto& [name, table] : m.relations) {
      const RelationDecl* r = m.signature.relation(name);
      for (const auto& args : table) {
        RelAtom atom{name, {}};
        for (size_t i = 0; i < args.size(); ++i)
          atom.args.push_back(gen(r->arg_sorts[i], args[i]));
        p.facts.atoms.push_back(std::move(atom));
      }
    }
  };
  add("h:", h);
  add("x:", x);
  return p;
}

}  // namespace detail

// K_0 = X, K_{n+1} = H(K_n) + X, connecting maps k_0 the insertion and
// k_{n+1} = H(k_n) + id.  Stabilizes at the first isomorphism k_n; the
// algebra structure on K = K_{n+1} reads the next stage's copower
// generators back through the inverse of k_{n+1}.  Judgments must be
// empty: the chain constructs the free algebra of the signature only.
inline FreeChainResult free_algebra_chain(const RelativeTheory& rt,
                                          const PartialStructure& x,
                                          int maxStages, int budget) {
  if (!rt.judgments.empty())
    throw ElaborationError("free-algebra chain requires an empty judgment set");

  FreeChainResult out;
  out.sizes.push_back(x.total_size());

  std::vector<PartialStructure> k = {x};     // K_0, K_1, ...
  std::vector<SaturatedResult> sat_h;        // H(K_n)
  std::vector<SaturatedResult> sat_k;        // chase results for K_{n+1}
  std::vector<Homomorphism> connecting;      // k_n : K_n -> K_{n+1}
  std::vector<Homomorphism> h_maps;          // H(k_{n-1}) : H_{n-1} -> H_n

  // Extends the chain by one stage; returns false on budget exhaustion.
  auto extend = [&]() -> bool {
    size_t n = sat_h.size();
    ChaseOutcome ho = h_omega(rt, k[n], budget);
    if (!saturated(ho)) return false;
    sat_h.push_back(model_of(ho));
    ChaseOutcome ko =
        chase(detail::stage_presentation(rt.base, sat_h[n].model, x), budget);
    if (!saturated(ko)) return false;
    sat_k.push_back(model_of(ko));
    k.push_back(sat_k[n].model);

    if (n > 0) {
      auto hm = h_omega_map(rt, connecting[n - 1], sat_h[n - 1], sat_h[n]);
      if (!hm)
        throw ElaborationError("copower map failed to extend to a morphism");
      h_maps.push_back(std::move(*hm));
    }

    std::map<std::string, int> images;
    for (const auto& s : x.signature.sorts)
      for (int id : x.carrier(s))
        images["x:" + diagram_generator_name(s, id)] =
            sat_k[n].generator_elem.at("x:" + diagram_generator_name(s, id));
    if (n == 0) {
      Homomorphism k0{x, k[1], {}};
      for (const auto& s : x.signature.sorts) {
        auto& mp = k0.maps[s];
        for (int id : x.carrier(s))
          mp[id] = images["x:" + diagram_generator_name(s, id)];
      }
      if (!check_hom(k0))
        throw ElaborationError("insertion failed to be a morphism");
      connecting.push_back(std::move(k0));
    } else {
      for (const auto& s : x.signature.sorts)
        for (int e : sat_h[n - 1].model.carrier(s))
          images["h:" + diagram_generator_name(s, e)] =
              sat_k[n].generator_elem.at(
                  "h:" +
                  diagram_generator_name(s, h_maps[n - 1].apply(s, e)));
      auto kn = induced_hom(sat_k[n - 1], k[n + 1], images);
      if (!kn)
        throw ElaborationError("connecting map failed to be a morphism");
      connecting.push_back(std::move(*kn));
    }
    return true;
  };

  for (int n = 0; n + 1 < maxStages; ++n) {
    if (!extend()) {
      out.status = FreeChainResult::Status::StageBudgetExceeded;
      out.stage = n + 1;
      return out;
    }
    out.sizes.push_back(k[n + 1].total_size());
    if (!is_isomorphism(connecting[n])) continue;

    // Stabilized: one more stage carries the algebra structure back.
    if (!extend()) {
      out.status = FreeChainResult::Status::StageBudgetExceeded;
      out.stage = n + 2;
      return out;
    }
    const Homomorphism& last = connecting[n + 1];
    if (!is_isomorphism(last))
      throw ElaborationError("connecting map after stabilization not iso");
    Homomorphism inv = *inverse_map(last);

    RelativeAlgebra alg{rt, k[n + 1], {}};
    for (const auto& op : rt.operators)
      for (const auto& t : interpret_formula(k[n + 1], op.arity)) {
        int e = sat_h[n + 1].generator_elem.at(h_generator_name(op.name, t));
        int cls = sat_k[n + 1].generator_elem.at(
            "h:" + diagram_generator_name(op.type, e));
        alg.ops[op.name][t] = inv.apply(op.type, cls);
      }

    Homomorphism unit{x, k[n + 1], {}};
    for (const auto& s : x.signature.sorts) {
      auto& mp = unit.maps[s];
      for (int id : x.carrier(s))
        mp[id] = sat_k[n].generator_elem.at(
            "x:" + diagram_generator_name(s, id));
    }

    out.status = FreeChainResult::Status::Stabilized;
    out.stage = n + 1;
    out.algebra = std::move(alg);
    out.insertion = std::move(unit);
    return out;
  }
  out.status = FreeChainResult::Status::Unstabilized;
  out.stage = static_cast<int>(out.sizes.size()) - 1;
  return out;
}

// ---------------------------------------------------------------------------
// Relative theory morphisms

// Assigns to each source operator a term over the target's expanded
// signature, in the operator's arity context.
struct RelTheoryMorphism {
  RelativeTheory source;
  RelativeTheory target;
  std::map<std::string, Term> op_map;

  static RelTheoryMorphism identity(const RelativeTheory& rt) {
    RelTheoryMorphism rho{rt, rt, {}};
    for (const auto& op : rt.operators) {
      std::vector<Term> vars;
      for (const auto& v : op.arity.context)
        vars.push_back(Term::var(v.name, v.sort));
      rho.op_map.emplace(op.name, Term::app(op.name, std::move(vars)));
    }
    return rho;
  }
};

// Rewrites source-operator applications through the morphism, leaving base
// symbols alone.  ctx is the ambient context of t.
inline Term translate_op_term(const RelTheoryMorphism& rho, const Term& t,
                              const Context& ctx, const Signature& target_sig) {
  if (t.is_var()) return t;
  const auto& app = t.as_app();
  std::vector<Term> args;
  for (const auto& a : app.args)
    args.push_back(translate_op_term(rho, a, ctx, target_sig));
  const OperatorDecl* op = rho.source.op(app.fn);
  if (!op) return Term::app(app.fn, std::move(args));
  std::map<std::string, Term> bind;
  for (size_t i = 0; i < op->arity.context.size(); ++i)
    bind.emplace(op->arity.context[i].name, args[i]);
  return substitute(rho.op_map.at(app.fn), bind, target_sig, ctx);
}

inline HornFormula translate_op_formula(const RelTheoryMorphism& rho,
                                        const HornFormula& phi,
                                        const Context& ctx,
                                        const Signature& target_sig) {
  HornFormula out;
  for (const auto& atom : phi.atoms) {
    if (const auto* rel = std::get_if<RelAtom>(&atom)) {
      RelAtom r{rel->rel, {}};
      for (const auto& a : rel->args)
        r.args.push_back(translate_op_term(rho, a, ctx, target_sig));
      out.atoms.push_back(std::move(r));
    } else {
      const auto& eq = std::get<EqAtom>(atom);
      out.atoms.push_back(
          EqAtom{translate_op_term(rho, eq.lhs, ctx, target_sig),
                 translate_op_term(rho, eq.rhs, ctx, target_sig)});
    }
  }
  return out;
}

struct MorphismCheck {
  bool ok = true;
  std::string op;                   // operator with a failing side condition
  std::optional<Sequent> failing;   // the sequent that was not Proved
  Verdict verdict = Verdict::Proved;
};

// Each operator's image must be provably defined on its arity, with the
// right sort; each source judgment must translate to a theorem.
inline MorphismCheck check_rel_theory_morphism(const RelTheoryMorphism& rho,
                                               int budget) {
  if (!(rho.source.base == rho.target.base))
    throw ElaborationError("relative morphism requires a shared base theory");
  Theory expanded = expand_relative_theory(rho.target);
  for (const auto& op : rho.source.operators) {
    auto it = rho.op_map.find(op.name);
    if (it == rho.op_map.end())
      throw ElaborationError("morphism misses operator: " + op.name);
    std::string got =
        sort_of(it->second, expanded.signature, op.arity.context);
    if (got != op.type)
      throw ElaborationError("image of " + op.name + " has sort " + got +
                             ", expected " + op.type);
    Sequent side{op.arity.context, op.arity.body,
                 HornFormula{{defined(it->second)}}};
    Derivability d = is_phl_theorem(side, expanded, budget);
    if (d.verdict != Verdict::Proved)
      return {false, op.name, side, d.verdict};
  }
  for (const auto& j : rho.source.judgments) {
    Sequent translated{j.context, j.premise,
                       translate_op_formula(rho, j.conclusion, j.context,
                                            expanded.signature)};
    Derivability d = is_phl_theorem(translated, expanded, budget);
    if (d.verdict != Verdict::Proved) return {false, "", translated, d.verdict};
  }
  return {};
}

// The reduct: same underlying structure, each source operator evaluated as
// its image term in the target algebra.
inline RelativeAlgebra alg_rho(const RelTheoryMorphism& rho,
                               const RelativeAlgebra& b) {
  PartialStructure s = algebra_to_structure(b);
  RelativeAlgebra a{rho.source, b.underlying, {}};
  for (const auto& op : rho.source.operators) {
    const Term& image = rho.op_map.at(op.name);
    for (const auto& t : interpret_formula(b.underlying, op.arity)) {
      auto v = interpret_term(s, op.arity.context, image, t);
      if (!v)
        throw ElaborationError("operator image undefined on an arity tuple: " +
                               op.name);
      a.ops[op.name][t] = *v;
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Colimits of algebras

// Chases a presentation under the expanded theory; coequalizers of
// algebras are presented by a diagram plus identification equations.
inline ChaseOutcome algebra_colimit(const RelativeTheory& rt,
                                    const Context& generators,
                                    const HornFormula& facts, int budget) {
  Presentation p{expand_relative_theory(rt), generators, facts};
  return chase(p, budget);
}

}  // namespace phl
