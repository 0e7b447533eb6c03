#pragma once

// Bounded chase over presentations: congruence closure on hash-consed term
// nodes, fair round-based agenda, three-valued derivability, representing
// models, term-induced morphisms, and free models along theory morphisms.

#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "phl/structure.hpp"

namespace phl {

inline int default_budget() {
  if (const char* s = std::getenv("PHL_BUDGET")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return 10000;
}

// Union-find with union by size and path compression.  Ties pick the
// smaller root so merges are deterministic.
class DisjointSet {
 public:
  int make() {
    parent_.push_back(static_cast<int>(parent_.size()));
    size_.push_back(1);
    return parent_.back();
  }

  int find(int x) const {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];  // path compression
      x = parent_[x];
    }
    return x;
  }

  // Returns the surviving root, or -1 when already joined.
  int join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return -1;
    if (size_[a] < size_[b] || (size_[a] == size_[b] && b < a)) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return a;
  }

  int count() const { return static_cast<int>(parent_.size()); }

 private:
  mutable std::vector<int> parent_;
  std::vector<int> size_;
};

// A presentation: generators with sorts and a conjunction of atoms over
// them (terms may apply function symbols to generators).
struct Presentation {
  Theory theory;
  Context generators;
  HornFormula facts;
};

enum class AgendaOrder { Forward, Reversed };

struct SaturatedResult {
  PartialStructure model;
  std::map<std::string, int> generator_elem;          // name -> element id
  std::map<std::string, std::string> generator_sort;  // name -> sort
  int steps = 0;
};

struct BudgetExceededResult {
  int steps = 0;
  std::map<std::string, int> class_counts;  // per-sort class counts at stop
};

using ChaseOutcome = std::variant<SaturatedResult, BudgetExceededResult>;

inline bool saturated(const ChaseOutcome& o) {
  return std::holds_alternative<SaturatedResult>(o);
}
inline const SaturatedResult& model_of(const ChaseOutcome& o) {
  return std::get<SaturatedResult>(o);
}

// Mutable saturation state.  Nodes are created for generators and for one
// representative of each (symbol, canonical arguments) application; the
// union-find tracks provable equality and tables are kept canonical.
class ChaseState {
 public:
  explicit ChaseState(const Theory& theory) : theory_(&theory) {}

  int add_generator(const Variable& v) {
    theory_->signature.require_sort(v.sort);
    int node = new_node(v.sort);
    generators_.emplace(v.name, node);
    return node;
  }

  // Evaluates a term against the current state; nullopt when undefined.
  std::optional<int> eval(const Term& t,
                          const std::map<std::string, int>& env) const {
    if (t.is_var()) {
      auto it = env.find(t.as_var().name);
      if (it == env.end())
        throw ElaborationError("unbound variable: " + t.as_var().name);
      return uf_.find(it->second);
    }
    const auto& app = t.as_app();
    Tuple args;
    for (const auto& a : app.args) {
      auto v = eval(a, env);
      if (!v) return std::nullopt;
      args.push_back(*v);
    }
    auto it = func_.find({app.fn, args});
    if (it == func_.end()) return std::nullopt;
    return uf_.find(it->second);
  }

  // Evaluates a term, creating hash-consed witness nodes as needed.
  int materialize(const Term& t, const std::map<std::string, int>& env) {
    if (t.is_var()) return uf_.find(env.at(t.as_var().name));
    const auto& app = t.as_app();
    Tuple args;
    for (const auto& a : app.args) args.push_back(materialize(a, env));
    auto key = std::make_pair(app.fn, std::move(args));
    auto it = func_.find(key);
    if (it != func_.end()) return uf_.find(it->second);
    const FunctionDecl* f = theory_->signature.function(app.fn);
    if (!f) throw ElaborationError("undeclared function: " + app.fn);
    int node = new_node(f->result_sort);
    func_.emplace(std::move(key), node);
    return node;
  }

  bool atom_holds(const Atom& atom,
                  const std::map<std::string, int>& env) const {
    if (const auto* rel = std::get_if<RelAtom>(&atom)) {
      Tuple args;
      for (const auto& a : rel->args) {
        auto v = eval(a, env);
        if (!v) return false;
        args.push_back(*v);
      }
      return rels_.count({rel->rel, args}) > 0;
    }
    const auto& eq = std::get<EqAtom>(atom);
    auto l = eval(eq.lhs, env);
    auto r = eval(eq.rhs, env);
    return l && r && *l == *r;
  }

  bool formula_holds(const HornFormula& phi,
                     const std::map<std::string, int>& env) const {
    for (const auto& atom : phi.atoms)
      if (!atom_holds(atom, env)) return false;
    return true;
  }

  // Forces an atom to hold, merging and creating witnesses as needed.
  void assert_atom(const Atom& atom, const std::map<std::string, int>& env) {
    if (const auto* rel = std::get_if<RelAtom>(&atom)) {
      Tuple args;
      for (const auto& a : rel->args) args.push_back(materialize(a, env));
      rels_.insert({rel->rel, args});
      return;
    }
    const auto& eq = std::get<EqAtom>(atom);
    int l = materialize(eq.lhs, env);
    int r = materialize(eq.rhs, env);
    merge(l, r);
  }

  // Runs the agenda until saturation or budget exhaustion; each conclusion
  // enforcement is one step.  Returns true when saturated.
  bool run(int budget, AgendaOrder order) {
    for (;;) {
      bool changed = false;
      std::vector<size_t> axiom_order(theory_->axioms.size());
      for (size_t i = 0; i < axiom_order.size(); ++i) axiom_order[i] = i;
      if (order == AgendaOrder::Reversed)
        std::reverse(axiom_order.begin(), axiom_order.end());
      for (size_t idx : axiom_order) {
        const Sequent& ax = theory_->axioms[idx];
        for (auto& env : matches(ax.context, order)) {
          if (!formula_holds(ax.premise, env)) continue;
          if (formula_holds(ax.conclusion, env)) continue;
          if (steps_ >= budget) return false;
          for (const auto& atom : ax.conclusion.atoms) assert_atom(atom, env);
          ++steps_;
          changed = true;
        }
      }
      if (!changed) return true;
    }
  }

  int steps() const { return steps_; }

  std::map<std::string, int> class_counts() const {
    std::map<std::string, int> out;
    for (const auto& s : theory_->signature.sorts) out[s] = 0;
    for (int i = 0; i < uf_.count(); ++i)
      if (uf_.find(i) == i) ++out[sorts_[i]];
    return out;
  }

  // Extracts the quotient structure with dense per-sort element ids.
  SaturatedResult extract(const std::string& name) const {
    SaturatedResult res;
    res.steps = steps_;
    PartialStructure& m = res.model;
    m.signature_name = name;
    m.signature = theory_->signature;
    std::map<int, int> elem;  // canonical node -> element id
    for (const auto& s : theory_->signature.sorts) {
      auto& c = m.carriers[s];
      for (int i = 0; i < uf_.count(); ++i)
        if (uf_.find(i) == i && sorts_[i] == s) {
          elem[i] = static_cast<int>(c.size());
          c.push_back(static_cast<int>(c.size()));
        }
    }
    for (const auto& [key, value] : func_) {
      Tuple args;
      for (int a : key.second) args.push_back(elem.at(uf_.find(a)));
      m.functions[key.first][args] = elem.at(uf_.find(value));
    }
    for (const auto& [name_, args_] : rels_) {
      Tuple args;
      for (int a : args_) args.push_back(elem.at(uf_.find(a)));
      m.relations[name_].insert(args);
    }
    for (const auto& [gname, node] : generators_) {
      res.generator_elem[gname] = elem.at(uf_.find(node));
      res.generator_sort[gname] = sorts_[node];
    }
    return res;
  }

  const std::map<std::string, int>& generators() const { return generators_; }

 private:
  const Theory* theory_;
  DisjointSet uf_;
  std::vector<std::string> sorts_;  // node -> sort
  std::map<std::pair<std::string, Tuple>, int> func_;
  std::set<std::pair<std::string, Tuple>> rels_;
  std::map<std::string, int> generators_;
  int steps_ = 0;

  int new_node(const std::string& sort) {
    sorts_.push_back(sort);
    return uf_.make();
  }

  void merge(int a, int b) {
    if (uf_.join(a, b) == -1) return;
    rebuild();
  }

  // Re-canonicalizes tables and re-runs congruence closure to fixpoint:
  // entries that collide on (symbol, canonical args) have their values
  // merged.
  void rebuild() {
    for (;;) {
      std::vector<std::pair<int, int>> pending;
      std::map<std::pair<std::string, Tuple>, int> next;
      for (const auto& [key, value] : func_) {
        Tuple args;
        for (int a : key.second) args.push_back(uf_.find(a));
        int v = uf_.find(value);
        auto [it, fresh] = next.try_emplace({key.first, std::move(args)}, v);
        if (!fresh && it->second != v) pending.emplace_back(it->second, v);
      }
      func_ = std::move(next);
      if (pending.empty()) break;
      for (auto [a, b] : pending) uf_.join(a, b);
    }
    std::set<std::pair<std::string, Tuple>> next_rels;
    for (const auto& [name, args_] : rels_) {
      Tuple args;
      for (int a : args_) args.push_back(uf_.find(a));
      next_rels.insert({name, std::move(args)});
    }
    rels_ = std::move(next_rels);
  }

  // All assignments of canonical classes to the context, lexicographic in
  // node ids (reversed under the flipped agenda).
  std::vector<std::map<std::string, int>> matches(const Context& ctx,
                                                  AgendaOrder order) const {
    std::map<std::string, std::vector<int>> classes;
    for (const auto& s : theory_->signature.sorts) classes[s];
    for (int i = 0; i < uf_.count(); ++i)
      if (uf_.find(i) == i) classes[sorts_[i]].push_back(i);
    if (order == AgendaOrder::Reversed)
      for (auto& [s, c] : classes) std::reverse(c.begin(), c.end());
    std::vector<std::map<std::string, int>> out;
    std::map<std::string, int> env;
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == ctx.size()) {
        out.push_back(env);
        return;
      }
      for (int cls : classes.at(ctx[i].sort)) {
        env[ctx[i].name] = cls;
        rec(i + 1);
      }
      env.erase(ctx[i].name);
    };
    rec(0);
    return out;
  }
};

// ---------------------------------------------------------------------------
// Driving operations

inline ChaseOutcome chase(const Presentation& p, int budget,
                          AgendaOrder order = AgendaOrder::Forward) {
  check_theory(p.theory);
  check_context(p.generators, p.theory.signature);
  check_formula(p.facts, p.theory.signature, p.generators);
  ChaseState state(p.theory);
  std::map<std::string, int> env;
  for (const auto& g : p.generators) env[g.name] = state.add_generator(g);
  for (const auto& atom : p.facts.atoms) state.assert_atom(atom, env);
  if (!state.run(budget, order))
    return BudgetExceededResult{state.steps(), state.class_counts()};
  return state.extract(p.theory.name);
}

// Representing model of a formula-in-context: generators are the context
// variables, facts are the formula's atoms.  The generic tuple is the
// tuple of generator classes in context order.
inline ChaseOutcome representing_model(const FormulaInContext& phi,
                                       const Theory& t, int budget,
                                       AgendaOrder order = AgendaOrder::Forward) {
  return chase(Presentation{t, phi.context, phi.body}, budget, order);
}

inline Tuple generic_tuple(const SaturatedResult& r, const Context& ctx) {
  Tuple out;
  for (const auto& v : ctx) out.push_back(r.generator_elem.at(v.name));
  return out;
}

enum class Verdict { Proved, Refuted, Unknown };

struct Derivability {
  Verdict verdict;
  int steps = 0;
};

// Chases the premise's representing model and evaluates the conclusion at
// the generic tuple.  Unknown on budget exhaustion.
inline Derivability is_phl_theorem(const Sequent& s, const Theory& t,
                                   int budget) {
  check_sequent_wf(s, t.signature);
  ChaseState state(t);
  std::map<std::string, int> env;
  for (const auto& v : s.context) env[v.name] = state.add_generator(v);
  for (const auto& atom : s.premise.atoms) state.assert_atom(atom, env);
  if (!state.run(budget, AgendaOrder::Forward))
    return {Verdict::Unknown, state.steps()};
  return {state.formula_holds(s.conclusion, env) ? Verdict::Proved
                                                 : Verdict::Refuted,
          state.steps()};
}

// Unique homomorphism out of a chased presentation determined by generator
// images, obtained by propagating along the source's function tables.
// Returns nullopt when the images do not extend to a homomorphism (the
// target then fails some consequence of the presentation).
inline std::optional<Homomorphism> induced_hom(
    const SaturatedResult& src, const PartialStructure& target,
    const std::map<std::string, int>& generator_images) {
  const PartialStructure& a = src.model;
  Homomorphism h{a, target, {}};
  for (const auto& s : a.signature.sorts) h.maps.try_emplace(s);

  for (const auto& [gname, elem] : src.generator_elem) {
    auto it = generator_images.find(gname);
    if (it == generator_images.end())
      throw ElaborationError("missing generator image: " + gname);
    const std::string& sort = src.generator_sort.at(gname);
    if (!target.has_elem(sort, it->second)) return std::nullopt;
    auto [slot, fresh] = h.maps[sort].emplace(elem, it->second);
    if (!fresh && slot->second != it->second) return std::nullopt;
  }

  // Every element of a chased model is a term image of the generators, so
  // propagation over the function tables reaches everything.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [name, table] : a.functions) {
      const FunctionDecl* f = a.signature.function(name);
      auto bt = target.functions.find(name);
      for (const auto& [args, value] : table) {
        if (h.maps[f->result_sort].count(value)) continue;
        Tuple image;
        bool all = true;
        for (size_t i = 0; i < args.size(); ++i) {
          auto jt = h.maps[f->arg_sorts[i]].find(args[i]);
          if (jt == h.maps[f->arg_sorts[i]].end()) {
            all = false;
            break;
          }
          image.push_back(jt->second);
        }
        if (!all) continue;
        if (bt == target.functions.end()) return std::nullopt;
        auto vt = bt->second.find(image);
        if (vt == bt->second.end()) return std::nullopt;
        h.maps[f->result_sort][value] = vt->second;
        changed = true;
      }
    }
  }
  for (const auto& s : a.signature.sorts)
    if (h.maps[s].size() != a.carrier(s).size()) return std::nullopt;
  if (!check_hom(h)) return std::nullopt;
  return h;
}

// ---------------------------------------------------------------------------
// Morphisms of representing models from term tuples

struct TermMorphism {
  enum class Status { Ok, SideConditionFailed, Unknown } status;
  std::optional<Homomorphism> hom;       // src model -> tgt model, on Ok
  std::optional<Sequent> side_condition;  // the sequent that was not Proved
};

// A tuple of terms over tgt's context induces a morphism of representing
// models when tgt's formula proves both the definedness of every term and
// src's formula instantiated at them.
inline TermMorphism morphism_from_terms(const FormulaInContext& src,
                                        const FormulaInContext& tgt,
                                        const std::vector<Term>& terms,
                                        const Theory& t, int budget) {
  if (terms.size() != src.context.size())
    throw ElaborationError("term tuple length does not match source context");
  HornFormula goal = apply_terms(src, terms, t.signature, tgt.context);
  for (size_t i = 0; i < terms.size(); ++i) {
    std::string got = sort_of(terms[i], t.signature, tgt.context);
    if (got != src.context[i].sort)
      throw ElaborationError("term " + std::to_string(i) + " has sort " + got +
                             ", expected " + src.context[i].sort);
    goal.atoms.push_back(defined(terms[i]));
  }
  Sequent side{tgt.context, tgt.body, dedup_atoms(goal)};
  Derivability d = is_phl_theorem(side, t, budget);
  if (d.verdict == Verdict::Unknown)
    return {TermMorphism::Status::Unknown, std::nullopt, side};
  if (d.verdict == Verdict::Refuted)
    return {TermMorphism::Status::SideConditionFailed, std::nullopt, side};

  ChaseOutcome co_src = representing_model(src, t, budget);
  ChaseOutcome co_tgt = representing_model(tgt, t, budget);
  if (!saturated(co_src) || !saturated(co_tgt))
    return {TermMorphism::Status::Unknown, std::nullopt, std::nullopt};
  const SaturatedResult& ms = model_of(co_src);
  const SaturatedResult& mt = model_of(co_tgt);

  Tuple generic = generic_tuple(mt, tgt.context);
  std::map<std::string, int> images;
  for (size_t i = 0; i < terms.size(); ++i) {
    auto v = interpret_term(mt.model, tgt.context, terms[i], generic);
    if (!v)
      throw ElaborationError("side condition held but term is undefined");
    images[src.context[i].name] = *v;
  }
  auto h = induced_hom(ms, mt.model, images);
  if (!h)
    throw ElaborationError("generator images failed to extend to a morphism");
  return {TermMorphism::Status::Ok, std::move(h), std::nullopt};
}

// ---------------------------------------------------------------------------
// Free models along theory morphisms

inline std::string diagram_generator_name(const std::string& sort, int id) {
  return sort + ":" + std::to_string(id);
}

// Presents the structure's diagram translated along rho: one generator per
// element, one equation per function entry, one atom per relation tuple.
inline Presentation diagram_presentation(const PartialStructure& a,
                                         const TheoryMorphism& rho,
                                         const Theory& target) {
  Presentation p;
  p.theory = target;
  for (const auto& s : a.signature.sorts)
    for (int id : a.carrier(s))
      p.generators.push_back(
          Variable{diagram_generator_name(s, id), rho.sort(s)});
  auto gen = [&](const std::string& sort, int id) {
    return Term::var(diagram_generator_name(sort, id), rho.sort(sort));
  };
  for (const auto& [name, table] : a.functions) {
    const FunctionDecl* f = a.signature.function(name);
    for (const auto& [args, value] : table) {
      std::vector<Term> ts;
      for (size_t i = 0; i < args.size(); ++i)
        ts.push_back(gen(f->arg_sorts[i], args[i]));
      p.facts.atoms.push_back(
          EqAtom{Term::app(rho.function(name), std::move(ts)),
                 gen(f->result_sort, value)});
    }
  }
  for (const auto& [name, table] : a.relations) {
    const RelationDecl* r = a.signature.relation(name);
    for (const auto& args : table) {
      RelAtom atom{rho.relation(name), {}};
      for (size_t i = 0; i < args.size(); ++i)
        atom.args.push_back(gen(r->arg_sorts[i], args[i]));
      p.facts.atoms.push_back(std::move(atom));
    }
  }
  return p;
}

struct FreeModelResult {
  ChaseOutcome outcome;
  std::optional<Homomorphism> unit;  // a -> reduct(free model), on saturation
};

// Free target-model on a source-structure along rho, by chasing the
// translated diagram.  The unit sends each element to its generator class.
inline FreeModelResult free_model(const Theory& source,
                                  const TheoryMorphism& rho,
                                  const Theory& target,
                                  const PartialStructure& a, int budget) {
  check_morphism(rho, source.signature, target.signature);
  Presentation p = diagram_presentation(a, rho, target);
  ChaseOutcome out = chase(p, budget);
  FreeModelResult res{std::move(out), std::nullopt};
  if (!saturated(res.outcome)) return res;
  const SaturatedResult& sat = model_of(res.outcome);
  Homomorphism unit{a, reduct(sat.model, rho, source.name, source.signature),
                    {}};
  for (const auto& s : a.signature.sorts) {
    auto& mp = unit.maps[s];
    for (int id : a.carrier(s))
      mp[id] = sat.generator_elem.at(diagram_generator_name(s, id));
  }
  res.unit = std::move(unit);
  return res;
}

}  // namespace phl
