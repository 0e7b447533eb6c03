#pragma once

// Finite partial structures: interpretation with the strict reading of
// equality, sequent checking, homomorphisms, products, closed monos, the
// dense/closed factorization, reducts, and isomorphism search.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "phl/syntax.hpp"

namespace phl {

using Tuple = std::vector<int>;

// Operation tables of a relative algebra: operator name -> total map on the
// arity subset.  Shared with serialization ("ops" key next to a structure).
using OpTables = std::map<std::string, std::map<Tuple, int>>;

struct PartialStructure {
  std::string signature_name;  // name-ref recorded in serialized form
  Signature signature;
  std::map<std::string, std::vector<int>> carriers;  // sort -> sorted ids
  std::map<std::string, std::map<Tuple, int>> functions;
  std::map<std::string, std::set<Tuple>> relations;

  bool operator==(const PartialStructure&) const = default;

  const std::vector<int>& carrier(const std::string& sort) const {
    static const std::vector<int> empty;
    auto it = carriers.find(sort);
    return it == carriers.end() ? empty : it->second;
  }

  bool has_elem(const std::string& sort, int id) const {
    const auto& c = carrier(sort);
    return std::binary_search(c.begin(), c.end(), id);
  }

  size_t total_size() const {
    size_t n = 0;
    for (const auto& [s, c] : carriers) n += c.size();
    return n;
  }

  // Checks carriers sorted and deduplicated, tables sort-correct and inside
  // the carriers; throws ElaborationError otherwise.
  void validate() const {
    for (const auto& s : signature.sorts) {
      const auto& c = carrier(s);
      for (size_t i = 1; i < c.size(); ++i)
        if (c[i - 1] >= c[i])
          throw ElaborationError("carrier of " + s + " not strictly sorted");
    }
    for (const auto& [s, c] : carriers)
      if (!signature.has_sort(s))
        throw ElaborationError("carrier for undeclared sort: " + s);
    for (const auto& [name, table] : functions) {
      const FunctionDecl* f = signature.function(name);
      if (!f) throw ElaborationError("table for undeclared function: " + name);
      for (const auto& [args, value] : table) {
        if (args.size() != f->arg_sorts.size())
          throw ElaborationError("arity mismatch in table of " + name);
        for (size_t i = 0; i < args.size(); ++i)
          if (!has_elem(f->arg_sorts[i], args[i]))
            throw ElaborationError("argument outside carrier in " + name);
        if (!has_elem(f->result_sort, value))
          throw ElaborationError("value outside carrier in " + name);
      }
    }
    for (const auto& [name, table] : relations) {
      const RelationDecl* r = signature.relation(name);
      if (!r) throw ElaborationError("table for undeclared relation: " + name);
      for (const auto& args : table) {
        if (args.size() != r->arg_sorts.size())
          throw ElaborationError("arity mismatch in table of " + name);
        for (size_t i = 0; i < args.size(); ++i)
          if (!has_elem(r->arg_sorts[i], args[i]))
            throw ElaborationError("argument outside carrier in " + name);
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Interpretation

// Environment: one element per context variable, in context order.
inline std::optional<int> interpret_term(const PartialStructure& m,
                                         const Context& ctx, const Term& t,
                                         const Tuple& env) {
  if (t.is_var()) {
    for (size_t i = 0; i < ctx.size(); ++i)
      if (ctx[i].name == t.as_var().name) return env[i];
    throw ElaborationError("unbound variable: " + t.as_var().name);
  }
  const auto& app = t.as_app();
  auto table = m.functions.find(app.fn);
  Tuple args;
  args.reserve(app.args.size());
  for (const auto& a : app.args) {
    auto v = interpret_term(m, ctx, a, env);
    if (!v) return std::nullopt;
    args.push_back(*v);
  }
  if (table == m.functions.end()) return std::nullopt;
  auto it = table->second.find(args);
  if (it == table->second.end()) return std::nullopt;
  return it->second;
}

inline bool satisfies_atom(const PartialStructure& m, const Context& ctx,
                           const Atom& atom, const Tuple& env) {
  if (const auto* rel = std::get_if<RelAtom>(&atom)) {
    Tuple args;
    for (const auto& a : rel->args) {
      auto v = interpret_term(m, ctx, a, env);
      if (!v) return false;
      args.push_back(*v);
    }
    auto table = m.relations.find(rel->rel);
    return table != m.relations.end() && table->second.count(args) > 0;
  }
  const auto& eq = std::get<EqAtom>(atom);
  auto l = interpret_term(m, ctx, eq.lhs, env);
  auto r = interpret_term(m, ctx, eq.rhs, env);
  return l && r && *l == *r;
}

inline bool satisfies(const PartialStructure& m, const Context& ctx,
                      const HornFormula& phi, const Tuple& env) {
  for (const auto& atom : phi.atoms)
    if (!satisfies_atom(m, ctx, atom, env)) return false;
  return true;
}

// All environments over the context's carriers, in lexicographic order.
inline std::vector<Tuple> tuples_over(const PartialStructure& m,
                                      const Context& ctx) {
  std::vector<Tuple> out;
  Tuple cur(ctx.size());
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == ctx.size()) {
      out.push_back(cur);
      return;
    }
    for (int id : m.carrier(ctx[i].sort)) {
      cur[i] = id;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// The set of tuples satisfying the formula, in lexicographic order.
inline std::vector<Tuple> interpret_formula(const PartialStructure& m,
                                            const FormulaInContext& phi) {
  std::vector<Tuple> out;
  for (const auto& env : tuples_over(m, phi.context))
    if (satisfies(m, phi.context, phi.body, env)) out.push_back(env);
  return out;
}

struct SequentCheck {
  bool valid = false;
  std::optional<Tuple> witness;  // environment refuting the sequent
};

inline SequentCheck check_sequent(const PartialStructure& m,
                                  const Sequent& s) {
  for (const auto& env : tuples_over(m, s.context)) {
    if (!satisfies(m, s.context, s.premise, env)) continue;
    if (!satisfies(m, s.context, s.conclusion, env)) return {false, env};
  }
  return {true, std::nullopt};
}

struct ModelCheck {
  bool ok = false;
  std::optional<size_t> axiom;  // index of the first failing axiom
  std::optional<Tuple> witness;
};

inline ModelCheck is_model(const PartialStructure& m, const Theory& t) {
  for (size_t i = 0; i < t.axioms.size(); ++i) {
    SequentCheck c = check_sequent(m, t.axioms[i]);
    if (!c.valid) return {false, i, c.witness};
  }
  return {true, std::nullopt, std::nullopt};
}

// ---------------------------------------------------------------------------
// Homomorphisms

struct Homomorphism {
  PartialStructure source, target;
  std::map<std::string, std::map<int, int>> maps;  // per sort, total

  bool operator==(const Homomorphism&) const = default;

  int apply(const std::string& sort, int id) const {
    return maps.at(sort).at(id);
  }

  Tuple apply_tuple(const std::vector<std::string>& sorts,
                    const Tuple& t) const {
    Tuple out;
    out.reserve(t.size());
    for (size_t i = 0; i < t.size(); ++i) out.push_back(apply(sorts[i], t[i]));
    return out;
  }
};

// Verifies totality, definedness preservation (h(f(a)) = f(h(a)) whenever
// f(a) is defined), and relation preservation.
inline bool check_hom(const Homomorphism& h) {
  const auto& a = h.source;
  const auto& b = h.target;
  if (a.signature != b.signature) return false;
  for (const auto& s : a.signature.sorts) {
    auto mit = h.maps.find(s);
    for (int x : a.carrier(s)) {
      if (mit == h.maps.end()) return false;
      if (!mit->second.count(x)) return false;
      if (!b.has_elem(s, mit->second.at(x))) return false;
    }
  }
  for (const auto& [name, table] : a.functions) {
    const FunctionDecl* f = a.signature.function(name);
    auto bt = b.functions.find(name);
    for (const auto& [args, value] : table) {
      Tuple image = h.apply_tuple(f->arg_sorts, args);
      if (bt == b.functions.end()) return false;
      auto it = bt->second.find(image);
      if (it == bt->second.end()) return false;
      if (it->second != h.apply(f->result_sort, value)) return false;
    }
  }
  for (const auto& [name, table] : a.relations) {
    const RelationDecl* r = a.signature.relation(name);
    auto bt = b.relations.find(name);
    for (const auto& args : table) {
      if (bt == b.relations.end()) return false;
      if (!bt->second.count(h.apply_tuple(r->arg_sorts, args))) return false;
    }
  }
  return true;
}

inline Homomorphism identity_hom(const PartialStructure& m) {
  Homomorphism h{m, m, {}};
  for (const auto& s : m.signature.sorts) {
    auto& mp = h.maps[s];
    for (int x : m.carrier(s)) mp[x] = x;
  }
  return h;
}

// g after f; requires f.target and g.source to coincide.
inline Homomorphism compose(const Homomorphism& g, const Homomorphism& f) {
  Homomorphism h{f.source, g.target, {}};
  for (const auto& s : f.source.signature.sorts) {
    auto& mp = h.maps[s];
    for (int x : f.source.carrier(s)) mp[x] = g.apply(s, f.apply(s, x));
  }
  return h;
}

// All homomorphisms from a to b, lexicographic in the flattened carrier
// assignment.  Backtracking with per-assignment pruning on function and
// relation entries whose arguments are already placed.
inline std::vector<Homomorphism> enumerate_homs(const PartialStructure& a,
                                                const PartialStructure& b) {
  std::vector<std::pair<std::string, int>> slots;  // (sort, element)
  for (const auto& s : a.signature.sorts)
    for (int x : a.carrier(s)) slots.emplace_back(s, x);

  std::map<std::string, std::map<int, int>> partial;
  std::vector<Homomorphism> out;

  auto placed = [&](const std::string& sort, int x) -> std::optional<int> {
    auto it = partial.find(sort);
    if (it == partial.end()) return std::nullopt;
    auto jt = it->second.find(x);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
  };

  // Checks every table entry all of whose arguments (and value) are placed.
  auto consistent = [&]() {
    for (const auto& [name, table] : a.functions) {
      const FunctionDecl* f = a.signature.function(name);
      auto bt = b.functions.find(name);
      for (const auto& [args, value] : table) {
        Tuple image;
        bool all = true;
        for (size_t i = 0; i < args.size(); ++i) {
          auto v = placed(f->arg_sorts[i], args[i]);
          if (!v) {
            all = false;
            break;
          }
          image.push_back(*v);
        }
        if (!all) continue;
        if (bt == b.functions.end()) return false;
        auto it = bt->second.find(image);
        if (it == bt->second.end()) return false;
        auto v = placed(f->result_sort, value);
        if (v && *v != it->second) return false;
      }
    }
    for (const auto& [name, table] : a.relations) {
      const RelationDecl* r = a.signature.relation(name);
      auto bt = b.relations.find(name);
      for (const auto& args : table) {
        Tuple image;
        bool all = true;
        for (size_t i = 0; i < args.size(); ++i) {
          auto v = placed(r->arg_sorts[i], args[i]);
          if (!v) {
            all = false;
            break;
          }
          image.push_back(*v);
        }
        if (!all) continue;
        if (bt == b.relations.end()) return false;
        if (!bt->second.count(image)) return false;
      }
    }
    return true;
  };

  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == slots.size()) {
      Homomorphism h{a, b, partial};
      for (const auto& s : a.signature.sorts) h.maps.try_emplace(s);
      out.push_back(std::move(h));
      return;
    }
    const auto& [sort, x] = slots[i];
    for (int y : b.carrier(sort)) {
      partial[sort][x] = y;
      if (consistent()) rec(i + 1);
      partial[sort].erase(x);
    }
  };
  rec(0);
  return out;
}

inline bool is_injective(const Homomorphism& h) {
  for (const auto& s : h.source.signature.sorts) {
    std::set<int> seen;
    for (int x : h.source.carrier(s))
      if (!seen.insert(h.apply(s, x)).second) return false;
  }
  return true;
}

inline bool is_surjective(const Homomorphism& h) {
  for (const auto& s : h.source.signature.sorts) {
    std::set<int> image;
    for (int x : h.source.carrier(s)) image.insert(h.apply(s, x));
    if (image.size() != h.target.carrier(s).size()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Products

struct ProductResult {
  PartialStructure product;
  std::vector<Homomorphism> projections;
};

// Terminal structure: singleton carriers, total functions, full relations.
inline PartialStructure terminal_structure(const std::string& name,
                                           const Signature& sig) {
  PartialStructure t;
  t.signature_name = name;
  t.signature = sig;
  for (const auto& s : sig.sorts) t.carriers[s] = {0};
  for (const auto& f : sig.functions)
    t.functions[f.name][Tuple(f.arg_sorts.size(), 0)] = 0;
  for (const auto& r : sig.relations)
    t.relations[r.name].insert(Tuple(r.arg_sorts.size(), 0));
  return t;
}

// Finite product; the empty product is the terminal structure.  Elements of
// the product are mixed-radix ranks of component tuples, so ids are dense.
inline ProductResult product(const std::vector<PartialStructure>& factors,
                             const std::string& name, const Signature& sig) {
  ProductResult res;
  if (factors.empty()) {
    res.product = terminal_structure(name, sig);
    return res;
  }
  const size_t n = factors.size();
  PartialStructure p;
  p.signature_name = name;
  p.signature = sig;

  // Per sort: rank <-> component-position tuples.
  std::map<std::string, std::vector<Tuple>> grid;  // sort -> list of positions
  for (const auto& s : sig.sorts) {
    std::vector<Tuple> tuples{{}};
    for (const auto& f : factors) {
      std::vector<Tuple> next;
      for (const auto& t : tuples)
        for (size_t i = 0; i < f.carrier(s).size(); ++i) {
          Tuple u = t;
          u.push_back(static_cast<int>(i));
          next.push_back(std::move(u));
        }
      tuples = std::move(next);
    }
    grid[s] = std::move(tuples);
    auto& c = p.carriers[s];
    for (size_t i = 0; i < grid[s].size(); ++i) c.push_back(static_cast<int>(i));
  }

  auto rank = [&](const std::string& sort, const Tuple& pos) {
    const auto& g = grid.at(sort);
    auto it = std::lower_bound(g.begin(), g.end(), pos);
    return static_cast<int>(it - g.begin());
  };
  auto elem_at = [&](const PartialStructure& f, const std::string& sort,
                     int pos) { return f.carrier(sort)[pos]; };

  for (const auto& f : sig.functions) {
    auto& table = p.functions[f.name];
    std::function<void(size_t, Tuple&)> rec = [&](size_t i, Tuple& args) {
      if (i == f.arg_sorts.size()) {
        // Defined iff defined in every component.
        Tuple value_pos;
        for (size_t k = 0; k < n; ++k) {
          Tuple comp_args;
          for (size_t j = 0; j < args.size(); ++j) {
            int pos = grid.at(f.arg_sorts[j])[args[j]][k];
            comp_args.push_back(elem_at(factors[k], f.arg_sorts[j], pos));
          }
          auto ft = factors[k].functions.find(f.name);
          if (ft == factors[k].functions.end()) return;
          auto it = ft->second.find(comp_args);
          if (it == ft->second.end()) return;
          const auto& rc = factors[k].carrier(f.result_sort);
          value_pos.push_back(static_cast<int>(
              std::lower_bound(rc.begin(), rc.end(), it->second) -
              rc.begin()));
        }
        table[args] = rank(f.result_sort, value_pos);
        return;
      }
      for (int id : p.carrier(f.arg_sorts[i])) {
        args.push_back(id);
        rec(i + 1, args);
        args.pop_back();
      }
    };
    Tuple args;
    rec(0, args);
    if (table.empty()) p.functions.erase(f.name);
  }

  for (const auto& r : sig.relations) {
    auto& table = p.relations[r.name];
    std::function<void(size_t, Tuple&)> rec = [&](size_t i, Tuple& args) {
      if (i == r.arg_sorts.size()) {
        for (size_t k = 0; k < n; ++k) {
          Tuple comp_args;
          for (size_t j = 0; j < args.size(); ++j) {
            int pos = grid.at(r.arg_sorts[j])[args[j]][k];
            comp_args.push_back(elem_at(factors[k], r.arg_sorts[j], pos));
          }
          auto rt = factors[k].relations.find(r.name);
          if (rt == factors[k].relations.end() || !rt->second.count(comp_args))
            return;
        }
        table.insert(args);
        return;
      }
      for (int id : p.carrier(r.arg_sorts[i])) {
        args.push_back(id);
        rec(i + 1, args);
        args.pop_back();
      }
    };
    Tuple args;
    rec(0, args);
    if (table.empty()) p.relations.erase(r.name);
  }

  res.product = p;
  for (size_t k = 0; k < n; ++k) {
    Homomorphism proj{p, factors[k], {}};
    for (const auto& s : sig.sorts) {
      auto& mp = proj.maps[s];
      for (int id : p.carrier(s))
        mp[id] = elem_at(factors[k], s, grid.at(s)[id][k]);
    }
    res.projections.push_back(std::move(proj));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Closed monos, generated closed submodels, dense/closed factorization

enum class MonoStatus { NotMono, Closed, NotClosed };

struct ClosedMonoCheck {
  MonoStatus status;
  std::string witness_symbol;  // when NotClosed
  Tuple witness_args;          // source-side arguments
};

// h is a closed mono when it is injective and reflects definedness and
// relation membership elementwise.
inline ClosedMonoCheck is_closed_mono(const Homomorphism& h) {
  if (!is_injective(h)) return {MonoStatus::NotMono, "", {}};
  const auto& a = h.source;
  const auto& b = h.target;
  for (const auto& f : a.signature.functions) {
    auto bt = b.functions.find(f.name);
    if (bt == b.functions.end()) continue;
    std::function<bool(size_t, Tuple&)> rec = [&](size_t i, Tuple& args) {
      if (i == f.arg_sorts.size()) {
        Tuple image = h.apply_tuple(f.arg_sorts, args);
        if (!bt->second.count(image)) return true;
        auto at = a.functions.find(f.name);
        return at != a.functions.end() && at->second.count(args) > 0;
      }
      for (int id : a.carrier(f.arg_sorts[i])) {
        args.push_back(id);
        bool ok = rec(i + 1, args);
        args.pop_back();
        if (!ok) return false;
      }
      return true;
    };
    Tuple args;
    if (!rec(0, args)) {
      // Re-walk to extract the witness tuple.
      std::function<bool(size_t, Tuple&)> find = [&](size_t i, Tuple& cur) {
        if (i == f.arg_sorts.size()) {
          Tuple image = h.apply_tuple(f.arg_sorts, cur);
          if (!bt->second.count(image)) return false;
          auto at = a.functions.find(f.name);
          return at == a.functions.end() || at->second.count(cur) == 0;
        }
        for (int id : a.carrier(f.arg_sorts[i])) {
          cur.push_back(id);
          if (find(i + 1, cur)) return true;
          cur.pop_back();
        }
        return false;
      };
      Tuple cur;
      find(0, cur);
      return {MonoStatus::NotClosed, f.name, cur};
    }
  }
  for (const auto& r : a.signature.relations) {
    auto bt = b.relations.find(r.name);
    if (bt == b.relations.end()) continue;
    std::function<bool(size_t, Tuple&)> find = [&](size_t i, Tuple& cur) {
      if (i == r.arg_sorts.size()) {
        if (!bt->second.count(h.apply_tuple(r.arg_sorts, cur))) return false;
        auto at = a.relations.find(r.name);
        return at == a.relations.end() || at->second.count(cur) == 0;
      }
      for (int id : a.carrier(r.arg_sorts[i])) {
        cur.push_back(id);
        if (find(i + 1, cur)) return true;
        cur.pop_back();
      }
      return false;
    };
    Tuple cur;
    if (find(0, cur)) return {MonoStatus::NotClosed, r.name, cur};
  }
  return {MonoStatus::Closed, "", {}};
}

struct SubmodelResult {
  PartialStructure submodel;
  Homomorphism inclusion;
};

// Least subset containing the seed and closed under defined applications
// (so it contains every element expressible as a term image over the seed),
// with the induced tables.
inline SubmodelResult closed_submodel_generated(
    const PartialStructure& b, const std::map<std::string, std::set<int>>& seed) {
  std::map<std::string, std::set<int>> cur;
  for (const auto& s : b.signature.sorts) cur[s];
  for (const auto& [s, ids] : seed) {
    for (int id : ids)
      if (!b.has_elem(s, id))
        throw ElaborationError("seed element outside carrier of " + s);
    cur[s].insert(ids.begin(), ids.end());
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [name, table] : b.functions) {
      const FunctionDecl* f = b.signature.function(name);
      for (const auto& [args, value] : table) {
        bool inside = true;
        for (size_t i = 0; i < args.size(); ++i)
          if (!cur[f->arg_sorts[i]].count(args[i])) {
            inside = false;
            break;
          }
        if (inside && cur[f->result_sort].insert(value).second) changed = true;
      }
    }
  }

  PartialStructure sub;
  sub.signature_name = b.signature_name;
  sub.signature = b.signature;
  for (const auto& [s, ids] : cur)
    sub.carriers[s] = std::vector<int>(ids.begin(), ids.end());
  for (const auto& [name, table] : b.functions) {
    const FunctionDecl* f = b.signature.function(name);
    auto& st = sub.functions[name];
    for (const auto& [args, value] : table) {
      bool inside = true;
      for (size_t i = 0; i < args.size(); ++i)
        if (!cur[f->arg_sorts[i]].count(args[i])) {
          inside = false;
          break;
        }
      if (inside) st[args] = value;  // value is inside by closure
    }
    if (st.empty()) sub.functions.erase(name);
  }
  for (const auto& [name, table] : b.relations) {
    const RelationDecl* r = b.signature.relation(name);
    auto& st = sub.relations[name];
    for (const auto& args : table) {
      bool inside = true;
      for (size_t i = 0; i < args.size(); ++i)
        if (!cur[r->arg_sorts[i]].count(args[i])) {
          inside = false;
          break;
        }
      if (inside) st.insert(args);
    }
    if (st.empty()) sub.relations.erase(name);
  }

  Homomorphism inc{sub, b, {}};
  for (const auto& s : b.signature.sorts) {
    auto& mp = inc.maps[s];
    for (int id : sub.carrier(s)) mp[id] = id;
  }
  return {std::move(sub), std::move(inc)};
}

// h is dense when the closed submodel generated by its image is the whole
// target.
inline bool is_dense(const Homomorphism& h) {
  std::map<std::string, std::set<int>> image;
  for (const auto& s : h.source.signature.sorts)
    for (int x : h.source.carrier(s)) image[s].insert(h.apply(s, x));
  SubmodelResult r = closed_submodel_generated(h.target, image);
  for (const auto& s : h.target.signature.sorts)
    if (r.submodel.carrier(s).size() != h.target.carrier(s).size())
      return false;
  return true;
}

struct Factorization {
  Homomorphism dense;
  Homomorphism closed;  // closed mono; closed after dense equals the input
};

inline Factorization factorize_dense_closed(const Homomorphism& h) {
  std::map<std::string, std::set<int>> image;
  for (const auto& s : h.source.signature.sorts)
    for (int x : h.source.carrier(s)) image[s].insert(h.apply(s, x));
  SubmodelResult mid = closed_submodel_generated(h.target, image);
  Homomorphism e{h.source, mid.submodel, h.maps};
  return {std::move(e), std::move(mid.inclusion)};
}

// ---------------------------------------------------------------------------
// Reducts

// Reduct along a signature translation: carriers and tables pulled back
// from the target structure.
inline PartialStructure reduct(const PartialStructure& m,
                               const TheoryMorphism& rho,
                               const std::string& name, const Signature& src) {
  PartialStructure out;
  out.signature_name = name;
  out.signature = src;
  for (const auto& s : src.sorts) out.carriers[s] = m.carrier(rho.sort(s));
  for (const auto& f : src.functions) {
    auto it = m.functions.find(rho.function(f.name));
    if (it == m.functions.end() || it->second.empty()) continue;
    out.functions[f.name] = it->second;
  }
  for (const auto& r : src.relations) {
    auto it = m.relations.find(rho.relation(r.name));
    if (it == m.relations.end() || it->second.empty()) continue;
    out.relations[r.name] = it->second;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism

inline std::optional<Homomorphism> inverse_map(const Homomorphism& h) {
  if (!is_injective(h) || !is_surjective(h)) return std::nullopt;
  Homomorphism inv{h.target, h.source, {}};
  for (const auto& s : h.source.signature.sorts) {
    auto& mp = inv.maps[s];
    for (int x : h.source.carrier(s)) mp[h.apply(s, x)] = x;
  }
  return inv;
}

// True when this particular hom is an isomorphism (bijective with a
// structure-reflecting inverse).
inline bool is_isomorphism(const Homomorphism& h) {
  auto inv = inverse_map(h);
  return inv && check_hom(*inv);
}

// Searches for an isomorphism; first finds bijective homs in enumeration
// order and verifies the inverse is a hom.
inline std::optional<Homomorphism> iso_check(const PartialStructure& a,
                                             const PartialStructure& b) {
  for (const auto& s : a.signature.sorts)
    if (a.carrier(s).size() != b.carrier(s).size()) return std::nullopt;
  for (auto& h : enumerate_homs(a, b))
    if (is_isomorphism(h)) return h;
  return std::nullopt;
}

}  // namespace phl
