#pragma once

// Finite diagram shapes, filtered colimits of partial structures by the
// span-relation quotient, and formula-level coproducts/coequalizers of
// representing models, with a finite universal-property verifier.

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "phl/chase.hpp"
#include "phl/structure.hpp"
#include "phl/syntax.hpp"

namespace phl {

class ColimitError : public std::runtime_error {
 public:
  explicit ColimitError(const std::string& msg) : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// Finite categories

// Every morphism is listed explicitly, identities included; composition is
// total on composable pairs.  Objects are 0..objects-1.
struct FiniteCategory {
  struct Arrow {
    int src = 0;
    int tgt = 0;
    bool operator==(const Arrow&) const = default;
  };

  int objects = 0;
  std::vector<Arrow> arrows;
  std::vector<int> identity;                       // object -> arrow index
  std::map<std::pair<int, int>, int> composition;  // (g, f) -> g after f

  int compose(int g, int f) const {
    auto it = composition.find({g, f});
    if (it == composition.end())
      throw ColimitError("missing composite in shape");
    return it->second;
  }

  // Checks the category laws; throws ColimitError on violation.
  void validate() const {
    if (static_cast<int>(identity.size()) != objects)
      throw ColimitError("one identity arrow per object required");
    for (const auto& a : arrows)
      if (a.src < 0 || a.src >= objects || a.tgt < 0 || a.tgt >= objects)
        throw ColimitError("arrow endpoint out of range");
    int n = static_cast<int>(arrows.size());
    for (int i = 0; i < objects; ++i) {
      int e = identity[i];
      if (e < 0 || e >= n || arrows[e].src != i || arrows[e].tgt != i)
        throw ColimitError("identity arrow has wrong endpoints");
    }
    for (int g = 0; g < n; ++g)
      for (int f = 0; f < n; ++f) {
        bool composable = arrows[f].tgt == arrows[g].src;
        auto it = composition.find({g, f});
        if (!composable) {
          if (it != composition.end())
            throw ColimitError("composite of non-composable pair");
          continue;
        }
        if (it == composition.end())
          throw ColimitError("missing composite in shape");
        int gf = it->second;
        if (gf < 0 || gf >= n || arrows[gf].src != arrows[f].src ||
            arrows[gf].tgt != arrows[g].tgt)
          throw ColimitError("composite has wrong endpoints");
      }
    for (int f = 0; f < n; ++f) {
      if (compose(identity[arrows[f].tgt], f) != f ||
          compose(f, identity[arrows[f].src]) != f)
        throw ColimitError("identity law fails");
    }
    for (int h = 0; h < n; ++h)
      for (int g = 0; g < n; ++g)
        for (int f = 0; f < n; ++f) {
          if (arrows[f].tgt != arrows[g].src || arrows[g].tgt != arrows[h].src)
            continue;
          if (compose(h, compose(g, f)) != compose(compose(h, g), f))
            throw ColimitError("associativity fails");
        }
  }
};

inline FiniteCategory discrete_category(int n) {
  FiniteCategory c;
  c.objects = n;
  for (int i = 0; i < n; ++i) {
    c.arrows.push_back({i, i});
    c.identity.push_back(i);
    c.composition[{i, i}] = i;
  }
  return c;
}

// The poset 0 <= 1 <= ... <= n-1 as a category: one arrow per pair i <= j.
inline FiniteCategory chain_category(int n) {
  FiniteCategory c;
  c.objects = n;
  std::map<std::pair<int, int>, int> idx;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      idx[{i, j}] = static_cast<int>(c.arrows.size());
      c.arrows.push_back({i, j});
    }
  for (int i = 0; i < n; ++i) c.identity.push_back(idx[{i, i}]);
  for (int g = 0; g < static_cast<int>(c.arrows.size()); ++g)
    for (int f = 0; f < static_cast<int>(c.arrows.size()); ++f)
      if (c.arrows[f].tgt == c.arrows[g].src)
        c.composition[{g, f}] = idx[{c.arrows[f].src, c.arrows[g].tgt}];
  return c;
}

// Two objects with k parallel arrows 0 -> 1 (arrows: id0, id1, then the
// parallel ones).  Not filtered for k >= 2.
inline FiniteCategory parallel_pair(int k = 2) {
  FiniteCategory c;
  c.objects = 2;
  c.arrows.push_back({0, 0});
  c.arrows.push_back({1, 1});
  c.identity = {0, 1};
  c.composition[{0, 0}] = 0;
  c.composition[{1, 1}] = 1;
  for (int i = 0; i < k; ++i) {
    int a = static_cast<int>(c.arrows.size());
    c.arrows.push_back({0, 1});
    c.composition[{a, 0}] = a;
    c.composition[{1, a}] = a;
  }
  return c;
}

// Nonempty, every pair of objects has an upper bound, and every parallel
// pair of arrows is coequalized by some arrow.
inline bool is_filtered(const FiniteCategory& c) {
  if (c.objects == 0) return false;
  int n = static_cast<int>(c.arrows.size());
  for (int i = 0; i < c.objects; ++i)
    for (int j = 0; j < c.objects; ++j) {
      bool found = false;
      for (int u = 0; u < n && !found; ++u)
        for (int v = 0; v < n && !found; ++v)
          if (c.arrows[u].src == i && c.arrows[v].src == j &&
              c.arrows[u].tgt == c.arrows[v].tgt)
            found = true;
      if (!found) return false;
    }
  for (int f = 0; f < n; ++f)
    for (int g = 0; g < n; ++g) {
      if (f == g || c.arrows[f].src != c.arrows[g].src ||
          c.arrows[f].tgt != c.arrows[g].tgt)
        continue;
      bool found = false;
      for (int h = 0; h < n && !found; ++h)
        if (c.arrows[h].src == c.arrows[f].tgt &&
            c.compose(h, f) == c.compose(h, g))
          found = true;
      if (!found) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Diagrams

struct Diagram {
  FiniteCategory shape;
  std::vector<PartialStructure> objects;  // one per shape object
  std::vector<Homomorphism> arrows;       // one per shape arrow
};

// Shape laws, endpoint agreement, homomorphism property, functoriality.
// Throws ColimitError on violation.
inline void check_diagram(const Diagram& d) {
  d.shape.validate();
  if (d.objects.size() != static_cast<size_t>(d.shape.objects) ||
      d.arrows.size() != d.shape.arrows.size())
    throw ColimitError("assignment size does not match shape");
  for (size_t i = 1; i < d.objects.size(); ++i)
    if (!(d.objects[i].signature == d.objects[0].signature))
      throw ColimitError("diagram objects over different signatures");
  for (size_t a = 0; a < d.arrows.size(); ++a) {
    const auto& arr = d.shape.arrows[a];
    if (!(d.arrows[a].source == d.objects[arr.src]) ||
        !(d.arrows[a].target == d.objects[arr.tgt]))
      throw ColimitError("arrow endpoints disagree with assignment");
    if (!check_hom(d.arrows[a]))
      throw ColimitError("diagram arrow is not a homomorphism");
  }
  for (int i = 0; i < d.shape.objects; ++i)
    if (d.arrows[d.shape.identity[i]].maps != identity_hom(d.objects[i]).maps)
      throw ColimitError("identity arrow not assigned the identity");
  for (const auto& [pair, gf] : d.shape.composition) {
    auto [g, f] = pair;
    if (d.arrows[gf].maps != compose(d.arrows[g], d.arrows[f]).maps)
      throw ColimitError("assignment is not functorial");
  }
}

struct ColimitResult {
  PartialStructure colimit;
  std::vector<Homomorphism> legs;  // one per shape object
};

// Carriers are stage elements modulo the zig-zag closure of the span
// relation (generated by identifying x with its image under every arrow);
// a function is defined at a class tuple iff some stage defines it there,
// and a relation holds iff some stage has it.
inline ColimitResult filtered_colimit(const Diagram& d) {
  check_diagram(d);
  if (!is_filtered(d.shape)) throw ColimitError("shape is not filtered");

  // Node per (stage, sort, element), in deterministic stage/carrier order.
  std::map<std::string, std::map<std::pair<int, int>, int>> node_of;
  std::vector<int> parent;
  for (int i = 0; i < d.shape.objects; ++i)
    for (const auto& s : d.objects[i].signature.sorts)
      for (int x : d.objects[i].carrier(s)) {
        node_of[s][{i, x}] = static_cast<int>(parent.size());
        parent.push_back(static_cast<int>(parent.size()));
      }
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (size_t a = 0; a < d.arrows.size(); ++a) {
    int i = d.shape.arrows[a].src, j = d.shape.arrows[a].tgt;
    for (const auto& s : d.objects[i].signature.sorts)
      for (int x : d.objects[i].carrier(s)) {
        int u = find(node_of[s][{i, x}]);
        int v = find(node_of[s][{j, d.arrows[a].apply(s, x)}]);
        if (u != v) parent[u] = v;
      }
  }

  // Contiguous class ids per sort, in order of first node occurrence.
  std::map<std::string, std::map<std::pair<int, int>, int>> cls;
  PartialStructure out;
  out.signature_name = d.objects[0].signature_name;
  out.signature = d.objects[0].signature;
  for (const auto& s : out.signature.sorts) {
    std::map<int, int> root_to_class;
    auto& by_elem = cls[s];
    for (const auto& [key, node] : node_of[s]) {
      int r = find(node);
      auto [it, fresh] = root_to_class.emplace(
          r, static_cast<int>(root_to_class.size()));
      by_elem[key] = it->second;
      (void)fresh;
    }
    out.carriers[s] = {};
    for (int k = 0; k < static_cast<int>(root_to_class.size()); ++k)
      out.carriers[s].push_back(k);
  }

  for (int i = 0; i < d.shape.objects; ++i) {
    const PartialStructure& m = d.objects[i];
    for (const auto& [name, table] : m.functions) {
      const FunctionDecl* f = out.signature.function(name);
      for (const auto& [args, value] : table) {
        Tuple key;
        for (size_t k = 0; k < args.size(); ++k)
          key.push_back(cls[f->arg_sorts[k]][{i, args[k]}]);
        int v = cls[f->result_sort][{i, value}];
        auto [it, fresh] = out.functions[name].emplace(std::move(key), v);
        if (!fresh && it->second != v)
          throw ColimitError("function images disagree across stages");
      }
    }
    for (const auto& [name, table] : m.relations) {
      const RelationDecl* r = out.signature.relation(name);
      for (const auto& args : table) {
        Tuple key;
        for (size_t k = 0; k < args.size(); ++k)
          key.push_back(cls[r->arg_sorts[k]][{i, args[k]}]);
        out.relations[name].insert(std::move(key));
      }
    }
  }

  ColimitResult res{std::move(out), {}};
  for (int i = 0; i < d.shape.objects; ++i) {
    Homomorphism leg{d.objects[i], res.colimit, {}};
    for (const auto& s : res.colimit.signature.sorts) {
      auto& mp = leg.maps[s];
      for (int x : d.objects[i].carrier(s)) mp[x] = cls[s][{i, x}];
    }
    res.legs.push_back(std::move(leg));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Formula-level coproducts and coequalizers

// Renames the contexts apart (a clashing name gets the first free name_1,
// name_2, ...) and conjoins the bodies.  The k-th summand occupies the k-th
// block of the result context, in order.
inline FormulaInContext coproduct_formula(
    const std::vector<FormulaInContext>& phis, const Signature& sig) {
  FormulaInContext out;
  std::set<std::string> used;
  std::vector<std::map<std::string, Term>> binds(phis.size());
  for (size_t k = 0; k < phis.size(); ++k) {
    for (const auto& v : phis[k].context) {
      std::string name = v.name;
      for (int i = 1; used.count(name); ++i)
        name = v.name + "_" + std::to_string(i);
      used.insert(name);
      out.context.push_back(Variable{name, v.sort});
      binds[k].emplace(v.name, Term::var(name, v.sort));
    }
  }
  for (size_t k = 0; k < phis.size(); ++k) {
    HornFormula body = substitute(phis[k].body, binds[k], sig, out.context);
    for (auto& atom : body.atoms) out.body.atoms.push_back(std::move(atom));
  }
  return out;
}

namespace detail {

// The sequent whose provability makes a term tuple a morphism of
// representing models: tgt's formula must prove src's formula at the terms
// and every term's definedness.
inline Sequent term_tuple_side_condition(const FormulaInContext& src,
                                         const FormulaInContext& tgt,
                                         const std::vector<Term>& terms,
                                         const Signature& sig) {
  if (terms.size() != src.context.size())
    throw ElaborationError("term tuple length does not match source context");
  HornFormula goal = apply_terms(src, terms, sig, tgt.context);
  for (size_t i = 0; i < terms.size(); ++i) {
    std::string got = sort_of(terms[i], sig, tgt.context);
    if (got != src.context[i].sort)
      throw ElaborationError("term " + std::to_string(i) + " has sort " + got +
                             ", expected " + src.context[i].sort);
    goal.atoms.push_back(defined(terms[i]));
  }
  return Sequent{tgt.context, tgt.body, dedup_atoms(goal)};
}

}  // namespace detail

// Coequalizer of the two morphisms named by the term tuples h, hp: the
// target formula extended with the equations h_i = hp_i.  Both tuples'
// side conditions must be Proved within the budget.
inline FormulaInContext coequalizer_formula(const FormulaInContext& src,
                                            const FormulaInContext& tgt,
                                            const std::vector<Term>& h,
                                            const std::vector<Term>& hp,
                                            const Theory& t, int budget) {
  for (const auto* terms : {&h, &hp}) {
    Sequent side =
        detail::term_tuple_side_condition(src, tgt, *terms, t.signature);
    Derivability der = is_phl_theorem(side, t, budget);
    if (der.verdict == Verdict::Refuted)
      throw ColimitError("coequalizer side condition refuted");
    if (der.verdict == Verdict::Unknown)
      throw ColimitError("coequalizer side condition undetermined in budget");
  }
  FormulaInContext out{tgt.context, tgt.body};
  for (size_t i = 0; i < h.size(); ++i)
    out.body.atoms.push_back(EqAtom{h[i], hp[i]});
  return out;
}

// ---------------------------------------------------------------------------
// Universal property by enumeration

namespace detail {

using MapsKey = std::map<std::string, std::map<int, int>>;

// All cocones over d into m, each recorded as the tuple of leg maps.  The
// empty diagram has exactly one (empty) cocone.
inline std::set<std::vector<MapsKey>> enumerate_cocones(
    const Diagram& d, const PartialStructure& m) {
  std::set<std::vector<MapsKey>> cocones;
  std::vector<std::vector<Homomorphism>> per_obj;
  for (const auto& obj : d.objects) {
    per_obj.push_back(enumerate_homs(obj, m));
    if (per_obj.back().empty()) return cocones;
  }
  std::vector<size_t> pick(d.objects.size(), 0);
  while (true) {
    bool compatible = true;
    for (size_t a = 0; a < d.arrows.size() && compatible; ++a) {
      int i = d.shape.arrows[a].src, j = d.shape.arrows[a].tgt;
      if (compose(per_obj[j][pick[j]], d.arrows[a]).maps !=
          per_obj[i][pick[i]].maps)
        compatible = false;
    }
    if (compatible) {
      std::vector<MapsKey> key;
      for (size_t i = 0; i < pick.size(); ++i)
        key.push_back(per_obj[i][pick[i]].maps);
      cocones.insert(std::move(key));
    }
    size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < per_obj[i].size()) break;
      pick[i] = 0;
    }
    if (i == pick.size()) break;
  }
  return cocones;
}

}  // namespace detail

// Checks, for each test model M, that precomposition with the legs is a
// bijection from Hom(candidate, M) onto the cocones over d into M.  The
// legs must themselves be homomorphisms forming a cocone.
inline bool verify_universal_property(
    const Diagram& d, const PartialStructure& candidate,
    const std::vector<Homomorphism>& legs,
    const std::vector<PartialStructure>& testModels) {
  check_diagram(d);
  if (legs.size() != d.objects.size())
    throw ColimitError("one leg per diagram object required");
  for (size_t i = 0; i < legs.size(); ++i) {
    if (!(legs[i].source == d.objects[i]) || !(legs[i].target == candidate))
      throw ColimitError("leg endpoints disagree with diagram and candidate");
    if (!check_hom(legs[i])) return false;
  }
  for (size_t a = 0; a < d.arrows.size(); ++a) {
    int i = d.shape.arrows[a].src, j = d.shape.arrows[a].tgt;
    if (compose(legs[j], d.arrows[a]).maps != legs[i].maps) return false;
  }
  for (const auto& m : testModels) {
    std::set<std::vector<detail::MapsKey>> cocones =
        detail::enumerate_cocones(d, m);
    std::set<std::vector<detail::MapsKey>> image;
    std::vector<Homomorphism> homs = enumerate_homs(candidate, m);
    for (const auto& g : homs) {
      std::vector<detail::MapsKey> key;
      for (const auto& leg : legs) key.push_back(compose(g, leg).maps);
      image.insert(std::move(key));
    }
    if (image.size() != homs.size()) return false;  // not injective
    if (image != cocones) return false;
  }
  return true;
}

}  // namespace phl
