#pragma once

// Shared test fixtures: corpus loading and small concrete structures.

#include <map>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <phl/json_io.hpp>
#include <phl/parser.hpp>
#include <phl/structure.hpp>

namespace fixtures {

inline std::string corpus_path(const std::string& name) {
  return std::string(PHL_CORPUS_DIR) + "/" + name;
}

inline phl::ParsedTheory load_corpus(const std::string& name) {
  return phl::parse_theory(phl::load_text_file(corpus_path(name)));
}

inline phl::Theory corpus_theory(const std::string& name) {
  return std::get<phl::Theory>(load_corpus(name));
}

inline phl::RelativeTheory corpus_relative(const std::string& name) {
  return std::get<phl::RelativeTheory>(load_corpus(name));
}

// n-element chain 0 < 1 < ... < n-1 over the poset signature.
inline phl::PartialStructure chain_poset(int n) {
  phl::PartialStructure m;
  m.signature_name = "pos";
  m.signature = corpus_theory("pos.phl").signature;
  for (int i = 0; i < n; ++i) m.carriers["*"].push_back(i);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.relations["leq"].insert({i, j});
  return m;
}

// n mutually incomparable elements (only reflexive pairs).
inline phl::PartialStructure antichain_poset(int n) {
  phl::PartialStructure m;
  m.signature_name = "pos";
  m.signature = corpus_theory("pos.phl").signature;
  for (int i = 0; i < n; ++i) m.carriers["*"].push_back(i);
  for (int i = 0; i < n; ++i) m.relations["leq"].insert({i, i});
  return m;
}

// Poset from an explicit order relation on {0..n-1}; pairs are the full
// relation table (caller includes reflexive pairs or asks for closure).
inline phl::PartialStructure poset_from_pairs(int n,
                                              std::set<phl::Tuple> pairs) {
  phl::PartialStructure m;
  m.signature_name = "pos";
  m.signature = corpus_theory("pos.phl").signature;
  for (int i = 0; i < n; ++i) m.carriers["*"].push_back(i);
  m.relations["leq"] = std::move(pairs);
  return m;
}

// The category with three objects A,B,C and generating arrows f:A->B,
// g:B->C.  Objects 0,1,2; morphisms: identities 0,1,2 then f=3, g=4, gf=5.
// Composition is written c2.c1 (apply c1 first).
inline phl::PartialStructure three_category() {
  phl::PartialStructure m;
  m.signature_name = "cat";
  m.signature = corpus_theory("cat.phl").signature;
  m.carriers["ob"] = {0, 1, 2};
  m.carriers["mor"] = {0, 1, 2, 3, 4, 5};
  m.functions["id"] = {{{0}, 0}, {{1}, 1}, {{2}, 2}};
  m.functions["d"] = {{{0}, 0}, {{1}, 1}, {{2}, 2}, {{3}, 0}, {{4}, 1}, {{5}, 0}};
  m.functions["c"] = {{{0}, 0}, {{1}, 1}, {{2}, 2}, {{3}, 1}, {{4}, 2}, {{5}, 2}};
  auto& comp = m.functions["."];
  auto dom = [&](int k) { return m.functions["d"].at({k}); };
  auto cod = [&](int k) { return m.functions["c"].at({k}); };
  auto compose_pair = [&](int b, int a) -> int {
    // b after a, both in {0..5}; defined when dom(b) == cod(a).
    if (b <= 2) return a;  // identity on the left
    if (a <= 2) return b;  // identity on the right
    return 5;              // g after f
  };
  for (int b = 0; b < 6; ++b)
    for (int a = 0; a < 6; ++a)
      if (dom(b) == cod(a)) comp[{b, a}] = compose_pair(b, a);
  return m;
}

// Windowed additive monoid on {lo..hi}: element id v-lo stands for the
// integer v, e is 0, and x.y is x+y when the sum stays inside the window.
// With with_inverse, inv is negation wherever -v stays inside the window.
inline phl::PartialStructure window_monoid(int lo, int hi, bool with_inverse) {
  phl::PartialStructure m;
  m.signature_name = with_inverse ? "moninv" : "mon";
  m.signature = corpus_theory(with_inverse ? "moninv.phl" : "mon.phl").signature;
  auto id_of = [&](int v) { return v - lo; };
  for (int v = lo; v <= hi; ++v) m.carriers["*"].push_back(id_of(v));
  m.functions["e"] = {{{}, id_of(0)}};
  for (int a = lo; a <= hi; ++a)
    for (int b = lo; b <= hi; ++b)
      if (lo <= a + b && a + b <= hi)
        m.functions["."][{id_of(a), id_of(b)}] = id_of(a + b);
  if (with_inverse)
    for (int a = lo; a <= hi; ++a)
      if (lo <= -a && -a <= hi) m.functions["inv"][{id_of(a)}] = id_of(-a);
  return m;
}

// Bare one-sorted set over the set1 signature.
inline phl::PartialStructure bare_set(int n) {
  phl::PartialStructure m;
  m.signature_name = "set1";
  m.signature = corpus_theory("set1.phl").signature;
  for (int i = 0; i < n; ++i) m.carriers["*"].push_back(i);
  return m;
}

// Parses a single term over the given context.
inline phl::Term parse_term(const std::string& src, const phl::Signature& sig,
                            const phl::Context& ctx) {
  phl::HornFormula phi = phl::parse_atoms("(" + src + ")!", sig, ctx);
  return std::get<phl::EqAtom>(phi.atoms[0]).lhs;
}

// Random poset on 1..max_n elements: random upper-triangular edges closed
// under transitivity, so antisymmetry holds by construction.
inline phl::PartialStructure random_poset(std::mt19937& rng, int max_n) {
  int n = std::uniform_int_distribution<int>(1, max_n)(rng);
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  std::bernoulli_distribution edge(0.4);
  for (int i = 0; i < n; ++i) adj[i][i] = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge(rng)) adj[i][j] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (adj[i][k] && adj[k][j]) adj[i][j] = true;
  std::set<phl::Tuple> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (adj[i][j]) pairs.insert({i, j});
  return poset_from_pairs(n, std::move(pairs));
}

}  // namespace fixtures
