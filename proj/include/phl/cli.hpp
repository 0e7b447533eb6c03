#pragma once

// Command-line front end.  Exit codes: 0 success or positive verdict, 1
// negative verdict (Refuted, invalid, Counterexample), 2 Unknown or budget
// exceeded, 3 input or usage error.  Output is deterministic for fixed
// inputs and flags; --seed is recorded verbatim so runs can be labeled.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "phl/birkhoff.hpp"
#include "phl/chase.hpp"
#include "phl/colimit.hpp"
#include "phl/json_io.hpp"
#include "phl/parser.hpp"
#include "phl/printer.hpp"
#include "phl/relalg.hpp"

namespace phl::cli {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInput = 3;

namespace detail {

// Plain commands accept relative theory files at the expanded level.
inline Theory plain_theory(const ParsedTheory& pt) {
  if (std::holds_alternative<Theory>(pt)) return std::get<Theory>(pt);
  return expand_relative_theory(std::get<RelativeTheory>(pt));
}

inline RelativeTheory rel_theory(const ParsedTheory& pt) {
  if (std::holds_alternative<RelativeTheory>(pt))
    return std::get<RelativeTheory>(pt);
  const Theory& t = std::get<Theory>(pt);
  return RelativeTheory{t.name, t, {}, {}};
}

inline ParsedTheory load_theory(const std::string& path) {
  return parse_theory(load_text_file(path));
}

inline RelativeAlgebra algebra_from_file(const RelativeTheory& rt,
                                         const std::string& path) {
  Json j = load_json_file(path);
  RelativeAlgebra a;
  a.theory = rt;
  a.underlying = structure_from_json(j, rt.base.signature);
  a.ops = ops_from_json(j);
  return a;
}

inline Json maps_to_json(const std::map<std::string, std::map<int, int>>& maps) {
  Json out = Json::object();
  for (const auto& [s, mp] : maps) {
    Json rows = Json::array();
    for (const auto& [x, y] : mp) rows.push_back(Json::array({x, y}));
    out[s] = std::move(rows);
  }
  return out;
}

inline std::string tuple_text(const Tuple& t) {
  std::ostringstream ss;
  ss << "[";
  for (size_t i = 0; i < t.size(); ++i) ss << (i ? ", " : "") << t[i];
  ss << "]";
  return ss.str();
}

inline void carrier_lines(std::ostringstream& ss, const PartialStructure& m) {
  for (const auto& [s, c] : m.carriers)
    ss << "carrier " << s << ": " << c.size() << "\n";
}

// Emits either the JSON document or the prepared text block, prefixing the
// recorded seed when one was supplied.
struct Emitter {
  std::ostream* out;
  bool json;
  std::optional<long long> seed;

  void emit(Json j, const std::string& text) const {
    if (json) {
      if (seed) {
        Json tagged;
        tagged["seed"] = *seed;
        for (auto& [k, v] : j.items()) tagged[k] = v;
        j = std::move(tagged);
      }
      *out << dump_json(j);
    } else {
      if (seed) *out << "seed: " << *seed << "\n";
      *out << text;
    }
  }
};

// Chain-shaped diagram file: {"shape": "chain", "objects": [paths...],
// "arrows": [{"maps": {sort: [[x, y], ...]}}, ...]} with one arrow per
// consecutive pair.  Object paths are resolved against the file's directory.
inline Diagram diagram_from_json(const Json& j, const Signature& sig,
                                 const std::filesystem::path& dir) {
  if (j.value("shape", std::string{"chain"}) != "chain")
    throw JsonError("unsupported diagram shape");
  if (!j.contains("objects") || !j.at("objects").is_array() ||
      j.at("objects").empty())
    throw JsonError("diagram needs a nonempty objects array");
  std::vector<PartialStructure> objs;
  for (const auto& p : j.at("objects")) {
    std::filesystem::path path = p.get<std::string>();
    if (path.is_relative()) path = dir / path;
    objs.push_back(structure_from_json(load_json_file(path.string()), sig));
  }
  int n = static_cast<int>(objs.size());
  Json arrows = j.contains("arrows") ? j.at("arrows") : Json::array();
  if (static_cast<int>(arrows.size()) != n - 1)
    throw JsonError("chain diagram needs one arrow per consecutive pair");
  std::vector<Homomorphism> steps;
  for (int i = 0; i + 1 < n; ++i) {
    Homomorphism h;
    h.source = objs[i];
    h.target = objs[i + 1];
    const Json& maps = arrows[i].contains("maps") ? arrows[i].at("maps")
                                                  : arrows[i];
    for (const auto& [s, rows] : maps.items()) {
      if (!sig.has_sort(s)) throw JsonError("map for undeclared sort: " + s);
      for (const auto& row : rows) {
        Tuple pair = row.get<Tuple>();
        if (pair.size() != 2) throw JsonError("map rows must be pairs");
        h.maps[s][pair[0]] = pair[1];
      }
    }
    for (const auto& s : sig.sorts) {
      h.maps.try_emplace(s);
      for (int x : h.source.carrier(s))
        if (!h.maps[s].count(x))
          throw JsonError("arrow " + std::to_string(i) + " misses element " +
                          std::to_string(x) + " of sort " + s);
    }
    steps.push_back(std::move(h));
  }
  Diagram d;
  d.shape = chain_category(n);
  d.objects = std::move(objs);
  for (const auto& arrow : d.shape.arrows) {
    Homomorphism h = identity_hom(d.objects[arrow.src]);
    for (int i = arrow.src; i < arrow.tgt; ++i) h = compose(steps[i], h);
    d.arrows.push_back(std::move(h));
  }
  return d;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  using detail::Emitter;

  CLI::App app{"partial Horn logic workbench"};
  app.require_subcommand(1);

  int budget = 10000;
  app.add_option("--budget", budget, "chase step budget (env PHL_BUDGET)")
      ->envname("PHL_BUDGET");
  long long seed = 0;
  CLI::Option* seed_opt =
      app.add_option("--seed", seed, "label the run; recorded in the output");
  bool json_flag = false, text_flag = false;
  CLI::Option* jf = app.add_flag("--json", json_flag, "JSON output");
  CLI::Option* tf = app.add_flag("--text", text_flag, "text output");
  jf->excludes(tf);
  tf->excludes(jf);

  std::string theory_path, model_path, source_path, target_path, hom_path,
      diagram_path, sequent_src, formula_src, gens_src, facts_src,
      condition_name;
  std::vector<std::string> member_paths, candidate_paths, membership_srcs;
  int max_stages = 6, max_arity = 2, max_sub = 12, max_chain = 2;
  bool carrier_sections = false;

  CLI::App* c_check =
      app.add_subcommand("check", "parse and sort-check a theory file");
  c_check->add_option("file", theory_path, "theory file")->required();

  CLI::App* c_eval = app.add_subcommand(
      "eval", "check a structure against a theory or a single sequent");
  c_eval->add_option("file", theory_path, "theory file")->required();
  c_eval->add_option("--model", model_path, "structure JSON")->required();
  c_eval->add_option("--sequent", sequent_src, "sequent to check instead");

  CLI::App* c_prove =
      app.add_subcommand("prove", "decide a sequent through the chase");
  c_prove->add_option("file", theory_path, "theory file")->required();
  c_prove->add_option("--sequent", sequent_src, "sequent source")->required();

  CLI::App* c_chase =
      app.add_subcommand("chase", "saturate a presentation to a model");
  c_chase->add_option("file", theory_path, "theory file")->required();
  c_chase->add_option("--gens", gens_src, "generators, e.g. \"g:mor,f:mor\"");
  c_chase->add_option("--facts", facts_src, "atoms over the generators");

  CLI::App* c_repn = app.add_subcommand(
      "repn", "representing model of a formula in context");
  c_repn->add_option("file", theory_path, "theory file")->required();
  c_repn->add_option("--formula", formula_src, "e.g. \"[x:*] top\"")
      ->required();

  CLI::App* c_hom =
      app.add_subcommand("hom", "enumerate homomorphisms between structures");
  c_hom->add_option("file", theory_path, "theory file")->required();
  c_hom->add_option("--source", source_path, "structure JSON")->required();
  c_hom->add_option("--target", target_path, "structure JSON")->required();

  CLI::App* c_factor = app.add_subcommand(
      "factor", "dense and closed-mono factorization of a homomorphism");
  c_factor->add_option("file", theory_path, "theory file")->required();
  c_factor->add_option("--hom", hom_path, "homomorphism JSON")->required();

  CLI::App* c_colim =
      app.add_subcommand("colim", "colimit of a chain diagram of structures");
  c_colim->add_option("file", theory_path, "theory file")->required();
  c_colim->add_option("--diagram", diagram_path, "diagram JSON")->required();

  CLI::App* c_alg = app.add_subcommand("alg", "relative algebra operations");
  c_alg->require_subcommand(1);
  CLI::App* c_alg_check =
      c_alg->add_subcommand("check", "validate a relative algebra");
  c_alg_check->add_option("file", theory_path, "relative theory file")
      ->required();
  c_alg_check->add_option("--model", model_path, "algebra JSON")->required();
  CLI::App* c_alg_free = c_alg->add_subcommand(
      "free", "free algebra chain over a base structure");
  c_alg_free->add_option("file", theory_path, "relative theory file")
      ->required();
  c_alg_free->add_option("--model", model_path, "base structure JSON")
      ->required();
  c_alg_free->add_option("--max-stages", max_stages, "stage budget");
  CLI::App* c_alg_coeq = c_alg->add_subcommand(
      "coeq", "presented colimit of algebras via the expanded theory");
  c_alg_coeq->add_option("file", theory_path, "relative theory file")
      ->required();
  c_alg_coeq->add_option("--gens", gens_src, "generators");
  c_alg_coeq->add_option("--facts", facts_src, "atoms over the generators");

  CLI::App* c_closure =
      app.add_subcommand("closure", "audit a closure condition on a family");
  c_closure->add_option("file", theory_path, "theory file")->required();
  c_closure
      ->add_option("--condition", condition_name,
                   "one of products, closed-subobjects, u-retracts, "
                   "chain-colimits")
      ->required()
      ->check(CLI::IsMember({"products", "closed-subobjects", "u-retracts",
                             "chain-colimits"}));
  c_closure->add_option("--members", member_paths, "member algebra JSON files")
      ->required();
  c_closure->add_option("--membership", membership_srcs,
                        "membership sequents (intensional mode)");
  c_closure->add_option("--candidates", candidate_paths,
                        "retract candidates (u-retracts)");
  c_closure->add_flag("--carrier-sections", carrier_sections,
                      "accept per-sort carrier sections instead of "
                      "homomorphism sections");
  c_closure->add_option("--max-arity", max_arity, "product arity bound");
  c_closure->add_option("--max-sub", max_sub,
                        "carrier bound for subset enumeration");
  c_closure->add_option("--max-chain", max_chain, "chain length bound");

  for (CLI::App* s : {c_check, c_eval, c_prove, c_chase, c_repn, c_hom,
                      c_factor, c_colim, c_alg, c_alg_check, c_alg_free,
                      c_alg_coeq, c_closure})
    s->fallthrough();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  bool json_default = !(c_check->parsed() || c_eval->parsed() ||
                        c_prove->parsed());
  Emitter emit{&out, json_flag || (json_default && !text_flag),
               seed_opt->count() ? std::optional<long long>(seed)
                                 : std::nullopt};

  try {
    ParsedTheory parsed = detail::load_theory(theory_path);

    if (c_check->parsed()) {
      Json j;
      std::ostringstream ss;
      if (std::holds_alternative<Theory>(parsed)) {
        const Theory& t = std::get<Theory>(parsed);
        j = {{"kind", "theory"},
             {"name", t.name},
             {"sorts", t.signature.sorts.size()},
             {"functions", t.signature.functions.size()},
             {"relations", t.signature.relations.size()},
             {"axioms", t.axioms.size()}};
        ss << "theory " << t.name << "\n";
        ss << "sorts: " << t.signature.sorts.size() << "\n";
        ss << "functions: " << t.signature.functions.size() << "\n";
        ss << "relations: " << t.signature.relations.size() << "\n";
        ss << "axioms: " << t.axioms.size() << "\n";
      } else {
        const RelativeTheory& rt = std::get<RelativeTheory>(parsed);
        check_relative_theory(rt);
        j = {{"kind", "relative"},
             {"name", rt.name},
             {"sorts", rt.base.signature.sorts.size()},
             {"functions", rt.base.signature.functions.size()},
             {"relations", rt.base.signature.relations.size()},
             {"axioms", rt.base.axioms.size()},
             {"operators", rt.operators.size()},
             {"judgments", rt.judgments.size()}};
        ss << "relative theory " << rt.name << "\n";
        ss << "sorts: " << rt.base.signature.sorts.size() << "\n";
        ss << "functions: " << rt.base.signature.functions.size() << "\n";
        ss << "relations: " << rt.base.signature.relations.size() << "\n";
        ss << "axioms: " << rt.base.axioms.size() << "\n";
        ss << "operators: " << rt.operators.size() << "\n";
        ss << "judgments: " << rt.judgments.size() << "\n";
      }
      emit.emit(std::move(j), ss.str());
      return kExitOk;
    }

    if (c_eval->parsed()) {
      Theory t = detail::plain_theory(parsed);
      PartialStructure m =
          structure_from_json(load_json_file(model_path), t.signature);
      Json j;
      std::ostringstream ss;
      if (!sequent_src.empty()) {
        bool valid = true;
        std::optional<Tuple> witness;
        std::string failing;
        for (const Sequent& s : parse_sequent(sequent_src, t.signature)) {
          SequentCheck c = check_sequent(m, s);
          if (!c.valid) {
            valid = false;
            witness = c.witness;
            failing = print_sequent(s);
            break;
          }
        }
        j["valid"] = valid;
        if (!valid) {
          j["sequent"] = failing;
          j["witness"] = *witness;
          ss << "invalid\nsequent: " << failing
             << "\nwitness: " << detail::tuple_text(*witness) << "\n";
        } else {
          ss << "valid\n";
        }
        emit.emit(std::move(j), ss.str());
        return valid ? kExitOk : kExitNegative;
      }
      ModelCheck c = is_model(m, t);
      j["ok"] = c.ok;
      if (c.ok) {
        ss << "model\n";
      } else {
        j["axiom"] = *c.axiom;
        j["sequent"] = print_sequent(t.axioms[*c.axiom]);
        if (c.witness) j["witness"] = *c.witness;
        ss << "not a model\naxiom: " << print_sequent(t.axioms[*c.axiom])
           << "\n";
        if (c.witness) ss << "witness: " << detail::tuple_text(*c.witness)
                          << "\n";
      }
      emit.emit(std::move(j), ss.str());
      return c.ok ? kExitOk : kExitNegative;
    }

    if (c_prove->parsed()) {
      Theory t = detail::plain_theory(parsed);
      std::vector<Sequent> sequents = parse_sequent(sequent_src, t.signature);
      Json results = Json::array();
      std::ostringstream ss;
      int exit_code = kExitOk;
      for (const Sequent& s : sequents) {
        Derivability d = is_phl_theorem(s, t, budget);
        const char* name = d.verdict == Verdict::Proved
                               ? "Proved"
                               : d.verdict == Verdict::Refuted ? "Refuted"
                                                               : "Unknown";
        results.push_back({{"verdict", name}, {"steps", d.steps}});
        ss << name << "\n";
        if (d.verdict == Verdict::Refuted) exit_code = kExitNegative;
        if (d.verdict == Verdict::Unknown && exit_code == kExitOk)
          exit_code = kExitUnknown;
      }
      Json j = results.size() == 1 ? std::move(results[0])
                                   : Json{{"results", std::move(results)}};
      emit.emit(std::move(j), ss.str());
      return exit_code;
    }

    if (c_chase->parsed() || c_repn->parsed() || c_alg_coeq->parsed()) {
      bool coeq = c_alg_coeq->parsed();
      RelativeTheory rt = detail::rel_theory(parsed);
      Theory t = coeq ? expand_relative_theory(rt)
                      : detail::plain_theory(parsed);
      FormulaInContext phi;
      if (c_repn->parsed()) {
        phi = parse_formula(formula_src, t.signature);
      } else {
        phi.context = gens_src.empty()
                          ? Context{}
                          : parse_context("[" + gens_src + "]", t.signature);
        if (!facts_src.empty())
          phi.body = parse_atoms(facts_src, t.signature, phi.context);
      }
      ChaseOutcome outcome = representing_model(phi, t, budget);
      Json j;
      std::ostringstream ss;
      if (!saturated(outcome)) {
        const auto& b = std::get<BudgetExceededResult>(outcome);
        j["outcome"] = "budget-exceeded";
        j["steps"] = b.steps;
        j["classes"] = b.class_counts;
        ss << "budget exceeded after " << b.steps << " steps\n";
        for (const auto& [s, n] : b.class_counts)
          ss << "classes " << s << ": " << n << "\n";
        emit.emit(std::move(j), ss.str());
        return kExitUnknown;
      }
      const SaturatedResult& r = model_of(outcome);
      j["outcome"] = "saturated";
      j["steps"] = r.steps;
      j["generators"] = r.generator_elem;
      ss << "saturated in " << r.steps << " steps\n";
      if (coeq) {
        RelativeAlgebra a = algebra_from_structure(rt, r.model);
        j["algebra"] = algebra_to_json(a.underlying, a.ops);
        detail::carrier_lines(ss, a.underlying);
      } else {
        j["structure"] = structure_to_json(r.model);
        detail::carrier_lines(ss, r.model);
      }
      for (const auto& [g, e] : r.generator_elem)
        ss << "generator " << g << " -> " << e << "\n";
      emit.emit(std::move(j), ss.str());
      return kExitOk;
    }

    if (c_hom->parsed()) {
      Theory t = detail::plain_theory(parsed);
      PartialStructure a =
          structure_from_json(load_json_file(source_path), t.signature);
      PartialStructure b =
          structure_from_json(load_json_file(target_path), t.signature);
      std::vector<Homomorphism> homs = enumerate_homs(a, b);
      Json j;
      j["count"] = homs.size();
      Json list = Json::array();
      for (const auto& h : homs) list.push_back(detail::maps_to_json(h.maps));
      j["homs"] = std::move(list);
      std::ostringstream ss;
      ss << "homomorphisms: " << homs.size() << "\n";
      emit.emit(std::move(j), ss.str());
      return kExitOk;
    }

    if (c_factor->parsed()) {
      Theory t = detail::plain_theory(parsed);
      Homomorphism h =
          hom_from_json(load_json_file(hom_path), t.signature);
      if (!check_hom(h)) throw JsonError("input is not a homomorphism");
      Factorization f = factorize_dense_closed(h);
      Json j;
      j["middle"] = structure_to_json(f.dense.target);
      j["dense"] = detail::maps_to_json(f.dense.maps);
      j["closed"] = detail::maps_to_json(f.closed.maps);
      std::ostringstream ss;
      detail::carrier_lines(ss, f.dense.target);
      emit.emit(std::move(j), ss.str());
      return kExitOk;
    }

    if (c_colim->parsed()) {
      Theory t = detail::plain_theory(parsed);
      Diagram d = detail::diagram_from_json(
          load_json_file(diagram_path), t.signature,
          std::filesystem::path(diagram_path).parent_path());
      ColimitResult c = filtered_colimit(d);
      Json j;
      j["colimit"] = structure_to_json(c.colimit);
      Json legs = Json::array();
      for (const auto& leg : c.legs)
        legs.push_back(detail::maps_to_json(leg.maps));
      j["legs"] = std::move(legs);
      std::ostringstream ss;
      detail::carrier_lines(ss, c.colimit);
      emit.emit(std::move(j), ss.str());
      return kExitOk;
    }

    if (c_alg_check->parsed()) {
      RelativeTheory rt = detail::rel_theory(parsed);
      RelativeAlgebra a = detail::algebra_from_file(rt, model_path);
      AlgebraCheck c = is_relative_algebra(a);
      Json j;
      j["ok"] = c.ok;
      std::ostringstream ss;
      if (c.ok) {
        ss << "relative algebra\n";
      } else {
        j["reason"] = c.reason;
        ss << "not a relative algebra: " << c.reason << "\n";
        if (!c.op.empty()) {
          j["op"] = c.op;
          ss << "op: " << c.op << "\n";
        }
        if (c.tuple) {
          j["tuple"] = *c.tuple;
          ss << "tuple: " << detail::tuple_text(*c.tuple) << "\n";
        }
        if (c.base && c.base->axiom) {
          j["axiom"] = *c.base->axiom;
          ss << "axiom: "
             << print_sequent(rt.base.axioms[*c.base->axiom]) << "\n";
        }
      }
      emit.emit(std::move(j), ss.str());
      return c.ok ? kExitOk : kExitNegative;
    }

    if (c_alg_free->parsed()) {
      RelativeTheory rt = detail::rel_theory(parsed);
      PartialStructure x =
          structure_from_json(load_json_file(model_path), rt.base.signature);
      FreeChainResult r = free_algebra_chain(rt, x, max_stages, budget);
      const char* status =
          r.status == FreeChainResult::Status::Stabilized ? "stabilized"
          : r.status == FreeChainResult::Status::Unstabilized
              ? "unstabilized"
              : "stage-budget-exceeded";
      Json j;
      j["status"] = status;
      j["stage"] = r.stage;
      j["sizes"] = r.sizes;
      std::ostringstream ss;
      ss << status;
      if (r.status == FreeChainResult::Status::Stabilized)
        ss << " at stage " << r.stage;
      ss << "\nsizes:";
      for (size_t n : r.sizes) ss << " " << n;
      ss << "\n";
      if (r.algebra) {
        j["algebra"] = algebra_to_json(r.algebra->underlying, r.algebra->ops);
        j["insertion"] = detail::maps_to_json(r.insertion->maps);
      }
      emit.emit(std::move(j), ss.str());
      return r.status == FreeChainResult::Status::Stabilized ? kExitOk
                                                             : kExitUnknown;
    }

    if (c_closure->parsed()) {
      RelativeTheory rt = detail::rel_theory(parsed);
      ModelFamily fam{rt, {}, {}};
      for (const auto& p : member_paths)
        fam.members.push_back(detail::algebra_from_file(rt, p));
      Signature expanded = expand_relative_theory(rt).signature;
      for (const auto& src : membership_srcs)
        for (Sequent& s : parse_sequent(src, expanded))
          fam.membership.push_back(std::move(s));
      FamilyCheck fc = check_family(fam);
      if (!fc.ok)
        throw ElaborationError("member " + std::to_string(fc.member) +
                               " is not an algebra: " + fc.detail.reason);
      ClosureReport rep;
      if (condition_name == "products") {
        rep = check_products(fam, max_arity);
      } else if (condition_name == "closed-subobjects") {
        rep = check_closed_subobjects(fam, max_sub);
      } else if (condition_name == "u-retracts") {
        std::vector<RelativeAlgebra> candidates;
        for (const auto& p : candidate_paths)
          candidates.push_back(detail::algebra_from_file(rt, p));
        if (candidates.empty()) candidates = fam.members;
        rep = check_u_retracts(fam, candidates,
                               carrier_sections ? SectionMode::Carrier
                                                : SectionMode::Hom);
      } else {
        rep = check_chain_colimits(fam, chains_from_members(fam, max_chain));
      }
      Json j;
      j["condition"] = closure_condition_name(rep.condition);
      j["verdict"] = rep.closed ? "Closed" : "Counterexample";
      std::ostringstream ss;
      ss << closure_condition_name(rep.condition) << ": "
         << (rep.closed ? "Closed" : "Counterexample") << "\n";
      if (rep.witness) {
        Json w;
        w["construction"] = rep.witness->construction;
        w["object"] = algebra_to_json(rep.witness->object.underlying,
                                      rep.witness->object.ops);
        w["list_incompleteness"] = rep.witness->list_incompleteness;
        j["witness"] = std::move(w);
        ss << "construction: " << rep.witness->construction << "\n";
        detail::carrier_lines(ss, rep.witness->object.underlying);
        if (rep.witness->list_incompleteness)
          ss << "note: the chain itself leaves the member list\n";
      }
      j["note"] = rep.note;
      emit.emit(std::move(j), ss.str());
      return rep.closed ? kExitOk : kExitNegative;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  err << "error: no subcommand handled\n";
  return kExitInput;
}

}  // namespace phl::cli
