#include <algorithm>
#include <sstream>

#include "picgrp/autgroup.hpp"
#include "picgrp/brauertree.hpp"
#include "picgrp/cli.hpp"
#include "picgrp/dade.hpp"
#include "picgrp/error.hpp"
#include "picgrp/fusion.hpp"
#include "picgrp/identify.hpp"
#include "picgrp/picard.hpp"

namespace picgrp::cli {

using nlohmann::ordered_json;

namespace {

const char* kImportedStabilization = "vertex stabilization by the induced tree automorphism is an imported hypothesis";

template <class T>
const T* get(const JobSpec& job, const char* key) {
  auto it = job.params.find(key);
  return it == job.params.end() ? nullptr : std::get_if<T>(&it->second);
}

std::int64_t need_int(const JobSpec& job, const char* key) { return *get<std::int64_t>(job, key); }

AbelianPGroup group_of(const JobSpec& job, std::uint64_t bound) {
  std::vector<int> exps;
  for (auto e : *get<std::vector<std::int64_t>>(job, "P")) {
    if (e < 1 || e > 62) throw input_error("BadExponents", "exponents must lie in 1..62");
    exps.push_back(static_cast<int>(e));
  }
  std::sort(exps.rbegin(), exps.rend());
  return bound ? make_group(need_int(job, "p"), exps, static_cast<std::int64_t>(bound))
               : make_group(need_int(job, "p"), exps);
}

std::vector<Automorphism> gens_of(const JobSpec& job, const AbelianPGroup& P) {
  std::vector<Automorphism> out;
  if (const auto* ms = get<std::vector<Images>>(job, "E"))
    for (const auto& m : *ms) out.push_back(make_automorphism(P, m));
  return out;
}

CoefficientProfile profile_of(const JobSpec& job) {
  if (const auto* m = get<std::int64_t>(job, "m")) return CoefficientProfile::of(static_cast<int>(*m));
  return CoefficientProfile::large();
}

ordered_json base(const JobSpec& job) {
  ordered_json r;
  r["schema"] = kSchema;
  r["command"] = command_name(job.command);
  r["job"] = print_job(job);
  return r;
}

void put_group(ordered_json& r, const std::string& theorem, std::size_t order, const AbstractGroupId& id,
               const std::vector<std::string>& assumptions) {
  r["theorem"] = theorem;
  r["group_order"] = order;
  r["invariant_factors"] = id.is_abelian() ? ordered_json(id.invariants) : ordered_json::array();
  r["identification"] = id.describe();
  r["certificate"] = id.certificate.empty() ? ordered_json(nullptr) : ordered_json(id.certificate);
  // the three flags are always present, whether or not they apply
  auto mentions = [&](const std::string& needle) {
    return std::any_of(assumptions.begin(), assumptions.end(),
                       [&](const std::string& a) { return a.find(needle) != std::string::npos; });
  };
  ordered_json flags;
  flags["char_zero"] = mentions("char(O) = 0");
  flags["k_large_enough"] = mentions("k assumed large enough");
  flags["vertex_stabilization_imported"] = mentions("vertex stabilization");
  flags["notes"] = assumptions;
  r["assumptions"] = flags;
}

ordered_json constituents_json(const std::vector<Constituent>& cs) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : cs) {
    ordered_json x;
    x["role"] = c.role;
    x["order"] = c.group.order();
    x["identification"] = c.id.describe();
    arr.push_back(x);
  }
  return arr;
}

ordered_json picard_json(const JobSpec& job, const PicardReport& rep) {
  auto r = base(job);
  auto notes = rep.notes;
  if (rep.upper_bound) notes.push_back("the assembled group is an upper bound for Pic(B)");
  put_group(r, rep.statement, rep.group.order(), rep.id, notes);
  r["details"]["input"] = rep.input;
  r["details"]["upper_bound"] = rep.upper_bound;
  r["details"]["constituents"] = constituents_json(rep.constituents);
  return r;
}

// Brute-force normalizer by definition, for the oracle flag.
bool normalizer_by_definition_agrees(const InertialPair& pair) {
  const auto& G = pair.aut;
  std::vector<Index> expect;
  for (Index g = 0; g < G.order(); ++g) {
    bool ok = true;
    const Index gi = G.inv(g);
    for (Index e : pair.E.elements) ok = ok && pair.E.contains(G.mul(G.mul(g, e), gi));
    if (ok) expect.push_back(g);
  }
  return expect == pair.normalizer.elements;
}

ordered_json run_aut(const JobSpec& job, const Options& opts) {
  const auto P = group_of(job, 0);
  auto r = base(job);
  const std::uint64_t order = aut_order(P);
  const std::uint64_t limit = opts.bound ? opts.bound : kAutMaterializeLimit;
  const bool oracle = opts.oracle || (get<std::string>(job, "mode") && *get<std::string>(job, "mode") == "oracle");
  ordered_json details;
  details["P"] = P.name();
  if (order <= limit) {
    const auto aut = enumerate_aut(P, AutMode::fast, limit);
    const auto id = identify(aut);
    put_group(r, "Aut(P) as invertible matrices respecting p^max(e_i-e_j,0) | M[i][j]", aut.order(), id, {});
    details["materialized"] = true;
    ordered_json gens = ordered_json::array();
    for (Index g : aut.generators()) gens.push_back(aut.label(g));
    details["generators"] = gens;
    if (oracle) {
      const auto brute = enumerate_aut(P, AutMode::oracle, limit);
      bool same = brute.order() == aut.order();
      for (Index k = 0; same && k < aut.order(); ++k) same = brute.automorphism(k) == aut.automorphism(k);
      details["oracle_agrees"] = same;
    }
  } else {
    AbstractGroupId id;
    id.kind = AbstractGroupId::Kind::opaque;
    id.order = static_cast<std::size_t>(order);
    put_group(r, "Aut(P) as invertible matrices respecting p^max(e_i-e_j,0) | M[i][j]", order, id, {});
    details["materialized"] = false;
  }
  r["details"] = details;
  return r;
}

ordered_json run_fusion(const JobSpec& job, const Options& opts) {
  const auto P = group_of(job, 0);
  const auto pair = build_inertial_pair(P, gens_of(job, P));
  auto r = base(job);
  const auto out = out_PF(pair);
  put_group(r, "Out(P,F) = N_Aut(P)(E)/E, foc(F) = [P,E]", out.order(), identify(out), {});
  ordered_json d;
  d["P"] = P.name();
  d["E_order"] = pair.e_order();
  d["E"] = identify(pair.e_group).describe();
  d["p_prime"] = pair.is_p_prime;
  d["cyclic"] = pair.is_cyclic;
  d["free_action"] = pair.acts_freely;
  d["frobenius"] = pair.is_frobenius;
  d["foc_order"] = pair.foc.size();
  d["foc_is_P"] = pair.foc.is_whole();
  d["P_mod_foc"] = quotient_invariants(P, pair.foc).name();
  d["normalizer_order"] = pair.normalizer.size();
  if (opts.oracle && pair.aut.order() <= (std::size_t{1} << 16))
    d["oracle_normalizer_agrees"] = normalizer_by_definition_agrees(pair);
  r["details"] = d;
  return r;
}

Index find_out_element(const DadeContextPtr& ctx, const Images& m) {
  const auto& D = ctx->D();
  auto norm = [&](const Images& im) {
    Images out;
    for (const auto& col : im) out.push_back(D.reduce(col));
    return out;
  };
  if (m.size() != D.rank()) throw input_error("BadMatrix", "expected " + std::to_string(D.rank()) + " generator images");
  const auto target = norm(m);
  for (Index g = 0; g < ctx->out_group().order(); ++g)
    if (norm(ctx->images(g)) == target) return g;
  throw input_error("BadElement", "matrix is not in the acting group");
}

std::string pair_string(const DadePair& a) {
  std::string s = "([";
  for (std::size_t i = 0; i < a.v.size(); ++i) s += (i ? "," : "") + std::to_string(a.v[i]);
  return s + "], " + a.context->out_group().label(a.phi) + ")";
}

ordered_json run_dade(const JobSpec& job) {
  DadeContextPtr ctx;
  if (const auto* c = get<std::string>(job, "context")) {
    if (get<std::int64_t>(job, "free_rank") || get<std::vector<std::int64_t>>(job, "torsion") ||
        get<std::vector<Images>>(job, "action"))
      throw input_error("TypeError", "give either 'context' or a presentation, not both");
    ctx = *c == "trivial" ? contexts::trivial() : *c == "z3_by_c2" ? contexts::z3_by_c2() : contexts::free_rank_one();
  } else {
    PresentedAbelian D;
    if (const auto* f = get<std::int64_t>(job, "free_rank")) D.free_rank = static_cast<int>(*f);
    if (const auto* t = get<std::vector<std::int64_t>>(job, "torsion")) D.torsion = *t;
    std::vector<Images> gens;
    if (const auto* a = get<std::vector<Images>>(job, "action")) gens = *a;
    ctx = DadeContext::generated("presented", D, gens);
  }
  auto r = base(job);
  const auto T = torsion_subgroup(ctx);
  const std::size_t tor = T->d_order() * T->out_group().order();
  if (tor <= (std::size_t{1} << 16)) {
    const auto g = dade_group(T);
    put_group(r, "pairs (v,phi) in D x| Out with (v,phi)(w,psi) = (v + phi.w, phi psi)", g.group.order(),
              identify(g.group), {});
  } else {
    AbstractGroupId id;
    id.kind = AbstractGroupId::Kind::opaque;
    id.order = tor;
    put_group(r, "pairs (v,phi) in D x| Out with (v,phi)(w,psi) = (v + phi.w, phi psi)", tor, id, {});
  }
  ordered_json d;
  d["context"] = ctx->label();
  d["D"] = ctx->D().name();
  d["torsion"] = T->D().name();
  d["out_order"] = ctx->out_group().order();
  d["out"] = identify(ctx->out_group()).describe();
  if (get<std::vector<std::int64_t>>(job, "v") || get<Images>(job, "phi")) {
    auto v = ctx->zero();
    if (const auto* x = get<std::vector<std::int64_t>>(job, "v")) v = *x;
    const Index phi = get<Images>(job, "phi") ? find_out_element(ctx, *get<Images>(job, "phi")) : 0;
    const auto a = make_pair(ctx, v, phi);
    d["pair"] = pair_string(a);
    d["inverse"] = pair_string(inverse(a));
    const auto o = pair_order(a, 100000);
    d["pair_order"] = o ? ordered_json(*o) : ordered_json("infinite");
    d["commutator"] = pair_string(commutator(make_pair(ctx, v, 0), make_pair(ctx, ctx->zero(), phi)));
    d["commutator_identity"] = commutator_identity_check(ctx, v, phi);
    if (get<std::vector<std::int64_t>>(job, "w") || get<Images>(job, "psi")) {
      auto w = ctx->zero();
      if (const auto* x = get<std::vector<std::int64_t>>(job, "w")) w = *x;
      const Index psi = get<Images>(job, "psi") ? find_out_element(ctx, *get<Images>(job, "psi")) : 0;
      d["compose"] = pair_string(compose(a, make_pair(ctx, w, psi)));
    }
  }
  r["details"] = d;
  return r;
}

HookState parse_state(const std::string& s) {
  return HookState{s[0] == 'U' ? HookState::Kind::U : HookState::Kind::V, std::stoi(s.substr(1))};
}

ordered_json run_tree(const JobSpec& job) {
  const auto tree = build_tree(*get<TreeSpec>(job, "vertices"));
  const auto autos = tree_automorphisms(tree);
  auto r = base(job);
  put_group(r, "Omega(U_i) = V_rho(i), Omega(V_i) = U_sigma(i); every hook state has period 2|I|", autos.size(),
            identify(FiniteGroupTable::cyclic(autos.size())), {kImportedStabilization});
  ordered_json d;
  d["edges"] = tree.edge_count();
  d["rho"] = cycle_string(tree, tree.rho_positions());
  d["sigma"] = cycle_string(tree, tree.sigma_positions());
  d["render"] = render(tree);
  std::int64_t per = 0;
  for (int e : tree.labels())
    for (auto k : {HookState::Kind::U, HookState::Kind::V}) per = period(HookState{k, e}, tree);
  d["period"] = per;
  ordered_json autj = ordered_json::array();
  for (const auto& a : autos) {
    std::string s;
    for (auto [from, to] : a.perm) s += (s.empty() ? "" : " ") + std::to_string(from) + "->" + std::to_string(to);
    ordered_json x;
    x["perm"] = s;
    x["stabilized_vertices"] = a.stabilized_vertices;
    autj.push_back(x);
  }
  d["automorphisms"] = autj;
  if (const auto* st = get<std::string>(job, "state")) d["walk"] = render_walk(walk(parse_state(*st), tree, per));
  if (const auto* n = get<std::int64_t>(job, "n")) {
    ordered_json pc;
    for (auto [e, s] : parity_classes(tree, *n)) pc["U" + std::to_string(e)] = s.str();
    d["parity_classes"] = pc;
    if (const auto* pi = get<std::vector<std::int64_t>>(job, "pi")) {
      if (pi->size() != tree.edge_count())
        throw input_error("TypeError", "pi must list the image of every edge label in increasing label order");
      std::map<int, int> perm;
      for (std::size_t k = 0; k < pi->size(); ++k) perm[tree.labels()[k]] = static_cast<int>((*pi)[k]);
      const auto v = morita_parity_check(tree, perm, *n);
      ordered_json pv;
      pv["n"] = *n;
      pv["admissible"] = v.admissible;
      pv["residue"] = v.residue;
      pv["modulus"] = v.modulus;
      pv["stabilized_vertex"] = v.vertex;
      pv["note"] = v.note;
      d["parity_check"] = pv;
    }
  }
  r["details"] = d;
  return r;
}

ordered_json run_verify(const JobSpec& job) {
  const auto P = group_of(job, 0);
  const auto pair = build_inertial_pair(P, gens_of(job, P));
  auto r = base(job);
  ordered_json d;
  const auto& what = *get<std::string>(job, "what");
  d["what"] = what;
  if (what == "frobenius-sequence") {
    const auto fb = pic_frobenius_bound(pair);
    const auto ex = verify_exact_sequence(fb.sequence);
    put_group(r, "1 -> Hom(E,k^x) -> Hom(E,k^x) x| N_E -> N_E -> 1 is exact", fb.report.group.order(), fb.report.id,
              fb.report.notes);
    d["verified"] = ex.ok;
    ordered_json nodes = ordered_json::array();
    for (const auto& n : ex.nodes) nodes.push_back(n.detail + (n.exact ? "" : " [not exact]"));
    d["nodes"] = nodes;
  } else {
    const auto dg = local_block_diagram(pair, profile_of(job));
    const auto rep = verify_picard_diagram(dg);
    put_group(r, "rows 1 -> Out_P(A) -> T(B) <= L(B) <= E(B) are exact and the squares commute",
              dg.e_row.phi.source.order(), identify(dg.e_row.phi.source), {"char(O) = 0 assumed"});
    d["verified"] = rep.ok;
    d["failures"] = rep.failures;
    d["notes"] = rep.notes;
  }
  r["details"] = d;
  return r;
}

ordered_json dispatch(const JobSpec& job, const Options& opts) {
  switch (job.command) {
    case Command::aut: return run_aut(job, opts);
    case Command::fusion: return run_fusion(job, opts);
    case Command::pic_local: {
      const auto P = group_of(job, 0);
      return picard_json(job, pic_local(build_inertial_pair(P, gens_of(job, P)), profile_of(job)));
    }
    case Command::pic_frobenius: {
      const auto P = group_of(job, 0);
      const auto fb = pic_frobenius_bound(build_inertial_pair(P, gens_of(job, P)));
      auto r = picard_json(job, fb.report);
      r["details"]["sequence_exact"] = verify_exact_sequence(fb.sequence).ok;
      return r;
    }
    case Command::pic_cyclic: {
      const auto P = group_of(job, 0);
      const auto* d = get<std::int64_t>(job, "d");
      if (d && *d < 1) throw input_error("BadDivisor", "d must be positive");
      return picard_json(job, pic_cyclic(build_inertial_pair(P, gens_of(job, P)), d ? static_cast<std::size_t>(*d) : 0));
    }
    case Command::pic_kleinfour: {
      const auto& c = *get<std::string>(job, "case");
      const auto which = c == "A4" ? KleinFourCase::A4 : c == "A5_principal" ? KleinFourCase::A5_principal
                                                                              : KleinFourCase::nilpotent;
      return picard_json(job, pic_kleinfour(which, profile_of(job)));
    }
    case Command::pic_nilpotent: return picard_json(job, pic_nilpotent(group_of(job, 0), profile_of(job)));
    case Command::dade: return run_dade(job);
    case Command::tree: return run_tree(job);
    case Command::verify: return run_verify(job);
  }
  throw std::logic_error("unhandled command");
}

void text_value(std::ostream& o, const ordered_json& v, const std::string& indent);

void text_object(std::ostream& o, const ordered_json& obj, const std::string& indent) {
  for (const auto& [k, v] : obj.items()) {
    o << indent << k << ":";
    if (v.is_object() || (v.is_array() && !v.empty() && v[0].is_object())) {
      o << "\n";
      text_value(o, v, indent + "  ");
    } else if (v.is_string() && v.get<std::string>().find('\n') != std::string::npos) {
      o << "\n";
      std::stringstream ss(v.get<std::string>());
      std::string line;
      while (std::getline(ss, line)) o << indent << "  " << line << "\n";
    } else {
      o << " ";
      text_value(o, v, indent);
      o << "\n";
    }
  }
}

void text_value(std::ostream& o, const ordered_json& v, const std::string& indent) {
  if (v.is_object()) {
    text_object(o, v, indent);
  } else if (v.is_array() && !v.empty() && v[0].is_object()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      o << indent << "- " << i << "\n";
      text_object(o, v[i], indent + "  ");
    }
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) o << ", ";
      if (v[i].is_string()) o << v[i].get<std::string>();
      else o << v[i].dump();
    }
    if (v.empty()) o << "-";
  } else if (v.is_string()) {
    o << v.get<std::string>();
  } else if (v.is_boolean()) {
    o << (v.get<bool>() ? "yes" : "no");
  } else if (v.is_null()) {
    o << "-";
  } else {
    o << v.dump();
  }
}

}  // namespace

Report run(const JobSpec& job, const Options& opts) {
  try {
    return Report{dispatch(job, opts), 0};
  } catch (const Error& e) {
    auto r = base(job);
    const int code = e.error_class() == ErrorClass::hypothesis ? 2 : 1;
    r["error"]["kind"] = e.kind();
    r["error"]["class"] = code == 2 ? "hypothesis" : "input";
    r["error"]["message"] = e.what();
    r["exit_code"] = code;
    return Report{r, code};
  }
}

std::string format_text(const ordered_json& report) {
  std::ostringstream o;
  text_object(o, report, "");
  return o.str();
}

std::string format_structured(const ordered_json& report) { return report.dump(2) + "\n"; }

std::string digest(const ordered_json& r) {
  std::string s = r.value("command", std::string("?"));
  if (r.contains("error")) return s + ";error=" + r["error"]["kind"].get<std::string>();
  s += ";order=" + r["group_order"].dump() + ";id=" + r["identification"].get<std::string>();
  if (r.contains("details")) {
    const auto& d = r["details"];
    if (d.contains("verified")) s += std::string(";verified=") + (d["verified"].get<bool>() ? "yes" : "no");
    if (d.contains("period")) s += ";period=" + d["period"].dump();
    if (d.contains("commutator")) s += ";commutator=" + d["commutator"].get<std::string>();
    if (d.contains("P_mod_foc")) s += ";P/foc=" + d["P_mod_foc"].get<std::string>();
  }
  return s;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"a4-local", "[pic-local]\np = 2\nP = [1,1]\nE = [[[0,1],[1,1]]]\n", "pic-local;order=6;id=S3"},
      {"a4-kleinfour", "[pic-kleinfour]\ncase = A4\n", "pic-kleinfour;order=6;id=S3"},
      {"a5-principal", "[pic-kleinfour]\ncase = A5_principal\n", "pic-kleinfour;order=2;id=cyclic(2)"},
      {"kleinfour-nilpotent", "[pic-kleinfour]\ncase = nilpotent\nm = 1\n", "pic-kleinfour;order=24;id=S4"},
      {"nilpotent-c2", "[pic-nilpotent]\np = 2\nP = [1]\nm = 1\n", "pic-nilpotent;order=2;id=cyclic(2)"},
      {"nilpotent-c4-m1", "[pic-nilpotent]\np = 2\nP = [2]\nm = 1\n", "pic-nilpotent;order=4;id=abelian(2,2)"},
      {"c9-inversion-cyclic", "[pic-cyclic]\np = 3\nP = [2]\nE = [[[8]]]\nd = 2\n", "pic-cyclic;order=6;id=cyclic(6)"},
      {"c9-order6-cyclic", "[pic-cyclic]\np = 3\nP = [2]\nE = [[[2]]]\nd = 1\n", "pic-cyclic;order=1;id=cyclic(1)"},
      {"c9-inversion-local", "[pic-local]\np = 3\nP = [2]\nE = [[[8]]]\n", "pic-local;order=6;id=cyclic(6)"},
      {"c5-frobenius", "[pic-frobenius]\np = 5\nP = [1]\nE = [[[2]]]\n", "pic-frobenius;order=4;id=cyclic(4)"},
      {"c9-fusion", "[fusion]\np = 3\nP = [2]\nE = [[[8]]]\n", "fusion;order=3;id=cyclic(3);P/foc=1"},
      {"kleinfour-aut", "[aut]\np = 2\nP = [1,1]\n", "aut;order=6;id=S3"},
      {"star3", "[tree]\nvertices = rho(1 2 3); (1); (2); (3)\nstate = U1\nn = 2\npi = [2,3,1]\n",
       "tree;order=3;id=cyclic(3);period=6"},
      {"path2", "[tree]\nvertices = (1); (1 2); (2)\nstate = V1\n", "tree;order=2;id=cyclic(2);period=4"},
      {"z3-dade", "[dade]\ncontext = z3_by_c2\nv = [1]\nphi = [[-1]]\n",
       "dade;order=6;id=S3;commutator=([2], 0)"},
      {"kleinfour-sequence", "[verify]\nwhat = frobenius-sequence\np = 2\nP = [1,1]\nE = [[[0,1],[1,1]]]\n",
       "verify;order=6;id=S3;verified=yes"},
      {"kleinfour-diagram", "[verify]\nwhat = local-diagram\np = 2\nP = [1,1]\nE = [[[0,1],[1,1]]]\n",
       "verify;order=6;id=S3;verified=yes"},
      {"not-frobenius", "[pic-frobenius]\np = 2\nP = [1,1]\nE = []\n", "pic-frobenius;error=NotFrobenius"},
  };
  return entries;
}

int check_catalog(std::ostream& out, const Options& opts) {
  int failures = 0;
  for (const auto& e : catalog()) {
    const auto jobs = parse_input(e.input);
    const bool round_trip = jobs.size() == 1 && parse_input(print_job(jobs[0])) == jobs;
    const auto rep = run(jobs[0], opts);
    const auto got = digest(rep.data);
    const bool ok = round_trip && got == e.digest;
    failures += ok ? 0 : 1;
    out << e.name << ": " << (ok ? "ok" : "MISMATCH") << " " << got;
    if (!round_trip) out << " (round trip failed)";
    if (got != e.digest) out << " (expected " << e.digest << ")";
    out << "\n";
  }
  out << catalog().size() - static_cast<std::size_t>(failures) << "/" << catalog().size() << " catalog entries match\n";
  return failures ? 1 : 0;
}

int run_jobs(const std::vector<JobSpec>& jobs, const Options& opts, bool structured, std::ostream& out) {
  int worst = 0;
  ordered_json all = ordered_json::array();
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const auto rep = run(jobs[k], opts);
    worst = std::max(worst, rep.exit_code);
    if (structured) {
      all.push_back(rep.data);
    } else {
      if (k) out << "\n";
      out << format_text(rep.data);
    }
  }
  if (structured) out << format_structured(jobs.size() == 1 ? all[0] : all);
  return worst;
}

}  // namespace picgrp::cli
