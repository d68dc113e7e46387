// Acceptance suite: one PASS/FAIL line per criterion.  An optional argument
// is the path of the picgrp executable, used for the whole-tool checks.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "picgrp/autgroup.hpp"
#include "picgrp/brauertree.hpp"
#include "picgrp/cli.hpp"
#include "picgrp/dade.hpp"
#include "picgrp/error.hpp"
#include "picgrp/fusion.hpp"
#include "picgrp/identify.hpp"
#include "picgrp/picard.hpp"

using namespace picgrp;

namespace {

std::string g_cli;

struct Check {
  bool ok = true;
  std::ostringstream log;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) log << "first failure: " << what;
      ok = false;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// The certificate is a bijection catalog group -> G preserving products.
bool certificate_verifies(const FiniteGroupTable& G, const AbstractGroupId& id) {
  if (id.kind != AbstractGroupId::Kind::named) return false;
  const auto C = catalog_group(id.name);
  if (!C || C->order() != G.order() || id.certificate.size() != G.order()) return false;
  std::set<Index> image(id.certificate.begin(), id.certificate.end());
  if (image.size() != G.order()) return false;
  for (Index a = 0; a < C->order(); ++a)
    for (Index b = 0; b < C->order(); ++b)
      if (id.certificate[C->mul(a, b)] != G.mul(id.certificate[a], id.certificate[b])) return false;
  return true;
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p <= n; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

struct SurveyEntry {
  AbelianPGroup P;
  std::size_t aut_order = 0;
  std::vector<InertialPair> pairs;
};

std::vector<SurveyEntry>& survey_cache() {
  static std::vector<SurveyEntry> cache;
  return cache;
}

void build_survey(std::int64_t bound) {
  auto& cache = survey_cache();
  if (!cache.empty()) return;
  for (auto p : primes_up_to(bound))
    for (const auto& e : oracle::abelian_shapes(p, bound)) {
      if (e.empty()) continue;
      const auto P = make_group(p, e);
      const auto aut = enumerate_aut(P);
      cache.push_back({P, aut.order(), frobenius_complement_survey(P, aut)});
    }
}

// Criterion 1: Klein four with C3 gives S3 (certified); A5 principal gives C2.
Check criterion1() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const auto V = make_group(2, {1, 1});
  const auto pair = build_inertial_pair(V, std::vector<Automorphism>{make_automorphism(V, {{0, 1}, {1, 1}})});
  const auto local = pic_local(pair);
  c.expect(local.group.order() == 6, "A4 order");
  c.expect(!local.id.is_abelian(), "A4 nonabelian");
  c.expect(local.id.kind == AbstractGroupId::Kind::named && local.id.name == "S3", "A4 identified S3");
  c.expect(certificate_verifies(local.group, local.id), "A4 certificate");
  const auto a5 = pic_kleinfour(KleinFourCase::A5_principal);
  c.expect(a5.group.order() == 2 && a5.id.kind == AbstractGroupId::Kind::cyclic, "A5 gives C2");
  const double dt = seconds_since(t0);
  c.expect(dt < 1.0, "under 1 s");
  c.log << (c.ok ? "" : "; ") << "A4 -> " << local.id.describe() << ", A5 -> " << a5.id.describe() << ", "
        << dt << " s";
  return c;
}

// Criterion 2: |pic_local| = |N_Aut(P)(E)| and the character sequence is exact
// for every Frobenius pair with |P| <= 32.
Check criterion2() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  build_survey(32);
  std::size_t count = 0;
  for (const auto& s : survey_cache())
    for (const auto& pair : s.pairs) {
      if (!pair.is_frobenius) continue;
      ++count;
      const auto rep = pic_local(pair);
      const std::string tag = s.P.name() + " |E|=" + std::to_string(pair.e_order());
      c.expect(rep.group.order() == pair.normalizer.size(), tag + " order");
      const auto ext = character_extension(pair, pair.e_order());
      c.expect(verify_exact_sequence(ext.sequence).ok, tag + " exactness");
      c.expect(ext.product.group.order() == rep.group.order(), tag + " sequence middle term");
    }
  const double dt = seconds_since(t0);
  c.expect(count > 0, "survey nonempty");
  c.expect(dt < 60.0, "under 60 s");
  c.log << (c.ok ? "" : "; ") << count << " Frobenius pairs over " << survey_cache().size() << " groups, " << dt
        << " s";
  return c;
}

// Criterion 3: cyclic P, every nontrivial p'-subgroup E: pic_cyclic = pic_local.
Check criterion3() {
  Check c;
  std::size_t count = 0;
  for (auto [p, e] : std::vector<std::pair<std::int64_t, int>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {3, 3}}) {
    const auto P = make_group(p, {e});
    const auto aut = enumerate_aut(P);
    std::set<std::vector<Index>> seen;
    for (Index g = 1; g < aut.order(); ++g) {
      const auto k = aut.element_order(g);
      if (k % static_cast<std::size_t>(p) == 0) continue;
      const std::vector<Index> gens{g};
      const auto E = generated_subgroup(aut, gens);
      if (!seen.insert(E.elements).second) continue;
      ++count;
      const auto pair = build_inertial_pair(P, aut, E);
      const auto local = pic_local(pair);
      const auto cyc = pic_cyclic(pair, E.size());
      const std::string tag = P.name() + " |E|=" + std::to_string(E.size());
      c.expect(same_type(local.id, cyc.id), tag + " types agree");
      c.expect(find_isomorphism(local.group, cyc.group).has_value(), tag + " explicit isomorphism");
      c.expect(local.id.is_abelian(), tag + " abelian");
      c.expect(local.group.order() == aut.order(), tag + " order |Aut(P)|");
    }
  }
  c.log << (c.ok ? "" : "; ") << count << " pairs";
  return c;
}

// Criterion 4: |Aut(P)| against the order formula for |P| <= 128, and the
// element set against brute force for |P| <= 16.
Check criterion4() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t enumerated = 0, counted = 0, brute = 0;
  for (auto p : primes_up_to(128))
    for (const auto& e : oracle::abelian_shapes(p, 128)) {
      if (e.empty()) continue;
      const auto P = make_group(p, e);
      const auto expected = oracle::aut_order_formula(p, e);
      const std::string tag = P.name();
      if (expected > kAutMaterializeLimit) {
        ++counted;
        c.expect(static_cast<unsigned __int128>(aut_order(P)) == expected, tag + " counted order");
        continue;
      }
      ++enumerated;
      const auto aut = enumerate_aut(P);
      c.expect(aut.order() == static_cast<std::size_t>(expected), tag + " enumerated order");
      if (P.order() <= 16) {
        ++brute;
        const auto ref = oracle::brute_force_aut(P);
        std::set<std::vector<std::int64_t>> got;
        std::vector<std::int64_t> m(P.rank() * P.rank());
        for (Index g = 0; g < aut.order(); ++g) {
          aut.raw_matrix(g, m);
          got.insert(m);
        }
        c.expect(got == ref, tag + " brute-force element set");
      }
    }
  const double dt = seconds_since(t0);
  c.expect(dt < 120.0, "under 120 s");
  c.log << (c.ok ? "" : "; ") << enumerated << " enumerated, " << counted << " counted only (|Aut| > "
        << kAutMaterializeLimit << "), " << brute << " brute-forced, " << dt << " s";
  return c;
}

// Criterion 5: fusion facts over the |P| <= 32 survey.
Check criterion5() {
  Check c;
  build_survey(32);
  std::size_t free_nontrivial = 0, abelian_free = 0;
  for (const auto& s : survey_cache()) {
    bool saw_trivial = false;
    for (const auto& pair : s.pairs) {
      const std::string tag = s.P.name() + " |E|=" + std::to_string(pair.e_order());
      // the survey only returns free actions; recheck that directly
      const auto elems = pair.e_elements();
      for (const auto& phi : elems)
        if (!phi.is_identity())
          for (const auto& x : s.P.elements())
            if (x != s.P.zero()) c.expect(phi.apply(x) != x, tag + " acts freely");
      if (pair.e_order() > 1) {
        ++free_nontrivial;
        std::vector<GroupElement> gens;
        for (const auto& phi : elems)
          for (const auto& x : s.P.elements()) gens.push_back(s.P.add(phi.apply(x), s.P.neg(x)));
        const auto brute_foc = subgroup_generated(s.P, gens);
        c.expect(brute_foc.is_whole(), tag + " [P,E] = P by brute force");
        c.expect(pair.foc.is_whole(), tag + " foc = P");
      }
      if (pair.e_group.is_abelian()) {
        ++abelian_free;
        bool cyclic = false;
        for (Index g = 0; g < pair.e_group.order() && !cyclic; ++g)
          cyclic = pair.e_group.element_order(g) == pair.e_group.order();
        c.expect(cyclic, tag + " abelian free subgroup is cyclic");
        c.expect(pair.is_cyclic, tag + " flagged cyclic");
      }
      if (pair.e_order() == 1) {
        saw_trivial = true;
        const auto& out = pair.out_pf;
        c.expect(out.group.order() == s.aut_order, tag + " |Out(P,F)| = |Aut(P)|");
        c.expect(out.projection.source.order() == s.aut_order && out.projection.is_injective(),
                 tag + " projection Aut(P) -> Out(P,F) is an isomorphism");
      }
    }
    c.expect(saw_trivial, s.P.name() + " trivial subgroup surveyed");
  }
  c.log << (c.ok ? "" : "; ") << free_nontrivial << " nontrivial free pairs, " << abelian_free
        << " abelian free subgroups";
  return c;
}

std::vector<std::int64_t> random_vector(const PresentedAbelian& D, std::mt19937_64& rng) {
  std::vector<std::int64_t> v(D.rank());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto m = D.modulus(i);
    v[i] = m ? std::uniform_int_distribution<std::int64_t>(0, m - 1)(rng)
             : std::uniform_int_distribution<std::int64_t>(-50, 50)(rng);
  }
  return v;
}

// Criterion 6: group axioms, the inverse formula and the commutator identity.
Check criterion6() {
  Check c;
  std::vector<DadeContextPtr> ctxs{contexts::trivial(), contexts::z3_by_c2(), contexts::free_rank_one()};
  {
    const auto V = make_group(2, {1, 1});
    const auto a4 = build_inertial_pair(V, std::vector<Automorphism>{make_automorphism(V, {{0, 1}, {1, 1}})});
    ctxs.push_back(contexts::characters(a4, CoefficientProfile::large()));
    const auto nil = build_inertial_pair(V, std::vector<Automorphism>{});
    ctxs.push_back(contexts::characters(nil, CoefficientProfile::of(1)));
    const auto C8 = make_group(2, {3});
    ctxs.push_back(contexts::characters(build_inertial_pair(C8, std::vector<Automorphism>{}), CoefficientProfile::of(2)));
  }
  std::mt19937_64 rng(20240611);
  std::size_t triples = 0;
  for (const auto& ctx : ctxs) {
    const auto& out = ctx->out_group();
    const auto& D = ctx->D();
    std::uniform_int_distribution<Index> pick(0, static_cast<Index>(out.order() - 1));
    auto rand_pair = [&] { return make_pair(ctx, random_vector(D, rng), pick(rng)); };
    const auto one = identity_pair(ctx);
    const std::string tag = ctx->label();
    for (int k = 0; k < 10000; ++k) {
      const auto a = rand_pair(), b = rand_pair(), d = rand_pair();
      ++triples;
      c.expect(compose(compose(a, b), d) == compose(a, compose(b, d)), tag + " associativity");
      c.expect(compose(a, one) == a && compose(one, a) == a, tag + " identity");
      const auto ai = inverse(a);
      c.expect(compose(a, ai) == one && compose(ai, a) == one, tag + " inverse");
      // (v, phi)^{-1} = (-phi^{-1}.v, phi^{-1})
      const Index phi_inv = out.inv(a.phi);
      c.expect(ai.phi == phi_inv && ai.v == D.reduce(ctx->neg(ctx->act(phi_inv, a.v))), tag + " inverse formula");
      // [(v,1),(0,phi)] = (v - phi.v, 1)
      const auto comm = commutator(make_pair(ctx, a.v, 0), make_pair(ctx, ctx->zero(), b.phi));
      const auto expected = D.reduce(ctx->add(a.v, ctx->neg(ctx->act(b.phi, a.v))));
      c.expect(comm.phi == 0 && comm.v == expected, tag + " commutator identity");
      c.expect(commutator_identity_check(ctx, a.v, b.phi), tag + " commutator check");
    }
  }
  c.log << (c.ok ? "" : "; ") << ctxs.size() << " contexts, " << triples << " triples";
  return c;
}

// Stars, paths and caterpillars with at most max_edges edges.
std::vector<TreeSpec> tree_family(int max_edges) {
  std::vector<TreeSpec> out;
  for (int n = 1; n <= max_edges; ++n) {
    out.push_back(star_spec(n));
    out.push_back(path_spec(n));
  }
  // spine edges 1..s joining spine vertices 0..s; legs hang off spine vertices
  for (int s = 1; s <= max_edges; ++s) {
    std::vector<int> legs(static_cast<std::size_t>(s + 1), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i == legs.size()) {
        TreeSpec t;
        int next = s + 1;
        for (int v = 0; v <= s; ++v) {
          VertexSpec spine;
          if (v >= 1) spine.edges.push_back(v);
          std::vector<int> own;
          for (int k = 0; k < legs[static_cast<std::size_t>(v)]; ++k) own.push_back(next++);
          spine.edges.insert(spine.edges.end(), own.begin(), own.end());
          if (v < s) spine.edges.push_back(v + 1);
          t.vertices.push_back(spine);
          for (int leg : own) t.vertices.push_back(VertexSpec{{leg}, std::nullopt});
        }
        out.push_back(t);
        return;
      }
      for (int k = 0; k <= left; ++k) {
        legs[i] = k;
        rec(i + 1, left - k);
      }
      legs[i] = 0;
    };
    for (int total = s; total <= max_edges; ++total) rec(0, total - s);
  }
  return out;
}

// Criterion 7: Omega-period 2l for every hook state; admissible n are even.
Check criterion7() {
  Check c;
  const auto family = tree_family(8);
  std::size_t states = 0, admissible = 0, checks = 0;
  for (const auto& spec : family) {
    const auto tree = build_tree(spec);
    const auto l = static_cast<std::int64_t>(tree.edge_count());
    for (int e : tree.labels())
      for (auto kind : {HookState::Kind::U, HookState::Kind::V}) {
        const HookState s{kind, e};
        std::int64_t n = 1;
        for (auto x = omega(s, tree); !(x == s); x = omega(x, tree)) ++n;
        ++states;
        c.expect(n == 2 * l, "period of " + s.str() + " in a tree with " + std::to_string(l) + " edges");
      }
    for (const auto& aut : tree_automorphisms(tree)) {
      if (aut.stabilized_vertices.empty()) continue;
      for (std::int64_t n = -4 * l; n <= 4 * l; ++n) {
        const auto verdict = morita_parity_check(tree, aut.perm, n);
        ++checks;
        if (verdict.admissible) {
          ++admissible;
          c.expect(n % 2 == 0, "admissible n = " + std::to_string(n) + " is even");
        }
      }
    }
  }
  c.expect(admissible > 0, "some admissible n found");
  c.log << (c.ok ? "" : "; ") << family.size() << " trees, " << states << " hook states, " << checks
        << " parity checks, " << admissible << " admissible";
  return c;
}

// Criterion 8: Pic(O[C2 x C2]) has order 24 and type (C2 x C2) x| S3 = S4;
// Pic(O C2) = C2.
Check criterion8() {
  Check c;
  const auto V = make_group(2, {1, 1});
  for (auto profile : {CoefficientProfile::of(1), CoefficientProfile::of(2), CoefficientProfile::large()}) {
    const auto rep = pic_nilpotent(V, profile);
    const auto& G = rep.group;
    const std::string tag = "Klein four " + profile.describe();
    c.expect(G.order() == 24, tag + " order 24");
    c.expect(rep.id.kind == AbstractGroupId::Kind::named && rep.id.name == "S4", tag + " identified S4");
    c.expect(certificate_verifies(G, rep.id), tag + " certificate");
    // a normal Klein four subgroup with quotient S3
    bool found = false;
    for (Index a = 1; a < G.order() && !found; ++a)
      for (Index b = a + 1; b < G.order() && !found; ++b) {
        if (G.element_order(a) != 2 || G.element_order(b) != 2 || G.mul(a, b) != G.mul(b, a)) continue;
        const std::vector<Index> gens{a, b};
        const auto N = generated_subgroup(G, gens);
        if (N.size() != 4 || !is_normal(G, N)) continue;
        const auto Q = quotient_group(G, N);
        const auto qid = identify(Q.group);
        found = qid.kind == AbstractGroupId::Kind::named && qid.name == "S3";
      }
    c.expect(found, tag + " normal C2 x C2 with quotient S3");
  }
  const auto C2 = make_group(2, {1});
  for (auto profile : {CoefficientProfile::of(1), CoefficientProfile::large()}) {
    const auto rep = pic_nilpotent(C2, profile);
    c.expect(rep.group.order() == 2 && find_isomorphism(rep.group, FiniteGroupTable::cyclic(2)).has_value(),
             "C2 " + profile.describe());
  }
  return c;
}

int run_tool(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string capture_tool(const std::string& args) {
  std::string out;
  FILE* f = popen((g_cli + " " + args).c_str(), "r");
  if (!f) return out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
  pclose(f);
  return out;
}

int exit_code_of(const std::string& text) {
  std::ostringstream sink;
  try {
    return cli::run_jobs(cli::parse_input(text), {}, false, sink);
  } catch (const Error& e) {
    return e.error_class() == ErrorClass::hypothesis ? 2 : 1;
  }
}

// Criterion 9: catalog replay, round trip, exit codes.
Check criterion9() {
  Check c;
  std::ostringstream first, second;
  const int r1 = cli::check_catalog(first);
  const int r2 = cli::check_catalog(second);
  c.expect(r1 == 0 && r2 == 0, "catalog digests match");
  c.expect(first.str() == second.str(), "replay byte-identical");
  for (const auto& e : cli::catalog()) {
    const auto jobs = cli::parse_input(e.input);
    c.expect(jobs.size() == 1 && cli::parse_input(cli::print_job(jobs[0])) == jobs, e.name + " round trip");
  }
  const std::vector<std::pair<std::string, int>> cases = {
      {"[pic-local]\np = 2\nP = [1,1]\nE = [[[0,1],[1,1]]]\n", 0},
      {"[pic-local]\nP = [1,1]\nE = [[[0,1],[1,1]]]\n", 1},                  // MissingKey
      {"[pic-local]\np = 2\nP = [1,1]\nE = [[[0,1],[1,1]]]\ncolour = 3\n", 1},  // UnknownKey
      {"[aut]\np = 2\nP = [1,1\n", 1},                                      // SyntaxError
      {"[aut]\np = 4\nP = [1]\n", 1},                                       // not a prime
      {"[pic-frobenius]\np = 2\nP = [1,1]\nE = []\n", 2},                   // NotFrobenius
      {"[pic-cyclic]\np = 2\nP = [1,1]\nE = [[[0,1],[1,1]]]\n", 2},         // not cyclic
  };
  for (const auto& [text, code] : cases) c.expect(exit_code_of(text) == code, "exit code " + std::to_string(code));
  std::size_t tool_checks = 0;
  if (!g_cli.empty()) {
    const auto a = capture_tool("--check"), b = capture_tool("--check");
    c.expect(!a.empty() && a == b, "tool --check byte-identical");
    c.expect(run_tool("--check") == 0, "tool --check exit 0");
    for (std::size_t k = 0; k < cases.size(); ++k) {
      const std::string path = "acceptance_job_" + std::to_string(k) + ".txt";
      std::ofstream(path) << cases[k].first;
      c.expect(run_tool("--input " + path) == cases[k].second, "tool exit code, case " + std::to_string(k));
      c.expect(run_tool("--format structured --input " + path) == cases[k].second,
               "tool structured exit code, case " + std::to_string(k));
      std::remove(path.c_str());
      ++tool_checks;
    }
  }
  c.log << (c.ok ? "" : "; ") << cli::catalog().size() << " catalog entries, " << cases.size() << " exit-code cases"
        << (g_cli.empty() ? ", tool not exercised" : ", tool exercised on " + std::to_string(tool_checks) + " files");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli = argv[1];
  const std::vector<std::function<Check()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                        criterion6, criterion7, criterion8, criterion9};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check c;
    try {
      c = criteria[k]();
    } catch (const std::exception& e) {
      c.ok = false;
      c.log << "exception: " << e.what();
    }
    failed += c.ok ? 0 : 1;
    std::cout << "criterion " << k + 1 << ": " << (c.ok ? "PASS" : "FAIL") << " (" << c.log.str() << ")" << std::endl;
  }
  return failed ? 1 : 0;
}
