#include <sstream>

#include <doctest.h>

#include "picgrp/cli.hpp"
#include "test_support.hpp"

using namespace picgrp;
using namespace picgrp::cli;

namespace {

std::string error_message(const std::string& text) {
  try {
    parse_input(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parsing the documented examples") {
  const auto jobs = parse_input("[pic-local]\np = 2\nP = [1,1]\nE = [[[0,1],[1,1]]]");
  REQUIRE(jobs.size() == 1);
  CHECK(jobs[0].command == Command::pic_local);
  CHECK(std::get<std::int64_t>(jobs[0].params.at("p")) == 2);
  CHECK(std::get<std::vector<std::int64_t>>(jobs[0].params.at("P")) == std::vector<std::int64_t>{1, 1});
  CHECK(std::get<std::vector<Images>>(jobs[0].params.at("E")) == std::vector<Images>{{{0, 1}, {1, 1}}});

  const auto tree = parse_input("[tree]\nvertices = (1 2 3); (1); (2); (3)");
  const auto spec = std::get<TreeSpec>(tree[0].params.at("vertices"));
  CHECK(build_tree(spec).rho_positions() == build_tree(star_spec(3)).rho_positions());
  CHECK(build_tree(spec).sigma_positions() == build_tree(star_spec(3)).sigma_positions());
}

TEST_CASE("comments, blank lines and several sections") {
  const auto jobs = parse_input("# two jobs\n\n[aut]\np = 3\nP = [1]\n\n[pic-kleinfour]\ncase = A4\n");
  REQUIRE(jobs.size() == 2);
  CHECK(jobs[1].command == Command::pic_kleinfour);
}

TEST_CASE("parse errors carry their kind and line") {
  CHECK_KIND(parse_input("[pic-local]\nP = [1,1]\nE = []\n"), "MissingKey");
  CHECK_KIND(parse_input("[aut]\np = 2\nP = [1]\ncolour = 1\n"), "UnknownKey");
  CHECK(error_message("[aut]\np = 2\nP = [1]\ncolour = 1\n").find("line 4") != std::string::npos);
  CHECK_KIND(parse_input("[aut]\np = two\nP = [1]\n"), "TypeError");
  CHECK_KIND(parse_input("[aut]\np = 2\nP = [1\n"), "SyntaxError");
  CHECK(error_message("[aut]\np = 2\nP = [1\n").find("line 3") != std::string::npos);
  CHECK_KIND(parse_input("[aut]\np = 2\np = 3\nP = [1]\n"), "SyntaxError");
  CHECK_KIND(parse_input("[nonsense]\n"), "SyntaxError");
  CHECK_KIND(parse_input("p = 2\n"), "SyntaxError");
  CHECK_KIND(parse_input(""), "SyntaxError");
}

TEST_CASE("print and parse round trip") {
  for (const auto& e : catalog()) {
    const auto jobs = parse_input(e.input);
    REQUIRE(jobs.size() == 1);
    CHECK(parse_input(print_job(jobs[0])) == jobs);
    CHECK(print_job(parse_input(print_job(jobs[0]))[0]) == print_job(jobs[0]));
  }
}

TEST_CASE("reports use the fixed schema") {
  const auto rep = run(parse_input("[pic-cyclic]\np = 3\nP = [2]\nE = [[[8]]]\nd = 2\n")[0]);
  CHECK(rep.exit_code == 0);
  const auto& d = rep.data;
  CHECK(d["schema"] == kSchema);
  CHECK(d["group_order"] == 6);
  CHECK(d["identification"] == "cyclic(6)");
  CHECK(d["invariant_factors"] == nlohmann::ordered_json::array({6}));
  for (const char* key : {"theorem", "certificate", "assumptions"}) CHECK(d.contains(key));
  for (const char* flag : {"char_zero", "k_large_enough", "vertex_stabilization_imported"})
    CHECK(d["assumptions"].contains(flag));

  const auto a4 = run(parse_input("[pic-local]\np = 2\nP = [1,1]\nE = [[[0,1],[1,1]]]\n")[0]);
  CHECK(a4.data["identification"] == "S3");
  CHECK(a4.data["certificate"].size() == 6);
  CHECK(a4.data["assumptions"]["char_zero"] == true);

  const auto fusion = run(parse_input("[fusion]\np = 3\nP = [2]\nE = [[[8]]]\n")[0]);
  CHECK(fusion.data["details"]["free_action"] == true);
  CHECK(fusion.data["details"]["foc_is_P"] == true);
  CHECK(fusion.data["identification"] == "cyclic(3)");
}

TEST_CASE("exit codes by error class") {
  CHECK(run(parse_input("[aut]\np = 2\nP = [1,1]\n")[0]).exit_code == 0);
  CHECK(run(parse_input("[aut]\np = 6\nP = [1]\n")[0]).exit_code == 1);
  CHECK(run(parse_input("[pic-frobenius]\np = 2\nP = [1,1]\nE = []\n")[0]).exit_code == 2);
  const auto bad = run(parse_input("[pic-local]\np = 3\nP = [1,1]\nE = [[[1,0],[0,2]]]\n")[0]);
  CHECK(bad.exit_code == 2);
  CHECK(bad.data["error"]["kind"] == "FocalNotWhole");
  std::ostringstream out;
  CHECK(run_jobs(parse_input("[aut]\np = 2\nP = [1]\n\n[aut]\np = 9\nP = [1]\n"), {}, false, out) == 1);
}

TEST_CASE("output is deterministic") {
  const auto jobs = parse_input("[pic-kleinfour]\ncase = nilpotent\nm = 1\n");
  std::ostringstream a, b, c, d;
  run_jobs(jobs, {}, true, a);
  run_jobs(jobs, {}, true, b);
  run_jobs(jobs, {}, false, c);
  run_jobs(jobs, {}, false, d);
  CHECK(a.str() == b.str());
  CHECK(c.str() == d.str());
  CHECK(nlohmann::json::parse(a.str())["group_order"] == 24);
}

TEST_CASE("catalog replay") {
  std::ostringstream a, b;
  CHECK(check_catalog(a) == 0);
  CHECK(check_catalog(b) == 0);
  CHECK(a.str() == b.str());
  CHECK(catalog().size() >= 14);
}
