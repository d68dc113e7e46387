#pragma once

// Job files, dispatch and reports for the picgrp command-line tool.
//
// A job file holds one or more sections:
//
//   [pic-local]
//   p = 2
//   P = [1,1]
//   E = [[[0,1],[1,1]]]
//
// Blank lines and lines starting with '#' are ignored.  Values are integers,
// bracketed integer lists, lists of matrices (each matrix the list of its
// generator images), words, or Brauer tree vertex lists such as
// "rho(1 2 3); (1); (2); (3)".

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "picgrp/automorphism.hpp"
#include "picgrp/brauertree.hpp"

namespace picgrp::cli {

inline constexpr const char* kSchema = "picgrp-report/1";

enum class Command { aut, fusion, pic_local, pic_frobenius, pic_cyclic, pic_kleinfour, pic_nilpotent, dade, tree, verify };

std::string command_name(Command c);

using Value = std::variant<std::int64_t, std::vector<std::int64_t>, Images, std::vector<Images>, TreeSpec, std::string>;

struct JobSpec {
  Command command = Command::aut;
  std::map<std::string, Value> params;

  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

// Errors carry the kind SyntaxError, UnknownKey, MissingKey or TypeError and
// the line number.
std::vector<JobSpec> parse_input(const std::string& text);
std::string print_job(const JobSpec& job);

struct Options {
  bool oracle = false;
  std::uint64_t bound = 0;  // 0: default materialization bound
};

struct Report {
  nlohmann::ordered_json data;
  int exit_code = 0;
};

// Never throws for library errors; they become an "error" report with exit
// code 1 (input) or 2 (hypothesis).
Report run(const JobSpec& job, const Options& opts = {});

std::string format_text(const nlohmann::ordered_json& report);
std::string format_structured(const nlohmann::ordered_json& report);

// Short summary of a report: order, identification and error kind.
std::string digest(const nlohmann::ordered_json& report);

struct CatalogEntry {
  std::string name;
  std::string input;
  std::string digest;
};

const std::vector<CatalogEntry>& catalog();

// Replays every catalog entry and compares digests; returns the exit code.
int check_catalog(std::ostream& out, const Options& opts = {});

// Whole-tool behaviour for a list of jobs; returns the worst exit code.
int run_jobs(const std::vector<JobSpec>& jobs, const Options& opts, bool structured, std::ostream& out);

}  // namespace picgrp::cli
