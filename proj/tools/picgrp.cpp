#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "picgrp/cli.hpp"
#include "picgrp/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"picgrp: Picard groups of blocks with abelian defect group, as abstract groups"};
  std::string input;
  std::string format = "text";
  bool check = false;
  picgrp::cli::Options opts;
  app.add_option("--input", input, "job file ('-' for stdin)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "structured"}));
  app.add_flag("--check", check, "replay the bundled catalog and compare digests");
  app.add_flag("--oracle", opts.oracle, "cross-check with brute-force oracles");
  app.add_option("--bound", opts.bound, "enumeration bound for Aut(P)");
  CLI11_PARSE(app, argc, argv);

  if (check) return picgrp::cli::check_catalog(std::cout, opts);
  if (input.empty()) {
    std::cerr << "picgrp: --input or --check is required\n" << app.help();
    return 1;
  }
  std::stringstream text;
  if (input == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream f(input);
    if (!f) {
      std::cerr << "picgrp: cannot read " << input << "\n";
      return 1;
    }
    text << f.rdbuf();
  }
  try {
    const auto jobs = picgrp::cli::parse_input(text.str());
    return picgrp::cli::run_jobs(jobs, opts, format == "structured", std::cout);
  } catch (const picgrp::Error& e) {
    std::cerr << "picgrp: " << e.what() << "\n";
    return e.error_class() == picgrp::ErrorClass::hypothesis ? 2 : 1;
  }
}
