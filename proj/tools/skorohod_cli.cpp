#include <iostream>

#include <CLI11.hpp>

#include "skorohod/cli.hpp"

int main(int argc, char** argv) {
  using namespace skorohod::cli;
  CLI::App app{"Skorohod distances between step functions"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "family config JSON");
    sub->add_option("--metric", cfg.metric, "family index, e.g. 1,2 or all");
    sub->add_option("--out", cfg.out, "write JSON here instead of stdout");
  };

  auto* distance = app.add_subcommand("distance", "distance and certificate for X.json Y.json");
  distance->add_option("traces", cfg.inputs, "X.json Y.json")->expected(2)->required();
  add_common(distance);

  auto* check = app.add_subcommand("certificate-check", "re-verify a distance certificate");
  check->add_option("files", cfg.inputs, "X.json Y.json CERT.json")->expected(3)->required();
  add_common(check);

  auto* suite = app.add_subcommand("suite", "run seeded property suites");
  suite->add_option("name", cfg.suite, "suite name or all");
  suite->add_option("--seed", cfg.seed, "RNG seed");
  suite->add_option("--eps", cfg.eps, "transfer suite epsilon");
  suite->add_option("--trials", cfg.trials, "transfer suite trials per run");
  suite->add_option("--out", cfg.out, "write JSON here instead of stdout");

  auto* example = app.add_subcommand("example-k", "report on the split-interval counterexample");
  example->add_option("--out", cfg.out, "write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code::parse_error;
  }

  if (*distance) return cmd_distance(cfg, std::cout, std::cerr);
  if (*check) return cmd_certificate_check(cfg, std::cout, std::cerr);
  if (*suite) return cmd_suite(cfg, std::cout, std::cerr);
  return cmd_example_k(cfg, std::cout, std::cerr);
}
