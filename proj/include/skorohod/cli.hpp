#pragma once

// Command implementations behind the skorohod executable. Each returns the
// process exit code and writes its JSON to `out` (or the --out file).

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skorohod/counterexample.hpp"
#include "skorohod/distance.hpp"
#include "skorohod/json_io.hpp"
#include "skorohod/suites.hpp"

namespace skorohod::cli {

using nlohmann::json;

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failed = 1;
inline constexpr int parse_error = 2;
inline constexpr int space_mismatch = 3;
inline constexpr int bad_certificate = 4;
}  // namespace exit_code

struct RunConfig {
  std::vector<std::string> inputs;
  std::optional<std::string> family;
  std::string metric = "all";
  std::uint64_t seed = 42;
  std::optional<double> eps;
  std::optional<std::string> out;
  std::optional<std::size_t> trials;
  std::string suite = "all";
};

namespace detail {

inline void emit(const RunConfig& cfg, const json& doc, std::ostream& out) {
  if (cfg.out) {
    std::ofstream file(*cfg.out);
    if (!file) throw io::ParseError("cannot write " + *cfg.out);
    file << doc.dump(2) << '\n';
  } else {
    out << doc.dump() << '\n';
  }
}

/// The pseudometric for a pair of traces: the --metric index of the --family
/// config if given, else euclidean on vectors and discrete on labels.
inline Pseudometric resolve_metric(const RunConfig& cfg, const StepFunction& x, const StepFunction& y) {
  require_same_space(x.space(), y.space());
  if (!cfg.family) return x.space().labels ? Pseudometric::discrete() : Pseudometric::euclidean();
  io::FamilyConfig fc = io::family_from_json(io::read_json_file(*cfg.family));
  if (!(fc.space == x.space())) {
    throw ValueSpaceMismatch("family is for " + fc.space.describe() + ", traces are " + x.space().describe());
  }
  return fc.family.metric(io::parse_index(cfg.metric, fc.family));
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ValueSpaceMismatch& e) {
    err << e.what() << '\n';
    return exit_code::space_mismatch;
  } catch (const InvalidTimeChange& e) {
    err << "invalid certificate: " << e.what() << '\n';
    return exit_code::bad_certificate;
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_code::parse_error;
  } catch (const nlohmann::json::exception& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_code::parse_error;
  } catch (const std::invalid_argument& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_code::parse_error;
  }
}

}  // namespace detail

inline int cmd_distance(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (cfg.inputs.size() != 2) throw io::ParseError("distance: expected X.json Y.json");
    StepFunction x = io::step_from_json(io::read_json_file(cfg.inputs[0]));
    StepFunction y = io::step_from_json(io::read_json_file(cfg.inputs[1]));
    Pseudometric d = detail::resolve_metric(cfg, x, y);
    detail::emit(cfg, io::to_json(skorohod_distance(x, y, d)), out);
    return exit_code::ok;
  });
}

inline int cmd_certificate_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (cfg.inputs.size() != 3) throw io::ParseError("certificate-check: expected X.json Y.json CERT.json");
    StepFunction x = io::step_from_json(io::read_json_file(cfg.inputs[0]));
    StepFunction y = io::step_from_json(io::read_json_file(cfg.inputs[1]));
    json doc = io::read_json_file(cfg.inputs[2]);
    if (!doc.is_object() || !doc.contains("distance") || !doc.contains("certificate")) {
      throw io::ParseError("certificate: expected {\"distance\":..., \"certificate\":{\"knots\":[...]}}");
    }
    const double claimed = io::number(doc["distance"], "distance");
    Pseudometric d = detail::resolve_metric(cfg, x, y);
    TimeChange lambda = io::time_change_from_json(doc["certificate"]);
    CertificateCheck chk = check_certificate(x, y, d, lambda);
    const bool ok = chk.holds(claimed);
    detail::emit(cfg,
                 {{"ok", ok},
                  {"claimed", claimed},
                  {"time_sup", chk.time_sup},
                  {"value_sup", chk.value_sup},
                  {"bound", chk.bound()}},
                 out);
    return ok ? exit_code::ok : exit_code::failed;
  });
}

inline int cmd_suite(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  suites::SuiteOptions opt;
  opt.seed = cfg.seed;
  if (cfg.eps) opt.transfer_eps = {*cfg.eps};
  if (cfg.trials) opt.transfer_trials = *cfg.trials;
  std::vector<const suites::SuiteEntry*> chosen;
  for (const auto& e : suites::registry()) {
    if (cfg.suite == "all" || cfg.suite == e.name) chosen.push_back(&e);
  }
  if (chosen.empty()) {
    err << "unknown suite '" << cfg.suite << "'\n";
    return exit_code::parse_error;
  }
  json results = json::array();
  bool pass = true;
  for (const auto* e : chosen) {
    suites::SuiteResult r = e->run(opt);
    pass = pass && r.pass;
    err << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases)\n";
    results.push_back(suites::to_json(r));
  }
  detail::emit(cfg, {{"seed", cfg.seed}, {"pass", pass}, {"suites", results}}, out);
  return pass ? exit_code::ok : exit_code::failed;
}

inline int cmd_example_k(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  kexample::DiscontinuityReport r = kexample::split_extension_discontinuity_report();
  auto line = [&](const std::string& what, bool ok, const std::string& note = "") {
    err << "  " << std::left << std::setw(48) << what << (ok ? "yes" : "NO") << note << '\n';
  };
  err << "piecewise-constant f with jumps at 1/n, truncated at N = " << r.truncation << '\n';
  line("cadlag in the standard topology", r.cadlag_tau0);
  line("values avoid K = {1/n}", r.f_avoids_k);
  line("right-continuous at 0 in tau_K", r.right_continuous_at_0_tauk);
  line("left limits f(1/n-) = 1/n lie in K", r.left_limits_are_k);
  line("f(1/n-) does not converge to 0 in tau_K", r.discontinuity_witnessed, " (witness " + r.witness + ")");
  line("1/n- converges to 0+ in the split interval", r.split_sequence_converges);
  line("K covered by " + std::to_string(r.isolation_count) + " sets with one point each", r.isolation_witness_ok);
  err << "  cited: " << r.cited_fact << '\n' << (r.pass() ? "all checks hold\n" : "some checks FAILED\n");
  detail::emit(cfg, suites::to_json(r), out);
  return r.pass() ? exit_code::ok : exit_code::failed;
}

}  // namespace skorohod::cli
