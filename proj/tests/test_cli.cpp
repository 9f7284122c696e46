#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "skorohod/cli.hpp"

using namespace skorohod;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

const std::string data_dir = SKOROHOD_DATA_DIR;

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("skorohod_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const json& doc) const {
    std::string p = (path_ / name).string();
    std::ofstream(p) << doc.dump();
    return p;
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

template <typename Cmd>
Outcome run(Cmd cmd, const cli::RunConfig& cfg) {
  std::ostringstream out, err;
  int code = cmd(cfg, out, err);
  return {code, out.str(), err.str()};
}

cli::RunConfig with_inputs(std::vector<std::string> inputs) {
  cli::RunConfig cfg;
  cfg.inputs = std::move(inputs);
  return cfg;
}

}  // namespace

TEST(JsonIo, StepRoundTrip) {
  StepFunction f = make_step({0.0, 0.25, 0.7}, {Value({0.0, 1.0}), Value({2.0, 3.0}), Value({4.0, 5.0})});
  EXPECT_EQ(io::step_from_json(io::to_json(f)), f);
  StepFunction g = make_step({0.0, 0.5}, {"a", "b"});
  EXPECT_EQ(io::step_from_json(io::to_json(g)), g);
  EXPECT_EQ(io::step_from_json(json::parse(R"({"times":[0],"values":[[5]]})")), make_step({0.0}, {5.0}));
}

TEST(JsonIo, StepRejectsMalformed) {
  EXPECT_THROW(io::step_from_json(json::parse(R"({"times":[0]})")), io::ParseError);
  EXPECT_THROW(io::step_from_json(json::parse(R"({"times":[0.1],"values":[[1]]})")), io::ParseError);
  EXPECT_THROW(io::step_from_json(json::parse(R"({"times":[0,0.5],"values":[[1],"a"]})")), io::ParseError);
  EXPECT_THROW(io::step_from_json(json::parse(R"({"times":[0],"values":[[]]})")), io::ParseError);
  EXPECT_THROW(io::step_from_json(json::parse(R"({"times":["x"],"values":[[1]]})")), io::ParseError);
}

TEST(JsonIo, PseudometricRoundTrip) {
  Pseudometric d = Pseudometric::max_of({Pseudometric::coordinate(2),
                                         Pseudometric::scaled(0.5, Pseudometric::pulled_back(ValueMap::square(), Pseudometric::euclidean()))});
  Pseudometric back = io::pseudometric_from_json(io::to_json(d));
  Value a{0.3, -1.0}, b{1.2, 0.4};
  EXPECT_EQ(back(a, b), d(a, b));
  EXPECT_EQ(io::to_json(back), io::to_json(d));
  EXPECT_THROW(io::pseudometric_from_json(json::parse(R"({"kind":"nope"})")), io::ParseError);
}

TEST(JsonIo, FamilyAndIndex) {
  io::FamilyConfig fc = io::family_from_json(io::read_json_file(data_dir + "/family_coords2.json"));
  EXPECT_EQ(fc.space, (ValueSpace{false, 2}));
  EXPECT_EQ(fc.family.size(), 2u);
  EXPECT_EQ(io::parse_index("1,2", fc.family), FamilyIndex::of({1, 2}));
  EXPECT_EQ(io::parse_index("{2}", fc.family), FamilyIndex::of({2}));
  EXPECT_EQ(io::parse_index("all", fc.family), fc.family.full());
  EXPECT_THROW(io::parse_index("3", fc.family), io::ParseError);
  EXPECT_THROW(io::parse_index("x", fc.family), io::ParseError);
}

TEST(JsonIo, TimeChange) {
  TimeChange l = io::time_change_from_json(json::parse(R"({"knots":[[0,0],[0.6,0.5],[1,1]]})"));
  EXPECT_EQ(io::time_change_from_json(io::to_json(l)), l);
  EXPECT_THROW(io::time_change_from_json(json::parse(R"([[0,0],[0.6,0.5],[0.5,0.7],[1,1]])")), InvalidTimeChange);
}

TEST(CmdDistance, IndicatorsAndIdentical) {
  Outcome r = run(cli::cmd_distance, with_inputs({data_dir + "/indicator_05.json", data_dir + "/indicator_06.json"}));
  ASSERT_EQ(r.code, 0) << r.err;
  json doc = json::parse(r.out);
  EXPECT_NEAR(doc["distance"].get<double>(), 0.1, 1e-9);
  EXPECT_EQ(doc["certificate"]["knots"].size(), 3u);

  Outcome same = run(cli::cmd_distance, with_inputs({data_dir + "/plane_a.json", data_dir + "/plane_a.json"}));
  ASSERT_EQ(same.code, 0);
  EXPECT_EQ(json::parse(same.out)["distance"].get<double>(), 0.0);
}

TEST(CmdDistance, FamilyMetricAndLabels) {
  cli::RunConfig cfg = with_inputs({data_dir + "/plane_a.json", data_dir + "/plane_b.json"});
  cfg.family = data_dir + "/family_coords2.json";
  cfg.metric = "1";
  Outcome one = run(cli::cmd_distance, cfg);
  cfg.metric = "1,2";
  Outcome both = run(cli::cmd_distance, cfg);
  ASSERT_EQ(one.code, 0) << one.err;
  ASSERT_EQ(both.code, 0) << both.err;
  EXPECT_LE(json::parse(one.out)["distance"].get<double>(), json::parse(both.out)["distance"].get<double>() + 1e-12);

  Outcome labels = run(cli::cmd_distance, with_inputs({data_dir + "/modes_a.json", data_dir + "/modes_b.json"}));
  ASSERT_EQ(labels.code, 0) << labels.err;
  EXPECT_NEAR(json::parse(labels.out)["distance"].get<double>(), 0.05, 1e-12);
}

TEST(CmdDistance, ErrorCodes) {
  TempDir tmp;
  EXPECT_EQ(run(cli::cmd_distance, with_inputs({data_dir + "/indicator_05.json", data_dir + "/plane_a.json"})).code, 3);
  EXPECT_EQ(run(cli::cmd_distance, with_inputs({data_dir + "/indicator_05.json", data_dir + "/modes_a.json"})).code, 3);
  cli::RunConfig fam = with_inputs({data_dir + "/indicator_05.json", data_dir + "/indicator_06.json"});
  fam.family = data_dir + "/family_coords2.json";
  EXPECT_EQ(run(cli::cmd_distance, fam).code, 3);

  std::string bad = tmp.file("bad.json");
  std::ofstream(bad) << "{not json";
  EXPECT_EQ(run(cli::cmd_distance, with_inputs({bad, data_dir + "/indicator_06.json"})).code, 2);
  EXPECT_EQ(run(cli::cmd_distance, with_inputs({tmp.file("missing.json"), data_dir + "/indicator_06.json"})).code, 2);
  std::string unsorted = tmp.write("unsorted.json", json::parse(R"({"times":[0,0.6,0.4],"values":[[0],[1],[2]]})"));
  EXPECT_EQ(run(cli::cmd_distance, with_inputs({unsorted, data_dir + "/indicator_06.json"})).code, 2);
}

TEST(CmdCertificateCheck, RoundTripAndFailures) {
  TempDir tmp;
  std::string x = data_dir + "/indicator_05.json", y = data_dir + "/indicator_06.json";
  cli::RunConfig dist = with_inputs({x, y});
  dist.out = tmp.file("cert.json");
  ASSERT_EQ(run(cli::cmd_distance, dist).code, 0);

  Outcome ok = run(cli::cmd_certificate_check, with_inputs({x, y, *dist.out}));
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_TRUE(json::parse(ok.out)["ok"].get<bool>());

  json cert = io::read_json_file(*dist.out);
  json under = cert;
  under["distance"] = cert["distance"].get<double>() - 10 * kCertificateTol;
  EXPECT_EQ(run(cli::cmd_certificate_check, with_inputs({x, y, tmp.write("under.json", under)})).code, 1);

  json disorder = cert;
  disorder["certificate"]["knots"] = json::parse("[[0,0],[0.6,0.5],[0.55,0.7],[1,1]]");
  EXPECT_EQ(run(cli::cmd_certificate_check, with_inputs({x, y, tmp.write("disorder.json", disorder)})).code, 4);

  EXPECT_EQ(run(cli::cmd_certificate_check, with_inputs({x, y, tmp.write("empty.json", json::object())})).code, 2);
  EXPECT_EQ(run(cli::cmd_certificate_check, with_inputs({x, data_dir + "/plane_a.json", *dist.out})).code, 3);
}

TEST(CmdSuite, OracleAndExampleK) {
  cli::RunConfig cfg;
  cfg.suite = "oracle";
  Outcome r = run(cli::cmd_suite, cfg);
  ASSERT_EQ(r.code, 0) << r.err;
  json doc = json::parse(r.out);
  EXPECT_TRUE(doc["pass"].get<bool>());
  EXPECT_GE(doc["suites"][0]["cases"].get<int>(), 500);

  cfg.suite = "example-k";
  Outcome k = run(cli::cmd_suite, cfg);
  ASSERT_EQ(k.code, 0) << k.err;
  EXPECT_TRUE(json::parse(k.out)["suites"][0]["details"]["report"]["pass"].get<bool>());

  cfg.suite = "nonsense";
  EXPECT_EQ(run(cli::cmd_suite, cfg).code, 2);
}

TEST(CmdSuite, TransferWithEpsOverride) {
  cli::RunConfig cfg;
  cfg.suite = "transfer";
  cfg.eps = 0.2;
  Outcome r = run(cli::cmd_suite, cfg);
  ASSERT_EQ(r.code, 0) << r.err;
  json runs = json::parse(r.out)["suites"][0]["details"]["runs"];
  ASSERT_EQ(runs.size(), 2u);
  for (const auto& run_doc : runs) EXPECT_EQ(run_doc["eps"].get<double>(), 0.2);
}

TEST(CmdSuite, SeedDeterminesOutput) {
  cli::RunConfig cfg;
  cfg.suite = "axioms";
  cfg.seed = 7;
  EXPECT_EQ(run(cli::cmd_suite, cfg).out, run(cli::cmd_suite, cfg).out);
}

TEST(CmdExampleK, ReportAndSummary) {
  Outcome r = run(cli::cmd_example_k, cli::RunConfig{});
  EXPECT_EQ(r.code, 0);
  json doc = json::parse(r.out);
  EXPECT_TRUE(doc["pass"].get<bool>());
  EXPECT_EQ(doc["witness"], "R \\ K");
  EXPECT_NE(r.err.find("all checks hold"), std::string::npos);
}

// The installed executable maps errors to the documented exit codes.
TEST(Executable, ExitCodes) {
  auto status = [](const std::string& args) {
    std::string cmd = std::string(SKOROHOD_CLI) + " " + args + " >/dev/null 2>&1";
    int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  const std::string d = data_dir + "/";
  EXPECT_EQ(status("distance " + d + "indicator_05.json " + d + "indicator_06.json"), 0);
  EXPECT_EQ(status("distance " + d + "indicator_05.json " + d + "plane_a.json"), 3);
  EXPECT_EQ(status("distance " + d + "indicator_05.json " + d + "no_such_file.json"), 2);
  EXPECT_EQ(status("distance " + d + "plane_a.json " + d + "plane_b.json --family " + d + "family_coords2.json --metric 1,2"), 0);
  EXPECT_EQ(status("frobnicate"), 2);
  EXPECT_EQ(status("example-k"), 0);
  EXPECT_EQ(status("suite indicator --seed 3"), 0);
}
