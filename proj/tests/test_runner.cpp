#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>

#include "reflexlab/runner.hpp"

using namespace reflexlab;

namespace {

Json run_config(const RunConfig& config, bool* passed = nullptr) {
  bool ok = true;
  Json report = Runner(config).run(ok);
  if (passed) *passed = ok;
  return report;
}

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const char* cli = std::getenv("REFLEXLAB_CLI");
  if (!cli) return {};
  const std::string command = std::string(cli) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  CliResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string kSamples = REFLEXLAB_SAMPLES_DIR;

}  // namespace

TEST(Runner, ReportSchema) {
  RunConfig config;
  config.family = "hyperoctahedral";
  config.n = 2;
  bool passed = false;
  auto report = run_config(config, &passed);
  EXPECT_TRUE(passed);
  EXPECT_EQ(report["schema"], kReportSchema);
  EXPECT_EQ(report["status"], "pass");
  std::vector<std::string> keys;
  for (const auto& [k, v] : report.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"schema", "command", "check", "family", "seed", "group", "checks", "status"}));
  for (const auto& c : report["checks"]) EXPECT_FALSE(c.contains("wall_ms"));
}

TEST(Runner, DeterministicForSameSeed) {
  RunConfig config;
  config.family = "dihedral";
  config.n = 4;
  config.seed = 42;
  EXPECT_EQ(run_config(config).dump(), run_config(config).dump());
  RunConfig other = config;
  other.seed = 43;
  EXPECT_NE(run_config(config).dump(), run_config(other).dump());
}

TEST(Runner, TimingIsOptIn) {
  RunConfig config;
  config.n = 2;
  config.check = "structure";
  config.timing = true;
  for (const auto& c : run_config(config)["checks"]) EXPECT_TRUE(c.contains("wall_ms"));
}

TEST(Runner, GroupAndOrbitsCommands) {
  RunConfig config;
  config.n = 3;
  config.command = "group";
  auto group = run_config(config);
  EXPECT_EQ(group["elements"].size(), 48u);
  config.command = "orbits";
  auto orbits = run_config(config);
  EXPECT_EQ(orbits["jodd"].size(), 2u);
  std::size_t total = 0;
  for (const auto& o : orbits["orbits"]) total += o["orbit_size"].get<std::size_t>();
  EXPECT_EQ(total, 8u);
}

TEST(Runner, SkipsAndErrors) {
  RunConfig config;
  config.family = "dihedral";
  config.n = 8;
  auto report = run_config(config);
  bool skipped_pfister = false;
  for (const auto& c : report["checks"])
    if (c["check"] == "pfister") skipped_pfister = c.value("skipped", false);
  EXPECT_TRUE(skipped_pfister);

  config.check = "pfister";
  EXPECT_THROW(run_config(config), ResourceError);

  RunConfig wrong;
  wrong.check = "dihedral";
  EXPECT_THROW(run_config(wrong), InputError);
  wrong.check = "nonsense";
  EXPECT_THROW(run_config(wrong), InputError);

  RunConfig missing;
  missing.family = "file";
  missing.file = kSamples + "/does-not-exist.gens";
  EXPECT_THROW(run_config(missing), InputError);
}

TEST(Runner, FileAndIotaFamilies) {
  RunConfig file;
  file.family = "file";
  file.file = kSamples + "/iota_c3.gens";
  file.check = "norms";
  bool passed = false;
  auto a = run_config(file, &passed);
  EXPECT_TRUE(passed);

  RunConfig direct;
  direct.family = "iota-times-g0";
  direct.n = 3;
  direct.g0 = "2 3 1";
  direct.check = "norms";
  auto b = run_config(direct, &passed);
  EXPECT_TRUE(passed);
  EXPECT_EQ(a["checks"], b["checks"]);
}

TEST(Cli, ExitCodes) {
  if (!std::getenv("REFLEXLAB_CLI")) GTEST_SKIP() << "REFLEXLAB_CLI not set";
  EXPECT_EQ(run_cli("--n 2 verify structure").code, 0);
  EXPECT_EQ(run_cli("--family file --file " + kSamples + "/malformed.gens verify").code, 2);
  EXPECT_EQ(run_cli("--n 25 verify").code, 3);
  EXPECT_EQ(run_cli("--family nope verify").code, 2);
  EXPECT_EQ(run_cli("verify bogus-check").code, 2);
  EXPECT_EQ(run_cli("--family dihedral --n 8 verify pfister").code, 3);
}

TEST(Cli, MalformedFileNamesTheLine) {
  if (!std::getenv("REFLEXLAB_CLI")) GTEST_SKIP() << "REFLEXLAB_CLI not set";
  auto r = run_cli("--family file --file " + kSamples + "/malformed.gens verify");
  EXPECT_NE(r.out.find("line 3"), std::string::npos) << r.out;
}

TEST(Cli, JsonToStdoutIsByteIdentical) {
  if (!std::getenv("REFLEXLAB_CLI")) GTEST_SKIP() << "REFLEXLAB_CLI not set";
  auto a = run_cli("--family dihedral --n 6 --seed 9 --json - verify lemmas");
  auto b = run_cli("--family dihedral --n 6 --seed 9 --json - verify lemmas");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(Json::parse(a.out)["schema"], kReportSchema);
}

TEST(Cli, ConfigFile) {
  if (!std::getenv("REFLEXLAB_CLI")) GTEST_SKIP() << "REFLEXLAB_CLI not set";
  auto r = run_cli("--config " + kSamples + "/dihedral6.toml --json - verify");
  ASSERT_EQ(r.code, 0) << r.out;
  auto report = Json::parse(r.out);
  EXPECT_EQ(report["check"], "dihedral");
  EXPECT_EQ(report["seed"], 7);
  EXPECT_EQ(report["family"]["n"], 6);
}
