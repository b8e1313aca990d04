#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "reflexlab/reflexlab.hpp"

using namespace reflexlab;

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of CM-type, reflex-field and Pfister-form identities in signed-permutation models"};
  app.set_config("--config", "", "Read options from a TOML or INI file");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string json_path;
  app.add_option("--family", config.family, "Group family")->check(CLI::IsMember(known_families()));
  app.add_option("--n", config.n, "Degree N (hyperoctahedral, iota-times-g0) or dihedral n");
  app.add_option("--file", config.file, "Generator file for --family file");
  app.add_option("--g0", config.g0, "G_0 generators for iota-times-g0, e.g. \"2 3 1; 2 1 3\"");
  app.add_option("--seed", config.seed, "Seed for random draws");
  app.add_option("--trials", config.trials, "Random draws for Lemma eq3");
  app.add_option("--vectors", config.vectors, "Split parameter vectors for the Pfister check");
  app.add_option("--max-group-order", config.max_group_order, "Cap on any enumerated group");
  app.add_option("--json", json_path, "Write the JSON report here ('-' for stdout)");
  app.add_flag("--timing", config.timing, "Include wall times in the report");

  auto* group = app.add_subcommand("group", "Build the group and list its elements");
  auto* orbits = app.add_subcommand("orbits", "CM-type orbits and J_odd subsets");
  auto* verify = app.add_subcommand("verify", "Run verification checks");
  verify->add_option("check", config.check, "Check to run")->check(CLI::IsMember(known_checks()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::input_error);
  }
  if (group->parsed()) config.command = "group";
  if (orbits->parsed()) config.command = "orbits";
  if (verify->parsed()) config.command = "verify";

  try {
    bool passed = true;
    Json report = Runner(config).run(passed);
    const std::string text = report.dump(2) + "\n";
    if (json_path == "-") {
      std::cout << text;
    } else {
      if (!json_path.empty()) {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) throw InputError("cannot write '" + json_path + "'");
        out << text;
      }
      if (config.command == "verify")
        std::cout << summary_lines(report) << (passed ? "all checks passed\n" : "verification failed\n");
      else if (json_path.empty())
        std::cout << text;
    }
    return static_cast<int>(passed ? ExitCode::pass : ExitCode::verification_failed);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::input_error);
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return static_cast<int>(ExitCode::resource_error);
  } catch (const ModelError& e) {
    std::cerr << "model inconsistency: " << e.what() << "\n";
    return static_cast<int>(ExitCode::verification_failed);
  }
}
