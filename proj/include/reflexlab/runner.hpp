#pragma once

// Run configuration, check dispatch and the versioned JSON run report.

#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "reflexlab/catalog.hpp"
#include "reflexlab/characters.hpp"
#include "reflexlab/cm_checks.hpp"
#include "reflexlab/group_algebra.hpp"
#include "reflexlab/report.hpp"
#include "reflexlab/split_model.hpp"

namespace reflexlab {

inline constexpr const char* kReportSchema = "reflexlab-report/1";

enum class ExitCode : int { pass = 0, verification_failed = 1, input_error = 2, resource_error = 3 };

struct RunConfig {
  std::string command = "verify";  // group | orbits | verify
  std::string check = "all";
  std::string family = "hyperoctahedral";
  std::size_t n = 3;
  std::string file;
  std::string g0;
  std::uint64_t seed = 1;
  std::size_t trials = 20;
  std::size_t vectors = 3;
  std::size_t max_group_order = kDefaultMaxOrder;
  bool timing = false;
};

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> checks{"structure", "character-identity", "norms", "lemmas", "pfister", "dihedral", "all"};
  return checks;
}

inline const std::vector<std::string>& known_families() {
  static const std::vector<std::string> families{"hyperoctahedral", "iota-times-g0", "dihedral", "file"};
  return families;
}

struct BuiltFamily {
  CMGroup cm;
  std::optional<DihedralModel> dihedral;
  Json description;
};

inline BuiltFamily build_family(const RunConfig& config) {
  Json desc;
  desc["kind"] = config.family;
  if (config.family == "hyperoctahedral") {
    desc["n"] = config.n;
    return {build_hyperoctahedral(config.n, config.max_group_order), std::nullopt, desc};
  }
  if (config.family == "dihedral") {
    desc["n"] = config.n;
    auto model = build_dihedral_model(config.n, config.max_group_order);
    desc["k0"] = two_adic_valuation(config.n);
    CMGroup cm = model.cm;
    return {std::move(cm), std::move(model), desc};
  }
  if (config.family == "iota-times-g0") {
    if (config.n == 0 || config.n > kMaxDegree) throw ResourceError("degree must lie in 1.." + std::to_string(kMaxDegree));
    desc["n"] = config.n;
    desc["g0"] = config.g0;
    return {build_iota_times_g0(config.n, parse_permutation_list(config.n, config.g0), config.max_group_order), std::nullopt, desc};
  }
  if (config.family == "file") {
    std::ifstream in(config.file);
    if (!in) throw InputError("cannot open generator file '" + config.file + "'");
    const auto parsed = parse_generator_file(in);
    desc["file"] = config.file;
    desc["n"] = parsed.degree;
    return {validate_cm_group(close(parsed.degree, parsed.generators, config.max_group_order)), std::nullopt, desc};
  }
  throw InputError("unknown family '" + config.family + "'");
}

/// One check record in the run report.
struct CheckRecord {
  Json json;
  bool passed = true;
};

class Runner {
 public:
  explicit Runner(const RunConfig& config) : config_(config) {}

  Json run(bool& all_passed) {
    BuiltFamily built = build_family(config_);
    const CMGroup& cm = built.cm;
    Json report;
    report["schema"] = kReportSchema;
    report["command"] = config_.command;
    if (config_.command == "verify") report["check"] = config_.check;
    report["family"] = built.description;
    report["seed"] = config_.seed;
    report["group"] = group_json(cm);

    all_passed = true;
    if (config_.command == "group") {
      report["elements"] = elements_listing(cm);
    } else if (config_.command == "orbits") {
      Json orbits = Json::array();
      for (const auto& o : cm_orbits(cm)) orbits.push_back(orbit_json(cm, o));
      report["orbits"] = orbits;
      Json jodd = Json::array();
      for (Bits s : jodd_representatives(cm)) jodd.push_back(subset_json(cm, subset_subgroups(cm, s)));
      report["jodd"] = jodd;
    } else if (config_.command == "verify") {
      Json checks = Json::array();
      for (auto& rec : run_checks(built)) {
        all_passed = all_passed && rec.passed;
        checks.push_back(std::move(rec.json));
      }
      report["checks"] = checks;
    } else {
      throw InputError("unknown command '" + config_.command + "'");
    }
    report["status"] = all_passed ? "pass" : "fail";
    return report;
  }

 private:
  static Json elements_listing(const CMGroup& cm) {
    Json out = Json::array();
    for (const auto& e : cm.group().elements()) out.push_back(to_string(e));
    return out;
  }

  bool wants(const std::string& name) const { return config_.check == "all" || config_.check == name; }

  void record(std::vector<CheckRecord>& out, const std::function<VerificationReport()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport rep = fn();
    const auto elapsed = std::chrono::steady_clock::now() - start;
    Json j = to_json(rep);
    if (config_.timing) j["wall_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    out.push_back({std::move(j), rep.passed});
  }

  static void skip(std::vector<CheckRecord>& out, const std::string& check, const std::string& reason) {
    Json j;
    j["check"] = check;
    j["skipped"] = true;
    j["reason"] = reason;
    out.push_back({std::move(j), true});
  }

  std::vector<CheckRecord> run_checks(const BuiltFamily& built) {
    const CMGroup& cm = built.cm;
    const std::size_t n = cm.degree();
    if (std::find(known_checks().begin(), known_checks().end(), config_.check) == known_checks().end())
      throw InputError("unknown check '" + config_.check + "'");
    std::vector<CheckRecord> out;

    if (wants("structure")) {
      record(out, [&] { return verify_orbit_degrees(cm); });
      record(out, [&] { return verify_cocycle_suite(cm, config_.seed); });
    }
    if (wants("character-identity")) {
      record(out, [&] { return verify_character_identity(cm); });
      const std::size_t ambient = (std::size_t{1} << n) * cm.g0().size();
      if (ambient <= config_.max_group_order)
        record(out, [&] { return verify_decomposition_lemma(cm, config_.max_group_order); });
      else
        skip(out, "decomposition-lemma", "ambient group order " + std::to_string(ambient) + " exceeds the cap");
    }
    if (wants("norms")) {
      record(out, [&] { return verify_prop_2N1(cm); });
      record(out, [&] { return verify_prop_2N1_general(cm); });
      record(out, [&] { return verify_eq3_isomorphism(cm); });
    }
    if (wants("lemmas")) {
      const auto jodd = jodd_representatives(cm);
      const auto lambda = lambda_representatives(cm);
      record(out, [&] {
        VerificationReport rep;
        rep.check = "lemma-eq1";
        std::size_t pairs = 0;
        for (Bits a : jodd)
          for (Bits b : jodd) {
            rep.absorb(verify_lemma_eq1(cm, a, b));
            ++pairs;
          }
        rep.parameters["degree"] = n;
        rep.details["pairs"] = pairs;
        return rep;
      });
      record(out, [&] {
        VerificationReport rep;
        rep.check = "lemma-eq2";
        std::size_t pairs = 0;
        for (CMType a : lambda)
          for (CMType b : lambda) {
            rep.absorb(verify_lemma_eq2(cm, a, b));
            ++pairs;
          }
        rep.parameters["degree"] = n;
        rep.details["pairs"] = pairs;
        return rep;
      });
      record(out, [&] { return verify_lemma_eq3(cm, config_.trials, config_.seed); });
    }
    if (wants("pfister")) {
      if (n <= kMaxPfisterDegree)
        record(out, [&] { return verify_pfister(cm, config_.vectors, config_.seed); });
      else if (config_.check == "pfister")
        throw ResourceError("Pfister verification is capped at degree " + std::to_string(kMaxPfisterDegree));
      else
        skip(out, "pfister", "degree exceeds " + std::to_string(kMaxPfisterDegree));
    }
    if (wants("dihedral")) {
      if (built.dihedral) {
        const auto& model = *built.dihedral;
        record(out, [&] { return verify_dihedral_structure(model); });
        if (model.n % 2 == 0) {
          record(out, [&] { return dihedral_shimura_check(model); });
          record(out, [&] { return dihedral_counts(model.n); });
        } else {
          skip(out, "dihedral-shimura", "n is odd");
          skip(out, "dihedral-counts", "n is odd");
        }
      } else if (config_.check == "dihedral") {
        throw InputError("dihedral checks need --family dihedral");
      }
    }
    return out;
  }

  RunConfig config_;
};

/// Formats one summary line per check.
inline std::string summary_lines(const Json& report) {
  std::string out;
  if (!report.contains("checks")) return out;
  for (const auto& c : report["checks"]) {
    std::string status = c.value("skipped", false) ? "SKIP" : (c.value("passed", false) ? "PASS" : "FAIL");
    out += status + "  " + c["check"].get<std::string>();
    if (c.contains("reason")) out += "  (" + c["reason"].get<std::string>() + ")";
    out += "\n";
    if (c.contains("failures"))
      for (const auto& f : c["failures"]) out += "      " + f.get<std::string>() + "\n";
  }
  return out;
}

}  // namespace reflexlab
