// Acceptance run: one line per criterion with its runtime limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "reflexlab/reflexlab.hpp"

using namespace reflexlab;

namespace {

struct Outcome {
  bool passed = true;
  std::string note;
};

void need(Outcome& o, bool ok, const std::string& what) {
  if (ok) return;
  if (o.passed) o.note = what;
  o.passed = false;
}

void need(Outcome& o, const VerificationReport& rep, const std::string& where) {
  need(o, rep.passed, where + ": " + rep.check + (rep.failures.empty() ? "" : " (" + rep.failures.front() + ")"));
}

Outcome orbit_degrees() {
  Outcome o;
  for (const auto& e : standard_catalog()) need(o, verify_orbit_degrees(e.cm), e.name);
  return o;
}

Outcome cocycles() {
  Outcome o;
  for (const auto& e : standard_catalog()) {
    auto rep = verify_cocycle_suite(e.cm, 1);
    need(o, rep, e.name);
    need(o, rep.details["exhaustive"].get<bool>() == (e.cm.order() <= 200), e.name + ": exhaustive flag");
  }
  return o;
}

Outcome characters() {
  Outcome o;
  for (const auto& e : standard_catalog()) {
    auto id = character_identity(e.cm);
    need(o, id.report, e.name);
    need(o, id.lhs.degree() == pow2(static_cast<int>(e.cm.degree()) - 1), e.name + ": degree is not 2^(N-1)");
    const std::size_t ambient = (std::size_t{1} << e.cm.degree()) * e.cm.g0().size();
    if (ambient <= 100000) need(o, verify_decomposition_lemma(e.cm, 100000), e.name);
  }
  return o;
}

Outcome norms_and_lemmas() {
  Outcome o;
  for (const auto& e : standard_catalog()) {
    const auto& cm = e.cm;
    need(o, verify_prop_2N1(cm), e.name);
    need(o, verify_prop_2N1_general(cm), e.name);
    for (Bits a : jodd_representatives(cm))
      for (Bits b : jodd_representatives(cm)) need(o, verify_lemma_eq1(cm, a, b), e.name);
    for (CMType a : lambda_representatives(cm))
      for (CMType b : lambda_representatives(cm)) need(o, verify_lemma_eq2(cm, a, b), e.name);
    auto eq3 = verify_lemma_eq3(cm, 20, 1);
    need(o, eq3, e.name);
    need(o, eq3.details["draws"].get<std::size_t>() >= 20, e.name + ": fewer than 20 draws");
  }
  return o;
}

Outcome isomorphism() {
  Outcome o;
  for (const auto& e : standard_catalog()) {
    auto rep = verify_eq3_isomorphism(e.cm);
    need(o, rep, e.name);
    need(o, rep.details["rank"].get<std::size_t>() == std::size_t{1} << (e.cm.degree() - 1), e.name + ": rank");
  }
  return o;
}

Outcome pfister() {
  Outcome o;
  for (const auto& e : standard_catalog()) {
    if (e.cm.degree() > 4) continue;
    auto rep = verify_pfister(e.cm, 3, 1);
    need(o, rep, e.name);
    std::set<std::string> distinct;
    for (const auto& run : rep.details["runs"]) distinct.insert(run["e"].dump());
    need(o, distinct.size() >= 3, e.name + ": fewer than 3 distinct parameter vectors");
  }
  return o;
}

Outcome dihedral() {
  Outcome o;
  for (std::size_t n : {4, 6, 8}) {
    auto model = build_dihedral_model(n);
    need(o, dihedral_shimura_check(model), "n=" + std::to_string(n));
    need(o, verify_dihedral_structure(model), "n=" + std::to_string(n));
  }
  for (std::size_t n = 2; n <= 12; n += 2) need(o, dihedral_counts(n), "n=" + std::to_string(n));
  return o;
}

Outcome determinism() {
  Outcome o;
  std::vector<RunConfig> configs(3);
  configs[0].family = "hyperoctahedral";
  configs[0].n = 3;
  configs[1].family = "dihedral";
  configs[1].n = 4;
  configs[1].seed = 7;
  configs[2].family = "iota-times-g0";
  configs[2].n = 3;
  configs[2].g0 = "2 3 1; 2 1 3";
  configs[2].seed = 11;
  for (const auto& c : configs) {
    bool p1 = false, p2 = false;
    const std::string a = Runner(c).run(p1).dump(2);
    const std::string b = Runner(c).run(p2).dump(2);
    need(o, a == b, c.family + ": reports differ");
    need(o, p1 && p2, c.family + ": run failed");
  }
  return o;
}

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "orbit sizes sum to 2^N on the catalog", 5, orbit_degrees},
      {2, "cocycle law and r_f = r_f' iff f' in {f, f+1}", 30, cocycles},
      {3, "character identity, degree 2^(N-1), decomposition lemma", 60, characters},
      {4, "half norm propositions and lemmas eq1, eq2, eq3 (20 draws)", 120, norms_and_lemmas},
      {5, "eq3 isomorphism has rank 2^(N-1)", 10, isomorphism},
      {6, "Pfister decomposition for N <= 4 (3 vectors)", 300, pfister},
      {7, "dihedral Shimura identity, counts, H*(Phi_0)", 60, dihedral},
      {8, "byte-identical reports for equal config and seed", 60, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.passed && secs > c.limit_s) o = {false, "over time limit"};
    if (!o.passed) ++failures;
    std::printf("[%s] criterion %d: %s  (%.2fs, limit %.0fs)%s%s\n", o.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), secs, c.limit_s,
                o.note.empty() ? "" : "  ", o.note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
