#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "reflexlab/cm_structure.hpp"
#include "reflexlab/rational.hpp"

namespace reflexlab {

using Json = nlohmann::ordered_json;

/// Outcome of one verification. `details` holds check-specific data in the
/// report schema; `failures` lists human-readable reasons when `passed` is false.
struct VerificationReport {
  std::string check;
  bool passed = true;
  std::vector<std::string> failures;
  Json parameters = Json::object();
  Json details = Json::object();

  void fail(std::string why) {
    passed = false;
    failures.push_back(std::move(why));
  }
  void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
  void absorb(const VerificationReport& sub) {
    for (const auto& f : sub.failures) fail(sub.check + ": " + f);
  }
};

inline Json to_json(const VerificationReport& r) {
  Json j;
  j["check"] = r.check;
  j["passed"] = r.passed;
  j["parameters"] = r.parameters;
  j["details"] = r.details;
  j["failures"] = r.failures;
  return j;
}

inline Json elements_json(const ElementSet& s) {
  Json j = Json::array();
  for (auto x : s) j.push_back(x);
  return j;
}

inline std::string subset_string(Bits subset, std::size_t n) { return bits_to_string(subset, n); }

inline Json orbit_json(const CMGroup& cm, const OrbitReport& o) {
  Json j;
  j["representative"] = bits_to_string(o.representative.bits, cm.degree());
  j["orbit_size"] = o.orbit_size;
  j["stabilizer"] = elements_json(o.stabilizer);
  Json members = Json::array();
  for (const auto& m : o.members) members.push_back(bits_to_string(m.bits, cm.degree()));
  j["members"] = members;
  return j;
}

inline Json subset_json(const CMGroup& cm, const SubsetData& d) {
  Json j;
  j["subset"] = bits_to_string(d.subset, cm.degree());
  j["h_I"] = elements_json(d.h_I);
  j["h0_I"] = elements_json(d.h0_I);
  j["s_phi_I"] = elements_json(d.s_phi_I);
  j["phi_I"] = elements_json(d.phi_I);
  j["phi_I_star"] = elements_json(d.phi_I_star);
  return j;
}

inline Json group_json(const CMGroup& cm) {
  Json j;
  j["degree"] = cm.degree();
  j["order"] = cm.order();
  Json elems = Json::array();
  for (const auto& e : cm.group().elements()) elems.push_back(to_string(e));
  j["elements"] = elems;
  j["iota"] = cm.iota();
  j["h0"] = elements_json(cm.h0());
  j["h"] = elements_json(cm.h());
  j["c_kernel"] = elements_json(cm.c_kernel());
  j["g0_order"] = cm.g0().size();
  return j;
}

}  // namespace reflexlab
