#pragma once

// JSON forms for scalars, matrices and reports. Big integers are emitted as
// exact decimal strings.

#include <json.hpp>

#include "daha/funcfield.hpp"
#include "daha/modrep.hpp"
#include "daha/modring.hpp"
#include "daha/spectra.hpp"

namespace daha {

using json = nlohmann::ordered_json;

inline json to_json(const CycloScalar& x) {
  json coeffs = json::array();
  for (const auto& c : x.coeffs())
    coeffs.push_back(json::array({c.get_num().get_str(), c.get_den().get_str()}));
  return json{{"conductor", x.conductor()}, {"coeffs", coeffs}};
}

inline json to_json(const ModScalar& x) {
  json coeffs = json::array();
  for (const auto& c : x.coeffs()) coeffs.push_back(c.get_str());
  return json{{"modulus", x.ring()->pm().get_str()},
              {"conductor", x.ring()->conductor()},
              {"coeffs", coeffs}};
}

inline json to_json(const FuncScalar& x) {
  json num = json::array(), den = json::array();
  for (const auto& c : x.num()) num.push_back(c.get_str());
  for (const auto& c : x.den()) den.push_back(c.get_str());
  return json{{"num", num}, {"den", den}};
}

template <class K>
const char* domain_name();
template <>
inline const char* domain_name<CycloScalar>() {
  return "cyclo";
}
template <>
inline const char* domain_name<FuncScalar>() {
  return "func";
}
template <>
inline const char* domain_name<ModScalar>() {
  return "mod";
}

template <class K>
json to_json(const Matrix<K>& m) {
  json entries = json::array();
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) entries.push_back(to_json(m(i, j)));
  return json{{"rows", m.rows()},
              {"cols", m.cols()},
              {"domain", domain_name<K>()},
              {"entries", entries}};
}

inline std::string k_string(long twok) {
  if (twok % 2 == 0) return std::to_string(twok / 2);
  long whole = twok / 2;
  bool neg = twok < 0;
  long halfed = std::abs(twok);
  std::string s = neg ? "-" : "";
  s += std::to_string(halfed / 2) + ".5";
  (void)whole;
  return s;
}

template <class K>
json to_json(const ModuleRep<K>& V) {
  json j{{"family", family_name(V.family)},
         {"N", V.ctx.N},
         {"k", k_string(V.ctx.twok)},
         {"checkmark", V.ctx.checkmark},
         {"dim", V.dim},
         {"domain", domain_name<K>()},
         {"rescaled", V.rescaled},
         {"T", to_json(V.T)},
         {"X", to_json(V.X)},
         {"Y", to_json(V.Y)}};
  if constexpr (std::is_same_v<K, CycloScalar>) j["conductor"] = V.ctx.dom->conductor();
  if (V.has_quotient) j["basis"] = json{{"lo", V.lo}, {"hi", V.hi}};
  if (!V.auto_word.empty()) j["applied_automorphisms"] = V.auto_word;
  return j;
}

inline json to_json(const ScanRecord& r) {
  return json{{"family", r.family},       {"checkmark", r.checkmark},
              {"N", r.N},                 {"k", k_string(r.twok)},
              {"dim", r.dim},             {"class", r.cls},
              {"indefinite_nu", r.indefinite_nu}, {"scanned", r.scanned}};
}

inline std::string scan_csv(const std::vector<ScanRecord>& recs) {
  std::string out = "family,checkmark,N,k,dim,class,indefinite_nu,scanned\n";
  for (const auto& r : recs) {
    out += r.family + "," + (r.checkmark ? "1" : "0") + "," + std::to_string(r.N) + "," +
           k_string(r.twok) + "," + std::to_string(r.dim) + "," + r.cls + ",";
    for (size_t i = 0; i < r.indefinite_nu.size(); ++i)
      out += (i ? ";" : "") + std::to_string(r.indefinite_nu[i]);
    out += std::string(",") + (r.scanned ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace daha
