#include "pav/curve.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pav/errors.hpp"

namespace pav {

using json = nlohmann::ordered_json;

bool CurveSpec::surjective_at(uint64_t ell) const {
  if (surjective_all) return true;
  if (surjective_min > 0) {
    if (ell < surjective_min) return false;
    for (uint64_t e : surjective_exceptions)
      if (e == ell) return false;
    return true;
  }
  for (uint64_t l : surjective_ell)
    if (l == ell) return true;
  return false;
}

void CurveSpec::validate() const {
  if (label.empty()) throw input_error("curve: empty label");
  if (conductor < 1) throw input_error("curve: conductor must be >= 1");
  if (kind == Kind::Genus2) {
    if (f.size() != 7 || h.size() != 3)
      throw input_error("curve " + label + ": genus-2 coefficients must be f[0..6], h[0..2]");
    int degf = -1;
    for (int i = 6; i >= 0; --i)
      if (f[i] != 0) {
        degf = i;
        break;
      }
    if (degf != 5 && degf != 6)
      throw input_error("curve " + label + ": deg f must be 5 or 6");
  }
}

static CurveSpec parse_curve(const json& j) {
  CurveSpec c;
  c.label = j.at("label").get<std::string>();
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "elliptic") {
    c.kind = CurveSpec::Kind::Elliptic;
    auto a = j.at("coefficients");
    if (!a.is_array() || a.size() != 5)
      throw input_error("curve " + c.label + ": elliptic coefficients must be [a1,a2,a3,a4,a6]");
    for (int i = 0; i < 5; ++i) c.ec[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)].get<int64_t>();
  } else if (kind == "genus2") {
    c.kind = CurveSpec::Kind::Genus2;
    c.f = j.at("f").get<std::vector<int64_t>>();
    c.h = j.at("h").get<std::vector<int64_t>>();
    c.f.resize(7, 0);
    c.h.resize(3, 0);
  } else {
    throw input_error("curve " + c.label + ": unknown kind '" + kind + "'");
  }
  c.conductor = j.at("conductor").get<uint64_t>();
  c.attested_trivial_mw = j.value("trivial_mw", false);
  if (j.contains("surjective")) {
    const auto& s = j.at("surjective");
    if (s.is_string() && s.get<std::string>() == "all") {
      c.surjective_all = true;
    } else if (s.is_array()) {
      c.surjective_ell = s.get<std::vector<uint64_t>>();
    } else if (s.is_object()) {
      c.surjective_min = s.value("min", uint64_t{0});
      if (s.contains("except")) c.surjective_exceptions = s.at("except").get<std::vector<uint64_t>>();
    } else {
      throw input_error("curve " + c.label + ": bad 'surjective' field");
    }
  }
  c.validate();
  return c;
}

static json curve_to_json(const CurveSpec& c) {
  json j;
  j["label"] = c.label;
  if (c.kind == CurveSpec::Kind::Elliptic) {
    j["kind"] = "elliptic";
    j["coefficients"] = c.ec;
  } else {
    j["kind"] = "genus2";
    j["f"] = c.f;
    j["h"] = c.h;
  }
  j["conductor"] = c.conductor;
  j["trivial_mw"] = c.attested_trivial_mw;
  if (c.surjective_all) {
    j["surjective"] = "all";
  } else if (c.surjective_min > 0) {
    j["surjective"] = {{"min", c.surjective_min}, {"except", c.surjective_exceptions}};
  } else {
    j["surjective"] = c.surjective_ell;
  }
  return j;
}

CurveSpec curve_to_spec_from_json_text(const std::string& text) {
  return parse_curve(json::parse(text));
}

std::string curve_to_json_text(const CurveSpec& c) { return curve_to_json(c).dump(2); }

CurveRegistry::CurveRegistry() {
  {
    CurveSpec e;
    e.kind = CurveSpec::Kind::Elliptic;
    e.label = "67a1";
    e.ec = {0, 1, 1, -12, -21};  // Y^2 + Y = X^3 + X^2 - 12X - 21
    e.conductor = 67;
    e.attested_trivial_mw = true;
    e.surjective_all = true;
    add(e);
  }
  {
    CurveSpec c;
    c.kind = CurveSpec::Kind::Genus2;
    c.label = "8969.a.8969.1";
    // y^2 + (x + 1) y = x^5 - 55 x^4 - 87 x^3 - 54 x^2 - 16 x - 2
    c.f = {-2, -16, -54, -87, -55, 1, 0};
    c.h = {1, 1, 0};
    c.conductor = 8969;
    c.attested_trivial_mw = true;
    c.surjective_min = 5;
    c.surjective_exceptions = {8969};
    add(c);
  }
}

const CurveSpec& CurveRegistry::get(const std::string& label) const {
  auto it = curves_.find(label);
  if (it == curves_.end()) throw input_error("unknown curve label '" + label + "'");
  return it->second;
}

bool CurveRegistry::contains(const std::string& label) const {
  return curves_.count(label) != 0;
}

void CurveRegistry::add(CurveSpec curve) {
  curve.validate();
  curves_[curve.label] = std::move(curve);
}

void CurveRegistry::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open registry file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw input_error("registry '" + path + "': " + e.what());
  }
  if (j.is_array())
    for (const auto& item : j) add(parse_curve(item));
  else
    add(parse_curve(j));
}

std::vector<std::string> CurveRegistry::labels() const {
  std::vector<std::string> out;
  out.reserve(curves_.size());
  for (auto& [k, v] : curves_) out.push_back(k);
  return out;
}

}  // namespace pav
