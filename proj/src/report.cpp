#include "report.hpp"

#include <algorithm>
#include <cmath>

namespace curvebound {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::vacuous: return "vacuous";
  }
  return "?";
}

Verdict parse_verdict(std::string_view name) {
  if (name == "pass") return Verdict::pass;
  if (name == "fail") return Verdict::fail;
  if (name == "vacuous") return Verdict::vacuous;
  fail(ErrorCode::parse, "unknown verdict '" + std::string(name) + "'");
}

Verdict decide(Real lhs, Real rhs, Real tolerance) {
  const Real scale = std::max({Real(1), std::fabs(lhs), std::fabs(rhs)});
  return rhs - lhs >= -tolerance * scale ? Verdict::pass : Verdict::fail;
}

void InequalityReport::set_margin(Real left, Real right, Real tolerance) {
  lhs = left;
  rhs = right;
  margin = right - left;
  verdict = decide(left, right, tolerance);
}

namespace {

std::string lookup(const Fields& f, std::string_view key) {
  for (const auto& [k, v] : f)
    if (k == key) return v;
  return {};
}

nlohmann::ordered_json fields_json(const Fields& f) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : f) j[k] = v;
  return j;
}

Fields fields_from(const nlohmann::ordered_json& j) {
  Fields f;
  for (auto it = j.begin(); it != j.end(); ++it) f.emplace_back(it.key(), it.value().get<std::string>());
  return f;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string flatten(const Fields& f) {
  std::string out;
  for (const auto& [k, v] : f) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

}  // namespace

std::string InequalityReport::input(std::string_view key) const { return lookup(inputs, key); }
std::string InequalityReport::detail(std::string_view key) const { return lookup(details, key); }

nlohmann::ordered_json to_json(const InequalityReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchemaVersion;
  j["theorem"] = r.theorem;
  j["verdict"] = verdict_name(r.verdict);
  j["lhs"] = format_real(r.lhs);
  j["rhs"] = format_real(r.rhs);
  j["margin"] = format_real(r.margin);
  j["slack"] = r.slack;
  j["inputs"] = fields_json(r.inputs);
  j["details"] = fields_json(r.details);
  j["note"] = r.note;
  j["replay"] = r.replay;
  return j;
}

InequalityReport report_from_json(const nlohmann::ordered_json& j) {
  try {
    if (j.at("schema").get<int>() != kReportSchemaVersion) fail(ErrorCode::parse, "unsupported report schema");
    InequalityReport r;
    r.theorem = j.at("theorem").get<std::string>();
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    r.lhs = parse_real(j.at("lhs").get<std::string>());
    r.rhs = parse_real(j.at("rhs").get<std::string>());
    r.margin = parse_real(j.at("margin").get<std::string>());
    r.slack = j.at("slack").get<std::string>();
    r.inputs = fields_from(j.at("inputs"));
    r.details = fields_from(j.at("details"));
    r.note = j.at("note").get<std::string>();
    r.replay = j.at("replay").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, std::string("malformed report: ") + e.what());
  }
}

std::string csv_header() { return "theorem,verdict,lhs,rhs,margin,slack,inputs,details,note,replay"; }

std::string csv_row(const InequalityReport& r) {
  std::string row;
  row += csv_escape(r.theorem) + ",";
  row += std::string(verdict_name(r.verdict)) + ",";
  row += format_real(r.lhs) + "," + format_real(r.rhs) + "," + format_real(r.margin) + ",";
  row += csv_escape(r.slack) + ",";
  row += csv_escape(flatten(r.inputs)) + ",";
  row += csv_escape(flatten(r.details)) + ",";
  row += csv_escape(r.note) + ",";
  row += csv_escape(r.replay);
  return row;
}

}  // namespace curvebound
