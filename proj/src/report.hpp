#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "common.hpp"

namespace curvebound {

enum class Verdict { pass, fail, vacuous };

std::string_view verdict_name(Verdict v);
Verdict parse_verdict(std::string_view name);

using Fields = std::vector<std::pair<std::string, std::string>>;

/// Outcome of a single inequality evaluation. `margin` is always
/// (right side) - (left side) of the inequality as stated, so a nonnegative
/// margin means the inequality held.
struct InequalityReport {
  std::string theorem;
  Fields inputs;
  Real lhs = 0;
  Real rhs = 0;
  Real margin = 0;
  std::string slack = "none";
  Verdict verdict = Verdict::vacuous;
  Fields details;
  std::string note;
  std::string replay;

  void set_margin(Real left, Real right, Real tolerance);
  std::string input(std::string_view key) const;
  std::string detail(std::string_view key) const;

  friend bool operator==(const InequalityReport&, const InequalityReport&) = default;
};

/// Pass iff margin >= -tolerance * max(1, |lhs|, |rhs|).
Verdict decide(Real lhs, Real rhs, Real tolerance);

inline constexpr int kReportSchemaVersion = 1;

nlohmann::ordered_json to_json(const InequalityReport& r);
InequalityReport report_from_json(const nlohmann::ordered_json& j);

/// Fixed CSV columns: theorem, verdict, lhs, rhs, margin, slack, inputs, details, note, replay.
std::string csv_header();
std::string csv_row(const InequalityReport& r);

}  // namespace curvebound
