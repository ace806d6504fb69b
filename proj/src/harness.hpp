#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "common.hpp"
#include "constants.hpp"
#include "farey.hpp"
#include "report.hpp"

namespace curvebound::harness {

enum class Theorem {
  mainone,
  igd,
  hl,
  lemma_annulus,
  pure_lower,
  pure_upper,
  tight,
  endpoint,
  twist_identity,
};
Theorem parse_theorem(std::string_view name);
std::string_view theorem_name(Theorem t);

enum class Sampler { uniform_cf, adversarial_twist, fibonacci, word_random };
Sampler parse_sampler(std::string_view name);
std::string_view sampler_name(Sampler s);

struct ExperimentSpec {
  Theorem theorem = Theorem::mainone;
  constants::Surface surface{1, 1};
  i64 k = 18;
  std::optional<Sampler> sampler;  // per-theorem default when empty
  u64 samples = 1000;
  u64 seed = 42;
  bool sound_slack = true;
  unsigned workers = 1;
  i64 max_denominator = 1000000000;
  i64 max_coeff = 100;
  i64 max_len = 12;
  /// Every sample uses this pair when set.
  std::optional<std::pair<farey::Slope, farey::Slope>> fixed_pair;
  std::optional<std::filesystem::path> out_dir;

  Sampler effective_sampler() const;
  /// Rejects combinations whose preconditions can never hold.
  void validate() const;
};

/// Applies `key=value` settings (flag names without dashes).
void apply_setting(ExperimentSpec& spec, std::string_view key, std::string_view value);
/// Plain-text config: one `key=value` per line, `#` starts a comment.
std::map<std::string, std::string> read_config(const std::filesystem::path& path);
std::map<std::string, std::string> parse_config(std::string_view text);

u64 splitmix64(u64 x);

/// 64-bit Mersenne Twister with bounded draws that do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(u64 seed) : engine_(seed) {}
  /// Uniform on [0, n) for n >= 1.
  u64 below(u64 n);
  /// Uniform on [lo, hi].
  i64 range(i64 lo, i64 hi);
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 engine_;
};

/// Seed of sample `index` under the experiment seed.
u64 sample_seed(u64 seed, u64 index);

struct CfBounds {
  i64 max_coeff = 100;
  i64 max_len = 12;
  i64 max_denominator = 1000000000;
};

/// Slope [a0; a1, ..., an] with a1.. uniform in [1, max_coeff], n uniform in
/// [1, max_len], truncated before the denominator exceeds the bound.
farey::Slope sample_cf_slope(Rng& rng, const CfBounds& b);
std::pair<farey::Slope, farey::Slope> sample_uniform_cf(Rng& rng, const CfBounds& b);
std::pair<farey::Slope, farey::Slope> sample_fibonacci(Rng& rng, const CfBounds& b);
/// y is x twisted about one or two small cores by large powers.
std::pair<farey::Slope, farey::Slope> sample_adversarial_twist(Rng& rng, const CfBounds& b);

struct SampleResult {
  u64 index;
  InequalityReport report;
};

/// Draws and evaluates sample `index` of the experiment.
SampleResult run_sample(const ExperimentSpec& spec, u64 index);

struct Summary {
  u64 pass = 0;
  u64 fail = 0;
  u64 vacuous = 0;
  std::optional<Real> min_margin;
  std::optional<u64> argmin;
  std::optional<InequalityReport> argmin_report;
};

struct RunResult {
  Summary summary;
  std::vector<SampleResult> samples;  // sorted by index
};

RunResult run(const ExperimentSpec& spec);
Summary summarize(const std::vector<SampleResult>& samples);

nlohmann::ordered_json spec_json(const ExperimentSpec& spec);
nlohmann::ordered_json summary_json(const ExperimentSpec& spec, const Summary& s);

enum class Format { json, csv };
std::string render_reports(const std::vector<InequalityReport>& reports, Format format);
void emit_report(const std::vector<InequalityReport>& reports, Format format, const std::filesystem::path& path);
std::vector<InequalityReport> read_reports_json(const std::filesystem::path& path);

/// Writes summary.json, reports.json and reports.csv into the spec's output
/// directory.
void write_outputs(const ExperimentSpec& spec, const RunResult& result);

}  // namespace curvebound::harness
