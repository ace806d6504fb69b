#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "mcg.hpp"
#include "words.hpp"

namespace curvebound::harness {

namespace {

constexpr int kMaxAttempts = 256;

struct TheoremName {
  Theorem theorem;
  const char* name;
};

constexpr TheoremName kTheorems[] = {
    {Theorem::mainone, "mainone"},       {Theorem::igd, "igd"},
    {Theorem::hl, "hl"},                 {Theorem::lemma_annulus, "lemma-annulus"},
    {Theorem::pure_lower, "pure-lower"}, {Theorem::pure_upper, "pure-upper"},
    {Theorem::tight, "tight"},           {Theorem::endpoint, "endpoint"},
    {Theorem::twist_identity, "twist-identity"},
};

std::string trim(std::string_view t) {
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  return std::string(t);
}

bool word_theorem(Theorem t) {
  return t == Theorem::twist_identity || t == Theorem::pure_lower || t == Theorem::pure_upper;
}

}  // namespace

Theorem parse_theorem(std::string_view name) {
  for (const TheoremName& t : kTheorems)
    if (name == t.name) return t.theorem;
  fail(ErrorCode::parse, "unknown theorem '" + std::string(name) + "'");
}

std::string_view theorem_name(Theorem t) {
  for (const TheoremName& e : kTheorems)
    if (e.theorem == t) return e.name;
  return "?";
}

Sampler parse_sampler(std::string_view name) {
  if (name == "uniform_cf") return Sampler::uniform_cf;
  if (name == "adversarial_twist") return Sampler::adversarial_twist;
  if (name == "fibonacci") return Sampler::fibonacci;
  if (name == "word_random") return Sampler::word_random;
  fail(ErrorCode::parse, "unknown sampler '" + std::string(name) + "'");
}

std::string_view sampler_name(Sampler s) {
  switch (s) {
    case Sampler::uniform_cf: return "uniform_cf";
    case Sampler::adversarial_twist: return "adversarial_twist";
    case Sampler::fibonacci: return "fibonacci";
    case Sampler::word_random: return "word_random";
  }
  return "?";
}

Sampler ExperimentSpec::effective_sampler() const {
  if (sampler) return *sampler;
  if (word_theorem(theorem)) return Sampler::word_random;
  if (theorem == Theorem::lemma_annulus) return Sampler::adversarial_twist;
  return Sampler::uniform_cf;
}

void ExperimentSpec::validate() const {
  if (samples < 1) fail(ErrorCode::invalid_argument, "samples must be at least 1");
  if (workers < 1) fail(ErrorCode::invalid_argument, "workers must be at least 1");
  if (max_denominator < 1 || max_coeff < 1 || max_len < 1)
    fail(ErrorCode::invalid_argument, "sampler bounds must be at least 1");
  const auto need = [&](i64 floor) {
    if (k < floor)
      fail(ErrorCode::precondition, std::string(theorem_name(theorem)) + " requires k >= " + std::to_string(floor));
  };
  switch (theorem) {
    case Theorem::mainone:
    case Theorem::igd: need(18); break;
    case Theorem::lemma_annulus: need(6); break;
    case Theorem::pure_lower: need(14); break;
    case Theorem::pure_upper: need(32); break;
    case Theorem::tight: need(228); break;
    case Theorem::endpoint: need(128); break;
    case Theorem::hl:
    case Theorem::twist_identity: break;
  }
  const Sampler s = effective_sampler();
  if (s == Sampler::word_random) {
    if (!word_theorem(theorem))
      fail(ErrorCode::invalid_argument, "word_random only serves twist-identity, pure-lower and pure-upper");
    if (surface.boundaries < 1) fail(ErrorCode::invalid_argument, "the word model needs at least one puncture");
    if (fixed_pair) fail(ErrorCode::invalid_argument, "a fixed slope pair needs a slope sampler");
  } else if (surface.complexity() != 1) {
    fail(ErrorCode::invalid_argument, "slope samplers run on complexity-one surfaces only");
  }
}

void apply_setting(ExperimentSpec& spec, std::string_view raw_key, std::string_view raw_value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '_', '-');
  const std::string value = trim(raw_value);
  if (key == "theorem") {
    spec.theorem = parse_theorem(value);
  } else if (key == "surface") {
    spec.surface = constants::Surface::parse(value);
  } else if (key == "k") {
    spec.k = parse_i64(value);
  } else if (key == "samples") {
    spec.samples = static_cast<u64>(parse_u128(value));
  } else if (key == "seed") {
    spec.seed = static_cast<u64>(parse_u128(value));
  } else if (key == "sampler") {
    spec.sampler = parse_sampler(value);
  } else if (key == "slack") {
    if (value != "sound" && value != "raw") fail(ErrorCode::parse, "slack must be 'sound' or 'raw'");
    spec.sound_slack = value == "sound";
  } else if (key == "workers") {
    spec.workers = static_cast<unsigned>(parse_i64(value));
  } else if (key == "max-denominator") {
    spec.max_denominator = parse_i64(value);
  } else if (key == "max-coeff") {
    spec.max_coeff = parse_i64(value);
  } else if (key == "max-len") {
    spec.max_len = parse_i64(value);
  } else if (key == "pair") {
    const auto comma = value.find(',');
    if (comma == std::string::npos) fail(ErrorCode::parse, "pair must read 'p/q,r/s'");
    spec.fixed_pair = std::make_pair(farey::Slope::parse(value.substr(0, comma)), farey::Slope::parse(value.substr(comma + 1)));
  } else if (key == "out") {
    spec.out_dir = value;
  } else {
    fail(ErrorCode::parse, "unknown setting '" + key + "'");
  }
}

std::map<std::string, std::string> parse_config(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) fail(ErrorCode::parse, "config line " + std::to_string(number) + " lacks '='");
    out[trim(std::string_view(t).substr(0, eq))] = trim(std::string_view(t).substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

// ------------------------------------------------------------- randomness

u64 splitmix64(u64 x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

u64 sample_seed(u64 seed, u64 index) { return splitmix64(seed ^ index); }

u64 Rng::below(u64 n) {
  if (n <= 1) return 0;
  const u64 limit = ~u64{0} - (~u64{0} % n);
  u64 v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

i64 Rng::range(i64 lo, i64 hi) {
  if (hi < lo) fail(ErrorCode::internal, "empty sampling range");
  return lo + static_cast<i64>(below(static_cast<u64>(hi - lo) + 1));
}

farey::Slope sample_cf_slope(Rng& rng, const CfBounds& b) {
  const i64 len = rng.range(1, b.max_len);
  const i64 a0 = rng.range(-b.max_coeff, b.max_coeff);
  // Convergent recurrence h_n = a_n h_{n-1} + h_{n-2}.
  i128 h_prev = 1, h = a0, k_prev = 0, kk = 1;
  for (i64 j = 0; j < len; ++j) {
    const i128 a = rng.range(1, b.max_coeff);
    const i128 h_next = a * h + h_prev;
    const i128 k_next = a * kk + k_prev;
    if (k_next > b.max_denominator) break;
    h_prev = h;
    h = h_next;
    k_prev = kk;
    kk = k_next;
  }
  return farey::Slope::of(h, kk);
}

std::pair<farey::Slope, farey::Slope> sample_uniform_cf(Rng& rng, const CfBounds& b) {
  for (;;) {
    const farey::Slope x = sample_cf_slope(rng, b);
    const farey::Slope y = sample_cf_slope(rng, b);
    if (!(x == y)) return {x, y};
  }
}

std::pair<farey::Slope, farey::Slope> sample_fibonacci(Rng& rng, const CfBounds& b) {
  const i64 shift = rng.range(-b.max_coeff, b.max_coeff);
  const farey::Slope x = rng.coin() ? farey::Slope::infinity() : farey::Slope::of(shift, 1);
  i128 h_prev = 1, h = rng.range(-b.max_coeff, b.max_coeff), k_prev = 0, kk = 1;
  const i64 len = rng.range(1, 4 * b.max_len);
  for (i64 j = 0; j < len; ++j) {
    if (h + h_prev > b.max_denominator * 4 || kk + k_prev > b.max_denominator) break;
    const i128 hn = h + h_prev, kn = kk + k_prev;
    h_prev = h;
    h = hn;
    k_prev = kk;
    kk = kn;
  }
  farey::Slope y = farey::Slope::of(h, kk);
  if (y == x) y = farey::Slope::of(h * 2 + 1, 2);
  return {x, y};
}

std::pair<farey::Slope, farey::Slope> sample_adversarial_twist(Rng& rng, const CfBounds& b) {
  const CfBounds small{std::min<i64>(b.max_coeff, 5), 3, std::min<i64>(b.max_denominator, 50)};
  const farey::Slope x = sample_cf_slope(rng, small);
  farey::Slope y = x;
  const int twists = rng.coin() ? 2 : 1;
  for (int t = 0; t < twists; ++t) {
    farey::Slope core = sample_cf_slope(rng, small);
    if (core == y) continue;
    const i128 i = farey::intersection(core, y);
    const i128 qc = std::max<i64>(1, std::max<i64>(core.q(), std::abs(core.p())));
    const i128 budget = std::max<i128>(1, b.max_denominator / (qc * qc * i + std::max<i64>(y.q(), 1)));
    const i64 power = rng.range(1, static_cast<i64>(std::min<i128>(budget, 1000000000)));
    y = farey::twist_matrix(core, rng.coin() ? power : -power).apply(y);
  }
  if (y == x) y = farey::twist_matrix(farey::Slope::of(x.p() + 1, x.q() + 1), 25).apply(x);
  return {x, y};
}

// --------------------------------------------------------- word catalogue

namespace {

struct Catalogue {
  words::PuncturedSurface surface;
  std::vector<words::SimpleCurve> curves;
  std::vector<words::SimpleCurve> short_curves;  // length <= 4, for iterated twists
};

const Catalogue& catalogue_for(const constants::Surface& s) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<Catalogue>> cache;
  const std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{s.genus, s.boundaries}];
  if (!slot) {
    words::PuncturedSurface ps(s.genus, s.boundaries);
    const u64 r2 = 2 * ps.rank();
    unsigned len = 2;
    for (u64 count = r2 * (r2 - 1) * (r2 - 1); count <= 2000 && len < 6; count *= r2 - 1) ++len;
    std::vector<words::SimpleCurve> curves = words::short_simple_curves(ps, len);
    if (curves.empty()) fail(ErrorCode::unsupported, "no short simple curves on " + ps.str());
    std::vector<words::SimpleCurve> short_curves;
    for (const words::SimpleCurve& c : curves)
      if (c.word().size() <= 4) short_curves.push_back(c);
    if (short_curves.empty()) short_curves = curves;
    slot = std::make_unique<Catalogue>(Catalogue{ps, std::move(curves), std::move(short_curves)});
  }
  return *slot;
}

const words::SimpleCurve& pick(Rng& rng, const Catalogue& c) { return c.curves[rng.below(c.curves.size())]; }
const words::SimpleCurve& pick_short(Rng& rng, const Catalogue& c) {
  return c.short_curves[rng.below(c.short_curves.size())];
}

/// A catalogue curve, sometimes pushed by one twist about another.
words::SimpleCurve random_curve(Rng& rng, const Catalogue& c) {
  const words::SimpleCurve base = pick(rng, c);
  if (!rng.coin()) return base;
  const words::SimpleCurve& core = pick(rng, c);
  if (words::geometric_intersection(c.surface, base.word(), core.word()) == 0) return base;
  const i64 power = rng.coin() ? 1 : -1;
  return words::SimpleCurve::certify(c.surface, words::dehn_twist(c.surface, core, power, base.word()));
}

i64 nonzero(Rng& rng, i64 bound) {
  const i64 v = rng.range(1, bound);
  return rng.coin() ? v : -v;
}

/// Iterate count with |n * min_power| >= k + 3 so the adverse-slack
/// hypothesis check succeeds.
i64 iterate_for(Rng& rng, i64 k, i64 min_power) {
  const i64 base = (k + 3 + min_power - 1) / min_power;
  const i64 n = base + rng.range(0, 3);
  return rng.coin() ? n : -n;
}

farey::CheckOptions farey_options(const ExperimentSpec& spec) {
  farey::CheckOptions opt;
  opt.sound_slack = spec.sound_slack;
  opt.surface = spec.surface;
  return opt;
}

std::pair<farey::Slope, farey::Slope> draw_pair(const ExperimentSpec& spec, Rng& rng) {
  if (spec.fixed_pair) return *spec.fixed_pair;
  const CfBounds b{spec.max_coeff, spec.max_len, spec.max_denominator};
  switch (spec.effective_sampler()) {
    case Sampler::uniform_cf: return sample_uniform_cf(rng, b);
    case Sampler::adversarial_twist: return sample_adversarial_twist(rng, b);
    case Sampler::fibonacci: return sample_fibonacci(rng, b);
    case Sampler::word_random: break;
  }
  fail(ErrorCode::internal, "slope pair requested from the word sampler");
}

InequalityReport draw_word_sample(const ExperimentSpec& spec, Rng& rng) {
  const Catalogue& cat = catalogue_for(spec.surface);
  const words::PuncturedSurface& s = cat.surface;
  if (spec.theorem == Theorem::twist_identity) {
    const words::SimpleCurve x = random_curve(rng, cat);
    const words::SimpleCurve& a = pick(rng, cat);
    if (words::geometric_intersection(s, x.word(), a.word()) == 0)
      fail(ErrorCode::precondition, "sampled core misses x");
    return mcg::check_twist_identity(s, x, a, nonzero(rng, 6));
  }
  std::vector<mcg::TwistComponent> twists{{pick_short(rng, cat), nonzero(rng, 3)}};
  if (rng.coin()) {
    for (int tries = 0; tries < 32; ++tries) {
      const words::SimpleCurve& b = pick_short(rng, cat);
      if (!(b == twists[0].core) && words::geometric_intersection(s, b.word(), twists[0].core.word()) == 0) {
        twists.push_back({b, nonzero(rng, 3)});
        break;
      }
    }
  }
  const words::SimpleCurve& x = pick_short(rng, cat);
  for (const mcg::TwistComponent& t : twists)
    if (words::geometric_intersection(s, x.word(), t.core.word()) == 0) fail(ErrorCode::precondition, "x misses a core");
  i64 min_power = std::abs(twists[0].power);
  for (const mcg::TwistComponent& t : twists) min_power = std::min(min_power, std::abs(t.power));
  const mcg::PureMappingClass phi = mcg::PureMappingClass::multitwist(s, std::move(twists));
  const i64 n = iterate_for(rng, spec.k, min_power);
  mcg::CheckOptions opt;
  opt.sound_slack = spec.sound_slack;
  return spec.theorem == Theorem::pure_lower ? mcg::check_pure_lower(phi, x, n, spec.k, opt)
                                             : mcg::check_pure_upper(phi, x, n, spec.k, opt);
}

InequalityReport draw_slope_sample(const ExperimentSpec& spec, Rng& rng) {
  const farey::CheckOptions fopt = farey_options(spec);
  const auto [x, y] = draw_pair(spec, rng);
  switch (spec.theorem) {
    case Theorem::mainone: return farey::check_mainone(x, y, spec.k, fopt);
    case Theorem::igd: return farey::check_igd(x, y, spec.k, fopt);
    case Theorem::hl: return farey::check_hempel_lickorish(x, y, fopt);
    case Theorem::lemma_annulus: {
      const std::vector<farey::PivotDatum> pivots = farey::large_annuli(x, y, spec.k);
      if (pivots.empty()) fail(ErrorCode::precondition, "no annulus above the cutoff");
      return farey::lemma_annulus_check(pivots[rng.below(pivots.size())].core, x, y, spec.k, fopt);
    }
    case Theorem::tight:
    case Theorem::endpoint: {
      const i64 d = static_cast<i64>(farey::distance(x, y));
      std::vector<i64> picks;
      if (d <= 2 && !spec.fixed_pair) fail(ErrorCode::precondition, "pair too close for admissible picks");
      if (d >= 3) {
        if (spec.theorem == Theorem::tight) {
          i64 t = rng.range(0, std::min<i64>(2, d - 3));
          picks.push_back(t);
          t += 3 + static_cast<i64>(rng.below(static_cast<u64>(std::min<i64>(3, d - t - 2))));
          for (; t <= d; t += 3 + static_cast<i64>(rng.below(3))) picks.push_back(t);
        } else {
          const i64 p = rng.range(0, d - 3);
          picks = {p, rng.range(p + 3, d)};
        }
      }
      mcg::CheckOptions opt;
      const auto which = spec.theorem == Theorem::tight ? constants::Application::tight : constants::Application::endpoint;
      return mcg::check_geodesic_theorems(x, y, spec.k, which, picks, opt);
    }
    case Theorem::twist_identity: {
      const i64 n = nonzero(rng, 50);
      return mcg::check_twist_identity(x, y, n);
    }
    case Theorem::pure_lower:
    case Theorem::pure_upper: {
      const CfBounds small{5, 3, 200};
      const farey::Slope core = sample_cf_slope(rng, small);
      if (core == x) fail(ErrorCode::precondition, "core equals x");
      const i64 power = nonzero(rng, 3);
      const mcg::PureMappingClass phi = mcg::PureMappingClass::matrix(farey::twist_matrix(core, power));
      const i64 n = iterate_for(rng, spec.k, std::abs(power));
      mcg::CheckOptions opt;
      opt.sound_slack = spec.sound_slack;
      return spec.theorem == Theorem::pure_lower ? mcg::check_pure_lower(phi, x, n, spec.k, opt)
                                                 : mcg::check_pure_upper(phi, x, n, spec.k, opt);
    }
  }
  fail(ErrorCode::internal, "unhandled theorem");
}

}  // namespace

SampleResult run_sample(const ExperimentSpec& spec, u64 index) {
  Rng rng(sample_seed(spec.seed, index));
  std::string last;
  InequalityReport r;
  bool drawn = false;
  for (int attempt = 0; attempt < kMaxAttempts && !drawn; ++attempt) {
    try {
      r = spec.effective_sampler() == Sampler::word_random ? draw_word_sample(spec, rng) : draw_slope_sample(spec, rng);
      drawn = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::precondition && e.code() != ErrorCode::overflow) {
        r = InequalityReport{};
        r.theorem = std::string(theorem_name(spec.theorem));
        r.verdict = Verdict::fail;
        r.note = "error: " + std::string(e.what());
        drawn = true;
      } else {
        last = e.what();
      }
    }
    if (spec.fixed_pair && !drawn) break;
  }
  if (!drawn) {
    r = InequalityReport{};
    r.theorem = std::string(theorem_name(spec.theorem));
    r.verdict = Verdict::vacuous;
    r.note = "no admissible sample: " + last;
  }
  r.details.emplace_back("sample", std::to_string(index));
  return SampleResult{index, std::move(r)};
}

Summary summarize(const std::vector<SampleResult>& samples) {
  Summary s;
  for (const SampleResult& sr : samples) {
    const InequalityReport& r = sr.report;
    switch (r.verdict) {
      case Verdict::pass: ++s.pass; break;
      case Verdict::fail: ++s.fail; break;
      case Verdict::vacuous: ++s.vacuous; continue;
    }
    if (!s.min_margin || r.margin < *s.min_margin) {
      s.min_margin = r.margin;
      s.argmin = sr.index;
      s.argmin_report = r;
    }
  }
  return s;
}

RunResult run(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<SampleResult> results(spec.samples);
  std::atomic<u64> next{0};
  const auto worker = [&] {
    for (u64 i = next++; i < spec.samples; i = next++) results[i] = run_sample(spec, i);
  };
  const unsigned count = static_cast<unsigned>(std::min<u64>(spec.workers, spec.samples));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  RunResult out;
  out.summary = summarize(results);
  out.samples = std::move(results);
  return out;
}

// ------------------------------------------------------------------ output

nlohmann::ordered_json spec_json(const ExperimentSpec& spec) {
  nlohmann::ordered_json j;
  j["theorem"] = theorem_name(spec.theorem);
  j["surface"] = spec.surface.str();
  j["k"] = std::to_string(spec.k);
  j["sampler"] = sampler_name(spec.effective_sampler());
  j["samples"] = std::to_string(spec.samples);
  j["seed"] = std::to_string(spec.seed);
  j["slack"] = spec.sound_slack ? "sound" : "raw";
  j["max_denominator"] = std::to_string(spec.max_denominator);
  j["max_coeff"] = std::to_string(spec.max_coeff);
  j["max_len"] = std::to_string(spec.max_len);
  if (spec.fixed_pair) j["pair"] = spec.fixed_pair->first.str() + "," + spec.fixed_pair->second.str();
  return j;
}

nlohmann::ordered_json summary_json(const ExperimentSpec& spec, const Summary& s) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchemaVersion;
  j["spec"] = spec_json(spec);
  j["pass"] = std::to_string(s.pass);
  j["fail"] = std::to_string(s.fail);
  j["vacuous"] = std::to_string(s.vacuous);
  j["min_margin"] = s.min_margin ? nlohmann::ordered_json(format_real(*s.min_margin)) : nlohmann::ordered_json();
  j["argmin_sample"] = s.argmin ? nlohmann::ordered_json(std::to_string(*s.argmin)) : nlohmann::ordered_json();
  j["argmin"] = s.argmin_report ? to_json(*s.argmin_report) : nlohmann::ordered_json();
  return j;
}

std::string render_reports(const std::vector<InequalityReport>& reports, Format format) {
  if (format == Format::json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const InequalityReport& r : reports) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
  }
  std::string out = csv_header() + "\n";
  for (const InequalityReport& r : reports) out += csv_row(r) + "\n";
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorCode::io, "write failed for " + path.string());
}

}  // namespace

void emit_report(const std::vector<InequalityReport>& reports, Format format, const std::filesystem::path& path) {
  if (reports.empty()) fail(ErrorCode::invalid_argument, "no reports to emit");
  write_file(path, render_reports(reports, format));
}

std::vector<InequalityReport> read_reports_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot read " + path.string());
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, e.what());
  }
  if (!j.is_array()) fail(ErrorCode::parse, "reports file must hold a JSON array");
  std::vector<InequalityReport> out;
  for (const auto& r : j) out.push_back(report_from_json(r));
  return out;
}

void write_outputs(const ExperimentSpec& spec, const RunResult& result) {
  if (!spec.out_dir) fail(ErrorCode::invalid_argument, "no output directory given");
  std::error_code ec;
  std::filesystem::create_directories(*spec.out_dir, ec);
  if (ec) fail(ErrorCode::io, "cannot create " + spec.out_dir->string() + ": " + ec.message());
  std::vector<InequalityReport> reports;
  reports.reserve(result.samples.size());
  for (const SampleResult& s : result.samples) reports.push_back(s.report);
  write_file(*spec.out_dir / "summary.json", summary_json(spec, result.summary).dump(2) + "\n");
  emit_report(reports, Format::json, *spec.out_dir / "reports.json");
  emit_report(reports, Format::csv, *spec.out_dir / "reports.csv");
}

}  // namespace curvebound::harness
