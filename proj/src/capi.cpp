#include "curvebound/curvebound.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "chains.hpp"
#include "constants.hpp"
#include "farey.hpp"
#include "harness.hpp"
#include "mcg.hpp"
#include "report.hpp"
#include "words.hpp"

using namespace curvebound;
using nlohmann::ordered_json;

struct cvb_report {
  InequalityReport value;
};

struct cvb_psurface {
  words::PuncturedSurface value;
};

struct cvb_word {
  words::CyclicWord value;
};

struct cvb_experiment {
  harness::ExperimentSpec spec;
  std::unique_ptr<harness::RunResult> result;
};

namespace {

thread_local std::string t_last_error;

cvb_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return CVB_INVALID_ARGUMENT;
    case ErrorCode::precondition: return CVB_PRECONDITION;
    case ErrorCode::overflow: return CVB_OVERFLOW;
    case ErrorCode::io: return CVB_IO;
    case ErrorCode::parse: return CVB_PARSE;
    case ErrorCode::dichotomy: return CVB_DICHOTOMY;
    case ErrorCode::unsupported: return CVB_UNSUPPORTED;
    case ErrorCode::internal: return CVB_INTERNAL;
  }
  return CVB_INTERNAL;
}

template <class F>
cvb_status guarded(F&& body) {
  try {
    body();
    t_last_error.clear();
    return CVB_OK;
  } catch (const Error& e) {
    t_last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    t_last_error = e.what();
    return CVB_PARSE;
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return CVB_INTERNAL;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return CVB_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::invalid_argument, std::string("null ") + what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void give(char** out, const std::string& s) {
  need(out, "output pointer");
  *out = dup(s);
}

farey::Slope slope(cvb_slope s) { return farey::Slope::of(s.p, s.q); }
cvb_slope c_slope(const farey::Slope& s) { return cvb_slope{s.p(), s.q()}; }
constants::Surface surface(cvb_surface s) { return constants::Surface::make(s.genus, s.boundaries); }

std::optional<words::PuncturedSurface> word_surface(const cvb_surface* s) {
  if (!s) return std::nullopt;
  return words::PuncturedSurface(s->genus, s->boundaries);
}

farey::CheckOptions farey_options(const cvb_farey_options* o) {
  farey::CheckOptions opt;
  if (!o) return opt;
  opt.tolerance = o->tolerance;
  opt.sound_slack = o->sound_slack != 0;
  opt.annulus = o->doubled_annulus ? farey::AnnulusIntersection::doubled_boundary : farey::AnnulusIntersection::core;
  opt.surface = surface(o->surface);
  return opt;
}

void give_report(cvb_report** out, InequalityReport r) {
  need(out, "output pointer");
  *out = new cvb_report{std::move(r)};
}

void give_word(cvb_word** out, words::CyclicWord w) {
  need(out, "output pointer");
  *out = new cvb_word{std::move(w)};
}

ordered_json slope_list(const std::vector<farey::Slope>& v) {
  ordered_json a = ordered_json::array();
  for (const farey::Slope& s : v) a.push_back(s.str());
  return a;
}

}  // namespace

extern "C" {

const char* cvb_last_error(void) { return t_last_error.c_str(); }

const char* cvb_status_name(cvb_status status) {
  switch (status) {
    case CVB_OK: return "ok";
    case CVB_INVALID_ARGUMENT: return "invalid_argument";
    case CVB_PRECONDITION: return "precondition";
    case CVB_OVERFLOW: return "overflow";
    case CVB_IO: return "io";
    case CVB_PARSE: return "parse";
    case CVB_DICHOTOMY: return "dichotomy";
    case CVB_UNSUPPORTED: return "unsupported";
    case CVB_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* cvb_version(void) { return "0.1.0"; }

void cvb_free_string(char* s) { std::free(s); }

// ---------------------------------------------------------------- constants

cvb_status cvb_l_small(double p, double* out) {
  return guarded([&] {
    need(out, "output pointer");
    *out = static_cast<double>(constants::l_small(p));
  });
}

cvb_status cvb_L_big(double p, double* out) {
  return guarded([&] {
    need(out, "output pointer");
    *out = static_cast<double>(constants::L_big(p));
  });
}

cvb_status cvb_V(cvb_surface s, double k, double* out) {
  return guarded([&] {
    need(out, "output pointer");
    *out = static_cast<double>(constants::V(surface(s), k));
  });
}

cvb_status cvb_U(cvb_surface s, int64_t k, uint64_t P, double* out) {
  return guarded([&] {
    need(out, "output pointer");
    *out = static_cast<double>(constants::U(surface(s), k, P));
  });
}

cvb_status cvb_mainone_denominator(int64_t k, double* out) {
  return guarded([&] {
    need(out, "output pointer");
    *out = static_cast<double>(constants::mainone_denominator(k));
  });
}

cvb_status cvb_p_bounds_json(cvb_surface s, char** out_json) {
  return guarded([&] {
    const constants::Surface sf = surface(s);
    const constants::PBounds b = constants::p_bounds(sf);
    ordered_json j;
    j["surface"] = sf.str();
    j["xi_bound"] = std::to_string(b.xi_bound);
    j["chromatic_bound"] = std::to_string(b.chromatic_bound);
    j["upper"] = std::to_string(b.upper);
    j["minimal_known"] = b.minimal_known ? ordered_json(std::to_string(*b.minimal_known)) : ordered_json();
    give(out_json, j.dump(2));
  });
}

cvb_status cvb_coefficients_json(cvb_surface s, int64_t k, const char* family, uint64_t P, char** out_json) {
  return guarded([&] {
    need(family, "family");
    const constants::Surface sf = surface(s);
    const constants::Coefficients c = constants::application_coefficients(
        sf, k, constants::parse_application(family), P == 0 ? std::nullopt : std::optional<u64>(P));
    ordered_json j;
    j["surface"] = sf.str();
    j["family"] = constants::application_name(c.which);
    j["k"] = std::to_string(c.k);
    j["shifted_cutoff"] = std::to_string(c.shifted_cutoff);
    j["P"] = std::to_string(c.P);
    j["U"] = format_real(c.U);
    j["multiplier"] = format_real(c.multiplier);
    j["additive"] = format_real(c.additive);
    j["V"] = format_real(c.V);
    give(out_json, j.dump(2));
  });
}

cvb_status cvb_constant_eval_json(const char* name, cvb_surface s, double arg, uint64_t P, char** out_json) {
  return guarded([&] {
    need(name, "name");
    const std::string n = name;
    ordered_json j;
    j["function"] = n;
    Real v = 0;
    if (n == "l") {
      v = constants::l_small(arg);
      j["p"] = format_real(arg);
    } else if (n == "L") {
      v = constants::L_big(arg);
      j["p"] = format_real(arg);
    } else if (n == "V") {
      v = constants::V(surface(s), arg);
      j["surface"] = surface(s).str();
      j["k"] = format_real(arg);
    } else if (n == "U") {
      const i64 k = static_cast<i64>(arg);
      if (static_cast<double>(k) != arg) fail(ErrorCode::invalid_argument, "U takes an integer k");
      const u64 p = P == 0 ? constants::P_upper(surface(s)) : P;
      v = constants::U(surface(s), k, p);
      j["surface"] = surface(s).str();
      j["k"] = std::to_string(k);
      j["P"] = std::to_string(p);
    } else if (n == "mainone-denominator") {
      const i64 k = static_cast<i64>(arg);
      if (static_cast<double>(k) != arg) fail(ErrorCode::invalid_argument, "the denominator takes an integer k");
      v = constants::mainone_denominator(k);
      j["k"] = std::to_string(k);
    } else {
      fail(ErrorCode::parse, "unknown constant '" + n + "'");
    }
    j["value"] = format_real(v);
    give(out_json, j.dump(2));
  });
}

cvb_status cvb_constant_plot_svg(const char* function, int64_t from, int64_t to, char** out_svg) {
  return guarded([&] {
    need(function, "function");
    give(out_svg, constants::constant_plot_svg(constants::parse_plot_function(function), from, to));
  });
}

// ------------------------------------------------------------------- Farey

cvb_status cvb_slope_parse(const char* text, cvb_slope* out) {
  return guarded([&] {
    need(text, "text");
    need(out, "output pointer");
    *out = c_slope(farey::Slope::parse(text));
  });
}

cvb_status cvb_slope_format(cvb_slope s, char** out) {
  return guarded([&] { give(out, slope(s).str()); });
}

cvb_status cvb_intersection(cvb_slope x, cvb_slope y, char** out_decimal) {
  return guarded([&] { give(out_decimal, to_decimal(farey::intersection(slope(x), slope(y)))); });
}

cvb_status cvb_distance(cvb_slope x, cvb_slope y, uint64_t* out) {
  return guarded([&] {
    need(out, "output pointer");
    *out = farey::distance(slope(x), slope(y));
  });
}

cvb_status cvb_annular_distance(cvb_slope core, cvb_slope x, cvb_slope y, char** out_decimal) {
  return guarded([&] { give(out_decimal, to_decimal(farey::annular_distance(slope(core), slope(x), slope(y)))); });
}

cvb_status cvb_geodesic_json(cvb_slope x, cvb_slope y, char** out_json) {
  return guarded([&] {
    const farey::FareyPath path = farey::geodesic(slope(x), slope(y));
    ordered_json j;
    j["x"] = slope(x).str();
    j["y"] = slope(y).str();
    j["distance"] = std::to_string(path.length());
    j["intersection"] = to_decimal(farey::intersection(slope(x), slope(y)));
    j["vertices"] = slope_list(path.vertices);
    give(out_json, j.dump(2));
  });
}

cvb_status cvb_large_annuli_json(cvb_slope x, cvb_slope y, int64_t k, char** out_json) {
  return guarded([&] {
    ordered_json arr = ordered_json::array();
    for (const farey::PivotDatum& p : farey::large_annuli(slope(x), slope(y), k)) {
      arr.push_back({{"core", p.core.str()},
                     {"twist_gap", p.twist_gap.str()},
                     {"annular_distance", to_decimal(p.annular_distance)},
                     {"i_x_core", to_decimal(farey::intersection(slope(x), p.core))},
                     {"i_core_y", to_decimal(farey::intersection(p.core, slope(y)))}});
    }
    ordered_json j;
    j["x"] = slope(x).str();
    j["y"] = slope(y).str();
    j["k"] = std::to_string(k);
    j["count"] = std::to_string(arr.size());
    j["pivots"] = std::move(arr);
    give(out_json, j.dump(2));
  });
}

cvb_status cvb_twist_matrix_apply(cvb_slope core, int64_t n, cvb_slope x, cvb_slope* out) {
  return guarded([&] {
    need(out, "output pointer");
    *out = c_slope(farey::twist_matrix(slope(core), n).apply(slope(x)));
  });
}

cvb_status cvb_script_s(cvb_slope x, cvb_slope y, int64_t k, const char* slack, double* out) {
  return guarded([&] {
    need(slack, "slack");
    need(out, "output pointer");
    *out = static_cast<double>(farey::script_s(slope(x), slope(y), k, farey::parse_slack(slack)));
  });
}

cvb_farey_options cvb_farey_options_default(void) {
  const farey::CheckOptions d;
  return cvb_farey_options{static_cast<double>(d.tolerance), d.sound_slack ? 1 : 0,
                           d.annulus == farey::AnnulusIntersection::doubled_boundary ? 1 : 0,
                           cvb_surface{d.surface.genus, d.surface.boundaries}};
}

cvb_status cvb_farey_check(const char* theorem, cvb_slope x, cvb_slope y, int64_t k,
                           const cvb_farey_options* options, cvb_report** out) {
  return guarded([&] {
    need(theorem, "theorem");
    const std::string t = theorem;
    const farey::CheckOptions opt = farey_options(options);
    if (t == "mainone") {
      give_report(out, farey::check_mainone(slope(x), slope(y), k, opt));
    } else if (t == "igd") {
      give_report(out, farey::check_igd(slope(x), slope(y), k, opt));
    } else if (t == "hl") {
      give_report(out, farey::check_hempel_lickorish(slope(x), slope(y), opt));
    } else {
      fail(ErrorCode::parse, "unknown Farey theorem '" + t + "'");
    }
  });
}

cvb_status cvb_lemma_annulus_check(cvb_slope core, cvb_slope x, cvb_slope y, int64_t n,
                                   const cvb_farey_options* options, cvb_report** out) {
  return guarded([&] {
    give_report(out, farey::lemma_annulus_check(slope(core), slope(x), slope(y), n, farey_options(options)));
  });
}

// ----------------------------------------------------------------- reports

cvb_verdict cvb_report_verdict(const cvb_report* r) {
  if (!r) return CVB_VACUOUS;
  switch (r->value.verdict) {
    case Verdict::pass: return CVB_PASS;
    case Verdict::fail: return CVB_FAIL;
    case Verdict::vacuous: return CVB_VACUOUS;
  }
  return CVB_VACUOUS;
}

double cvb_report_lhs(const cvb_report* r) { return r ? static_cast<double>(r->value.lhs) : 0.0; }
double cvb_report_rhs(const cvb_report* r) { return r ? static_cast<double>(r->value.rhs) : 0.0; }
double cvb_report_margin(const cvb_report* r) { return r ? static_cast<double>(r->value.margin) : 0.0; }

cvb_status cvb_report_json(const cvb_report* r, char** out_json) {
  return guarded([&] {
    need(r, "report");
    give(out_json, to_json(r->value).dump(2));
  });
}

cvb_status cvb_report_field(const cvb_report* r, const char* key, char** out) {
  return guarded([&] {
    need(r, "report");
    need(key, "key");
    std::string v = r->value.input(key);
    if (v.empty()) v = r->value.detail(key);
    give(out, v);
  });
}

void cvb_report_free(cvb_report* r) { delete r; }

// ------------------------------------------------------------------ chains

cvb_status cvb_behrstock_validate(uint64_t d_xy_mu, uint64_t d_yx_mu, int* out_pass) {
  return guarded([&] {
    need(out_pass, "output pointer");
    *out_pass = chains::behrstock_validate(d_xy_mu, d_yx_mu) ? 1 : 0;
  });
}

cvb_status cvb_chains_farey_dataset_json(cvb_slope x, cvb_slope y, int64_t n, char** out_json) {
  return guarded([&] { give(out_json, chains::collection_json(chains::farey_dataset(slope(x), slope(y), n)).dump(2)); });
}

cvb_status cvb_chains_run_json(const char* collection_json, int64_t cutoff, const char* mode, const char* anchor,
                               char** out_certificate, char** out_partition) {
  return guarded([&] {
    need(collection_json, "collection");
    need(mode, "mode");
    const std::vector<chains::SubsurfaceDatum> data =
        chains::parse_collection(ordered_json::parse(collection_json));
    const chains::ChainCertificate cert = chains::build_chain(
        data, cutoff, chains::parse_mode(mode), anchor ? std::optional<std::string>(anchor) : std::nullopt);
    const std::string problem = chains::validate(cert, data);
    if (!problem.empty()) fail(ErrorCode::internal, "certificate failed validation: " + problem);
    ordered_json cj = chains::certificate_json(cert);
    cj["telescoped_bound"] = format_real(chains::telescoped_bound(cert, cutoff));
    const auto parts = chains::partition_overlapping(chains::overlap_items(data));
    std::string cert_text = cj.dump(2);
    std::string part_text = chains::partition_json(parts).dump(2);
    if (out_certificate) *out_certificate = dup(cert_text);
    if (out_partition) *out_partition = dup(part_text);
  });
}

// ------------------------------------------------------------------- words

cvb_status cvb_psurface_new(uint32_t genus, uint32_t punctures, cvb_psurface** out) {
  return guarded([&] {
    need(out, "output pointer");
    *out = new cvb_psurface{words::PuncturedSurface(genus, punctures)};
  });
}

void cvb_psurface_free(cvb_psurface* s) { delete s; }

cvb_status cvb_word_parse(const cvb_psurface* s, const char* text, cvb_word** out) {
  return guarded([&] {
    need(s, "surface");
    need(text, "text");
    give_word(out, words::parse_word(s->value, text));
  });
}

cvb_status cvb_word_from_slope(const cvb_psurface* s, cvb_slope sl, cvb_word** out) {
  return guarded([&] {
    need(s, "surface");
    give_word(out, words::slope_to_word(s->value, slope(sl)).word());
  });
}

cvb_status cvb_word_format(const cvb_psurface* s, const cvb_word* w, char** out) {
  return guarded([&] {
    need(s, "surface");
    need(w, "word");
    give(out, words::to_string(s->value, w->value));
  });
}

size_t cvb_word_length(const cvb_word* w) { return w ? w->value.size() : 0; }

int cvb_word_equal(const cvb_word* a, const cvb_word* b) { return a && b && a->value == b->value ? 1 : 0; }

void cvb_word_free(cvb_word* w) { delete w; }

cvb_status cvb_word_intersection(const cvb_psurface* s, const cvb_word* a, const cvb_word* b, uint64_t* out) {
  return guarded([&] {
    need(s, "surface");
    need(a, "word");
    need(b, "word");
    need(out, "output pointer");
    *out = words::geometric_intersection(s->value, a->value, b->value);
  });
}

cvb_status cvb_word_self_intersection(const cvb_psurface* s, const cvb_word* w, uint64_t* out) {
  return guarded([&] {
    need(s, "surface");
    need(w, "word");
    need(out, "output pointer");
    *out = words::self_intersection(s->value, w->value);
  });
}

cvb_status cvb_word_twist(const cvb_psurface* s, const cvb_word* core, int64_t n, const cvb_word* w, cvb_word** out) {
  return guarded([&] {
    need(s, "surface");
    need(core, "core");
    need(w, "word");
    give_word(out, words::dehn_twist(s->value, words::SimpleCurve::certify(s->value, core->value), n, w->value));
  });
}

cvb_status cvb_short_simple_curves_json(const cvb_psurface* s, uint32_t max_length, char** out_json) {
  return guarded([&] {
    need(s, "surface");
    ordered_json arr = ordered_json::array();
    for (const words::SimpleCurve& c : words::short_simple_curves(s->value, max_length))
      arr.push_back(words::to_string(s->value, c.word()));
    ordered_json j;
    j["surface"] = s->value.str();
    j["max_length"] = std::to_string(max_length);
    j["count"] = std::to_string(arr.size());
    j["curves"] = std::move(arr);
    give(out_json, j.dump(2));
  });
}

// ---------------------------------------------------------- mapping classes

cvb_status cvb_mcg_supports_json(const cvb_surface* surface_ptr, const char* phi, int64_t k, char** out_json) {
  return guarded([&] {
    need(phi, "phi");
    const mcg::PureMappingClass cls = mcg::PureMappingClass::parse(phi, word_surface(surface_ptr));
    ordered_json comps = ordered_json::array();
    for (const mcg::SupportComponent& c : mcg::supports(cls))
      comps.push_back({{"id", c.id}, {"kind", chains::kind_name(c.kind)}, {"power", std::to_string(c.power)}});
    const mcg::IterationBound b = mcg::min_power_for_cutoff(cls, k);
    ordered_json j;
    j["phi"] = cls.str();
    j["supports"] = std::move(comps);
    j["k"] = std::to_string(k);
    j["n_min"] = std::to_string(b.n_min);
    j["rationale"] = mcg::rationale_name(b.rationale);
    give(out_json, j.dump(2));
  });
}

cvb_status cvb_mcg_pure_check(const cvb_surface* surface_ptr, const char* phi, const char* x, int64_t n, int64_t k,
                              const char* which, int sound_slack, cvb_report** out) {
  return guarded([&] {
    need(phi, "phi");
    need(x, "x");
    need(which, "which");
    const mcg::PureMappingClass cls = mcg::PureMappingClass::parse(phi, word_surface(surface_ptr));
    const mcg::Curve curve = cls.parse_curve(x);
    mcg::CheckOptions opt;
    opt.sound_slack = sound_slack != 0;
    const std::string w = which;
    if (w == "lower") {
      give_report(out, mcg::check_pure_lower(cls, curve, n, k, opt));
    } else if (w == "upper") {
      give_report(out, mcg::check_pure_upper(cls, curve, n, k, opt));
    } else {
      fail(ErrorCode::parse, "which must be 'lower' or 'upper'");
    }
  });
}

cvb_status cvb_mcg_twist_check(const cvb_surface* surface_ptr, const char* core, const char* x, int64_t n,
                               cvb_report** out) {
  return guarded([&] {
    need(core, "core");
    need(x, "x");
    if (!surface_ptr) {
      give_report(out, mcg::check_twist_identity(farey::Slope::parse(x), farey::Slope::parse(core), n));
      return;
    }
    const words::PuncturedSurface s(surface_ptr->genus, surface_ptr->boundaries);
    give_report(out, mcg::check_twist_identity(s, words::SimpleCurve::certify(s, words::parse_word(s, x)),
                                               words::SimpleCurve::certify(s, words::parse_word(s, core)), n));
  });
}

cvb_status cvb_mcg_geodesic_check(cvb_slope x, cvb_slope y, int64_t k, const char* which, const int64_t* picks,
                                  size_t pick_count, cvb_report** out) {
  return guarded([&] {
    need(which, "which");
    if (pick_count > 0) need(picks, "picks");
    const std::vector<i64> p(picks, picks + pick_count);
    give_report(out, mcg::check_geodesic_theorems(slope(x), slope(y), k, constants::parse_application(which), p));
  });
}

// -------------------------------------------------------------- experiments

cvb_status cvb_experiment_new(cvb_experiment** out) {
  return guarded([&] {
    need(out, "output pointer");
    *out = new cvb_experiment{};
  });
}

void cvb_experiment_free(cvb_experiment* e) { delete e; }

cvb_status cvb_experiment_set(cvb_experiment* e, const char* key, const char* value) {
  return guarded([&] {
    need(e, "experiment");
    need(key, "key");
    need(value, "value");
    harness::apply_setting(e->spec, key, value);
  });
}

cvb_status cvb_experiment_load_config(cvb_experiment* e, const char* path) {
  return guarded([&] {
    need(e, "experiment");
    need(path, "path");
    for (const auto& [k, v] : harness::read_config(path)) harness::apply_setting(e->spec, k, v);
  });
}

cvb_status cvb_experiment_run(cvb_experiment* e, uint64_t* out_failures) {
  return guarded([&] {
    need(e, "experiment");
    e->result = std::make_unique<harness::RunResult>(harness::run(e->spec));
    if (e->spec.out_dir) harness::write_outputs(e->spec, *e->result);
    if (out_failures) *out_failures = e->result->summary.fail;
  });
}

cvb_status cvb_experiment_summary_json(const cvb_experiment* e, char** out_json) {
  return guarded([&] {
    need(e, "experiment");
    if (!e->result) fail(ErrorCode::precondition, "experiment has not been run");
    give(out_json, harness::summary_json(e->spec, e->result->summary).dump(2));
  });
}

cvb_status cvb_experiment_reports(const cvb_experiment* e, const char* format, char** out) {
  return guarded([&] {
    need(e, "experiment");
    need(format, "format");
    if (!e->result) fail(ErrorCode::precondition, "experiment has not been run");
    const std::string f = format;
    if (f != "json" && f != "csv") fail(ErrorCode::parse, "format must be 'json' or 'csv'");
    std::vector<InequalityReport> reports;
    for (const harness::SampleResult& s : e->result->samples) reports.push_back(s.report);
    give(out, harness::render_reports(reports, f == "json" ? harness::Format::json : harness::Format::csv));
  });
}

}  // extern "C"
