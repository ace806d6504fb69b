// Command-line front end. Every computation goes through the C interface in
// curvebound/curvebound.h; this file only parses flags and prints results.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvebound/curvebound.h"

namespace {

/// Raised when a C call fails; carries the status for the exit code.
struct CallFailed : std::runtime_error {
  cvb_status status;
  CallFailed(cvb_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(cvb_status s) {
  if (s != CVB_OK) throw CallFailed(s, std::string(cvb_status_name(s)) + ": " + cvb_last_error());
}

/// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  cvb_free_string(s);
  return out;
}

cvb_slope parse_slope(const std::string& text) {
  cvb_slope s{};
  check(cvb_slope_parse(text.c_str(), &s));
  return s;
}

std::pair<cvb_slope, cvb_slope> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw CallFailed(CVB_PARSE, "parse: pair must read P/Q,R/S");
  return {parse_slope(text.substr(0, comma)), parse_slope(text.substr(comma + 1))};
}

cvb_surface parse_surface(const std::string& text) {
  unsigned g = 0, b = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%u,%u%c", &g, &b, &tail) != 2)
    throw CallFailed(CVB_PARSE, "parse: surface must read g,b");
  return cvb_surface{g, b};
}

std::vector<int64_t> parse_list(const std::string& text) {
  std::vector<int64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CallFailed(CVB_PARSE, "parse: invalid integer '" + item + "' in list");
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CallFailed(CVB_IO, "io: cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw CallFailed(CVB_IO, "io: cannot write " + path);
}

class Psurface {
 public:
  explicit Psurface(cvb_surface s) { check(cvb_psurface_new(s.genus, s.boundaries, &p_)); }
  ~Psurface() { cvb_psurface_free(p_); }
  Psurface(const Psurface&) = delete;
  Psurface& operator=(const Psurface&) = delete;
  const cvb_psurface* get() const { return p_; }

 private:
  cvb_psurface* p_ = nullptr;
};

class Word {
 public:
  Word(const Psurface& s, const std::string& text) { check(cvb_word_parse(s.get(), text.c_str(), &w_)); }
  explicit Word(cvb_word* w) : w_(w) {}
  ~Word() { cvb_word_free(w_); }
  Word(const Word&) = delete;
  Word& operator=(const Word&) = delete;
  const cvb_word* get() const { return w_; }

 private:
  cvb_word* w_ = nullptr;
};

/// Prints a report and converts its verdict into an exit code.
int emit(cvb_report* r) {
  char* json = nullptr;
  const cvb_status s = cvb_report_json(r, &json);
  const cvb_verdict v = cvb_report_verdict(r);
  cvb_report_free(r);
  check(s);
  std::cout << take(json) << "\n";
  return v == CVB_FAIL ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact intersection and subsurface-projection bounds for curves on surfaces"};
  app.set_version_flag("--version", cvb_version());
  app.require_subcommand(1);
  int exit_code = 0;

  // ---------------------------------------------------------- constants
  auto* constants = app.add_subcommand("constants", "Evaluate and plot the explicit constants");
  constants->require_subcommand(1);

  std::string c_fn, c_surface = "1,1";
  double c_arg = 0;
  uint64_t c_P = 0;
  auto* c_eval = constants->add_subcommand("eval", "Evaluate l, L, V, U or mainone-denominator");
  c_eval->add_option("--fn", c_fn, "l | L | V | U | mainone-denominator")->required();
  c_eval->add_option("--at,--p,--k", c_arg, "argument p (l, L) or k (V, U, mainone-denominator)")->required();
  c_eval->add_option("--surface", c_surface, "surface g,b for V and U");
  c_eval->add_option("--P", c_P, "P for U (0 selects the default bound)");
  c_eval->callback([&] {
    char* out = nullptr;
    check(cvb_constant_eval_json(c_fn.c_str(), parse_surface(c_surface), c_arg, c_P, &out));
    std::cout << take(out) << "\n";
  });

  auto* c_bounds = constants->add_subcommand("bounds", "Bounds on the partition constant P_S");
  c_bounds->add_option("--surface", c_surface, "surface g,b")->required();
  c_bounds->callback([&] {
    char* out = nullptr;
    check(cvb_p_bounds_json(parse_surface(c_surface), &out));
    std::cout << take(out) << "\n";
  });

  std::string c_family;
  int64_t c_k = 0;
  auto* c_coeff = constants->add_subcommand("coefficients", "Coefficients of the application bounds");
  c_coeff->add_option("--surface", c_surface, "surface g,b");
  c_coeff->add_option("--k", c_k, "cutoff k")->required();
  c_coeff->add_option("--family", c_family, "tight | endpoint | pure-upper")->required();
  c_coeff->add_option("--P", c_P, "override for P (0 selects the default bound)");
  c_coeff->callback([&] {
    char* out = nullptr;
    check(cvb_coefficients_json(parse_surface(c_surface), c_k, c_family.c_str(), c_P, &out));
    std::cout << take(out) << "\n";
  });

  int64_t p_from = 7, p_to = 200;
  std::string p_out;
  auto* c_plot = constants->add_subcommand("plot", "Write an SVG plot of l or L");
  c_plot->add_option("--fn", c_fn, "l | L")->required();
  c_plot->add_option("--from", p_from, "first integer argument");
  c_plot->add_option("--to", p_to, "last integer argument");
  c_plot->add_option("--out", p_out, "output SVG path")->required();
  c_plot->callback([&] {
    char* svg = nullptr;
    check(cvb_constant_plot_svg(c_fn.c_str(), p_from, p_to, &svg));
    write_file(p_out, take(svg));
  });

  // -------------------------------------------------------------- farey
  auto* farey = app.add_subcommand("farey", "Slopes on a complexity-one surface");
  farey->require_subcommand(1);
  std::string f_pair, f_core, f_slack = "sound", f_theorem, f_annulus = "core", f_surface = "1,1";
  int64_t f_k = 18;
  double f_tol = 1e-9;

  auto* f_dist = farey->add_subcommand("dist", "Distance, intersection and a geodesic");
  f_dist->add_option("--pair", f_pair, "P/Q,R/S")->required();
  f_dist->callback([&] {
    const auto [x, y] = parse_pair(f_pair);
    char* out = nullptr;
    check(cvb_geodesic_json(x, y, &out));
    std::cout << take(out) << "\n";
  });

  auto* f_piv = farey->add_subcommand("pivots", "Annuli with projection distance above k");
  f_piv->add_option("--pair", f_pair, "P/Q,R/S")->required();
  f_piv->add_option("--k", f_k, "cutoff");
  f_piv->callback([&] {
    const auto [x, y] = parse_pair(f_pair);
    char* out = nullptr;
    check(cvb_large_annuli_json(x, y, f_k, &out));
    std::cout << take(out) << "\n";
  });

  auto* f_check = farey->add_subcommand("check", "Evaluate one inequality on a slope pair");
  f_check->add_option("--theorem", f_theorem, "mainone | igd | hl | lemma-annulus")->required();
  f_check->add_option("--pair", f_pair, "P/Q,R/S")->required();
  f_check->add_option("--k", f_k, "cutoff k (n for lemma-annulus)");
  f_check->add_option("--core", f_core, "annulus core for lemma-annulus");
  f_check->add_option("--slack", f_slack, "sound | raw");
  f_check->add_option("--annulus", f_annulus, "core | doubled");
  f_check->add_option("--surface", f_surface, "surface g,b for V");
  f_check->add_option("--tolerance", f_tol, "relative tolerance");
  f_check->callback([&] {
    const auto [x, y] = parse_pair(f_pair);
    if (f_slack != "sound" && f_slack != "raw") throw CallFailed(CVB_PARSE, "parse: --slack must be sound or raw");
    if (f_annulus != "core" && f_annulus != "doubled")
      throw CallFailed(CVB_PARSE, "parse: --annulus must be core or doubled");
    cvb_farey_options opt = cvb_farey_options_default();
    opt.tolerance = f_tol;
    opt.sound_slack = f_slack == "sound";
    opt.doubled_annulus = f_annulus == "doubled";
    opt.surface = parse_surface(f_surface);
    cvb_report* r = nullptr;
    if (f_theorem == "lemma-annulus") {
      if (f_core.empty()) throw CallFailed(CVB_INVALID_ARGUMENT, "invalid_argument: lemma-annulus needs --core");
      check(cvb_lemma_annulus_check(parse_slope(f_core), x, y, f_k, &opt, &r));
    } else {
      check(cvb_farey_check(f_theorem.c_str(), x, y, f_k, &opt, &r));
    }
    exit_code = emit(r);
  });

  // ------------------------------------------------------------- chains
  auto* chains = app.add_subcommand("chains", "Chain certificates and overlap partitions from subsurface data");
  std::string ch_input, ch_mode = "annular", ch_anchor, ch_cert_out, ch_part_out;
  int64_t ch_cutoff = 18;
  chains->add_option("--input", ch_input, "JSON file of subsurface records");
  chains->add_option("--cutoff", ch_cutoff, "cutoff n");
  chains->add_option("--mode", ch_mode, "annular | mixed");
  chains->add_option("--anchor", ch_anchor, "anchor id (default: largest i_x + i_y)");
  chains->add_option("--certificate-out", ch_cert_out, "write the certificate here instead of stdout");
  chains->add_option("--partition-out", ch_part_out, "write the partition here instead of stdout");
  chains->require_subcommand(0, 1);

  std::string ch_pair;
  auto* ch_dataset = chains->add_subcommand("dataset", "Emit the Farey-model collection for a pair");
  ch_dataset->add_option("--pair", ch_pair, "P/Q,R/S")->required();
  ch_dataset->fallthrough();
  ch_dataset->callback([&] {
    const auto [x, y] = parse_pair(ch_pair);
    char* out = nullptr;
    check(cvb_chains_farey_dataset_json(x, y, ch_cutoff, &out));
    std::cout << take(out) << "\n";
  });

  chains->callback([&] {
    if (ch_dataset->parsed()) return;
    if (ch_input.empty()) throw CallFailed(CVB_INVALID_ARGUMENT, "invalid_argument: chains needs --input");
    const std::string doc = read_file(ch_input);
    char* cert = nullptr;
    char* part = nullptr;
    check(cvb_chains_run_json(doc.c_str(), ch_cutoff, ch_mode.c_str(), ch_anchor.empty() ? nullptr : ch_anchor.c_str(),
                              &cert, &part));
    const std::string cert_text = take(cert), part_text = take(part);
    if (ch_cert_out.empty()) {
      std::cout << cert_text << "\n";
    } else {
      write_file(ch_cert_out, cert_text + "\n");
    }
    if (ch_part_out.empty()) {
      std::cout << part_text << "\n";
    } else {
      write_file(ch_part_out, part_text + "\n");
    }
  });

  // -------------------------------------------------------------- words
  auto* wordsc = app.add_subcommand("words", "Cyclic words on punctured surfaces");
  wordsc->require_subcommand(1);
  std::string w_surface = "0,4", w_a, w_b, w_core, w_x, w_slope;
  int64_t w_n = 1;
  unsigned w_len = 4;

  auto* w_i = wordsc->add_subcommand("i", "Geometric intersection number");
  w_i->add_option("--surface", w_surface, "surface g,n")->required();
  w_i->add_option("--a", w_a, "first word")->required();
  w_i->add_option("--b", w_b, "second word (omit for self-intersection)");
  w_i->callback([&] {
    const Psurface s(parse_surface(w_surface));
    const Word a(s, w_a);
    uint64_t v = 0;
    if (w_b.empty()) {
      check(cvb_word_self_intersection(s.get(), a.get(), &v));
    } else {
      const Word b(s, w_b);
      check(cvb_word_intersection(s.get(), a.get(), b.get(), &v));
    }
    std::cout << v << "\n";
  });

  auto* w_tw = wordsc->add_subcommand("twist", "Apply T_core^n to a word");
  w_tw->add_option("--surface", w_surface, "surface g,n")->required();
  w_tw->add_option("--core", w_core, "simple core word")->required();
  w_tw->add_option("--x", w_x, "word to twist")->required();
  w_tw->add_option("--n", w_n, "power");
  w_tw->callback([&] {
    const Psurface s(parse_surface(w_surface));
    const Word core(s, w_core), x(s, w_x);
    cvb_word* out = nullptr;
    check(cvb_word_twist(s.get(), core.get(), w_n, x.get(), &out));
    const Word result(out);
    char* text = nullptr;
    check(cvb_word_format(s.get(), result.get(), &text));
    std::cout << take(text) << "\n";
  });

  auto* w_sl = wordsc->add_subcommand("slope", "Simple word for a slope on S_{1,1} or S_{0,4}");
  w_sl->add_option("--surface", w_surface, "1,1 or 0,4")->required();
  w_sl->add_option("--slope", w_slope, "P/Q")->required();
  w_sl->callback([&] {
    const Psurface s(parse_surface(w_surface));
    cvb_word* out = nullptr;
    check(cvb_word_from_slope(s.get(), parse_slope(w_slope), &out));
    const Word result(out);
    char* text = nullptr;
    check(cvb_word_format(s.get(), result.get(), &text));
    std::cout << take(text) << "\n";
  });

  auto* w_curves = wordsc->add_subcommand("curves", "Short simple non-peripheral curves");
  w_curves->add_option("--surface", w_surface, "surface g,n")->required();
  w_curves->add_option("--max-length", w_len, "largest word length");
  w_curves->callback([&] {
    const Psurface s(parse_surface(w_surface));
    char* out = nullptr;
    check(cvb_short_simple_curves_json(s.get(), w_len, &out));
    std::cout << take(out) << "\n";
  });

  // ---------------------------------------------------------------- mcg
  auto* mcgc = app.add_subcommand("mcg", "Pure mapping classes and the geodesic bounds");
  mcgc->require_subcommand(1);
  std::string m_surface, m_phi, m_x, m_which, m_pair, m_picks, m_core, m_slack = "sound";
  int64_t m_n = 1, m_k = 14;

  auto* m_pure = mcgc->add_subcommand("pure-check", "Lower or upper bound for phi^n");
  m_pure->add_option("--surface", m_surface, "surface g,n (omit for matrix classes)");
  m_pure->add_option("--phi", m_phi, "[[a,b],[c,d]] or twist(core=WORD,power=P);...")->required();
  m_pure->add_option("--x", m_x, "slope or word")->required();
  m_pure->add_option("--n", m_n, "iterate")->required();
  m_pure->add_option("--k", m_k, "cutoff k")->required();
  m_pure->add_option("--which", m_which, "lower | upper")->required();
  m_pure->add_option("--slack", m_slack, "sound | raw");
  m_pure->callback([&] {
    cvb_surface s{};
    if (!m_surface.empty()) s = parse_surface(m_surface);
    cvb_report* r = nullptr;
    check(cvb_mcg_pure_check(m_surface.empty() ? nullptr : &s, m_phi.c_str(), m_x.c_str(), m_n, m_k, m_which.c_str(),
                             m_slack != "raw", &r));
    exit_code = emit(r);
  });

  auto* m_sup = mcgc->add_subcommand("supports", "Supports and iteration bound of phi");
  m_sup->add_option("--surface", m_surface, "surface g,n (omit for matrix classes)");
  m_sup->add_option("--phi", m_phi, "class spec")->required();
  m_sup->add_option("--k", m_k, "cutoff k");
  m_sup->callback([&] {
    cvb_surface s{};
    if (!m_surface.empty()) s = parse_surface(m_surface);
    char* out = nullptr;
    check(cvb_mcg_supports_json(m_surface.empty() ? nullptr : &s, m_phi.c_str(), m_k, &out));
    std::cout << take(out) << "\n";
  });

  auto* m_twist = mcgc->add_subcommand("twist-check", "Exact twist intersection identity");
  m_twist->add_option("--surface", m_surface, "surface g,n (omit for slopes)");
  m_twist->add_option("--core", m_core, "core slope or word")->required();
  m_twist->add_option("--x", m_x, "slope or word")->required();
  m_twist->add_option("--n", m_n, "power")->required();
  m_twist->callback([&] {
    cvb_surface s{};
    if (!m_surface.empty()) s = parse_surface(m_surface);
    cvb_report* r = nullptr;
    check(cvb_mcg_twist_check(m_surface.empty() ? nullptr : &s, m_core.c_str(), m_x.c_str(), m_n, &r));
    exit_code = emit(r);
  });

  auto* m_geo = mcgc->add_subcommand("geodesic-check", "Tight or endpoint geodesic bound");
  m_geo->add_option("--pair", m_pair, "P/Q,R/S")->required();
  m_geo->add_option("--k", m_k, "cutoff k")->required();
  m_geo->add_option("--which", m_which, "tight | endpoint")->required();
  m_geo->add_option("--picks", m_picks, "comma-separated vertex indices");
  m_geo->callback([&] {
    const auto [x, y] = parse_pair(m_pair);
    const std::vector<int64_t> picks = parse_list(m_picks);
    cvb_report* r = nullptr;
    check(cvb_mcg_geodesic_check(x, y, m_k, m_which.c_str(), picks.data(), picks.size(), &r));
    exit_code = emit(r);
  });

  // ------------------------------------------------------------- verify
  auto* verify = app.add_subcommand("verify", "Seeded sweep of one inequality");
  std::string v_config;
  verify->add_option("--config", v_config, "key=value file supplying defaults");
  struct Setting {
    const char* key;
    const char* help;
    std::string value;
  };
  std::vector<Setting> settings = {
      {"theorem", "mainone | igd | hl | lemma-annulus | pure-lower | pure-upper | tight | endpoint | twist-identity", {}},
      {"surface", "surface g,b", {}},
      {"k", "cutoff k", {}},
      {"samples", "sample count", {}},
      {"seed", "64-bit seed", {}},
      {"sampler", "uniform_cf | adversarial_twist | fibonacci | word_random", {}},
      {"slack", "sound | raw", {}},
      {"workers", "worker threads", {}},
      {"max-denominator", "largest sampled denominator", {}},
      {"max-coeff", "largest continued-fraction coefficient", {}},
      {"max-len", "longest continued fraction", {}},
      {"pair", "fixed pair P/Q,R/S for every sample", {}},
      {"out", "output directory", {}},
  };
  for (Setting& s : settings) verify->add_option(std::string("--") + s.key, s.value, s.help);
  verify->callback([&] {
    cvb_experiment* e = nullptr;
    check(cvb_experiment_new(&e));
    std::unique_ptr<cvb_experiment, void (*)(cvb_experiment*)> guard(e, cvb_experiment_free);
    if (!v_config.empty()) check(cvb_experiment_load_config(e, v_config.c_str()));
    for (const Setting& s : settings)
      if (verify->count(std::string("--") + s.key) > 0) check(cvb_experiment_set(e, s.key, s.value.c_str()));
    uint64_t failures = 0;
    check(cvb_experiment_run(e, &failures));
    char* summary = nullptr;
    check(cvb_experiment_summary_json(e, &summary));
    std::cout << take(summary) << "\n";
    exit_code = failures == 0 ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const CallFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
