#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <regex>
#include <string>
#include <vector>

#include "analytic_bounds.hpp"
#include "simulator.hpp"

namespace ftqec {

struct CsvRow {
  std::string code, scheme;
  double p = 0, p_ft = 0;
  std::string metric;
  double value = 0;
  std::optional<double> ci_low, ci_high;
  std::optional<std::uint64_t> trials, seed;
};

inline std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline void write_csv(std::ostream& os, const std::vector<CsvRow>& rows) {
  os << "# ftqec-limits csv v1\n";
  os << "code,scheme,p,p_ft,metric,value,ci_low,ci_high,trials,seed\n";
  for (const auto& r : rows) {
    os << r.code << ',' << r.scheme << ',' << fmt_num(r.p) << ',' << fmt_num(r.p_ft) << ',' << r.metric << ','
       << fmt_num(r.value) << ',' << (r.ci_low ? fmt_num(*r.ci_low) : "") << ','
       << (r.ci_high ? fmt_num(*r.ci_high) : "") << ',' << (r.trials ? std::to_string(*r.trials) : "") << ','
       << (r.seed ? std::to_string(*r.seed) : "") << '\n';
  }
}

// Accepts a family name (with --d) or a catalog name such as surface13 or rotated9.
inline StabilizerCode resolve_code(const std::string& name, int d = 3) {
  std::optional<Family> fam;
  try {
    fam = parse_family(name);
  } catch (const std::invalid_argument&) {
  }
  if (fam) return build_code(*fam, d);
  std::smatch m;
  static const std::regex re("([a-z_]+?)([0-9]+)");
  if (std::regex_match(name, m, re)) {
    Family f = parse_family(m[1]);
    int n = std::stoi(m[2]);
    for (int dd = 3; dd <= 15; dd += 2) {
      StabilizerCode c;
      try {
        c = build_code(f, dd);
      } catch (const std::invalid_argument&) {
        continue;
      }
      if (c.n == n) return c;
      if (c.n > n) break;
    }
  }
  throw UnsupportedParameters("unknown code '" + name + "'");
}

inline Rational decoder_beta(const StabilizerCode& code) {
  auto dec = default_decoder(code);
  return compute_beta(code, *dec, code.t + 1).fraction;
}

inline DecoderProfile decoder_profile(const StabilizerCode& code, ProfileKind kind) {
  switch (kind) {
    case ProfileKind::bounded_distance: return DecoderProfile::bounded(code.n, code.k, code.t);
    case ProfileKind::beta_refined: return DecoderProfile::with_beta(code.n, code.k, code.t, decoder_beta(code));
    case ProfileKind::enumerator_refined:
      return DecoderProfile::with_enumerator(code.n, code.k, code.t, decoder_beta(code), weight_enumerator(code));
  }
  throw std::invalid_argument("profile");
}

inline ProfileKind parse_profile(const std::string& s) {
  if (s == "bd") return ProfileKind::bounded_distance;
  if (s == "beta") return ProfileKind::beta_refined;
  if (s == "enum") return ProfileKind::enumerator_refined;
  throw std::invalid_argument("unknown decoder profile '" + s + "'");
}

inline AResMode parse_a_res_mode(const std::string& s) {
  if (s == "theorem_gm" || s == "theorem") return AResMode::theorem_gm;
  if (s == "all_generators" || s == "figure") return AResMode::all_generators;
  throw std::invalid_argument("unknown a-res mode '" + s + "'");
}

inline std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g;
  for (int i = 0; i < points; ++i) g.push_back(std::pow(10.0, std::log10(lo) + (std::log10(hi) - std::log10(lo)) * i / (points - 1)));
  return g;
}

inline const std::vector<double>& standard_grid() {
  static const std::vector<double> g = {0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2};
  return g;
}

inline const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"bd_compare", "steane_p100", "surface_p10", "surface_res_p100"};
  return ids;
}

struct FigureOptions {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool simulate = true;
};

namespace detail {

struct FigureBuilder {
  const StabilizerCode& code;
  std::string scheme = "optimized";
  std::vector<CsvRow> rows;

  void bound(const std::string& metric, double p, double p_ft, double v) {
    rows.push_back({code.name, scheme, p, p_ft, metric, v, {}, {}, {}, {}});
  }

  // One Monte Carlo run per grid; each requested metric becomes a series.
  void simulate(const std::vector<double>& grid, double ratio, const std::vector<std::pair<std::string, int>>& metrics,
                const FigureOptions& opt) {
    Simulator sim(code);
    EstimateConfig cfg;
    for (double p : grid) cfg.grid.push_back({p, ratio > 0 ? p / ratio : 0.0});
    cfg.trials = opt.trials;
    cfg.seed = opt.seed;
    cfg.threads = opt.threads;
    auto stats = estimate(sim, cfg);
    for (const auto& [name, which] : metrics)
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& s = stats[i];
        std::uint64_t k = which == 0 ? s.decode_fail : which == 1 ? s.residual : s.total_fail;
        auto ci = s.ci(k);
        rows.push_back({code.name, scheme, cfg.grid[i].p, cfg.grid[i].p_ft, name, s.rate(k), ci.lo, ci.hi, s.trials, opt.seed});
      }
  }
};

inline BoundInputs flag_inputs(const StabilizerCode& code, NoiseModel noise, const DecoderProfile& prof) {
  return make_inputs(code, build_layout(code, FlagScheme::optimized, LayoutKind::flag), noise, prof);
}

}  // namespace detail

inline std::vector<CsvRow> figure_data(const std::string& id, const FigureOptions& opt = {}) {
  const auto& g8 = standard_grid();
  auto g9 = g8;
  g9.push_back(0.4);
  enum { dec = 0, res = 1, fail = 2 };

  if (id == "bd_compare") {
    auto code = build_code(Family::surface, 3);
    detail::FigureBuilder fb{code, "optimized", {}};
    if (opt.simulate) fb.simulate(g8, 0, {{"sim_p_fail", fail}}, opt);
    for (auto kind : {ProfileKind::bounded_distance, ProfileKind::beta_refined, ProfileKind::enumerator_refined}) {
      auto prof = decoder_profile(code, kind);
      for (double p : g8) fb.bound(std::string("ub_") + profile_name(kind), p, 0, qec_upper_bound(code, p, prof));
    }
    return fb.rows;
  }
  if (id == "steane_p100" || id == "surface_p10") {
    bool steane = id == "steane_p100";
    auto code = build_code(steane ? Family::steane : Family::surface, 3);
    double ratio = steane ? 100 : 10;
    detail::FigureBuilder fb{code, "optimized", {}};
    if (opt.simulate) {
      fb.simulate(g8, ratio, {{"sim_p_fail_dec", dec}}, opt);
      fb.simulate(g8, 0, {{"sim_ideal", fail}}, opt);
    }
    auto prof = decoder_profile(code, ProfileKind::beta_refined);
    for (double p : steane ? g9 : g8)
      fb.bound("ub_simple", p, p / ratio, simple_decoding_bound(detail::flag_inputs(code, {p, p / ratio}, prof)));
    for (double p : steane ? g8 : log_grid(1e-3, std::pow(10.0, -0.1), 20))
      fb.bound("ub_theorem1", p, p / ratio, theorem1_bound(detail::flag_inputs(code, {p, p / ratio}, prof)));
    for (double p : steane ? g9 : g8) fb.bound("ub_beta_ideal", p, 0, qec_upper_bound(code, p, prof));
    return fb.rows;
  }
  if (id == "surface_res_p100") {
    auto code = build_code(Family::surface, 3);
    detail::FigureBuilder fb{code, "optimized", {}};
    if (opt.simulate) fb.simulate(g8, 100, {{"sim_p_res", res}, {"sim_p_fail_dec", dec}, {"sim_p_fail", fail}}, opt);
    auto prof = decoder_profile(code, ProfileKind::beta_refined);
    for (double p : g8) {
      auto in = detail::flag_inputs(code, {p, p / 100}, prof);
      in.a_res_mode = AResMode::all_generators;
      double d = theorem1_bound(in), r = residual_upper_bound(in);
      fb.bound("ub_p_fail_dec", p, p / 100, d);
      fb.bound("ub_p_fail", p, p / 100, total_failure_bound(r, d));
      if (p <= 0.01) fb.bound("ub_p_res_asym", p, p / 100, r);
      fb.bound("lb_p_res", p, p / 100, residual_lower_bound(in));
    }
    return fb.rows;
  }
  throw std::invalid_argument("unknown figure id '" + id + "'");
}

}  // namespace ftqec
