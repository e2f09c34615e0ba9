#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <yaml-cpp/yaml.h>

#include "ftqec/report.hpp"

using namespace ftqec;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string code = "surface";
  int d = 3;
  std::string scheme = "optimized";
  std::string kind = "flag";
  std::string profile = "beta";
  std::vector<double> p;
  double ratio = 0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;
  std::string a_res_mode = "theorem_gm";
  int v_m = 1;
  std::string order = "xz";
  std::string decoder = "default";
  int weight = -1;
  std::string config;
  std::string figure;
  bool no_sim = false;
};

void flatten(const YAML::Node& node, const std::string& prefix, std::map<std::string, YAML::Node>& out) {
  if (node.IsMap()) {
    for (const auto& kv : node) {
      auto key = kv.first.as<std::string>();
      flatten(kv.second, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else {
    out[prefix] = node;
  }
}

// Config values fill in options not given on the command line.
void load_config(Options& o, const std::string& path, const CLI::App& app) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    throw UsageError("config: " + std::string(e.what()));
  }
  std::map<std::string, YAML::Node> kv;
  flatten(root, "", kv);
  auto given = [&](const char* flag) { return app.count(flag) > 0; };
  for (const auto& [key, node] : kv) {
    try {
      if (key == "code.family") {
        if (!given("--code")) o.code = node.as<std::string>();
      } else if (key == "code.distance") {
        if (!given("--d")) o.d = node.as<int>();
      } else if (key == "scheme") {
        if (!given("--scheme")) o.scheme = node.as<std::string>();
      } else if (key == "noise.p") {
        if (!given("--p")) o.p = node.IsSequence() ? node.as<std::vector<double>>() : std::vector<double>{node.as<double>()};
      } else if (key == "noise.ratio") {
        if (!given("--ratio")) o.ratio = node.as<double>();
      } else if (key == "trials") {
        if (!given("--trials")) o.trials = node.as<std::uint64_t>();
      } else if (key == "seed") {
        if (!given("--seed")) o.seed = node.as<std::uint64_t>();
      } else if (key == "order") {
        if (!given("--order")) o.order = node.as<std::string>();
      } else if (key == "threads") {
        if (!given("--threads")) o.threads = node.as<unsigned>();
      } else {
        throw UsageError("config: unknown key '" + key + "'");
      }
    } catch (const YAML::Exception&) {
      throw UsageError("config: invalid value for key '" + key + "'");
    }
  }
}

void emit(const Options& o, const std::vector<CsvRow>& rows) {
  if (o.out.empty() || o.out == "-") {
    write_csv(std::cout, rows);
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw std::runtime_error("cannot open output file '" + o.out + "'");
  write_csv(f, rows);
}

void check_grid(const Options& o) {
  if (o.p.empty()) throw UsageError("--p: at least one value required");
  for (double p : o.p)
    if (!(p >= 0 && p <= 1)) throw UsageError("--p: value outside [0,1]");
  if (o.ratio < 0) throw UsageError("--ratio: must be positive (0 disables extraction faults)");
}

double p_ft_of(const Options& o, double p) { return o.ratio > 0 ? p / o.ratio : 0.0; }

int cmd_params(const Options& o) {
  auto code = resolve_code(o.code, o.d);
  auto layout = build_layout(code, parse_scheme(o.scheme), parse_kind(o.kind));
  const auto& prof = code.gamma_type;
  std::printf("code %s  n=%d k=%d d=%d  scheme=%s kind=%s\n", code.name.c_str(), code.n, code.k, code.d,
              scheme_name(layout.scheme), kind_name(layout.kind));
  std::printf("%-5s %-4s %-6s %-7s %-5s\n", "gen", "type", "gamma", "n_flag", "n_FL");
  for (std::size_t i = 0; i < layout.per_generator.size(); ++i) {
    const auto& g = layout.per_generator[i];
    std::printf("%-5zu %-4s %-6d %-7d %-5d\n", i, type_tag(prof[i]).c_str(), g.gamma, g.n_flag, g.n_fl);
  }
  std::printf("N_FL=%lld\n", static_cast<long long>(layout.N_FL));
  return 0;
}

int cmd_bounds(const Options& o) {
  check_grid(o);
  auto code = resolve_code(o.code, o.d);
  auto kind = parse_profile(o.profile);
  auto prof = decoder_profile(code, kind);
  std::vector<CsvRow> rows;
  auto row = [&](double p, double pft, const std::string& metric, double v) {
    rows.push_back({code.name, o.scheme, p, pft, metric, v, {}, {}, {}, {}});
  };
  std::optional<FtLayout> layout;
  if (o.ratio > 0) layout = build_layout(code, parse_scheme(o.scheme), parse_kind(o.kind));
  for (double p : o.p) {
    row(p, 0, std::string("qec_upper_bound_") + profile_name(kind), qec_upper_bound(code, p, prof));
    if (!layout) continue;
    auto in = make_inputs(code, *layout, {p, p_ft_of(o, p)}, prof);
    in.a_res_mode = parse_a_res_mode(o.a_res_mode);
    in.v_m = o.v_m;
    double pft = in.noise.p_ft;
    row(p, pft, "simple_bound", simple_decoding_bound(in));
    if (layout->kind == LayoutKind::flag) {
      std::string diag;
      double t1 = theorem1_bound(in, &diag);
      if (!diag.empty()) std::cerr << "warning: " << diag << " at p=" << p << '\n';
      row(p, pft, "theorem1_bound", t1);
      if (in.A) {
        double r = residual_upper_bound(in);
        row(p, pft, "residual_lower_bound", residual_lower_bound(in));
        row(p, pft, "residual_upper_bound", r);
        row(p, pft, "total_failure_bound", total_failure_bound(r, t1));
      }
    }
  }
  emit(o, rows);
  return 0;
}

int cmd_beta(const Options& o) {
  auto code = resolve_code(o.code, o.d);
  auto dec = make_decoder(code, o.decoder);
  int w = o.weight >= 0 ? o.weight : code.t + 1;
  auto r = compute_beta(code, *dec, w);
  std::printf("%s %s w=%d successes=%lld total=%lld beta=%lld/%lld\n", code.name.c_str(), dec->name().c_str(), w,
              static_cast<long long>(r.successes), static_cast<long long>(r.total),
              static_cast<long long>(r.fraction.numerator()), static_cast<long long>(r.fraction.denominator()));
  return 0;
}

int cmd_simulate(const Options& o) {
  check_grid(o);
  if (o.trials < 1) throw UsageError("trials: must be >= 1");
  if (parse_scheme(o.scheme) != FlagScheme::optimized)
    throw UnsupportedParameters("simulation supports the optimized scheme only");
  auto code = resolve_code(o.code, o.d);
  std::shared_ptr<const Decoder> dec(make_decoder(code, o.decoder));
  Simulator sim(code, parse_order(o.order), dec);
  EstimateConfig cfg;
  for (double p : o.p) cfg.grid.push_back({p, p_ft_of(o, p)});
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  auto stats = estimate(sim, cfg);
  std::vector<CsvRow> rows;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const auto& s = stats[i];
    auto add = [&](const char* metric, std::uint64_t k) {
      auto ci = s.ci(k);
      rows.push_back({code.name, o.scheme, cfg.grid[i].p, cfg.grid[i].p_ft, metric, s.rate(k), ci.lo, ci.hi, s.trials, o.seed});
    };
    add("p_fail_dec", s.decode_fail);
    add("p_res", s.residual);
    add("p_fail", s.total_fail);
    rows.push_back({code.name, o.scheme, cfg.grid[i].p, cfg.grid[i].p_ft, "mean_rounds", s.mean_rounds(), {}, {}, s.trials, o.seed});
    rows.push_back({code.name, o.scheme, cfg.grid[i].p, cfg.grid[i].p_ft, "aborted", static_cast<double>(s.aborted), {}, {}, s.trials, o.seed});
    if (s.unknown_flag_keys)
      std::cerr << "note: " << s.unknown_flag_keys << " flag patterns outside the single-fault table at p=" << cfg.grid[i].p << '\n';
  }
  emit(o, rows);
  return 0;
}

int cmd_figure(const Options& o) {
  if (o.trials < 1 && !o.no_sim) throw UsageError("trials: must be >= 1 (or pass --no-sim)");
  FigureOptions fo;
  fo.trials = o.trials;
  fo.seed = o.seed;
  fo.threads = o.threads;
  fo.simulate = !o.no_sim;
  emit(o, figure_data(o.figure, fo));
  return 0;
}

void fail(const char* kind, const std::string& msg) { std::cerr << "error: " << kind << ": " << msg << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds and Monte Carlo estimates for fault-tolerant QEC cycles"};
  app.require_subcommand(1);
  Options o;

  auto code_opts = [&](CLI::App* c) {
    c->add_option("--code", o.code, "code family or catalog name (steane, surface, surface13, rotated9, ...)");
    c->add_option("--d", o.d, "code distance");
  };
  auto noise_opts = [&](CLI::App* c) {
    c->add_option("--p", o.p, "memory error rate (repeatable)");
    c->add_option("--ratio", o.ratio, "p_FT = p / ratio; 0 disables extraction faults");
  };
  auto out_opt = [&](CLI::App* c) { c->add_option("--out", o.out, "CSV output path (default stdout)"); };

  auto* params = app.add_subcommand("params", "generator weights, flag counts and faulty locations");
  code_opts(params);
  params->add_option("--scheme", o.scheme);
  params->add_option("--kind", o.kind, "flag or cat");

  auto* bounds = app.add_subcommand("bounds", "analytic decoding and residual bounds");
  code_opts(bounds);
  noise_opts(bounds);
  out_opt(bounds);
  bounds->add_option("--scheme", o.scheme);
  bounds->add_option("--kind", o.kind);
  bounds->add_option("--profile", o.profile, "bd, beta or enum");
  bounds->add_option("--a-res-mode", o.a_res_mode, "theorem_gm or all_generators");
  bounds->add_option("--v-m", o.v_m, "v_m for the residual lower bound")->check(CLI::PositiveNumber);

  auto* beta = app.add_subcommand("beta", "fraction of weight-(t+1) errors the decoder corrects");
  code_opts(beta);
  beta->add_option("--decoder", o.decoder, "lut, mwpm or default");
  beta->add_option("--weight", o.weight, "error weight (default t+1)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo of full extraction cycles");
  code_opts(simulate);
  noise_opts(simulate);
  out_opt(simulate);
  simulate->add_option("--config", o.config, "YAML config with code.family, code.distance, scheme, noise.p, ...");
  simulate->add_option("--scheme", o.scheme);
  simulate->add_option("--trials", o.trials);
  simulate->add_option("--seed", o.seed);
  simulate->add_option("--threads", o.threads, "worker threads (0: all cores)");
  simulate->add_option("--order", o.order, "xz or interleaved");
  simulate->add_option("--decoder", o.decoder, "lut, mwpm or default");

  auto* figure = app.add_subcommand("figure-data", "series for the reference figures");
  figure->add_option("figure", o.figure, "bd_compare | steane_p100 | surface_p10 | surface_res_p100")
      ->required()
      ->check(CLI::IsMember(figure_ids()));
  out_opt(figure);
  figure->add_option("--trials", o.trials);
  figure->add_option("--seed", o.seed);
  figure->add_option("--threads", o.threads);
  figure->add_flag("--no-sim", o.no_sim, "bounds only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail("usage", e.what());
    return 2;
  }

  try {
    if (simulate->parsed() && !o.config.empty()) load_config(o, o.config, *simulate);
    if (params->parsed()) return cmd_params(o);
    if (bounds->parsed()) return cmd_bounds(o);
    if (beta->parsed()) return cmd_beta(o);
    if (simulate->parsed()) return cmd_simulate(o);
    if (figure->parsed()) return cmd_figure(o);
  } catch (const UsageError& e) {
    fail("usage", e.what());
    return 2;
  } catch (const UnsupportedParameters& e) {
    fail("unsupported", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    fail("usage", e.what());
    return 2;
  } catch (const std::exception& e) {
    fail("runtime", e.what());
    return 4;
  }
  return 2;
}
