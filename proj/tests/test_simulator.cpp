#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "ftqec/report.hpp"
#include "ftqec/simulator.hpp"

using namespace ftqec;

namespace {

std::vector<Pauli> stabilizer_group(const StabilizerCode& c) {
  std::vector<Pauli> out{Pauli{}};
  for (std::size_t i = 0; i < c.num_generators(); ++i) {
    std::size_t sz = out.size();
    for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * c.generator(i));
  }
  return out;
}

std::size_t reduced_weight(const Pauli& e, const std::vector<Pauli>& group) {
  std::size_t w = e.weight();
  for (const auto& s : group) w = std::min(w, (e * s).weight());
  return w;
}

// Exact failure probability of one perfect round on a depolarized CSS code, X and Z parts enumerated jointly.
double exact_ideal_failure(const StabilizerCode& c, const Decoder& dec, double p) {
  const int n = c.n;
  const std::size_t N = std::size_t{1} << n;
  std::vector<Bits> mask(N);
  std::vector<char> ok_x(N), ok_z(N);
  for (std::size_t m = 0; m < N; ++m) {
    for (int q = 0; q < n; ++q)
      if (m >> q & 1) mask[m].set(q);
    Pauli ex, ez;
    ex.x = mask[m];
    ez.z = mask[m];
    ok_x[m] = decode_success(c, ex, dec.decode(c.syndrome(ex)));
    ok_z[m] = decode_success(c, ez, dec.decode(c.syndrome(ez)));
  }
  std::vector<double> pw(n + 1);
  for (int w = 0; w <= n; ++w) pw[w] = std::pow(p / 3, w) * std::pow(1 - p, n - w);
  double success = 0;
  for (std::size_t a = 0; a < N; ++a) {
    if (!ok_x[a]) continue;
    for (std::size_t b = 0; b < N; ++b)
      if (ok_z[b]) success += pw[__builtin_popcountll(a | b)];
  }
  return 1 - success;
}

const Family kFamilies[] = {Family::steane, Family::surface, Family::rotated_surface};

}  // namespace

TEST(Gadget, LocationCountsAndFlags) {
  for (auto fam : kFamilies) {
    auto code = build_code(fam, 3);
    for (std::size_t i = 0; i < code.generators.size(); ++i) {
      auto g = build_gadget(code, static_cast<int>(i));
      int gamma = static_cast<int>(code.generators[i].support.size());
      EXPECT_EQ(g.n_flag(), gamma >= 4 ? 2 : 0);
      EXPECT_EQ(static_cast<int>(g.locations.size()), faulty_locations(LayoutKind::flag, gamma, g.n_flag()));
      PauliFrame f;
      auto r = execute_gadget(g, f, no_faults());
      EXPECT_EQ(r.outcome, 0);
      EXPECT_EQ(r.flags, 0u);
      EXPECT_TRUE(f.is_identity());
    }
  }
  EXPECT_EQ(build_gadget(build_code(Family::steane, 3), 0).locations.size(), 24u);
  EXPECT_THROW(build_gadget(build_code(Family::steane, 3), 0, 0, FlagScheme::chao_reichardt_1), UnsupportedParameters);
}

TEST(Simulator, LocationsPerRoundMatchLayout) {
  for (auto fam : kFamilies) {
    auto code = build_code(fam, 3);
    Simulator sim(code);
    EXPECT_EQ(static_cast<std::int64_t>(sim.locations_per_round()),
              build_layout(code, FlagScheme::optimized, LayoutKind::flag).N_FL);
  }
}

TEST(Simulator, RejectsUnsupportedCodes) {
  EXPECT_THROW(Simulator(build_code(Family::surface, 5)), UnsupportedParameters);
  EXPECT_THROW(Simulator(build_code(Family::mobius, 3)), UnsupportedParameters);
  EXPECT_THROW(parse_order("zx"), std::invalid_argument);
}

// Every single fault in a gadget, after the flag correction, leaves data error equivalent to weight <= 1.
TEST(Simulator, SingleFaultsStayCorrectable) {
  static constexpr PauliKind kinds[3] = {PauliKind::X, PauliKind::Y, PauliKind::Z};
  for (auto fam : kFamilies) {
    auto code = build_code(fam, 3);
    auto group = stabilizer_group(code);
    Simulator sim(code);
    int cases = 0;
    for (std::size_t slot = 0; slot < sim.gadgets().size(); ++slot) {
      const auto& g = sim.gadgets()[slot];
      for (const auto& loc : g.locations)
        for (PauliKind k : kinds) {
          PauliFrame f;
          auto r = execute_gadget(g, f, [&](const FaultLocation& l) -> std::optional<PauliKind> {
            if (l.ordinal == loc.ordinal) return k;
            return std::nullopt;
          });
          Pauli e = data_part(f, code.n);
          auto c = sim.flag_decode(slot, r.flags, code.syndrome(e));
          ASSERT_TRUE(c.has_value());
          EXPECT_LE(reduced_weight(e * *c, group), 1u) << code.name << " slot " << slot << " loc " << loc.ordinal;
          ++cases;
        }
    }
    EXPECT_EQ(cases, 3 * static_cast<int>(sim.locations_per_round()));
  }
}

TEST(Simulator, HookTableEntry) {
  auto code = build_code(Family::steane, 3);
  Simulator sim(code);
  ASSERT_EQ(sim.gadgets()[0].generator, 0);
  const auto& s = code.generators[0].support;
  Pauli hook = x_on({s[2], s[3]});
  auto c = sim.flag_decode(0, 1u, code.syndrome(hook));
  ASSERT_TRUE(c.has_value());
  EXPECT_TRUE(code.in_stabilizer_group(*c * hook));
  EXPECT_FALSE(sim.flag_decode(0, 3u, Bits{}).has_value());
  EXPECT_TRUE(sim.flag_decode(0, 0u, Bits{})->is_identity());
}

TEST(Simulator, NoiselessCycle) {
  for (auto fam : kFamilies) {
    for (auto order : {MeasureOrder::xz, MeasureOrder::interleaved}) {
      Simulator sim(build_code(fam, 3), order);
      CounterRng rng(1, 0);
      auto o = sim.run_cycle(NoiseModel{0, 0}, rng);
      EXPECT_EQ(o.rounds_used, sim.code().t + 1);
      EXPECT_FALSE(o.decode_fail || o.total_fail || o.residual || o.aborted);
      EXPECT_TRUE(o.final_syndrome.none());
    }
  }
}

TEST(Simulator, InjectedDataErrorIsCorrected) {
  for (auto fam : kFamilies) {
    Simulator sim(build_code(fam, 3));
    for (int q = 0; q < sim.code().n; ++q)
      for (PauliKind k : {PauliKind::X, PauliKind::Y, PauliKind::Z}) {
        ScriptedFaults src;
        src.initial[q] = k;
        auto o = sim.run_cycle(src);
        EXPECT_FALSE(o.decode_fail || o.total_fail);
        EXPECT_EQ(o.rounds_used, 2);
        EXPECT_TRUE(o.final_syndrome.any());
      }
  }
}

TEST(Simulator, HookFaultInCycleIsHarmless) {
  auto code = build_code(Family::steane, 3);
  Simulator sim(code);
  ScriptedFaults src;
  src.at[{0, 0, 9}] = PauliKind::X;
  auto o = sim.run_cycle(src);
  EXPECT_EQ(o.flag_events, 1);
  EXPECT_EQ(o.unknown_flag_keys, 0);
  EXPECT_FALSE(o.decode_fail || o.total_fail);
}

// Any single location fault in any of the first rounds never causes a decoding failure.
TEST(Simulator, SingleFaultCycles) {
  for (auto fam : kFamilies) {
    Simulator sim(build_code(fam, 3));
    int bad = 0;
    for (int round = 0; round < 3; ++round)
      for (std::size_t slot = 0; slot < sim.gadgets().size(); ++slot)
        for (const auto& loc : sim.gadgets()[slot].locations)
          for (PauliKind k : {PauliKind::X, PauliKind::Y, PauliKind::Z}) {
            ScriptedFaults src;
            src.at[{round, static_cast<int>(slot), loc.ordinal}] = k;
            auto o = sim.run_cycle(src);
            bad += o.decode_fail || o.aborted || o.unknown_flag_keys;
          }
    EXPECT_EQ(bad, 0) << sim.code().name;
  }
}

TEST(Simulator, RoundCapAborts) {
  Simulator sim(build_code(Family::steane, 3));
  TrialStats st;
  for (std::uint64_t i = 0; i < 200; ++i) {
    CounterRng rng(5, i);
    RandomFaults src(NoiseModel{0.0, 0.2}, rng);
    st.add(sim.run_cycle(src, 2));
  }
  EXPECT_GT(st.aborted, 0u);
  EXPECT_EQ(st.completed() + st.aborted, st.trials);
  EXPECT_LE(st.total_fail, st.completed());
}

TEST(Statistics, Wilson) {
  auto iv = wilson(0, 10);
  EXPECT_DOUBLE_EQ(iv.lo, 0.0);
  EXPECT_NEAR(iv.hi, 0.2775327, 1e-6);
  auto mid = wilson(50, 100);
  EXPECT_NEAR(mid.lo, 0.4038315, 1e-6);
  EXPECT_NEAR(mid.hi, 0.5961685, 1e-6);
}

TEST(Estimate, Validation) {
  Simulator sim(build_code(Family::steane, 3));
  EXPECT_THROW(estimate(sim, EstimateConfig{{NoiseModel{0.01, 1e-4}}, 0, 1, 1}), std::invalid_argument);
}

TEST(Estimate, DeterministicAcrossThreadCounts) {
  Simulator sim(build_code(Family::surface, 3));
  EstimateConfig cfg{{NoiseModel{0.01, 1e-4}, NoiseModel{0.02, 2e-4}}, 20000, 42, 1};
  auto a = estimate(sim, cfg);
  cfg.threads = 4;
  auto b = estimate(sim, cfg);
  cfg.threads = 3;
  auto c = estimate(sim, cfg);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  cfg.seed = 43;
  EXPECT_NE(estimate(sim, cfg), a);
  EXPECT_GT(a[0].decode_fail, 0u);
  EXPECT_EQ(a[0].aborted, 0u);

  auto rows = [&](const std::vector<TrialStats>& st) {
    std::vector<CsvRow> r;
    for (std::size_t g = 0; g < st.size(); ++g)
      r.push_back({"surface13", "optimized", cfg.grid[g].p, cfg.grid[g].p_ft, "p_fail", st[g].p_fail(),
                   st[g].ci(st[g].total_fail).lo, st[g].ci(st[g].total_fail).hi, st[g].trials, 42});
    return r;
  };
  std::ostringstream x, y;
  write_csv(x, rows(a));
  write_csv(y, rows(b));
  EXPECT_EQ(x.str(), y.str());
}

TEST(Estimate, PerfectGatesMatchExactEnumeration) {
  for (auto fam : {Family::steane, Family::surface}) {
    Simulator sim(build_code(fam, 3));
    const double p = 0.05;
    double exact = exact_ideal_failure(sim.code(), sim.decoder(), p);
    auto st = estimate(sim, EstimateConfig{{NoiseModel{p, 0.0}}, 200000, 7, 1})[0];
    EXPECT_EQ(st.decode_fail, st.total_fail);
    EXPECT_EQ(st.residual, 0u);
    double sigma = std::sqrt(exact * (1 - exact) / st.completed());
    EXPECT_LT(std::abs(st.p_fail_dec() - exact), 3 * sigma) << sim.code().name << " exact " << exact;
  }
}
