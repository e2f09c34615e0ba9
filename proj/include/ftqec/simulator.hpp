#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "code_catalog.hpp"
#include "decoders.hpp"
#include "ft_layout.hpp"
#include "noise.hpp"
#include "pauli_engine.hpp"
#include "rng.hpp"

namespace ftqec {

enum class MeasureOrder { xz, interleaved };

inline const char* order_name(MeasureOrder o) { return o == MeasureOrder::xz ? "xz" : "interleaved"; }

inline MeasureOrder parse_order(const std::string& s) {
  if (s == "xz") return MeasureOrder::xz;
  if (s == "interleaved") return MeasureOrder::interleaved;
  throw std::invalid_argument("unknown measurement order '" + s + "'");
}

enum class QubitRole : std::uint8_t { data, ancilla, flag };
// prep: before the first entangling gate; window: between first and last; readout: after.
enum class Phase : std::uint8_t { prep, window, readout };

struct FaultLocation {
  int gadget = 0;
  int generator = 0;
  int ordinal = 0;
  int qubit = 0;
  QubitRole role = QubitRole::data;
  Phase phase = Phase::prep;
};

enum class OpKind : std::uint8_t { init, h, cnot, cz, fault, measure };

struct Op {
  OpKind kind;
  std::int16_t a = -1, b = -1;
  // fault: location ordinal; measure: -1 for the ancilla, flag index otherwise.
  std::int16_t slot = -1;
};

struct ExtractionGadget {
  int id = 0;
  int generator = 0;
  CheckType type = CheckType::X;
  std::vector<int> support;
  int ancilla = 0;
  std::vector<int> flags;
  std::vector<Op> ops;
  std::vector<FaultLocation> locations;

  int n_flag() const { return static_cast<int>(flags.size()); }
};

// Ancilla prepared in |+> (init, H), ancilla-controlled CNOT (X-type) or CZ (Z-type) onto the data,
// H, Z measurement. Two flags for weight 4-5 with windows D1 F1 D2 F2 D3 F1 D4 F2 [D5].
inline ExtractionGadget build_gadget(const StabilizerCode& code, int generator, int id = 0,
                                     FlagScheme scheme = FlagScheme::optimized) {
  if (scheme != FlagScheme::optimized)
    throw UnsupportedParameters(std::string("gadget wiring exists only for the optimized scheme, not ") +
                                scheme_name(scheme));
  const auto& gen = code.generators.at(generator);
  int gamma = static_cast<int>(gen.support.size());
  if (gamma > 5) throw UnsupportedParameters("gadget wiring limited to generator weight <= 5");
  int nf = n_flag(scheme, gamma, code.d);
  if (static_cast<std::size_t>(code.n + 1 + nf) > kMaxQubits) throw UnsupportedParameters("gadget exceeds the frame capacity");

  ExtractionGadget g;
  g.id = id;
  g.generator = generator;
  g.type = gen.type;
  g.support = gen.support;
  g.ancilla = code.n;
  for (int j = 0; j < nf; ++j) g.flags.push_back(code.n + 1 + j);

  Phase phase = Phase::prep;
  auto fault = [&](int q, QubitRole role) {
    auto ord = static_cast<std::int16_t>(g.locations.size());
    g.locations.push_back({id, generator, ord, q, role, phase});
    g.ops.push_back({OpKind::fault, static_cast<std::int16_t>(q), -1, ord});
  };
  auto op = [&](OpKind k, int a, int b = -1) {
    g.ops.push_back({k, static_cast<std::int16_t>(a), static_cast<std::int16_t>(b)});
  };
  int a = g.ancilla;

  op(OpKind::init, a);
  fault(a, QubitRole::ancilla);
  for (int f : g.flags) {
    op(OpKind::init, f);
    fault(f, QubitRole::flag);
  }
  op(OpKind::h, a);
  fault(a, QubitRole::ancilla);

  // Sequence of entangling steps: >= 0 data index, < 0 flag CNOT onto flag (-1 - j).
  std::vector<int> seq;
  if (nf == 0) {
    for (int i = 0; i < gamma; ++i) seq.push_back(i);
  } else {
    seq = {0, -1, 1, -2, 2, -1, 3, -2};
    if (gamma == 5) seq.push_back(4);
  }
  phase = Phase::window;
  for (int s : seq) {
    if (s >= 0) {
      int q = gen.support[s];
      op(gen.type == CheckType::X ? OpKind::cnot : OpKind::cz, a, q);
      fault(q, QubitRole::data);
      fault(a, QubitRole::ancilla);
    } else {
      int f = g.flags[-1 - s];
      op(OpKind::cnot, a, f);
      fault(f, QubitRole::flag);
      fault(a, QubitRole::ancilla);
    }
  }
  phase = Phase::readout;
  op(OpKind::h, a);
  fault(a, QubitRole::ancilla);
  fault(a, QubitRole::ancilla);
  g.ops.push_back({OpKind::measure, static_cast<std::int16_t>(a), -1, -1});
  for (int j = 0; j < nf; ++j) {
    fault(g.flags[j], QubitRole::flag);
    g.ops.push_back({OpKind::measure, static_cast<std::int16_t>(g.flags[j]), -1, static_cast<std::int16_t>(j)});
  }
  return g;
}

struct GadgetResult {
  int outcome = 0;
  std::uint32_t flags = 0;
};

// src(location) -> optional<PauliKind>, called once per faulty location in circuit order.
template <typename Source>
GadgetResult execute_gadget(const ExtractionGadget& g, PauliFrame& f, Source&& src) {
  GadgetResult r;
  for (const Op& o : g.ops) {
    switch (o.kind) {
      case OpKind::init:
        f.clear(o.a);
        break;
      case OpKind::h:
        conjugate_through(GateKind::H, o.a, -1, f);
        break;
      case OpKind::cnot:
        conjugate_through(GateKind::CNOT, o.a, o.b, f);
        break;
      case OpKind::cz:
        conjugate_through(GateKind::CZ, o.a, o.b, f);
        break;
      case OpKind::fault:
        if (auto k = src(g.locations[o.slot])) f.apply(o.a, *k);
        break;
      case OpKind::measure: {
        int bit = measure_z(f, o.a);
        if (o.slot < 0) r.outcome = bit;
        else if (bit) r.flags |= 1u << o.slot;
        break;
      }
    }
  }
  return r;
}

inline auto no_faults() {
  return [](const FaultLocation&) -> std::optional<PauliKind> { return std::nullopt; };
}

inline Pauli data_part(const PauliFrame& f, int n) {
  Pauli p;
  for (int q = 0; q < n; ++q)
    if (f.x[q] || f.z[q]) p.set(q, f.at(q));
  return p;
}

// Per-gadget table (flag pattern, induced syndrome) -> correction, from all single faults.
class FlagTable {
 public:
  FlagTable() = default;

  FlagTable(const StabilizerCode& code, const ExtractionGadget& g) {
    static constexpr PauliKind kinds[3] = {PauliKind::X, PauliKind::Y, PauliKind::Z};
    std::size_t m = code.num_generators();
    for (const auto& loc : g.locations) {
      for (PauliKind k : kinds) {
        PauliFrame f;
        auto r = execute_gadget(g, f, [&](const FaultLocation& l) -> std::optional<PauliKind> {
          if (l.ordinal == loc.ordinal) return k;
          return std::nullopt;
        });
        if (!r.flags) continue;
        Pauli e = data_part(f, code.n);
        Key key{r.flags, syndrome_key(code.syndrome(e), m)};
        auto it = table_.find(key);
        if (it == table_.end() || e.weight() < it->second.weight() ||
            (e.weight() == it->second.weight() && lex_less(e, it->second)))
          table_[key] = e;
      }
    }
  }

  std::optional<Pauli> lookup(std::uint32_t pattern, std::uint64_t syndrome) const {
    auto it = table_.find({pattern, syndrome});
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const { return table_.size(); }

 private:
  using Key = std::pair<std::uint32_t, std::uint64_t>;
  std::map<Key, Pauli> table_;
};

struct RoundRecord {
  Bits syndrome;
  int flag_events = 0;
  int unknown_flag_keys = 0;
};

struct CycleOutcome {
  bool decode_fail = false;
  bool residual = false;
  bool total_fail = false;
  bool aborted = false;
  int rounds_used = 0;
  Bits final_syndrome;
  int flag_events = 0;
  int unknown_flag_keys = 0;
};

// Draws faults from the counter RNG: data channel first, then locations in circuit order.
class RandomFaults {
 public:
  RandomFaults(const NoiseModel& noise, CounterRng& rng) : data_(noise.p), loc_(noise.p_ft), rng_(rng) {}

  std::optional<PauliKind> channel(int) { return sample_fault(data_, rng_); }
  std::optional<PauliKind> location(int, int, const FaultLocation&) { return sample_fault(loc_, rng_); }

 private:
  FaultThreshold data_, loc_;
  CounterRng& rng_;
};

// Deterministic faults for tests: initial data errors and (round, gadget slot, ordinal) -> Pauli.
struct ScriptedFaults {
  std::map<int, PauliKind> initial;
  std::map<std::tuple<int, int, int>, PauliKind> at;

  std::optional<PauliKind> channel(int q) {
    auto it = initial.find(q);
    if (it == initial.end()) return std::nullopt;
    return it->second;
  }
  std::optional<PauliKind> location(int round, int slot, const FaultLocation& l) {
    auto it = at.find({round, slot, l.ordinal});
    if (it == at.end()) return std::nullopt;
    return it->second;
  }
};

class Simulator {
 public:
  explicit Simulator(const StabilizerCode& code, MeasureOrder order = MeasureOrder::xz,
                     std::shared_ptr<const Decoder> decoder = nullptr)
      : code_(code), order_(order), decoder_(std::move(decoder)) {
    if (code.family != Family::steane && code.family != Family::surface && code.family != Family::rotated_surface)
      throw UnsupportedParameters(code.name + ": simulation supports steane, surface and rotated_surface only");
    if (code.d != 3) throw UnsupportedParameters(code.name + ": flag gadgets are defined for d = 3 only");
    if (!decoder_) decoder_ = std::shared_ptr<const Decoder>(default_decoder(code_));

    std::vector<int> xs, zs, seq;
    for (std::size_t i = 0; i < code.generators.size(); ++i)
      (code.generators[i].type == CheckType::X ? xs : zs).push_back(static_cast<int>(i));
    if (order == MeasureOrder::xz) {
      seq = xs;
      seq.insert(seq.end(), zs.begin(), zs.end());
    } else {
      for (std::size_t i = 0; i < std::max(xs.size(), zs.size()); ++i) {
        if (i < xs.size()) seq.push_back(xs[i]);
        if (i < zs.size()) seq.push_back(zs[i]);
      }
    }
    for (int gi : seq) {
      gadgets_.push_back(build_gadget(code_, gi, static_cast<int>(gadgets_.size())));
      tables_.emplace_back(code_, gadgets_.back());
    }
  }

  const StabilizerCode& code() const { return code_; }
  const Decoder& decoder() const { return *decoder_; }
  MeasureOrder order() const { return order_; }
  const std::vector<ExtractionGadget>& gadgets() const { return gadgets_; }
  const FlagTable& flag_table(std::size_t slot) const { return tables_.at(slot); }

  std::size_t locations_per_round() const {
    std::size_t s = 0;
    for (const auto& g : gadgets_) s += g.locations.size();
    return s;
  }

  // Identity when no flag fired; nullopt for a pattern absent from the table.
  std::optional<Pauli> flag_decode(std::size_t slot, std::uint32_t pattern, const Bits& followup) const {
    if (!pattern) return Pauli{};
    return tables_.at(slot).lookup(pattern, syndrome_key(followup, code_.num_generators()));
  }

  template <typename Source>
  RoundRecord run_round(PauliFrame& f, Source& src, int round) const {
    RoundRecord rec;
    for (std::size_t slot = 0; slot < gadgets_.size(); ++slot) {
      const auto& g = gadgets_[slot];
      PauliFrame before = f;
      auto r = execute_gadget(g, f, [&](const FaultLocation& l) { return src.location(round, static_cast<int>(slot), l); });
      rec.syndrome[g.generator] = r.outcome != 0;
      if (r.flags) {
        ++rec.flag_events;
        Bits induced = code_.syndrome(f) ^ code_.syndrome(before);
        if (auto c = flag_decode(slot, r.flags, induced)) f *= *c;
        else ++rec.unknown_flag_keys;
      }
    }
    return rec;
  }

  int default_round_cap() const { return 1000 * (code_.t + 1); }

  template <typename Source>
  CycleOutcome run_cycle(Source& src, int round_cap = -1) const {
    if (round_cap < 0) round_cap = default_round_cap();
    CycleOutcome out;
    PauliFrame f;
    for (int q = 0; q < code_.n; ++q)
      if (auto k = src.channel(q)) f.apply(q, *k);
    Pauli e_in;
    Bits last;
    int same = 0;
    for (int round = 0;; ++round) {
      if (round >= round_cap) {
        out.aborted = true;
        out.rounds_used = round;
        return out;
      }
      e_in = f;
      auto rec = run_round(f, src, round);
      out.flag_events += rec.flag_events;
      out.unknown_flag_keys += rec.unknown_flag_keys;
      same = (round > 0 && rec.syndrome == last) ? same + 1 : 1;
      last = rec.syndrome;
      if (same == code_.t + 1) {
        out.rounds_used = round + 1;
        break;
      }
    }
    out.final_syndrome = last;
    Pauli c = decoder_->decode(last);
    out.decode_fail = !code_.in_stabilizer_group(e_in * c);
    out.total_fail = !code_.in_stabilizer_group(f * c);
    out.residual = !out.decode_fail && out.total_fail;
    return out;
  }

  CycleOutcome run_cycle(const NoiseModel& noise, CounterRng& rng) const {
    RandomFaults src(noise, rng);
    return run_cycle(src);
  }

 private:
  StabilizerCode code_;
  MeasureOrder order_;
  std::shared_ptr<const Decoder> decoder_;
  std::vector<ExtractionGadget> gadgets_;
  std::vector<FlagTable> tables_;
};

struct Interval {
  double lo = 0.0, hi = 0.0;
};

inline Interval wilson(std::uint64_t k, std::uint64_t n, double z = 1.959963984540054) {
  if (n == 0) return {0.0, 1.0};
  double nn = static_cast<double>(n), ph = static_cast<double>(k) / nn, z2 = z * z;
  double den = 1.0 + z2 / nn;
  double mid = (ph + z2 / (2 * nn)) / den;
  double half = z * std::sqrt(ph * (1 - ph) / nn + z2 / (4 * nn * nn)) / den;
  return {std::max(0.0, mid - half), std::min(1.0, mid + half)};
}

struct TrialStats {
  std::uint64_t trials = 0;
  std::uint64_t decode_fail = 0, residual = 0, total_fail = 0, aborted = 0;
  std::uint64_t rounds = 0, flag_events = 0, unknown_flag_keys = 0;

  void add(const CycleOutcome& o) {
    ++trials;
    if (o.aborted) {
      ++aborted;
      return;
    }
    decode_fail += o.decode_fail;
    residual += o.residual;
    total_fail += o.total_fail;
    rounds += static_cast<std::uint64_t>(o.rounds_used);
    flag_events += static_cast<std::uint64_t>(o.flag_events);
    unknown_flag_keys += static_cast<std::uint64_t>(o.unknown_flag_keys);
  }

  TrialStats& merge(const TrialStats& o) {
    trials += o.trials;
    decode_fail += o.decode_fail;
    residual += o.residual;
    total_fail += o.total_fail;
    aborted += o.aborted;
    rounds += o.rounds;
    flag_events += o.flag_events;
    unknown_flag_keys += o.unknown_flag_keys;
    return *this;
  }

  std::uint64_t completed() const { return trials - aborted; }
  double rate(std::uint64_t k) const { return completed() ? static_cast<double>(k) / completed() : 0.0; }
  double std_error(std::uint64_t k) const {
    double r = rate(k);
    return completed() ? std::sqrt(r * (1 - r) / completed()) : 0.0;
  }
  Interval ci(std::uint64_t k) const { return wilson(k, completed()); }

  double p_fail_dec() const { return rate(decode_fail); }
  double p_res() const { return rate(residual); }
  double p_fail() const { return rate(total_fail); }
  double mean_rounds() const { return completed() ? static_cast<double>(rounds) / completed() : 0.0; }

  bool operator==(const TrialStats&) const = default;
};

struct EstimateConfig {
  std::vector<NoiseModel> grid;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
};

inline TrialStats run_trials(const Simulator& sim, const NoiseModel& noise, std::uint64_t seed, std::uint32_t stream,
                             std::uint64_t begin, std::uint64_t end) {
  TrialStats s;
  for (std::uint64_t i = begin; i < end; ++i) {
    CounterRng rng(seed, i, stream);
    s.add(sim.run_cycle(noise, rng));
  }
  return s;
}

// Grid point g uses stream g; trial i always draws from counter (seed, i, g), so any partition gives the same sums.
inline std::vector<TrialStats> estimate(const Simulator& sim, const EstimateConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  unsigned nt = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  nt = static_cast<unsigned>(std::min<std::uint64_t>(nt, cfg.trials));
  std::vector<TrialStats> out;
  for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
    std::vector<TrialStats> part(nt);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nt; ++w) {
      std::uint64_t b = cfg.trials * w / nt, e = cfg.trials * (w + 1) / nt;
      pool.emplace_back([&, w, b, e] { part[w] = run_trials(sim, cfg.grid[g], cfg.seed, static_cast<std::uint32_t>(g), b, e); });
    }
    for (auto& th : pool) th.join();
    TrialStats total;
    for (const auto& p : part) total.merge(p);
    out.push_back(total);
  }
  return out;
}

}  // namespace ftqec
