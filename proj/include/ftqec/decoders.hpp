#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "code_catalog.hpp"

namespace ftqec {

class Decoder {
 public:
  virtual ~Decoder() = default;
  virtual Pauli decode(const Bits& syndrome) const = 0;
  virtual std::string name() const = 0;
};

inline bool decode_success(const StabilizerCode& code, const Pauli& error, const Pauli& correction) {
  return code.in_stabilizer_group(error * correction);
}

inline std::uint64_t syndrome_key(const Bits& s, std::size_t m) {
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (s[i]) k |= std::uint64_t{1} << i;
  return k;
}

// Calls fn(pauli) for every Pauli of exactly weight w on n qubits, in a fixed order.
template <typename Fn>
void for_each_weight(int n, int w, Fn&& fn) {
  static constexpr PauliKind kinds[3] = {PauliKind::X, PauliKind::Y, PauliKind::Z};
  std::vector<int> pos(w);
  for (int i = 0; i < w; ++i) pos[i] = i;
  if (w > n) return;
  while (true) {
    std::vector<int> digit(w, 0);
    while (true) {
      Pauli p;
      for (int i = 0; i < w; ++i) p.set(pos[i], kinds[digit[i]]);
      fn(p);
      int j = w - 1;
      while (j >= 0 && digit[j] == 2) digit[j--] = 0;
      if (j < 0) break;
      ++digit[j];
    }
    int i = w - 1;
    while (i >= 0 && pos[i] == n - w + i) --i;
    if (i < 0) break;
    ++pos[i];
    for (int j = i + 1; j < w; ++j) pos[j] = pos[j - 1] + 1;
  }
}

class SyndromeLUT : public Decoder {
 public:
  explicit SyndromeLUT(const StabilizerCode& code) : m_(code.num_generators()) {
    if (!code.has_matrix()) throw UnsupportedParameters(code.name + ": lookup decoder needs a generator matrix");
    if (code.n > 15 || m_ > 24) throw UnsupportedParameters(code.name + ": lookup table infeasible (n > 15)");
    std::size_t size = std::size_t{1} << m_;
    table_.resize(size);
    std::vector<bool> seen(size, false);
    std::size_t filled = 0;
    for (int w = 0; w <= code.n && filled < size; ++w) {
      for_each_weight(code.n, w, [&](const Pauli& e) {
        auto key = syndrome_key(code.syndrome(e), m_);
        if (!seen[key]) {
          seen[key] = true;
          table_[key] = e;
          ++filled;
        }
      });
    }
    if (filled < size) throw std::logic_error(code.name + ": syndromes not all reachable");
  }

  Pauli decode(const Bits& syndrome) const override { return table_[syndrome_key(syndrome, m_)]; }
  std::string name() const override { return "lut"; }
  const Pauli& entry(std::uint64_t key) const { return table_.at(key); }
  std::size_t size() const { return table_.size(); }

 private:
  std::size_t m_;
  std::vector<Pauli> table_;
};

struct TieBreak {
  bool prefer_direct = true;  // among minimum-weight matchings, fewest boundary edges first
  bool boundary_high = true;  // boundary node sorts after every check in edge keys
};

class MatchingDecoder : public Decoder {
 public:
  static constexpr int kMaxDefects = 12;

  explicit MatchingDecoder(const StabilizerCode& code, TieBreak tb = {})
      : MatchingDecoder(code, code.match_priority, tb) {}

  // priority: generator indices in tie-break order; checks absent from it rank after, in catalog order.
  MatchingDecoder(const StabilizerCode& code, const std::vector<int>& priority, TieBreak tb)
      : tb_(tb), m_all_(code.num_generators()) {
    if (!code.has_matrix()) throw UnsupportedParameters(code.name + ": matching decoder needs a generator matrix");
    std::vector<int> rank(m_all_, std::numeric_limits<int>::max());
    for (std::size_t i = 0; i < priority.size(); ++i) rank.at(priority[i]) = static_cast<int>(i);
    build(code, CheckType::Z, rank, graph_for_x_);
    build(code, CheckType::X, rank, graph_for_z_);
  }

  Pauli decode(const Bits& syndrome) const override {
    Pauli c;
    c.x = solve(graph_for_x_, syndrome);
    c.z = solve(graph_for_z_, syndrome);
    return c;
  }
  std::string name() const override { return "mwpm"; }

  // Decodes one error type only; X errors are seen by Z-type checks.
  Bits decode_x(const Bits& syndrome) const { return solve(graph_for_x_, syndrome); }
  Bits decode_z(const Bits& syndrome) const { return solve(graph_for_z_, syndrome); }

 private:
  static constexpr int kInf = std::numeric_limits<int>::max() / 4;

  struct Graph {
    std::vector<int> checks;  // generator indices
    std::vector<int> label;   // tie-break label per local check
    std::vector<std::vector<int>> dist;
    std::vector<std::vector<Bits>> path;
    std::vector<int> bdist;
    std::vector<Bits> bpath;
    std::vector<Bits> cache;  // by local syndrome when small enough
    bool cached = false;
  };

  void build(const StabilizerCode& code, CheckType type, const std::vector<int>& rank, Graph& g) {
    for (std::size_t i = 0; i < code.generators.size(); ++i)
      if (code.generators[i].type == type) g.checks.push_back(static_cast<int>(i));
    const int m = static_cast<int>(g.checks.size());
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return rank[g.checks[a]] < rank[g.checks[b]]; });
    g.label.assign(m, 0);
    for (int i = 0; i < m; ++i) g.label[order[i]] = i;

    std::vector<std::vector<int>> inc(code.n);
    for (int i = 0; i < m; ++i)
      for (int q : code.generators[g.checks[i]].support) inc[q].push_back(i);
    std::vector<std::vector<std::pair<int, int>>> adj(m);  // (neighbour, qubit), qubit ascending
    std::vector<std::vector<int>> boundary_qubits(m);
    for (int q = 0; q < code.n; ++q) {
      if (inc[q].size() == 2) {
        adj[inc[q][0]].push_back({inc[q][1], q});
        adj[inc[q][1]].push_back({inc[q][0], q});
      } else if (inc[q].size() == 1) {
        boundary_qubits[inc[q][0]].push_back(q);
      } else if (inc[q].size() > 2) {
        throw UnsupportedParameters(code.name + ": qubit in more than two same-type checks, not matchable");
      }
    }
    g.dist.assign(m, std::vector<int>(m, kInf));
    g.path.assign(m, std::vector<Bits>(m));
    std::vector<std::vector<std::pair<int, int>>> parent(m);
    for (int s = 0; s < m; ++s) {
      auto& par = parent[s];
      par.assign(m, {-1, -1});
      auto& dist = g.dist[s];
      dist[s] = 0;
      std::deque<int> dq{s};
      while (!dq.empty()) {
        int x = dq.front();
        dq.pop_front();
        for (auto [y, q] : adj[x])
          if (dist[y] == kInf) {
            dist[y] = dist[x] + 1;
            par[y] = {x, q};
            dq.push_back(y);
          }
      }
      for (int b = 0; b < m; ++b) {
        if (dist[b] == kInf) continue;
        Bits path;
        for (int x = b; par[x].first >= 0; x = par[x].first) path.flip(par[x].second);
        g.path[s][b] = path;
      }
    }
    g.bdist.assign(m, kInf);
    g.bpath.assign(m, Bits());
    for (int v = 0; v < m; ++v) {
      std::tuple<int, int, int> best{kInf, 0, 0};
      for (int u = 0; u < m; ++u) {
        if (boundary_qubits[u].empty() || g.dist[v][u] == kInf) continue;
        std::tuple<int, int, int> cand{g.dist[v][u] + 1, u, boundary_qubits[u].front()};
        if (cand < best) best = cand;
      }
      auto [w, u, q] = best;
      if (w == kInf) continue;
      g.bdist[v] = w;
      g.bpath[v] = g.path[v][u];
      g.bpath[v].flip(q);
    }
    if (m <= 16) {
      g.cache.resize(std::size_t{1} << m);
      for (std::size_t key = 0; key < g.cache.size(); ++key) {
        std::vector<int> defects;
        for (int i = 0; i < m; ++i)
          if (key >> i & 1u) defects.push_back(i);
        g.cache[key] = match(g, defects);
      }
      g.cached = true;
    }
  }

  Bits solve(const Graph& g, const Bits& syndrome) const {
    std::vector<int> defects;
    std::size_t key = 0;
    for (std::size_t i = 0; i < g.checks.size(); ++i)
      if (syndrome[g.checks[i]]) {
        defects.push_back(static_cast<int>(i));
        key |= std::size_t{1} << i;
      }
    if (g.cached) return g.cache[key];
    return match(g, defects);
  }

  using Edge = std::pair<int, int>;

  struct Best {
    int weight = kInf;
    int boundary = kInf;
    std::vector<Edge> key;
    std::vector<Edge> edges;
  };

  Bits match(const Graph& g, const std::vector<int>& defects) const {
    if (static_cast<int>(defects.size()) > kMaxDefects)
      throw UnsupportedParameters("matching decoder: more than " + std::to_string(kMaxDefects) + " defects");
    const int m = static_cast<int>(g.checks.size());
    Best best;
    std::vector<Edge> cur;
    std::vector<bool> used(defects.size(), false);
    enumerate(g, defects, used, cur, 0, 0, m, best);
    if (best.weight == kInf) throw std::runtime_error("matching decoder: syndrome not matchable");
    Bits corr;
    for (auto [a, b] : best.edges) corr ^= (b == m) ? g.bpath[a] : g.path[a][b];
    return corr;
  }

  void enumerate(const Graph& g, const std::vector<int>& defects, std::vector<bool>& used, std::vector<Edge>& cur,
                 int weight, int nbound, int m, Best& best) const {
    if (weight > best.weight) return;
    std::size_t i = 0;
    while (i < defects.size() && used[i]) ++i;
    if (i == defects.size()) {
      consider(g, cur, weight, nbound, m, best);
      return;
    }
    used[i] = true;
    int a = defects[i];
    if (g.bdist[a] < kInf) {
      cur.push_back({a, m});
      enumerate(g, defects, used, cur, weight + g.bdist[a], nbound + 1, m, best);
      cur.pop_back();
    }
    for (std::size_t j = i + 1; j < defects.size(); ++j) {
      if (used[j] || g.dist[a][defects[j]] >= kInf) continue;
      used[j] = true;
      cur.push_back({a, defects[j]});
      enumerate(g, defects, used, cur, weight + g.dist[a][defects[j]], nbound, m, best);
      cur.pop_back();
      used[j] = false;
    }
    used[i] = false;
  }

  void consider(const Graph& g, const std::vector<Edge>& edges, int weight, int nbound, int m, Best& best) const {
    std::vector<Edge> key;
    const int blabel = tb_.boundary_high ? m : -1;
    for (auto [a, b] : edges) {
      int la = g.label[a], lb = (b == m) ? blabel : g.label[b];
      key.push_back({std::min(la, lb), std::max(la, lb)});
    }
    std::sort(key.begin(), key.end());
    int nb = tb_.prefer_direct ? nbound : 0;
    if (std::tie(weight, nb, key) < std::tie(best.weight, best.boundary, best.key)) {
      best.weight = weight;
      best.boundary = nb;
      best.key = std::move(key);
      best.edges = edges;
    }
  }

  TieBreak tb_;
  std::size_t m_all_;
  Graph graph_for_x_, graph_for_z_;
};

inline std::unique_ptr<Decoder> default_decoder(const StabilizerCode& code) {
  if (code.family == Family::surface || code.family == Family::rotated_surface)
    return std::make_unique<MatchingDecoder>(code);
  return std::make_unique<SyndromeLUT>(code);
}

inline std::unique_ptr<Decoder> make_decoder(const StabilizerCode& code, const std::string& kind) {
  if (kind == "lut") return std::make_unique<SyndromeLUT>(code);
  if (kind == "mwpm") return std::make_unique<MatchingDecoder>(code);
  if (kind == "default" || kind.empty()) return default_decoder(code);
  throw UnsupportedParameters("unknown decoder '" + kind + "'");
}

struct BetaResult {
  boost::rational<std::int64_t> fraction;
  std::int64_t successes = 0;
  std::int64_t total = 0;
};

inline BetaResult compute_beta(const StabilizerCode& code, const Decoder& decoder, int w) {
  if (w < 0 || w > code.n || code.n > 13 || w > 3)
    throw UnsupportedParameters("compute_beta: enumeration limited to n <= 13 and w <= 3");
  BetaResult r;
  for_each_weight(code.n, w, [&](const Pauli& e) {
    ++r.total;
    if (decode_success(code, e, decoder.decode(code.syndrome(e)))) ++r.successes;
  });
  r.fraction = boost::rational<std::int64_t>(r.successes, r.total);
  return r;
}

}  // namespace ftqec
