#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "code_catalog.hpp"
#include "ft_layout.hpp"
#include "noise.hpp"

namespace ftqec {

using Real = boost::multiprecision::cpp_bin_float_50;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<std::int64_t>;

inline BigInt binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline Real to_real(const BigInt& b) { return Real(b); }
inline Real to_real(const Rational& r) { return Real(r.numerator()) / Real(r.denominator()); }

enum class ProfileKind { bounded_distance, beta_refined, enumerator_refined };

inline const char* profile_name(ProfileKind k) {
  switch (k) {
    case ProfileKind::bounded_distance: return "bd";
    case ProfileKind::beta_refined: return "beta";
    case ProfileKind::enumerator_refined: return "enum";
  }
  return "?";
}

struct DecoderProfile {
  ProfileKind kind = ProfileKind::bounded_distance;
  int n = 0, k = 0, t = 0;
  std::optional<Rational> beta;
  std::optional<std::vector<std::uint64_t>> A;

  static DecoderProfile bounded(int n, int k, int t) { return {ProfileKind::bounded_distance, n, k, t, {}, {}}; }
  static DecoderProfile with_beta(int n, int k, int t, Rational b) {
    return {ProfileKind::beta_refined, n, k, t, b, {}};
  }
  static DecoderProfile with_enumerator(int n, int k, int t, Rational b, std::vector<std::uint64_t> A) {
    return {ProfileKind::enumerator_refined, n, k, t, b, std::move(A)};
  }

  void validate() const {
    if (kind != ProfileKind::bounded_distance && !beta) throw std::invalid_argument("decoder profile: beta required");
    if (kind == ProfileKind::enumerator_refined && (!A || static_cast<int>(A->size()) != n + 1))
      throw std::invalid_argument("decoder profile: enumerator of length n+1 required");
  }
};

inline Real decoder_failure_profile(const DecoderProfile& prof, int e) {
  if (e <= prof.t) return 0;
  if (prof.kind == ProfileKind::bounded_distance) return 1;
  if (e == prof.t + 1) return 1 - to_real(*prof.beta);
  if (prof.kind == ProfileKind::beta_refined) return 1;
  Real frac = Real((*prof.A)[e]) / (Real(BigInt(1) << (2 * prof.k)) * to_real(binom(prof.n, e)));
  return frac >= 1 ? Real(0) : 1 - frac;  // A_e can exceed 4^k C(n,e) at high weight
}

inline Real clamp01(const Real& x) {
  if (x < 0) return 0;
  if (x > 1) return 1;
  return x;
}

inline Real binomial_pmf(int n, int c, const Real& p) {
  if (c < 0 || c > n) return 0;
  return to_real(binom(n, c)) * pow(p, c) * pow(1 - p, n - c);
}

inline Real enumerator_miss(const std::vector<std::uint64_t>& A, int n, int k, const Real& p) {
  Real s = 0;
  Real scale = Real(BigInt(1) << (2 * k));
  for (int w = 0; w <= n; ++w)
    if (A[w]) s += Real(A[w]) / scale * pow(p, w) * pow(1 - p, n - w);
  return clamp01(1 - s);
}

inline double codeword_error_exact(const StabilizerCode& code, double p) {
  if (!code.A && !code.has_matrix()) throw Unavailable(code.name + ": weight enumerator unavailable");
  auto A = weight_enumerator(code);
  return static_cast<double>(enumerator_miss(A, code.n, code.k, Real(p)));
}

inline Real qec_upper_bound_real(int n, double p, const DecoderProfile& prof) {
  prof.validate();
  Real pp(p), s = 0;
  for (int e = prof.t + 1; e <= n; ++e) {
    Real f = decoder_failure_profile(prof, e);
    if (f != 0) s += f * binomial_pmf(n, e, pp);
  }
  return clamp01(s);
}

inline double qec_upper_bound(const StabilizerCode& code, double p, const DecoderProfile& prof) {
  return static_cast<double>(qec_upper_bound_real(code.n, p, prof));
}

// Probability of exactly l faulty rounds before t+1 consecutive fault-free rounds.
inline Real faulty_rounds_pmf(std::int64_t l, std::int64_t N_FL, int t, const Real& pft) {
  Real rho = pow(1 - pft, (t + 1) * N_FL);
  if (l == 0) return rho;
  return rho * pow(1 - rho, l);
}

inline Real fault_count_pmf_real(std::int64_t s, std::int64_t N_FL, int t, double p_ft) {
  if (s < 0) throw std::invalid_argument("fault_count_pmf: s must be nonnegative");
  if (N_FL < 1) throw std::invalid_argument("fault_count_pmf: N_FL must be positive");
  Real pft(p_ft);
  if (s == 0) return faulty_rounds_pmf(0, N_FL, t, pft);
  if (p_ft == 0.0) return 0;
  Real clean = pow(1 - pft, N_FL);
  Real total = 0;
  // C(m N_FL, s) for m = 0..s, shared by every l.
  std::vector<BigInt> placements(s + 1);
  for (std::int64_t m = 0; m <= s; ++m) placements[m] = binom(m * N_FL, s);
  for (std::int64_t l = (s + N_FL - 1) / N_FL; l <= s; ++l) {
    // Exact count of placements of s faults over l rounds with every round hit.
    BigInt inner = 0, c = 1;
    for (std::int64_t j = 0; j <= l; ++j) {
      BigInt term = c * placements[l - j];
      if (j % 2) inner -= term;
      else inner += term;
      c = c * (l - j) / (j + 1);
    }
    Real term = to_real(inner) * pow(pft, s) * pow(1 - pft, l * N_FL - s) / pow(1 - clean, l);
    total += term * faulty_rounds_pmf(l, N_FL, t, pft);
  }
  return total;
}

inline double fault_count_pmf(std::int64_t s, std::int64_t N_FL, int t, double p_ft) {
  return static_cast<double>(fault_count_pmf_real(s, N_FL, t, p_ft));
}

// Full distribution of the fault count by convolving zero-truncated binomials; every term is positive.
struct FaultCountDistribution {
  std::vector<long double> pmf;
  long double truncated_mass = 0;  // mass outside the returned support

  static FaultCountDistribution compute(std::int64_t N_FL, int t, double p_ft, long double eps = 1e-17L) {
    FaultCountDistribution out;
    if (p_ft <= 0.0) {
      out.pmf = {1.0L};
      return out;
    }
    if (p_ft >= 1.0) throw std::invalid_argument("fault count distribution undefined at p_ft = 1");
    const long double p = p_ft, q = 1.0L - p;
    const long double clean = std::pow(q, static_cast<long double>(N_FL));
    const long double rho = std::pow(clean, static_cast<long double>(t + 1));
    // Per faulty round: Binomial(N_FL, p) conditioned on at least one fault.
    std::vector<long double> round{0.0L};
    long double b = clean;
    for (std::int64_t k = 1; k <= N_FL; ++k) {
      b *= (N_FL - k + 1) / static_cast<long double>(k) * p / q;
      round.push_back(b / (1 - clean));
      if (k > N_FL * p + 1 && round.back() < 1e-40L) break;
    }
    long double mean_round = 0;
    for (std::size_t k = 0; k < round.size(); ++k) mean_round += k * round[k];
    std::int64_t lmax = 0;
    long double tail = 1 - rho;
    while (tail > eps && lmax < 1000000) {
      tail *= 1 - rho;
      ++lmax;
    }
    std::size_t smax = static_cast<std::size_t>(lmax * (mean_round + 8 * std::sqrt(mean_round + 1)) + 16);
    out.pmf.assign(smax + 1, 0.0L);
    std::vector<long double> cur{1.0L}, nxt;
    long double weight = rho, dropped = 0;
    out.pmf[0] += weight;
    for (std::int64_t l = 1; l <= lmax; ++l) {
      weight *= 1 - rho;
      std::size_t top = std::min(smax, cur.size() - 1 + round.size() - 1);
      nxt.assign(top + 1, 0.0L);
      long double lost = 0;
      for (std::size_t a = 0; a < cur.size(); ++a) {
        if (cur[a] == 0) continue;
        for (std::size_t k = 1; k < round.size(); ++k) {
          long double v = cur[a] * round[k];
          if (a + k <= top) nxt[a + k] += v;
          else lost += v;
        }
      }
      dropped += weight * lost;
      cur.swap(nxt);
      for (std::size_t s = 0; s < cur.size(); ++s) out.pmf[s] += weight * cur[s];
    }
    out.truncated_mass = tail + dropped;
    while (out.pmf.size() > 1 && out.pmf.back() == 0) out.pmf.pop_back();
    return out;
  }
};

inline Real occupancy_pmf_real(int e, int c, int q, int n) {
  if (c < 0 || c > n || q < 0) throw std::invalid_argument("occupancy_pmf: need 0 <= c <= n and q >= 0");
  if (e < c || e > std::min(n, c + q)) return 0;
  BigInt acc = 0;
  for (int v = 0; v <= e - c; ++v) {
    BigInt term = binom(e - c, v) * boost::multiprecision::pow(BigInt(e - v), q);
    if (v % 2) acc -= term;
    else acc += term;
  }
  BigInt num = binom(n - c, e - c) * acc;
  BigInt den = boost::multiprecision::pow(BigInt(n), q);
  return to_real(num) / to_real(den);
}

inline double occupancy_pmf(int e, int c, int q, int n) { return static_cast<double>(occupancy_pmf_real(e, c, q, n)); }

enum class AResMode { theorem_gm, all_generators };

inline const char* a_res_mode_name(AResMode m) { return m == AResMode::theorem_gm ? "theorem_gm" : "all_generators"; }

struct BoundInputs {
  int n = 0, k = 0, t = 0;
  CodeProfile profile;
  FtLayout layout;
  NoiseModel noise;
  DecoderProfile decoder;
  std::optional<std::vector<std::uint64_t>> A;
  int v_m = 1;
  AResMode a_res_mode = AResMode::theorem_gm;
};

inline BoundInputs make_inputs(const StabilizerCode& code, const FtLayout& layout, NoiseModel noise,
                               DecoderProfile decoder) {
  BoundInputs in;
  in.n = code.n;
  in.k = code.k;
  in.t = code.t;
  in.profile = code_profile(code);
  in.layout = layout;
  in.noise = noise;
  in.decoder = decoder;
  if (code.A || (code.has_matrix() && code.generators.size() <= 20)) in.A = weight_enumerator(code);
  return in;
}

inline int min_v_z(const CodeProfile& p) { return *std::min_element(p.v_z.begin(), p.v_z.end()); }

inline double simple_decoding_bound(const BoundInputs& in) {
  Real p(in.noise.p), ok = 0;
  for (int e = 0; e <= in.t; ++e)
    for (int m = 0; m <= e; ++m)
      ok += binomial_pmf(in.n, e - m, p) * fault_count_pmf_real(m, in.layout.N_FL, in.t, in.noise.p_ft);
  return static_cast<double>(clamp01(1 - ok));
}

struct Theorem1Components {
  double P_fd = 0;
  double P_meas = 0;
  int tau = 0;
  bool p_fd_clamped = false;

  double p_q_given_s(int q, int s) const {
    return static_cast<double>(binomial_pmf(s, q, Real(P_fd)));
  }
};

inline Theorem1Components theorem1_components(const BoundInputs& in) {
  if (in.layout.kind != LayoutKind::flag) throw UnsupportedParameters("refined bound applies to flag layouts only");
  Theorem1Components out;
  const auto& gens = in.layout.per_generator;
  Real N = Real(in.layout.N_FL), fd = 0, meas = 0;
  int max_gamma = 0;
  for (const auto& g : gens) {
    fd += Real(5 * g.gamma - 2) / 3 + 4 * g.n_flag;
    meas += pow((Real(2 * g.gamma) / 3 + Real(8) / 3 + 2 * g.n_flag) / N, in.t + 1);
    max_gamma = std::max(max_gamma, g.gamma);
  }
  fd /= N;
  if (fd > 1) {
    out.p_fd_clamped = true;
    fd = 1;
  }
  out.P_fd = static_cast<double>(fd);
  out.P_meas = static_cast<double>(meas);
  out.tau = (max_gamma <= 2 * (in.t + 1)) ? in.t + 1 : in.t;
  return out;
}

inline double theorem1_bound(const BoundInputs& in, std::string* diagnostic = nullptr) {
  in.decoder.validate();
  auto comp = theorem1_components(in);
  if (comp.p_fd_clamped && diagnostic) *diagnostic = "P_fd exceeded 1 and was clamped";
  const int n = in.n, t = in.t, tau = comp.tau;
  Real p(in.noise.p), pfd(comp.P_fd);
  std::vector<Real> pS;
  for (int s = 0; s <= tau + 1; ++s) pS.push_back(fault_count_pmf_real(s, in.layout.N_FL, t, in.noise.p_ft));
  Real total = 1;
  for (int s = 0; s <= tau; ++s) total -= pS[s];
  total += Real(tau - t) * pS[t + 1] * Real(comp.P_meas);
  std::vector<Real> f(n + 1);
  for (int e = 0; e <= n; ++e) f[e] = decoder_failure_profile(in.decoder, e);
  for (int c = 0; c <= n; ++c) {
    Real pc = binomial_pmf(n, c, p);
    if (pc == 0) continue;
    for (int s = 0; s <= tau; ++s) {
      if (pS[s] == 0) continue;
      for (int q = 0; q <= s; ++q) {
        Real pq = binomial_pmf(s, q, pfd);
        Real inner = 0;
        for (int e = c; e <= std::min(n, c + q); ++e)
          if (f[e] != 0) inner += f[e] * occupancy_pmf_real(e, c, q, n);
        total += inner * pc * pS[s] * pq;
      }
    }
  }
  return static_cast<double>(clamp01(total));
}

inline double residual_q(double p_ft, int v_m) {
  Real p(p_ft);
  Real q = Real(1) / 2 + p / 3 - pow(3 - 4 * p, v_m + 1) / (6 * pow(3 - 2 * p, v_m));
  return static_cast<double>(q);
}

inline double residual_lower_bound(const BoundInputs& in) {
  if (!in.A) throw Unavailable("residual lower bound needs the weight enumerator");
  if (in.v_m < 1) throw std::invalid_argument("v_m must be >= 1");
  Real p(in.noise.p_ft);
  Real q = Real(1) / 2 + p / 3 - pow(3 - 4 * p, in.v_m + 1) / (6 * pow(3 - 2 * p, in.v_m));
  return static_cast<double>(enumerator_miss(*in.A, in.n, in.k, q));
}

struct ResidualCounts {
  std::int64_t D_res = 0, A_res = 0, F_res = 0;
};

inline ResidualCounts residual_counts(const BoundInputs& in) {
  ResidualCounts r;
  std::int64_t sz = 0, sx = 0;
  for (int v : in.profile.v_z) sz += v;
  for (int v : in.profile.v_x) sx += v;
  r.D_res = std::max(sz, sx);
  const auto& gens = in.layout.per_generator;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    bool in_gm = in.profile.gamma_type[i] == in.profile.g_m;
    if (in_gm || in.a_res_mode == AResMode::all_generators)
      r.A_res += in.layout.K * gens[i].gamma - 1 + 2 * gens[i].n_flag;
    if (in_gm) r.F_res += 4 * gens[i].n_flag;
  }
  return r;
}

inline double residual_upper_bound(const BoundInputs& in) {
  auto r = residual_counts(in);
  Real p(in.noise.p_ft);
  Real v = in.n * p + (Real(r.D_res + r.A_res) + Real(3 * r.F_res) / 2) * p / 3;
  return static_cast<double>(clamp01(v));
}

inline double total_failure_bound(double residual_ub, double theorem1_ub) {
  return std::min(1.0, residual_ub + theorem1_ub * (1.0 - residual_ub));
}

}  // namespace ftqec
