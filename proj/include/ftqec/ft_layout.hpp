#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "code_catalog.hpp"

namespace ftqec {

enum class FlagScheme { optimized, chao_reichardt_1, chao_reichardt_2, prabhu_reichardt };
enum class LayoutKind { flag, cat };

inline const char* scheme_name(FlagScheme s) {
  switch (s) {
    case FlagScheme::optimized: return "optimized";
    case FlagScheme::chao_reichardt_1: return "chao_reichardt_1";
    case FlagScheme::chao_reichardt_2: return "chao_reichardt_2";
    case FlagScheme::prabhu_reichardt: return "prabhu_reichardt";
  }
  return "?";
}

inline FlagScheme parse_scheme(const std::string& s) {
  if (s == "optimized") return FlagScheme::optimized;
  if (s == "chao_reichardt_1" || s == "cr1") return FlagScheme::chao_reichardt_1;
  if (s == "chao_reichardt_2" || s == "cr2") return FlagScheme::chao_reichardt_2;
  if (s == "prabhu_reichardt" || s == "pr") return FlagScheme::prabhu_reichardt;
  throw UnsupportedParameters("unknown flag scheme '" + s + "'");
}

inline const char* kind_name(LayoutKind k) { return k == LayoutKind::flag ? "flag" : "cat"; }

inline LayoutKind parse_kind(const std::string& s) {
  if (s == "flag") return LayoutKind::flag;
  if (s == "cat") return LayoutKind::cat;
  throw UnsupportedParameters("unknown layout kind '" + s + "'");
}

inline std::int64_t choose2(std::int64_t m) { return m < 2 ? 0 : m * (m - 1) / 2; }

inline int n_flag(FlagScheme scheme, int gamma, int d) {
  auto bad = [&](const char* why) {
    return UnsupportedParameters(std::string(scheme_name(scheme)) + ": " + why + " (gamma=" +
                                 std::to_string(gamma) + ", d=" + std::to_string(d) + ")");
  };
  if (gamma < 1) throw bad("generator weight must be positive");
  switch (scheme) {
    case FlagScheme::optimized:
      if (gamma <= 3) return 0;
      if (gamma <= 5) return 2;
      throw bad("flag count undefined above weight 5");
    case FlagScheme::chao_reichardt_1:
      return gamma * (d - 1);
    case FlagScheme::chao_reichardt_2: {
      int lo = gamma / 2, hi = (gamma + 1) / 2;
      if (lo < d) return static_cast<int>(choose2(hi) + choose2(lo));
      return static_cast<int>(2 * choose2(d) + (d - 1) * (gamma - 2 * d));
    }
    case FlagScheme::prabhu_reichardt:
      if (d == 5) {
        if (gamma % 2) throw bad("odd weight undefined at d=5");
        return gamma <= 8 ? 6 : gamma / 2 + 1;
      }
      if (d == 7) return gamma + 1;
      throw bad("defined only for d in {5,7}");
  }
  throw bad("unknown scheme");
}

inline int faulty_locations(LayoutKind kind, int gamma, int nflag) {
  if (kind == LayoutKind::flag) return 2 * gamma + 4 + 6 * nflag;
  return 4 * gamma + (3 * gamma + 4 + 6 * nflag);
}

struct GeneratorLayout {
  int gamma;
  int n_flag;
  int n_fl;
};

struct FtLayout {
  FlagScheme scheme = FlagScheme::optimized;
  LayoutKind kind = LayoutKind::flag;
  int d = 3;
  std::vector<GeneratorLayout> per_generator;
  std::int64_t N_FL = 0;
  int K = 1;
};

inline FtLayout build_layout(const CodeProfile& profile, int d, FlagScheme scheme, LayoutKind kind) {
  FtLayout l;
  l.scheme = scheme;
  l.kind = kind;
  l.d = d;
  l.K = kind == LayoutKind::flag ? 1 : 2;
  for (std::size_t i = 0; i < profile.gamma.size(); ++i) {
    int g = profile.gamma[i];
    int nf;
    try {
      nf = n_flag(scheme, g, d);
    } catch (const UnsupportedParameters& e) {
      throw UnsupportedParameters("generator " + std::to_string(i) + ": " + e.what());
    }
    int loc = faulty_locations(kind, g, nf);
    l.per_generator.push_back({g, nf, loc});
    l.N_FL += loc;
  }
  return l;
}

inline FtLayout build_layout(const StabilizerCode& code, FlagScheme scheme, LayoutKind kind) {
  return build_layout(code_profile(code), code.d, scheme, kind);
}

}  // namespace ftqec
