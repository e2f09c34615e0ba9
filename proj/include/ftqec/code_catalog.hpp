#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gf2.hpp"
#include "pauli.hpp"

namespace ftqec {

enum class Family { steane, surface, rotated_surface, mobius, honeycomb_color, square_octagon_color, gross };
enum class CheckType : std::uint8_t { X, Z };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::steane: return "steane";
    case Family::surface: return "surface";
    case Family::rotated_surface: return "rotated_surface";
    case Family::mobius: return "mobius";
    case Family::honeycomb_color: return "honeycomb_color";
    case Family::square_octagon_color: return "square_octagon_color";
    case Family::gross: return "gross";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  static const std::map<std::string, Family> names = {
      {"steane", Family::steane},
      {"surface", Family::surface},
      {"rotated_surface", Family::rotated_surface},
      {"rotated", Family::rotated_surface},
      {"mobius", Family::mobius},
      {"honeycomb_color", Family::honeycomb_color},
      {"honeycomb", Family::honeycomb_color},
      {"square_octagon_color", Family::square_octagon_color},
      {"square_octagon", Family::square_octagon_color},
      {"gross", Family::gross},
  };
  auto it = names.find(s);
  if (it == names.end()) throw UnsupportedParameters("unknown code family '" + s + "'");
  return it->second;
}

struct Generator {
  CheckType type;
  std::vector<int> support;
  std::array<int, 2> site{-1, -1};
};

class StabilizerCode {
 public:
  std::string name;
  Family family = Family::steane;
  int n = 0, k = 0, d = 0, t = 0;
  // Catalog order: X-type then Z-type, each by ascending weight. Empty for parameter-only entries.
  std::vector<Generator> generators;
  std::vector<Pauli> logical_x, logical_z;
  std::optional<std::vector<std::uint64_t>> A;
  // Profile data; derived from the generators when they exist.
  std::vector<int> gamma;
  std::vector<CheckType> gamma_type;
  std::vector<int> v_z, v_x;
  std::vector<std::array<int, 2>> qubit_sites;
  // Generator indices in matching tie-break priority order; empty means catalog order.
  std::vector<int> match_priority;

  bool has_matrix() const { return !generators.empty(); }
  std::size_t num_generators() const { return gamma.size(); }

  Pauli generator(std::size_t i) const {
    const auto& g = generators.at(i);
    return g.type == CheckType::X ? x_on(g.support) : z_on(g.support);
  }

  // Bit i set iff the error anticommutes with generator i.
  Bits syndrome(const Pauli& e) const {
    Bits s;
    for (std::size_t i = 0; i < masks_.size(); ++i) {
      const Bits& hit = generators[i].type == CheckType::X ? e.z : e.x;
      s[i] = ((hit & masks_[i]).count() & 1u) != 0;
    }
    return s;
  }

  bool in_stabilizer_group(const Pauli& e) const {
    if (syndrome(e).any()) return false;
    return basis_.contains(to_sym(e));
  }

  // Fills gamma/v profiles, caches and logical operators from the generator list.
  void finalize();

 private:
  std::vector<Bits> masks_;
  Gf2Basis<2 * kMaxQubits> basis_;
};

namespace detail {

inline void sort_catalog(std::vector<Generator>& gens) {
  std::stable_sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) {
    if (a.type != b.type) return a.type == CheckType::X;
    return a.support.size() < b.support.size();
  });
}

inline Bits logical_rep(const std::vector<Bits>& commute_with, const std::vector<Bits>& stab, std::size_t n,
                        const Bits* must_anticommute) {
  Gf2Basis<kMaxQubits> span;
  for (const auto& s : stab) span.insert(s);
  auto ker = kernel(commute_with, n);
  std::vector<Bits> cand;
  for (const auto& v : ker)
    if (!span.contains(v)) cand.push_back(v);
  // Prefer the lowest-weight basis candidate satisfying the pairing constraint.
  std::stable_sort(cand.begin(), cand.end(), [](const Bits& a, const Bits& b) { return a.count() < b.count(); });
  for (const auto& v : cand) {
    if (!must_anticommute || ((v & *must_anticommute).count() & 1u)) return v;
  }
  for (std::size_t i = 0; i < cand.size(); ++i)
    for (std::size_t j = i + 1; j < cand.size(); ++j) {
      Bits v = cand[i] ^ cand[j];
      if (!span.contains(v) && (!must_anticommute || ((v & *must_anticommute).count() & 1u))) return v;
    }
  throw std::logic_error("no logical representative found");
}

}  // namespace detail

inline void StabilizerCode::finalize() {
  t = (d - 1) / 2;
  if (generators.empty()) return;
  if (n > static_cast<int>(kMaxQubits)) throw UnsupportedParameters("code exceeds qubit capacity");
  gamma.clear();
  gamma_type.clear();
  v_z.assign(n, 0);
  v_x.assign(n, 0);
  masks_.clear();
  basis_ = Gf2Basis<2 * kMaxQubits>();
  std::vector<Bits> hx, hz;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& g = generators[i];
    gamma.push_back(static_cast<int>(g.support.size()));
    gamma_type.push_back(g.type);
    Bits m;
    for (int q : g.support) {
      m.set(q);
      (g.type == CheckType::Z ? v_z : v_x)[q]++;
    }
    masks_.push_back(m);
    (g.type == CheckType::X ? hx : hz).push_back(m);
    if (!basis_.insert(to_sym(generator(i)))) throw std::logic_error(name + ": dependent generators");
  }
  if (k == 1 && logical_x.empty()) {
    Bits zl = detail::logical_rep(hx, hz, n, nullptr);
    Bits xl = detail::logical_rep(hz, hx, n, &zl);
    Pauli lz, lx;
    lz.z = zl;
    lx.x = xl;
    logical_z = {lz};
    logical_x = {lx};
  }
}

namespace detail {

inline StabilizerCode steane_code() {
  StabilizerCode c;
  c.name = "steane";
  c.family = Family::steane;
  c.n = 7;
  c.k = 1;
  c.d = 3;
  const std::vector<std::vector<int>> rows = {{3, 4, 5, 6}, {1, 2, 5, 6}, {0, 2, 4, 6}};
  for (int i = 0; i < 3; ++i) c.generators.push_back({CheckType::X, rows[i], {i, 0}});
  for (int i = 0; i < 3; ++i) c.generators.push_back({CheckType::Z, rows[i], {i, 1}});
  for (int q = 0; q < 7; ++q) c.qubit_sites.push_back({q, 0});
  c.A = std::vector<std::uint64_t>{4, 0, 0, 0, 84, 0, 168, 0};
  c.finalize();
  return c;
}

// Planar lattice on a (2d-1)x(2d-1) grid: data at r+c even, Z checks at (even,odd), X checks at (odd,even).
inline StabilizerCode surface_code(int d) {
  StabilizerCode c;
  c.family = Family::surface;
  c.name = "surface" + std::to_string(2 * d * d - 2 * d + 1);
  c.n = 2 * d * d - 2 * d + 1;
  c.k = 1;
  c.d = d;
  const int L = 2 * d - 1;
  std::map<std::pair<int, int>, int> idx;
  for (int r = 0; r < L; ++r)
    for (int col = 0; col < L; ++col)
      if ((r + col) % 2 == 0) {
        idx[{r, col}] = static_cast<int>(c.qubit_sites.size());
        c.qubit_sites.push_back({r, col});
      }
  for (int r = 0; r < L; ++r)
    for (int col = 0; col < L; ++col) {
      if ((r + col) % 2 == 0) continue;
      Generator g;
      g.type = (r % 2 == 0) ? CheckType::Z : CheckType::X;
      g.site = {r, col};
      const int dr[4] = {-1, 0, 0, 1}, dc[4] = {0, -1, 1, 0};
      for (int j = 0; j < 4; ++j) {
        auto it = idx.find({r + dr[j], col + dc[j]});
        if (it != idx.end()) g.support.push_back(it->second);
      }
      std::sort(g.support.begin(), g.support.end());
      c.generators.push_back(g);
    }
  sort_catalog(c.generators);
  if (d == 3) {
    // Tie-break priority reproducing the exact weight-2 success fraction; see data/layouts/surface13.txt.
    c.match_priority = {5, 0, 4, 1, 2, 3, 6, 7, 9, 10, 8, 11};
    c.A = std::vector<std::uint64_t>{4, 0, 0, 32, 48, 96, 304, 768, 1812, 3456, 4464, 3552, 1560, 288};
  }
  c.finalize();
  return c;
}

// Data on a d x d grid; plaquette (a,b) covers (a..a+1, b..b+1), X-type when a+b is even.
inline StabilizerCode rotated_code(int d) {
  StabilizerCode c;
  c.family = Family::rotated_surface;
  c.name = "rotated" + std::to_string(d * d);
  c.n = d * d;
  c.k = 1;
  c.d = d;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c.qubit_sites.push_back({2 * i, 2 * j});
  for (int a = -1; a < d; ++a)
    for (int b = -1; b < d; ++b) {
      Generator g;
      g.type = ((a + b) % 2 == 0) ? CheckType::X : CheckType::Z;
      g.site = {2 * a + 1, 2 * b + 1};
      for (int i : {a, a + 1})
        for (int j : {b, b + 1})
          if (i >= 0 && i < d && j >= 0 && j < d) g.support.push_back(i * d + j);
      if (g.support.size() < 2) continue;
      if (g.support.size() == 2) {
        bool top_bottom = (a == -1 || a == d - 1);
        if (top_bottom != (g.type == CheckType::X)) continue;
      }
      std::sort(g.support.begin(), g.support.end());
      c.generators.push_back(g);
    }
  sort_catalog(c.generators);
  c.finalize();
  return c;
}

inline void split_profile(StabilizerCode& c, const std::vector<std::pair<int, int>>& classes, int vz_ones, int vz_twos) {
  // classes: (weight, total count); each class split evenly between X and Z.
  for (CheckType ty : {CheckType::X, CheckType::Z})
    for (auto [w, cnt] : classes)
      for (int i = 0; i < cnt / 2; ++i) {
        c.gamma.push_back(w);
        c.gamma_type.push_back(ty);
      }
  c.v_z.clear();
  for (int j = 0; j < c.n; ++j) c.v_z.push_back(j < vz_ones ? 1 : (j < vz_ones + vz_twos ? 2 : 3));
  c.v_x = c.v_z;
}

inline StabilizerCode parameter_only(Family f, int d) {
  StabilizerCode c;
  c.family = f;
  c.k = 1;
  c.d = d;
  switch (f) {
    case Family::mobius: {
      c.n = 2 * d * d - d;
      c.name = "mobius" + std::to_string(c.n);
      int g = c.n - 1;
      split_profile(c, {{3, 2 * d}, {4, g - 2 * d}}, 2 * d, c.n - 2 * d);
      break;
    }
    case Family::honeycomb_color: {
      c.n = (3 * d * d + 1) / 4;
      c.name = "honeycomb" + std::to_string(c.n);
      int g = 3 * (d * d - 1) / 4;
      split_profile(c, {{4, 3 * (d - 1)}, {6, g - 3 * (d - 1)}}, 3, 3 * (d - 1) - 3);
      break;
    }
    case Family::square_octagon_color: {
      c.n = (d * d - 1) / 2 + d;
      c.name = "square_octagon" + std::to_string(c.n);
      int g = c.n - 1;
      int w4 = (d - 1) * (d + 5) / 4;
      split_profile(c, {{4, w4}, {8, g - w4}}, 3, 3 * (d - 1) - 3);
      break;
    }
    case Family::gross: {
      c.n = 144;
      c.k = 12;
      c.d = 12;
      c.name = "gross";
      // The 72 X and 72 Z checks measured in practice; they carry 12 dependencies.
      split_profile(c, {{6, 144}}, 0, 0);
      c.v_z.assign(c.n, 3);
      c.v_x = c.v_z;
      break;
    }
    default: throw UnsupportedParameters("not a parameter-only family");
  }
  c.finalize();
  return c;
}

}  // namespace detail

inline StabilizerCode build_code(Family family, int distance) {
  if (family == Family::gross) return detail::parameter_only(family, 12);
  if (distance < 3 || distance % 2 == 0)
    throw UnsupportedParameters(std::string(family_name(family)) + ": distance must be odd and >= 3, got " +
                                std::to_string(distance));
  switch (family) {
    case Family::steane:
      if (distance != 3) throw UnsupportedParameters("steane: only d=3 exists");
      return detail::steane_code();
    case Family::surface:
      if (2 * distance * distance - 2 * distance + 1 > static_cast<int>(kMaxQubits))
        throw UnsupportedParameters("surface: d=" + std::to_string(distance) + " exceeds qubit capacity");
      return detail::surface_code(distance);
    case Family::rotated_surface:
      if (distance * distance > static_cast<int>(kMaxQubits))
        throw UnsupportedParameters("rotated_surface: d=" + std::to_string(distance) + " exceeds qubit capacity");
      return detail::rotated_code(distance);
    default: return detail::parameter_only(family, distance);
  }
}

struct CodeProfile {
  std::vector<int> gamma;  // catalog order, ascending within each type
  std::vector<CheckType> gamma_type;
  std::vector<int> v_z, v_x;
  CheckType g_m = CheckType::Z;
  bool g_m_tie = false;

  std::vector<int> gammas_of(CheckType ty) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < gamma.size(); ++i)
      if (gamma_type[i] == ty) out.push_back(gamma[i]);
    return out;
  }
};

inline CodeProfile code_profile(const StabilizerCode& code) {
  CodeProfile p;
  p.gamma = code.gamma;
  p.gamma_type = code.gamma_type;
  p.v_z = code.v_z;
  p.v_x = code.v_x;
  auto nz = std::count(p.gamma_type.begin(), p.gamma_type.end(), CheckType::Z);
  auto nx = static_cast<std::ptrdiff_t>(p.gamma_type.size()) - nz;
  p.g_m_tie = nz == nx;
  p.g_m = nz >= nx ? CheckType::Z : CheckType::X;
  return p;
}

inline std::vector<std::uint64_t> enumerate_weight_histogram(const StabilizerCode& code) {
  std::size_t m = code.generators.size();
  if (m > 20) throw Unavailable(code.name + ": stabilizer group too large to enumerate");
  std::vector<std::uint64_t> hist(code.n + 1, 0);
  std::vector<Pauli> gens;
  for (std::size_t i = 0; i < m; ++i) gens.push_back(code.generator(i));
  Pauli cur;
  hist[0]++;
  for (std::uint64_t g = 1; g < (std::uint64_t{1} << m); ++g) {
    // Gray-code walk flips one generator per step.
    int bit = __builtin_ctzll(g);
    cur *= gens[bit];
    hist[cur.weight()]++;
  }
  return hist;
}

inline std::vector<std::uint64_t> weight_enumerator(const StabilizerCode& code) {
  if (code.A) return *code.A;
  if (!code.has_matrix()) throw Unavailable(code.name + ": no generator matrix and no stored enumerator");
  auto hist = enumerate_weight_histogram(code);
  std::uint64_t scale = std::uint64_t{1} << (2 * code.k);
  for (auto& h : hist) h *= scale;
  return hist;
}

inline std::string type_tag(CheckType t) { return t == CheckType::X ? "X" : "Z"; }

inline std::string serialize_layout(const StabilizerCode& code) {
  if (!code.has_matrix()) throw UnsupportedParameters(code.name + ": parameter-only entry has no layout");
  std::ostringstream os;
  os << "# ftqec layout v1\n";
  os << "code " << family_name(code.family) << " " << code.d << "\n";
  os << "n " << code.n << " k " << code.k << " d " << code.d << "\n";
  for (const auto& g : code.generators) {
    os << type_tag(g.type);
    for (int q : g.support) os << ' ' << q;
    os << '\n';
  }
  if (!code.match_priority.empty()) {
    os << "priority";
    for (int i : code.match_priority) os << ' ' << i;
    os << '\n';
  }
  return os.str();
}

inline StabilizerCode parse_layout(std::istream& in) {
  StabilizerCode c;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "code") {
      std::string fam;
      ls >> fam >> c.d;
      c.family = parse_family(fam);
      c.name = fam;
    } else if (tag == "n") {
      std::string kk, dd;
      ls >> c.n >> kk >> c.k >> dd >> c.d;
    } else if (tag == "X" || tag == "Z") {
      Generator g;
      g.type = tag == "X" ? CheckType::X : CheckType::Z;
      int q;
      while (ls >> q) {
        if (q < 0 || q >= c.n) throw std::invalid_argument("layout: qubit index out of range");
        g.support.push_back(q);
      }
      c.generators.push_back(g);
    } else if (tag == "priority") {
      int i;
      while (ls >> i) c.match_priority.push_back(i);
    } else {
      throw std::invalid_argument("layout: unknown line tag '" + tag + "'");
    }
  }
  c.finalize();
  return c;
}

}  // namespace ftqec
