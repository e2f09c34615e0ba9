#pragma once

#include <bitset>
#include <cstddef>
#include <vector>

#include "pauli.hpp"

namespace ftqec {

// Symplectic vector: x part in [0,128), z part in [128,256).
using Sym = std::bitset<2 * kMaxQubits>;

inline Sym to_sym(const Pauli& p) {
  Sym s;
  for (std::size_t i = 0; i < kMaxQubits; ++i) {
    if (p.x[i]) s.set(i);
    if (p.z[i]) s.set(kMaxQubits + i);
  }
  return s;
}

// Incremental row-echelon basis over GF(2).
template <std::size_t N>
class Gf2Basis {
 public:
  // Returns false if v was already in the span.
  bool insert(std::bitset<N> v) {
    reduce(v);
    if (v.none()) return false;
    std::size_t piv = lowest(v);
    for (auto& r : rows_)
      if (r.second[piv]) r.second ^= v;
    rows_.push_back({piv, v});
    return true;
  }

  bool contains(std::bitset<N> v) const {
    reduce(v);
    return v.none();
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  void reduce(std::bitset<N>& v) const {
    for (const auto& r : rows_)
      if (v[r.first]) v ^= r.second;
  }
  static std::size_t lowest(const std::bitset<N>& v) {
    std::size_t i = 0;
    while (!v[i]) ++i;
    return i;
  }

  std::vector<std::pair<std::size_t, std::bitset<N>>> rows_;
};

// Null space of the rows (each row a length-n vector), as a list of basis vectors.
inline std::vector<Bits> kernel(std::vector<Bits> rows, std::size_t n) {
  std::vector<int> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && !rows[p][c]) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i][c]) rows[i] ^= rows[r];
    pivcol.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<bool> is_piv(n, false);
  for (int c : pivcol) is_piv[c] = true;
  std::vector<Bits> out;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    Bits v;
    v.set(f);
    for (std::size_t i = 0; i < pivcol.size(); ++i)
      if (rows[i][f]) v.set(pivcol[i]);
    out.push_back(v);
  }
  return out;
}

}  // namespace ftqec
