#pragma once

#include <bitset>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ftqec {

inline constexpr std::size_t kMaxQubits = 128;
using Bits = std::bitset<kMaxQubits>;

// Raised for (family, distance, scheme, ...) combinations the library does not cover.
struct UnsupportedParameters : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when a quantity exists in principle but cannot be produced (missing table, infeasible enumeration).
struct Unavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class PauliKind : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

// Pauli operator modulo phase, symplectic bit layout.
struct Pauli {
  Bits x, z;

  Pauli& operator*=(const Pauli& o) {
    x ^= o.x;
    z ^= o.z;
    return *this;
  }
  friend Pauli operator*(Pauli a, const Pauli& b) { return a *= b; }
  bool operator==(const Pauli& o) const { return x == o.x && z == o.z; }
  bool operator!=(const Pauli& o) const { return !(*this == o); }

  std::size_t weight() const { return (x | z).count(); }
  bool is_identity() const { return x.none() && z.none(); }

  PauliKind at(std::size_t q) const {
    return static_cast<PauliKind>((x[q] ? 1 : 0) | (z[q] ? 2 : 0));
  }
  void set(std::size_t q, PauliKind k) {
    x[q] = (static_cast<int>(k) & 1) != 0;
    z[q] = (static_cast<int>(k) & 2) != 0;
  }
  void apply(std::size_t q, PauliKind k) {
    if (static_cast<int>(k) & 1) x.flip(q);
    if (static_cast<int>(k) & 2) z.flip(q);
  }
  void clear(std::size_t q) {
    x.reset(q);
    z.reset(q);
  }
};

inline bool commutes(const Pauli& a, const Pauli& b) {
  return (((a.x & b.z).count() + (a.z & b.x).count()) & 1u) == 0;
}

inline Pauli single(std::size_t q, PauliKind k) {
  Pauli p;
  p.set(q, k);
  return p;
}

inline Pauli x_on(const std::vector<int>& qs) {
  Pauli p;
  for (int q : qs) p.x.set(q);
  return p;
}

inline Pauli z_on(const std::vector<int>& qs) {
  Pauli p;
  for (int q : qs) p.z.set(q);
  return p;
}

inline std::vector<int> support(const Bits& b, std::size_t n = kMaxQubits) {
  std::vector<int> out;
  for (std::size_t i = 0; i < n; ++i)
    if (b[i]) out.push_back(static_cast<int>(i));
  return out;
}

// Total order on bit strings read with qubit 0 as the most significant digit.
inline bool lex_less(const Bits& a, const Bits& b) {
  Bits d = a ^ b;
  if (d.none()) return false;
  std::size_t i = 0;
  while (!d[i]) ++i;
  return b[i];
}

inline bool lex_less(const Pauli& a, const Pauli& b) {
  if (a.x != b.x) return lex_less(a.x, b.x);
  return lex_less(a.z, b.z);
}

inline char pauli_char(PauliKind k) { return "IXZY"[static_cast<int>(k)]; }

inline std::string to_string(const Pauli& p, std::size_t n) {
  std::string s(n, 'I');
  for (std::size_t q = 0; q < n; ++q) s[q] = pauli_char(p.at(q));
  return s;
}

inline Pauli from_string(const std::string& s) {
  if (s.size() > kMaxQubits) throw std::invalid_argument("pauli string too long");
  Pauli p;
  for (std::size_t q = 0; q < s.size(); ++q) {
    switch (s[q]) {
      case 'I': case '_': break;
      case 'X': p.x.set(q); break;
      case 'Z': p.z.set(q); break;
      case 'Y': p.x.set(q); p.z.set(q); break;
      default: throw std::invalid_argument("bad pauli character");
    }
  }
  return p;
}

}  // namespace ftqec
