#pragma once

#include <cstdint>
#include <optional>

#include "pauli.hpp"
#include "rng.hpp"

namespace ftqec {

// Pauli frame over data, ancilla and flag registers; qubit roles are assigned by the gadget builder.
using PauliFrame = Pauli;

enum class GateKind : std::uint8_t { H, CNOT, CZ };

inline void conjugate_through(GateKind g, int a, int b, PauliFrame& f) {
  switch (g) {
    case GateKind::H: {
      bool x = f.x[a];
      f.x[a] = f.z[a];
      f.z[a] = x;
      break;
    }
    case GateKind::CNOT:  // a control, b target
      if (f.x[a]) f.x.flip(b);
      if (f.z[b]) f.z.flip(a);
      break;
    case GateKind::CZ: {
      bool xa = f.x[a], xb = f.x[b];
      if (xa) f.z.flip(b);
      if (xb) f.z.flip(a);
      break;
    }
  }
}

inline PauliKind fault_kind(std::uint32_t word) {
  static constexpr PauliKind kinds[3] = {PauliKind::X, PauliKind::Y, PauliKind::Z};
  return kinds[(std::uint64_t{word} * 3) >> 32];
}

// One counter block per location: 64 bits decide whether a fault occurs, 32 more bits pick X, Y or Z.
inline std::optional<PauliKind> sample_fault(const FaultThreshold& th, CounterRng& rng) {
  auto b = rng.block();
  std::uint64_t u = (std::uint64_t{b[0]} << 32) | b[1];
  if (!th.hit(u)) return std::nullopt;
  return fault_kind(b[2]);
}

inline std::optional<PauliKind> sample_fault(double p_ft, CounterRng& rng) {
  return sample_fault(FaultThreshold(p_ft), rng);
}

inline int measure_z(PauliFrame& f, int q, bool flip_fault = false) {
  int bit = (f.x[q] ? 1 : 0) ^ (flip_fault ? 1 : 0);
  f.clear(q);
  return bit;
}

}  // namespace ftqec
