#pragma once

namespace ftqec {

// p: memory depolarizing rate on data qubits; p_ft: per-location rate inside extraction circuits.
struct NoiseModel {
  double p = 0.0;
  double p_ft = 0.0;
};

}  // namespace ftqec
