#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace ftqec {

// Philox4x32-10: a keyed bijection on 128-bit counters.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter apply(Counter c, Key k) {
    for (int r = 0; r < 10; ++r) {
      std::uint64_t p0 = std::uint64_t{0xD2511F53u} * c[0];
      std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * c[2];
      c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
      k[0] += 0x9E3779B9u;
      k[1] += 0xBB67AE85u;
    }
    return c;
  }
};

// Independent stream per (seed, trial, stream id); the draw index is the last counter word pair.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t trial, std::uint32_t stream = 0)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        trial_(trial),
        stream_(stream) {}

  Philox4x32::Counter block() {
    Philox4x32::Counter c{static_cast<std::uint32_t>(draw_), stream_, static_cast<std::uint32_t>(trial_),
                          static_cast<std::uint32_t>(trial_ >> 32)};
    ++draw_;
    return Philox4x32::apply(c, key_);
  }

  std::uint64_t next64() {
    auto b = block();
    return (std::uint64_t{b[0]} << 32) | b[1];
  }

  double uniform() { return static_cast<double>(next64() >> 11) * 0x1.0p-53; }

  std::uint64_t draws() const { return draw_; }

 private:
  Philox4x32::Key key_;
  std::uint64_t trial_;
  std::uint32_t stream_;
  std::uint64_t draw_ = 0;
};

// Bernoulli(p) threshold on a 64-bit uniform word; p >= 1 always fires.
struct FaultThreshold {
  std::uint64_t cut = 0;
  bool always = false;

  explicit FaultThreshold(double p = 0.0) {
    if (p >= 1.0) always = true;
    else if (p > 0.0) cut = static_cast<std::uint64_t>(std::ldexp(static_cast<long double>(p), 64));
  }
  bool hit(std::uint64_t u) const { return always || u < cut; }
};

}  // namespace ftqec
