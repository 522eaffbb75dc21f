#pragma once

#include <cstdint>
#include <random>

namespace slra {

/// Deterministic random source for experiment generation. The engine is
/// std::mt19937_64 (fully specified by the standard, so its stream is
/// portable) seeded through splitmix64; the uniform and Gaussian mappings
/// are written out explicitly because the std:: distributions are
/// implementation-defined and would break reproducibility across standard
/// libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01();
  double uniform(double lo, double hi);

  /// N(0, stddev^2) by the Box-Muller transform (pairs are generated
  /// together; the spare is cached).
  double gaussian(double stddev = 1.0);

  /// Uniform integer in [0, n), bias-free by rejection.
  int below(int n);

  /// Independent child stream: deterministic in (seed, index) only, so
  /// per-instance streams do not depend on the order instances run in.
  Rng substream(std::uint64_t index) const;

  /// The seed this stream was constructed from (stable stream identity).
  std::uint64_t seed() const noexcept { return seed_; }

  static std::uint64_t splitmix64(std::uint64_t x);

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace slra
