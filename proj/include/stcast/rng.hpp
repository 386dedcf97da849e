#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace stcast {

// Deterministic random source. All samplers are implemented here rather than
// through std:: distributions so that streams are bit-reproducible across
// standard library versions. Named substreams let independent pipeline stages
// (cloud sampling, MCMC, CV splits) draw from decorrelated generators that all
// flow from one user seed.
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  // Stable 64-bit seed derivation: FNV-1a over the stream name mixed with the
  // base seed through splitmix64.
  static std::uint64_t derive(std::uint64_t seed, std::string_view stream);
  static std::uint64_t derive_index(std::uint64_t seed, std::uint64_t index);

  Rng substream(std::string_view stream) const { return Rng(derive(seed_, stream)); }
  Rng substream(std::string_view stream, std::uint64_t index) const {
    return Rng(derive_index(derive(seed_, stream), index));
  }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi);

  // Unbiased integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n);

  // Standard normal, Box-Muller with cached spare.
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

  // Gamma(shape, scale=1), Marsaglia-Tsang; shape > 0.
  double gamma(double shape);
  double gamma(double shape, double scale) { return scale * gamma(shape); }
  double chi_squared(double dof) { return 2.0 * gamma(0.5 * dof); }
  // InvGamma(shape, rate): x such that 1/x ~ Gamma(shape, rate).
  double inverse_gamma(double shape, double rate) { return rate / gamma(shape); }

  // Poisson by inversion (sequential search), chunked so that means far above
  // the exp() underflow range still work.
  std::int64_t poisson(double mean);

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace stcast
