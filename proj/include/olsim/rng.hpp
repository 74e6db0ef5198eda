#ifndef OLSIM_RNG_HPP
#define OLSIM_RNG_HPP

#include <cstdint>
#include <random>

namespace olsim {

// Seeded generator with explicit double conversion. std::mt19937_64 is
// specified bit-exactly by the standard; the distributions are not, so we
// convert draws to doubles ourselves to keep instances reproducible across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace olsim

#endif
