#ifndef GCENSUS_RNG_HPP
#define GCENSUS_RNG_HPP

#include <cstdint>

namespace gcensus {

// SplitMix64. All probabilistic choices in the library draw from this so
// that a run is fully determined by its recorded seeds.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). n must be nonzero.
  uint64_t below(uint64_t n) { return next() % n; }

  uint64_t fork(uint64_t salt) {
    Rng r(state_ ^ (salt * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
    return r.next();
  }

 private:
  uint64_t state_;
};

}  // namespace gcensus

#endif
