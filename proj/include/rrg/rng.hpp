#pragma once

#include <cstdint>
#include <random>

namespace rrg {

// splitmix64 finalizer; used to spread (seed, trial) pairs into independent
// engine seeds so results do not depend on trial execution order.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// mt19937_64 plus a hand-rolled rejection sampler for bounded draws.
// std::uniform_int_distribution is implementation-defined, so using it would
// make "same seed => same numbers" hold only per libstdc++ version; the
// rejection loop below is fully pinned.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t word() { return eng_(); }

    // Uniform in [0, n), unbiased (rejects the top partial block).
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    // Uniform in [lo, hi] inclusive.
    int pick(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double unit() {  // [0,1) with 53 random bits, for test utilities only
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

  private:
    std::mt19937_64 eng_;
};

// Stream for trial i of a run with master seed s: engine seed is
// mix64(s ^ mix64(i + 1)). Documented here and in the README because frozen
// test expectations depend on it.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
    return Rng(mix64(seed ^ mix64(trial + 1)));
}

}  // namespace rrg
