#pragma once

#include <cstdint>
#include <vector>

namespace partid {

/* SplitMix64. All randomness in the library flows through this generator:
 * it is tiny, splittable, and produces the same stream on every platform,
 * which is what makes seeded sessions reproducible byte for byte.
 * Reference sequence: Steele, Lea, Flood, "Fast splittable pseudorandom
 * number generators" (the standard splitmix64 constants). */
class splitmix64 {
  public:
    explicit splitmix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /* Uniform in [0, bound), bound >= 1. Rejection sampling, no modulo bias. */
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
        for (;;) {
            const std::uint64_t v = next();
            if (v < limit)
                return v % bound;
        }
    }

    /* Uniform in [lo, hi], inclusive. */
    std::uint64_t in_range(std::uint64_t lo, std::uint64_t hi) {
        return lo + below(hi - lo + 1);
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

    /* Derive an independent stream seed from (seed, salt). Distinct salts
     * give unrelated streams; used for per-round and per-party generators. */
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
        splitmix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
        g.next();
        return g.next();
    }

  private:
    std::uint64_t state_;
};

} // namespace partid
