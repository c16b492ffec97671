#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "partid/base_set.hpp"
#include "partid/bigint.hpp"
#include "partid/errors.hpp"

namespace partid {

/* Cap on how many times any single part may repeat inside a partition. */
struct multiplicity_bound {
    std::uint64_t alpha;

    explicit multiplicity_bound(std::uint64_t a) : alpha(a) {
        if (alpha == 0)
            throw bad_params("multiplicity bound must be >= 1");
    }

    bool operator==(const multiplicity_bound&) const = default;
};

/* A partition in canonical form: parts descending. */
using partition = std::vector<std::uint64_t>;

/* Number of partitions of each m in [0, n] into parts of `a`, unrestricted
 * multiplicity. Row m of the classic coin-change recurrence; exact. */
inline std::vector<big_count> count_table_unrestricted(const base_set& a, std::uint64_t n) {
    std::vector<big_count> ways(n + 1);
    ways[0] = 1;
    for (const std::uint64_t part : a.parts_up_to(n))
        for (std::uint64_t m = part; m <= n; ++m)
            ways[m] += ways[m - part];
    return ways;
}

/* Same, with each part allowed at most `bound.alpha` times. One pass per
 * part, inner loop over the admissible multiplicities 0..alpha. */
inline std::vector<big_count> count_table_bounded(const base_set& a, multiplicity_bound bound,
                                                  std::uint64_t n) {
    std::vector<big_count> ways(n + 1);
    ways[0] = 1;
    for (const std::uint64_t part : a.parts_up_to(n)) {
        std::vector<big_count> next(n + 1);
        for (std::uint64_t m = 0; m <= n; ++m) {
            big_count acc = ways[m];
            for (std::uint64_t j = 1; j <= bound.alpha && j * part <= m; ++j)
                acc += ways[m - j * part];
            next[m] = std::move(acc);
        }
        ways = std::move(next);
    }
    return ways;
}

inline big_count count_unrestricted(const base_set& a, std::uint64_t n) {
    return count_table_unrestricted(a, n).back();
}

inline big_count count_bounded(const base_set& a, multiplicity_bound bound, std::uint64_t n) {
    return count_table_bounded(a, bound, n).back();
}

inline constexpr std::uint64_t default_oracle_ceiling = 30;

/* Exhaustive enumeration of the partitions themselves. Independent check
 * for the counting tables above; intentionally naive, so it is capped.
 * Output order is canonical: parts descending within a partition,
 * partitions in ascending lexicographic order. */
inline std::vector<partition> enumerate_partitions(const base_set& a,
                                                   std::optional<multiplicity_bound> bound,
                                                   std::uint64_t n,
                                                   std::uint64_t ceiling = default_oracle_ceiling) {
    if (n > ceiling)
        throw oracle_ceiling_exceeded("n=" + std::to_string(n) + " exceeds oracle ceiling " +
                                      std::to_string(ceiling));
    const std::vector<std::uint64_t> parts = a.parts_up_to(n);
    std::vector<partition> out;
    partition cur;

    auto rec = [&](auto&& self, std::size_t idx, std::uint64_t remaining) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        if (idx == 0)
            return;
        const std::uint64_t part = parts[idx - 1];
        std::uint64_t max_mult = remaining / part;
        if (bound && bound->alpha < max_mult)
            max_mult = bound->alpha;
        for (std::uint64_t j = max_mult; j-- > 0;) {
            // j+1 copies of this part, then strictly smaller parts
            cur.insert(cur.end(), j + 1, part);
            self(self, idx - 1, remaining - (j + 1) * part);
            cur.resize(cur.size() - (j + 1));
        }
        self(self, idx - 1, remaining); // skip this part entirely
    };
    rec(rec, parts.size(), n);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace partid
