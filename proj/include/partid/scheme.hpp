#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "partid/base_set.hpp"
#include "partid/bigint.hpp"
#include "partid/counting.hpp"
#include "partid/errors.hpp"
#include "partid/identity.hpp"
#include "partid/rng.hpp"

namespace partid {

/* Parameters shared by all three schemes. n1 and n2 stay secret; alpha is
 * public. gcd(n_i, alpha) = 1 keeps divisors of the secret numbers out of
 * the solution matrix, and n_i >= alpha+1 guarantees nontrivial rows. */
struct scheme_params {
    std::uint64_t n1 = 21;
    std::uint64_t n2 = 25;
    multiplicity_bound alpha{2};
    std::size_t parties = 3;     // r
    std::uint64_t delta = 2;     // "far enough" margin for secret arguments
    std::size_t rounds = 5;
    std::uint64_t rng_seed = 0;

    // tunables with sensible defaults
    std::uint64_t distribute_num = 1;  // fraction of eligible rows handed out
    std::uint64_t distribute_den = 2;
    std::size_t resample_limit = 32;   // base set candidates per round
    std::uint64_t star_max_element = 0; // 0 = derived from n1, n2
    density_ratio star_density{1, 2};

    void validate() const {
        if (parties < 2)
            throw bad_params("need at least 2 parties");
        if (delta < 1)
            throw bad_params("delta must be >= 1");
        if (rounds < 1)
            throw bad_params("need at least 1 round");
        if (n1 < alpha.alpha + 1 || n2 < alpha.alpha + 1)
            throw bad_params("n1 and n2 must be >= alpha+1");
        if (std::gcd(n1, alpha.alpha) != 1 || std::gcd(n2, alpha.alpha) != 1)
            throw bad_params("gcd(n1, alpha) and gcd(n2, alpha) must be 1");
        if (distribute_den == 0 || distribute_num == 0 || distribute_num > distribute_den)
            throw bad_params("distribution ratio must be a fraction in (0,1]");
        if (resample_limit == 0)
            throw bad_params("need at least one base set attempt");
    }

    std::uint64_t star_max() const {
        return star_max_element != 0 ? star_max_element : 6 * std::max(n1, n2) + 40;
    }
};

/* A row of the expansion, cut in two: the primed factors (arguments far
 * enough from 1, n1 and n2) and the complement. For distributed rows the
 * primed part is a party's secret; for the rest both halves end up public. */
struct split_row {
    std::size_t row = 0;
    std::vector<std::uint64_t> secret_args; // the primed factors
    std::vector<std::uint64_t> public_args; // the complement

    bool operator==(const split_row&) const = default;
};

inline bool clears_delta(std::uint64_t arg, const scheme_params& p) {
    const auto gap = [](std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; };
    return arg >= 1 + p.delta && gap(arg, p.n1) >= p.delta && gap(arg, p.n2) >= p.delta;
}

inline split_row make_split(std::size_t row, const term& t, const scheme_params& p) {
    split_row s{row, {}, {}};
    for (const std::uint64_t a : t.args)
        (clears_delta(a, p) ? s.secret_args : s.public_args).push_back(a);
    return s;
}

/* A row qualifies for distribution only if its secret side keeps at least
 * two factors; a lone factor would expose a raw partition number. */
inline bool distributable(const split_row& s) { return s.secret_args.size() >= 2; }

inline big_count args_value(std::span<const std::uint64_t> args,
                            std::span<const big_count> table) {
    big_count v = 1;
    for (const std::uint64_t a : args)
        v *= table[a];
    return v;
}

/* Draw challenge base sets until one satisfies the round's viability
 * predicate (no degenerate zero factors). Bounded retries. */
template <class Viable>
base_set sample_star(const scheme_params& p, std::uint64_t round_seed, Viable&& viable) {
    for (std::size_t attempt = 0; attempt < p.resample_limit; ++attempt) {
        base_set candidate = base_set::seeded_random(splitmix64::derive(round_seed, attempt),
                                                     p.star_density, p.star_max());
        if (viable(candidate))
            return candidate;
    }
    throw no_viable_base_set("no viable base set after " + std::to_string(p.resample_limit) +
                             " attempts");
}

} // namespace partid
