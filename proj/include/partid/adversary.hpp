#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "partid/base_set.hpp"
#include "partid/bigint.hpp"
#include "partid/counting.hpp"
#include "partid/errors.hpp"

namespace partid {

/* One leaked product value: the attacker saw p_alpha(u) * p_alpha(v) on a
 * known base set and wants u, v back. */
struct observation {
    base_set star = base_set::naturals();
    multiplicity_bound alpha{1};
    big_count value;
};

inline constexpr std::uint64_t default_preimage_ceiling = 200;

/* All unordered pairs u <= v <= bound whose bounded-count product matches
 * the observed value. Exhaustive within the bound. */
inline std::vector<std::pair<std::uint64_t, std::uint64_t>>
enumerate_product_preimages(const observation& obs, std::uint64_t bound,
                            std::uint64_t ceiling = default_preimage_ceiling) {
    if (bound > ceiling)
        throw bound_too_large("candidate bound " + std::to_string(bound) + " exceeds ceiling " +
                              std::to_string(ceiling));
    const std::vector<big_count> table = count_table_bounded(obs.star, obs.alpha, bound);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (std::uint64_t u = 1; u <= bound; ++u)
        for (std::uint64_t v = u; v <= bound; ++v)
            if (table[u] * table[v] == obs.value)
                pairs.emplace_back(u, v);
    return pairs;
}

struct attack_step {
    std::string base;        // which set produced this observation
    std::size_t candidates;  // surviving pairs after intersecting it
};

struct attack_report {
    std::uint64_t bound = 0;
    std::vector<attack_step> steps;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> candidates;
    double wall_ms = 0.0;
};

/* Intersect the preimage sets of several observations of the same hidden
 * pair. Candidate sets can only shrink as observations accumulate. */
inline attack_report attack_recover_pair(std::span<const observation> observations,
                                         std::uint64_t bound,
                                         std::uint64_t ceiling = default_preimage_ceiling) {
    if (observations.empty())
        throw bad_params("need at least one observation");
    const auto start = std::chrono::steady_clock::now();

    attack_report report;
    report.bound = bound;
    report.candidates = enumerate_product_preimages(observations[0], bound, ceiling);
    report.steps.push_back({observations[0].star.config_string(), report.candidates.size()});

    for (std::size_t k = 1; k < observations.size(); ++k) {
        const observation& obs = observations[k];
        const std::vector<big_count> table = count_table_bounded(obs.star, obs.alpha, bound);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> kept;
        for (const auto& [u, v] : report.candidates)
            if (table[u] * table[v] == obs.value)
                kept.emplace_back(u, v);
        report.candidates = std::move(kept);
        report.steps.push_back({obs.star.config_string(), report.candidates.size()});
    }

    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return report;
}

/* What the protocols leak per round about a hidden pair: the masked product
 * value on each challenge set. Convenience for experiments. */
inline std::vector<observation> observe_pair(std::uint64_t u, std::uint64_t v,
                                             multiplicity_bound alpha,
                                             std::span<const base_set> sets) {
    std::vector<observation> obs;
    for (const base_set& star : sets) {
        const std::vector<big_count> table = count_table_bounded(star, alpha, std::max(u, v));
        obs.push_back(observation{star, alpha, table[u] * table[v]});
    }
    return obs;
}

} // namespace partid
