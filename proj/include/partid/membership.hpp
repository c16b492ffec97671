#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "partid/scheme.hpp"
#include "partid/transcript.hpp"

namespace partid {

/* What one member holds: whole rows of the expansion, secret factors only.
 * The complement of each row stays with the dealer. */
struct member_share {
    std::size_t member = 0;
    std::vector<split_row> rows;
};

struct dealer_secret {
    scheme_params params;
    expanded_product expansion;
    std::map<std::size_t, split_row> distributed;     // row id -> split
    std::vector<std::vector<std::size_t>> assignment; // member -> row ids
    std::vector<std::size_t> withheld;                // rows the dealer keeps whole
};

struct membership_setup_result {
    dealer_secret secret;
    std::vector<member_share> shares;
    std::uint64_t public_alpha = 0; // the only setup value members may publish
};

/* Dealer setup: build the masked expansion, pick about half of the rows
 * whose secret side keeps >= 2 safe factors, and deal them out. Every
 * member gets at least one row; everything else is withheld. */
inline membership_setup_result membership_setup(const scheme_params& p) {
    p.validate();
    membership_setup_result result;
    result.secret.params = p;
    result.secret.expansion = expand_pair_product(p.n1, p.n2, p.alpha);
    result.public_alpha = p.alpha.alpha;

    const std::vector<term>& terms = result.secret.expansion.terms;
    std::vector<std::size_t> eligible;
    std::vector<split_row> splits(terms.size());
    for (std::size_t row = 0; row < terms.size(); ++row) {
        splits[row] = make_split(row, terms[row], p);
        if (distributable(splits[row]))
            eligible.push_back(row);
    }
    if (eligible.size() < p.parties)
        throw infeasible_distribution("only " + std::to_string(eligible.size()) +
                                      " rows have >= 2 safe factors, need >= " +
                                      std::to_string(p.parties));

    std::size_t share_count =
        std::max<std::size_t>(p.parties, eligible.size() * p.distribute_num / p.distribute_den);
    share_count = std::min(share_count, eligible.size());

    splitmix64 g(splitmix64::derive(p.rng_seed, 0x5e7u));
    g.shuffle(eligible);
    eligible.resize(share_count);

    result.secret.assignment.resize(p.parties);
    result.shares.resize(p.parties);
    for (std::size_t i = 0; i < p.parties; ++i)
        result.shares[i].member = i;
    for (std::size_t j = 0; j < eligible.size(); ++j) {
        const std::size_t row = eligible[j];
        const std::size_t member = j % p.parties;
        result.secret.assignment[member].push_back(row);
        result.secret.distributed.emplace(row, splits[row]);
        result.shares[member].rows.push_back(splits[row]);
    }
    for (auto& rows : result.secret.assignment)
        std::sort(rows.begin(), rows.end());
    for (auto& share : result.shares)
        std::sort(share.rows.begin(), share.rows.end(),
                  [](const split_row& a, const split_row& b) { return a.row < b.row; });
    for (std::size_t row = 0; row < terms.size(); ++row)
        if (!result.secret.distributed.count(row))
            result.secret.withheld.push_back(row);
    return result;
}

struct member_behavior {
    enum class kind { honest, constant_offset, random_value, replay_previous };
    kind strategy = kind::honest;
    big_count offset = 1;   // constant_offset only

    bool honest() const { return strategy == kind::honest; }
};

struct round_record {
    std::size_t round_index = 0;
    base_set star = base_set::naturals();
    std::map<std::size_t, big_count> complement_values; // distributed row -> value
    std::map<std::size_t, big_count> withheld_values;   // withheld row -> full value
    std::vector<std::map<std::size_t, big_count>> responses; // member -> row -> claimed value
    big_count combined;
    big_count target;
    bool pass = false;
};

/* What an honest member reports for its share on base set star: the value
 * of each row's secret sub-product. Members see only their own arguments. */
inline std::map<std::size_t, big_count> honest_response(const member_share& share,
                                                        const base_set& star,
                                                        multiplicity_bound alpha) {
    std::uint64_t max_arg = 0;
    for (const split_row& s : share.rows)
        for (const std::uint64_t a : s.secret_args)
            max_arg = std::max(max_arg, a);
    const std::vector<big_count> table = count_table_bounded(star, alpha, max_arg);
    std::map<std::size_t, big_count> out;
    for (const split_row& s : share.rows)
        out[s.row] = args_value(s.secret_args, table);
    return out;
}

inline std::map<std::size_t, big_count> apply_behavior(const member_behavior& b,
                                                       const member_share& share,
                                                       const base_set& star,
                                                       multiplicity_bound alpha,
                                                       std::uint64_t member_round_seed,
                                                       const round_record* previous) {
    switch (b.strategy) {
        case member_behavior::kind::honest:
            return honest_response(share, star, alpha);
        case member_behavior::kind::constant_offset: {
            auto out = honest_response(share, star, alpha);
            for (auto& [row, v] : out)
                v += b.offset;
            return out;
        }
        case member_behavior::kind::random_value: {
            auto truth = honest_response(share, star, alpha);
            splitmix64 g(member_round_seed);
            for (auto& [row, v] : truth) {
                big_count fake = big_count(g.next());
                if (fake == v)
                    fake += 1;
                v = std::move(fake);
            }
            return truth;
        }
        case member_behavior::kind::replay_previous: {
            if (previous == nullptr) {
                // nothing to replay yet; claim zero for every held row
                std::map<std::size_t, big_count> out;
                for (const split_row& s : share.rows)
                    out[s.row] = 0;
                return out;
            }
            return previous->responses[share.member];
        }
    }
    return {};
}

/* One challenge round. The dealer publishes the complement
 * value of every distributed row and the full value of every withheld row;
 * members report their secret sub-products; the combination is
 *   sum over distributed rows (response * complement) + sum withheld,
 * checked against the masked pair product on the same base set. */
inline round_record run_membership_round(const dealer_secret& secret,
                                         const std::vector<member_share>& shares,
                                         std::uint64_t round_seed,
                                         const std::vector<member_behavior>& behaviors,
                                         const round_record* previous,
                                         std::size_t round_index) {
    const scheme_params& p = secret.params;
    const std::uint64_t limit = std::max(p.n1, p.n2);

    // A base set is viable when no secret sub-product and no published
    // complement vanishes; otherwise a wrong response could go unnoticed.
    std::vector<big_count> table;
    const base_set star = sample_star(p, round_seed, [&](const base_set& candidate) {
        table = count_table_bounded(candidate, p.alpha, limit);
        for (const auto& [row, split] : secret.distributed) {
            if (args_value(split.secret_args, table) == 0)
                return false;
            if (args_value(split.public_args, table) == 0)
                return false;
        }
        return true;
    });

    round_record rec;
    rec.round_index = round_index;
    rec.star = star;
    for (const auto& [row, split] : secret.distributed)
        rec.complement_values[row] = args_value(split.public_args, table);
    for (const std::size_t row : secret.withheld)
        rec.withheld_values[row] = args_value(secret.expansion.terms[row].args, table);

    rec.responses.resize(shares.size());
    for (std::size_t m = 0; m < shares.size(); ++m) {
        const member_behavior behavior =
            m < behaviors.size() ? behaviors[m] : member_behavior{};
        rec.responses[m] = apply_behavior(behavior, shares[m], star, p.alpha,
                                          splitmix64::derive(round_seed, 0xbe00 + m), previous);
    }

    rec.target = masked_pair_target(p.n1, p.n2, p.alpha, star);
    rec.combined = 0;
    for (const auto& [row, complement] : rec.complement_values) {
        big_count claimed = 0; // unanswered rows count as zero
        for (const auto& response : rec.responses) {
            const auto it = response.find(row);
            if (it != response.end()) {
                claimed = it->second;
                break;
            }
        }
        rec.combined += claimed * complement;
    }
    for (const auto& [row, value] : rec.withheld_values)
        rec.combined += value;
    rec.pass = rec.combined == rec.target;
    return rec;
}

/* Single-round entry point with every member honest. */
inline round_record membership_round(const dealer_secret& secret,
                                     const std::vector<member_share>& shares,
                                     std::uint64_t round_seed) {
    return run_membership_round(secret, shares, round_seed, {}, nullptr, 0);
}

namespace detail {

inline json value_pairs(const std::map<std::size_t, big_count>& m) {
    json out = json::array();
    for (const auto& [row, v] : m)
        out.push_back(json::array({row, to_decimal(v)}));
    return out;
}

inline std::map<std::size_t, big_count> parse_value_pairs(const json& j) {
    std::map<std::size_t, big_count> out;
    for (const auto& entry : j)
        out[entry.at(0).get<std::size_t>()] = from_decimal(entry.at(1).get<std::string>());
    return out;
}

} // namespace detail

inline void log_membership_round(transcript& log, const round_record& rec) {
    log.append("joint", "base_set",
               json{{"round", rec.round_index}, {"base", rec.star.config_string()}});
    log.append("dealer", "dealer_values",
               json{{"round", rec.round_index},
                    {"complements", detail::value_pairs(rec.complement_values)},
                    {"withheld", detail::value_pairs(rec.withheld_values)}});
    for (std::size_t m = 0; m < rec.responses.size(); ++m)
        log.append("member:" + std::to_string(m), "response",
                   json{{"round", rec.round_index},
                        {"member", m},
                        {"values", detail::value_pairs(rec.responses[m])}});
    log.append("dealer", "target",
               json{{"round", rec.round_index}, {"value", to_decimal(rec.target)}});
    log.append("dealer", "round_verdict",
               json{{"round", rec.round_index},
                    {"combined", to_decimal(rec.combined)},
                    {"pass", rec.pass}});
}

struct membership_outcome {
    transcript log;
    bool accepted = false;
    std::set<std::size_t> cheaters;
    std::vector<round_record> rounds;
    dealer_secret secret;            // retained for audits; never published
    std::vector<member_share> shares;
};

/* Members whose reported values differ from the dealer's recomputation of
 * their own shares, across all rounds of a rejected session. */
inline std::set<std::size_t> identify_cheaters(const transcript& t, const dealer_secret& secret) {
    const transcript_message* verdict = t.find_first("session_verdict");
    if (verdict == nullptr || verdict->payload.at("accepted").get<bool>())
        throw not_rejected("cheater identification needs a rejected session");

    std::set<std::size_t> cheaters;
    const std::uint64_t limit = std::max(secret.params.n1, secret.params.n2);
    for (const transcript_message* bs : t.all_of("base_set")) {
        const std::size_t round = bs->payload.at("round").get<std::size_t>();
        const base_set star = base_set::parse(bs->payload.at("base").get<std::string>());
        const std::vector<big_count> table = count_table_bounded(star, secret.params.alpha, limit);

        std::vector<std::map<std::size_t, big_count>> reported(secret.assignment.size());
        for (const transcript_message* resp : t.all_of("response")) {
            if (resp->payload.at("round").get<std::size_t>() != round)
                continue;
            const std::size_t member = resp->payload.at("member").get<std::size_t>();
            if (member < reported.size())
                reported[member] = detail::parse_value_pairs(resp->payload.at("values"));
        }
        for (std::size_t m = 0; m < secret.assignment.size(); ++m) {
            for (const std::size_t row : secret.assignment[m]) {
                const big_count truth =
                    args_value(secret.distributed.at(row).secret_args, table);
                const auto it = reported[m].find(row);
                if (it == reported[m].end() || it->second != truth)
                    cheaters.insert(m);
            }
        }
    }
    return cheaters;
}

/* Recompute the verdict from public data alone. */
inline bool replay_membership_verdict(const transcript& t) {
    bool accepted = true;
    for (const transcript_message* dv : t.all_of("dealer_values")) {
        const std::size_t round = dv->payload.at("round").get<std::size_t>();
        const auto complements = detail::parse_value_pairs(dv->payload.at("complements"));
        const auto withheld = detail::parse_value_pairs(dv->payload.at("withheld"));

        std::map<std::size_t, big_count> claims;
        for (const transcript_message* resp : t.all_of("response")) {
            if (resp->payload.at("round").get<std::size_t>() != round)
                continue;
            for (const auto& [row, v] : detail::parse_value_pairs(resp->payload.at("values")))
                claims.emplace(row, v);
        }
        big_count combined = 0;
        for (const auto& [row, complement] : complements) {
            const auto it = claims.find(row);
            combined += (it == claims.end() ? big_count(0) : it->second) * complement;
        }
        for (const auto& [row, value] : withheld)
            combined += value;

        big_count target = 0;
        for (const transcript_message* tm : t.all_of("target"))
            if (tm->payload.at("round").get<std::size_t>() == round)
                target = from_decimal(tm->payload.at("value").get<std::string>());
        accepted = accepted && combined == target;
    }
    return accepted;
}

/* Full session: setup, R challenge rounds, verdict, and on rejection the
 * dealer's cheater identification. */
inline membership_outcome run_membership_session(const scheme_params& p,
                                                 const std::vector<member_behavior>& behaviors = {}) {
    membership_setup_result setup = membership_setup(p);
    membership_outcome out;
    out.secret = std::move(setup.secret);
    out.shares = std::move(setup.shares);

    out.log.append("dealer", "setup_public",
                   json{{"alpha", setup.public_alpha},
                        {"parties", p.parties},
                        {"rounds", p.rounds}});

    for (std::size_t round = 0; round < p.rounds; ++round) {
        const round_record* previous = out.rounds.empty() ? nullptr : &out.rounds.back();
        round_record rec =
            run_membership_round(out.secret, out.shares, splitmix64::derive(p.rng_seed, round),
                                 behaviors, previous, round);
        log_membership_round(out.log, rec);
        out.rounds.push_back(std::move(rec));
    }

    out.accepted = true;
    for (const round_record& rec : out.rounds)
        out.accepted = out.accepted && rec.pass;
    out.log.append("dealer", "session_verdict", json{{"accepted", out.accepted}});

    if (!out.accepted) {
        out.cheaters = identify_cheaters(out.log, out.secret);
        json members = json::array();
        for (const std::size_t m : out.cheaters)
            members.push_back(m);
        out.log.append("dealer", "cheaters", json{{"members", members}});
    }
    return out;
}

} // namespace partid
