#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "partid/hash.hpp"
#include "partid/scheme.hpp"
#include "partid/transcript.hpp"

namespace partid {

/* Published at setup: the bound alpha, the number of decision-makers, and
 * the primed argument lists of the non-elected rows. The latter are
 * symbolic (functions of the base set), so the public can evaluate them on
 * each round's challenge set and run the tally arithmetic itself. */
struct ballot_public {
    std::uint64_t alpha = 1;
    std::size_t parties = 0;
    std::vector<std::vector<std::uint64_t>> u_prime_args; // one list per non-elected row
};

/* Decision-maker s holds the secret factors of two elected rows. */
struct voter_share {
    std::size_t voter = 0;
    std::array<std::size_t, 2> rows{};
    std::array<std::vector<std::uint64_t>, 2> secret_args;
};

struct commission_secret {
    scheme_params params;
    expanded_product expansion;
    std::vector<split_row> splits;      // every row, primed/complement
    std::vector<std::size_t> elected;   // E: 2r distinct row ids
    std::vector<std::size_t> remainder; // everything else, ascending
};

struct ballot_setup_result {
    commission_secret secret;
    std::vector<voter_share> shares;
    ballot_public pub;
};

/* Commission setup: split every expansion row at the safety margin, elect
 * 2r rows whose secret side keeps >= 2 factors, hand each decision-maker
 * two of them, and open the remaining rows' primed argument lists. */
inline ballot_setup_result ballot_setup(const scheme_params& p) {
    p.validate();
    ballot_setup_result result;
    result.secret.params = p;
    result.secret.expansion = expand_pair_product(p.n1, p.n2, p.alpha);

    const std::vector<term>& terms = result.secret.expansion.terms;
    result.secret.splits.resize(terms.size());
    std::vector<std::size_t> eligible;
    for (std::size_t row = 0; row < terms.size(); ++row) {
        result.secret.splits[row] = make_split(row, terms[row], p);
        if (distributable(result.secret.splits[row]))
            eligible.push_back(row);
    }
    if (eligible.size() < 2 * p.parties + 1)
        throw infeasible_distribution("need >= " + std::to_string(2 * p.parties + 1) +
                                      " rows with >= 2 safe factors, have " +
                                      std::to_string(eligible.size()));

    splitmix64 g(splitmix64::derive(p.rng_seed, 0xe1ecu));
    g.shuffle(eligible);
    result.secret.elected.assign(eligible.begin(), eligible.begin() + 2 * p.parties);

    std::set<std::size_t> elected_set(result.secret.elected.begin(),
                                      result.secret.elected.end());
    for (std::size_t row = 0; row < terms.size(); ++row)
        if (!elected_set.count(row))
            result.secret.remainder.push_back(row);

    result.pub.alpha = p.alpha.alpha;
    result.pub.parties = p.parties;
    for (const std::size_t row : result.secret.remainder)
        result.pub.u_prime_args.push_back(result.secret.splits[row].secret_args);

    result.shares.resize(p.parties);
    for (std::size_t s = 0; s < p.parties; ++s) {
        voter_share& share = result.shares[s];
        share.voter = s;
        share.rows = {result.secret.elected[s], result.secret.elected[p.parties + s]};
        share.secret_args = {result.secret.splits[share.rows[0]].secret_args,
                             result.secret.splits[share.rows[1]].secret_args};
    }
    return result;
}

/* Values the commission publishes per round: the complement of every
 * elected row, paired up per decision-maker, and the complement of every
 * non-elected row. */
struct published_values {
    std::vector<std::array<big_count, 2>> v_pairs; // per decision-maker
    std::vector<big_count> u_values;               // per remainder row
};

inline published_values publish_complements(const commission_secret& secret,
                                            std::span<const big_count> table) {
    published_values out;
    const std::size_t r = secret.params.parties;
    out.v_pairs.resize(r);
    for (std::size_t s = 0; s < r; ++s)
        out.v_pairs[s] = {
            args_value(secret.splits[secret.elected[s]].public_args, table),
            args_value(secret.splits[secret.elected[r + s]].public_args, table)};
    for (const std::size_t row : secret.remainder)
        out.u_values.push_back(args_value(secret.splits[row].public_args, table));
    return out;
}

/* V_s = v'_{i_s} * v_{i_s} + v'_{i_{r+s}} * v_{i_{r+s}} on the round's base
 * set, computed from the voter's own secret factors plus the published
 * pair. */
inline big_count compute_voter_value(const voter_share& share,
                                     const std::array<big_count, 2>& published_pair,
                                     const base_set& star, multiplicity_bound alpha) {
    std::uint64_t max_arg = 0;
    for (const auto& args : share.secret_args)
        for (const std::uint64_t a : args)
            max_arg = std::max(max_arg, a);
    const std::vector<big_count> table = count_table_bounded(star, alpha, max_arg);
    return args_value(share.secret_args[0], table) * published_pair[0] +
           args_value(share.secret_args[1], table) * published_pair[1];
}

/* Aye adds 1, nay adds 0. Other integers are deliberately representable;
 * the inspection table exists to catch them. */
inline big_count cast_vote(const big_count& voter_value, const big_count& vote) {
    return voter_value + vote;
}

/* A challenge set is usable only if no published complement vanishes and
 * every decision-maker's own computation is positive: a voter whose value
 * is zero cannot dissent anonymously. */
inline bool viable_ballot_base_set(const ballot_setup_result& setup, const base_set& candidate) {
    const commission_secret& secret = setup.secret;
    const scheme_params& p = secret.params;
    const std::vector<big_count> table =
        count_table_bounded(candidate, p.alpha, std::max(p.n1, p.n2));
    const published_values pub = publish_complements(secret, table);
    for (const auto& pair : pub.v_pairs)
        if (pair[0] == 0 || pair[1] == 0)
            return false;
    for (const big_count& u : pub.u_values)
        if (u == 0)
            return false;
    for (std::size_t s = 0; s < p.parties; ++s) {
        const big_count v_s =
            args_value(secret.splits[secret.elected[s]].secret_args, table) * pub.v_pairs[s][0] +
            args_value(secret.splits[secret.elected[p.parties + s]].secret_args, table) *
                pub.v_pairs[s][1];
        if (v_s == 0)
            return false;
    }
    return true;
}

inline base_set select_ballot_base_set(const ballot_setup_result& setup, std::uint64_t seed) {
    return sample_star(setup.secret.params, seed, [&](const base_set& candidate) {
        return viable_ballot_base_set(setup, candidate);
    });
}

struct tally_result {
    std::size_t ayes = 0;
    std::size_t nays = 0;
};

/* y = sum W_s + sum u'_k(A*) u_k(A*) - target. Everything on the right is
 * public once the W sum is revealed. */
inline tally_result tally_ballot(std::span<const big_count> announced,
                                 const ballot_public& pub,
                                 std::span<const big_count> u_values, const base_set& star,
                                 const big_count& target) {
    if (announced.size() != pub.parties || u_values.size() != pub.u_prime_args.size())
        throw bad_params("tally inputs do not match the published setup");
    std::uint64_t max_arg = 0;
    for (const auto& args : pub.u_prime_args)
        for (const std::uint64_t a : args)
            max_arg = std::max(max_arg, a);
    const std::vector<big_count> table =
        count_table_bounded(star, multiplicity_bound{pub.alpha}, max_arg);

    big_count y = -target;
    for (const big_count& w : announced)
        y += w;
    for (std::size_t k = 0; k < pub.u_prime_args.size(); ++k)
        y += args_value(pub.u_prime_args[k], table) * u_values[k];

    if (y < 0 || y > big_count(static_cast<unsigned long>(pub.parties)))
        throw tally_out_of_range("tally " + to_decimal(y) + " outside [0, " +
                                 std::to_string(pub.parties) + "]");
    tally_result res;
    res.ayes = static_cast<std::size_t>(y.get_ui());
    res.nays = pub.parties - res.ayes;
    return res;
}

inline constexpr std::size_t default_fair_table_ceiling = 24;

/* All 2^r hashes a fair vote could produce. */
inline std::set<std::string> publish_fair_vote_table(std::span<const big_count> voter_values,
                                                     const hash_spec& h,
                                                     std::size_t ceiling = default_fair_table_ceiling) {
    const std::size_t r = voter_values.size();
    if (r > ceiling)
        throw table_too_large("2^" + std::to_string(r) + " fair-vote cases exceed ceiling 2^" +
                              std::to_string(ceiling));
    std::set<std::string> table;
    std::vector<big_count> candidate(voter_values.begin(), voter_values.end());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
        for (std::size_t s = 0; s < r; ++s)
            candidate[s] = voter_values[s] + ((mask >> s) & 1);
        table.insert(h.digest_hex(candidate));
    }
    return table;
}

enum class vote_check { fair, fraudulent };

inline vote_check check_vote_hash(std::span<const big_count> announced,
                                  const std::set<std::string>& table, const hash_spec& h) {
    return table.count(h.digest_hex(announced)) ? vote_check::fair : vote_check::fraudulent;
}

struct ballot_item_outcome {
    std::size_t item = 0;
    base_set star = base_set::naturals();
    published_values published;
    std::vector<big_count> voter_values; // V_s
    std::vector<big_count> announced;    // W_s, shared among decision-makers only
    big_count vote_sum;
    std::set<std::string> fair_table;
    std::string vote_hash;
    bool fair = false;
    big_count target;
    bool out_of_range = false;
    std::optional<tally_result> tally;
};

struct ballot_outcome {
    transcript log;
    ballot_setup_result setup;
    std::vector<ballot_item_outcome> items;
};

namespace detail {

inline json args_lists(const std::vector<std::vector<std::uint64_t>>& lists) {
    json out = json::array();
    for (const auto& args : lists)
        out.push_back(args);
    return out;
}

} // namespace detail

/* One full secret ballot over each vote vector in items; a multi-item vote
 * reuses one setup with a fresh challenge set per item. Votes are plain
 * integers; anything outside {0,1} is fraud the inspection should catch. */
inline ballot_outcome run_ballot_session(const scheme_params& p,
                                         const std::vector<std::vector<big_count>>& items,
                                         const hash_spec& h = {}) {
    ballot_outcome out;
    out.setup = ballot_setup(p);
    const commission_secret& secret = out.setup.secret;
    const std::uint64_t limit = std::max(p.n1, p.n2);

    out.log.append("commission", "setup_public",
                   json{{"alpha", out.setup.pub.alpha},
                        {"parties", out.setup.pub.parties},
                        {"u_prime", detail::args_lists(out.setup.pub.u_prime_args)}});

    for (std::size_t item = 0; item < items.size(); ++item) {
        const std::vector<big_count>& votes = items[item];
        if (votes.size() != p.parties)
            throw bad_params("vote vector must have one entry per decision-maker");

        ballot_item_outcome rec;
        rec.item = item;
        rec.star = select_ballot_base_set(out.setup, splitmix64::derive(p.rng_seed, 0xba20 + item));
        const std::vector<big_count> table = count_table_bounded(rec.star, p.alpha, limit);
        rec.published = publish_complements(secret, table);
        rec.target = masked_pair_target(p.n1, p.n2, p.alpha, rec.star);

        out.log.append("joint", "base_set",
                       json{{"item", item}, {"base", rec.star.config_string()}});
        json v_pairs = json::array();
        for (const auto& pair : rec.published.v_pairs)
            v_pairs.push_back(json::array({to_decimal(pair[0]), to_decimal(pair[1])}));
        json u_values = json::array();
        for (const big_count& u : rec.published.u_values)
            u_values.push_back(to_decimal(u));
        out.log.append("commission", "published_pairs",
                       json{{"item", item}, {"v", v_pairs}, {"u", u_values}});

        rec.vote_sum = 0;
        for (std::size_t s = 0; s < p.parties; ++s) {
            const big_count v_s = compute_voter_value(out.setup.shares[s],
                                                      rec.published.v_pairs[s], rec.star, p.alpha);
            rec.voter_values.push_back(v_s);
            rec.announced.push_back(cast_vote(v_s, votes[s]));
            rec.vote_sum += rec.announced.back();
        }
        out.log.append("voters", "vote_sum", json{{"item", item}, {"sum", to_decimal(rec.vote_sum)}});

        rec.fair_table = publish_fair_vote_table(rec.voter_values, h);
        json hashes = json::array();
        for (const std::string& digest : rec.fair_table)
            hashes.push_back(digest);
        out.log.append("commission", "fair_table", json{{"item", item}, {"hashes", hashes}});

        rec.vote_hash = h.digest_hex(rec.announced);
        rec.fair = check_vote_hash(rec.announced, rec.fair_table, h) == vote_check::fair;
        out.log.append("voters", "vote_hash", json{{"item", item}, {"hash", rec.vote_hash}});

        json tally_payload{{"item", item}, {"target", to_decimal(rec.target)}, {"fair", rec.fair}};
        try {
            rec.tally = tally_ballot(rec.announced, out.setup.pub, rec.published.u_values,
                                     rec.star, rec.target);
            tally_payload["ayes"] = rec.tally->ayes;
            tally_payload["nays"] = rec.tally->nays;
        } catch (const tally_out_of_range&) {
            rec.out_of_range = true;
            tally_payload["out_of_range"] = true;
        }
        out.log.append("public", "tally", tally_payload);
        out.items.push_back(std::move(rec));
    }
    return out;
}

} // namespace partid
