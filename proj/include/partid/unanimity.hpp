#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "partid/ballot.hpp"

namespace partid {

inline constexpr std::uint64_t default_perturb_window = std::uint64_t{1} << 16;

/* One unanimity round. The public sees the challenge set, the non-elected
 * complement values, the decision-makers' summed result and the target;
 * it never sees how many decision-makers there are. The per-voter values,
 * and the objectors' deltas, stay in this record for audits and proofs. */
struct unanimity_round_result {
    std::size_t round_index = 0;
    base_set star = base_set::naturals();
    published_values published;          // v_pairs go to voters privately
    std::vector<big_count> voter_values; // true V_s
    std::vector<big_count> shared;       // W_s as circulated among voters
    std::map<std::size_t, big_count> deltas; // objector -> perturbation (debug channel)
    big_count share_sum;
    big_count combined;
    big_count target;
    bool pass = false;
};

/* An objector replaces their value with a uniformly drawn different one
 * from [V_s - window, V_s + window]. Forced deltas exist so that tests can
 * build the cancellation corner deterministically. */
inline unanimity_round_result run_unanimity_round(const ballot_setup_result& setup,
                                                  const std::set<std::size_t>& objectors,
                                                  std::uint64_t round_seed,
                                                  std::size_t round_index = 0,
                                                  const std::map<std::size_t, big_count>& forced_deltas = {},
                                                  std::uint64_t window = default_perturb_window) {
    const commission_secret& secret = setup.secret;
    const scheme_params& p = secret.params;
    const std::uint64_t limit = std::max(p.n1, p.n2);

    unanimity_round_result rec;
    rec.round_index = round_index;
    rec.star = select_ballot_base_set(setup, round_seed);
    const std::vector<big_count> table = count_table_bounded(rec.star, p.alpha, limit);
    rec.published = publish_complements(secret, table);
    rec.target = masked_pair_target(p.n1, p.n2, p.alpha, rec.star);

    rec.share_sum = 0;
    for (std::size_t s = 0; s < p.parties; ++s) {
        const big_count v_s = compute_voter_value(setup.shares[s], rec.published.v_pairs[s],
                                                  rec.star, p.alpha);
        rec.voter_values.push_back(v_s);
        big_count w_s = v_s;
        if (objectors.count(s)) {
            big_count delta;
            const auto forced = forced_deltas.find(s);
            if (forced != forced_deltas.end()) {
                delta = forced->second;
                if (delta == 0)
                    throw bad_params("an objection must change the value");
            } else {
                splitmix64 g(splitmix64::derive(round_seed, 0xde17a + s));
                const std::uint64_t draw = g.in_range(1, 2 * window);
                delta = draw <= window ? big_count(draw) : -big_count(draw - window);
            }
            rec.deltas[s] = delta;
            w_s += delta;
        }
        rec.shared.push_back(w_s);
        rec.share_sum += w_s;
    }

    rec.combined = rec.share_sum;
    for (std::size_t k = 0; k < secret.remainder.size(); ++k)
        rec.combined += args_value(setup.pub.u_prime_args[k], table) * rec.published.u_values[k];
    rec.pass = rec.combined == rec.target;
    return rec;
}

struct unanimity_outcome {
    transcript log;
    bool unanimous = false;
    std::vector<unanimity_round_result> rounds;
    ballot_setup_result setup;
};

inline void log_unanimity_round(transcript& log, const unanimity_round_result& rec) {
    log.append("joint", "base_set",
               json{{"round", rec.round_index}, {"base", rec.star.config_string()}});
    json u_values = json::array();
    for (const big_count& u : rec.published.u_values)
        u_values.push_back(to_decimal(u));
    log.append("commission", "published_pairs", json{{"round", rec.round_index}, {"u", u_values}});
    log.append("voters", "perturbed_share_sum",
               json{{"round", rec.round_index}, {"sum", to_decimal(rec.share_sum)}});
    log.append("public", "round_verdict",
               json{{"round", rec.round_index},
                    {"target", to_decimal(rec.target)},
                    {"combined", to_decimal(rec.combined)},
                    {"pass", rec.pass}});
}

/* Full session. The public transcript reveals neither the number of
 * decision-makers nor how many objected; insiders necessarily see both. */
inline unanimity_outcome run_unanimity_session(const scheme_params& p,
                                               const std::set<std::size_t>& objectors,
                                               std::uint64_t window = default_perturb_window) {
    unanimity_outcome out;
    out.setup = ballot_setup(p);
    out.log.append("commission", "setup_public",
                   json{{"alpha", out.setup.pub.alpha},
                        {"u_prime", detail::args_lists(out.setup.pub.u_prime_args)}});
    for (std::size_t round = 0; round < p.rounds; ++round) {
        unanimity_round_result rec = run_unanimity_round(
            out.setup, objectors, splitmix64::derive(p.rng_seed, 0xaa00 + round), round, {}, window);
        log_unanimity_round(out.log, rec);
        out.rounds.push_back(std::move(rec));
    }
    out.unanimous = true;
    for (const unanimity_round_result& rec : out.rounds)
        out.unanimous = out.unanimous && rec.pass;
    out.log.append("public", "unanimity_verdict", json{{"unanimous", out.unanimous}});
    return out;
}

/* What objectors publish if they later choose to prove their disagreement:
 * their true pre-perturbation values plus every shared value they observed
 * that round. The public can then redo the round's arithmetic both ways. */
struct disagreement_proof {
    std::size_t round = 0;
    std::map<std::size_t, big_count> originals; // objector -> true value
    std::vector<big_count> shared;              // all W_t as observed

    json to_json() const {
        json orig = json::object();
        for (const auto& [s, v] : originals)
            orig[std::to_string(s)] = to_decimal(v);
        json sh = json::array();
        for (const big_count& w : shared)
            sh.push_back(to_decimal(w));
        return json{{"round", round}, {"originals", orig}, {"shared", sh}};
    }

    static disagreement_proof from_json(const json& j) {
        disagreement_proof p;
        p.round = j.at("round").get<std::size_t>();
        for (const auto& [key, value] : j.at("originals").items())
            p.originals[std::stoull(key)] = from_decimal(value.get<std::string>());
        for (const auto& w : j.at("shared"))
            p.shared.push_back(from_decimal(w.get<std::string>()));
        return p;
    }
};

/* Objectors outing themselves append their proof to the bulletin board.
 * This necessarily reveals the shared values of that round; it happens only
 * on the objectors' initiative, after the session. */
inline const transcript_message& publish_disagreement_proof(transcript& log,
                                                            const disagreement_proof& proof) {
    return log.append("objectors", "disagreement_proof", proof.to_json());
}

inline disagreement_proof prove_disagreement(const unanimity_outcome& outcome,
                                             std::size_t round) {
    if (round >= outcome.rounds.size())
        throw bad_params("no such round");
    const unanimity_round_result& rec = outcome.rounds[round];
    disagreement_proof proof;
    proof.round = round;
    proof.shared = rec.shared;
    for (const auto& [s, delta] : rec.deltas)
        proof.originals[s] = rec.voter_values[s];
    return proof;
}

/* True iff (a) the claimed shared values reproduce the published sum for
 * that round, and (b) substituting the objectors' original values back in
 * reproduces the published target. */
inline bool verify_disagreement_proof(const disagreement_proof& proof, const transcript& t) {
    const transcript_message* setup = t.find_first("setup_public");
    if (setup == nullptr)
        return false;
    const multiplicity_bound alpha{setup->payload.at("alpha").get<std::uint64_t>()};
    std::vector<std::vector<std::uint64_t>> u_prime;
    for (const auto& args : setup->payload.at("u_prime"))
        u_prime.push_back(args.get<std::vector<std::uint64_t>>());

    const base_set* star = nullptr;
    base_set parsed = base_set::naturals();
    std::vector<big_count> u_values;
    big_count published_sum = 0, target = 0;
    bool found_round = false;
    for (const transcript_message& m : t.messages()) {
        if (!m.payload.contains("round") || m.payload.at("round").get<std::size_t>() != proof.round)
            continue;
        if (m.kind == "base_set") {
            parsed = base_set::parse(m.payload.at("base").get<std::string>());
            star = &parsed;
        } else if (m.kind == "published_pairs") {
            for (const auto& u : m.payload.at("u"))
                u_values.push_back(from_decimal(u.get<std::string>()));
        } else if (m.kind == "perturbed_share_sum") {
            published_sum = from_decimal(m.payload.at("sum").get<std::string>());
        } else if (m.kind == "round_verdict") {
            target = from_decimal(m.payload.at("target").get<std::string>());
            found_round = true;
        }
    }
    if (!found_round || star == nullptr || u_values.size() != u_prime.size())
        return false;

    big_count claimed_sum = 0;
    for (const big_count& w : proof.shared)
        claimed_sum += w;
    if (claimed_sum != published_sum)
        return false;

    big_count restored = 0;
    for (std::size_t s = 0; s < proof.shared.size(); ++s) {
        const auto orig = proof.originals.find(s);
        restored += orig != proof.originals.end() ? orig->second : proof.shared[s];
    }
    for (const auto& [s, v] : proof.originals)
        if (s >= proof.shared.size())
            return false;

    std::uint64_t max_arg = 0;
    for (const auto& args : u_prime)
        for (const std::uint64_t a : args)
            max_arg = std::max(max_arg, a);
    const std::vector<big_count> table = count_table_bounded(*star, alpha, max_arg);
    for (std::size_t k = 0; k < u_prime.size(); ++k)
        restored += args_value(u_prime[k], table) * u_values[k];
    return restored == target;
}

} // namespace partid
