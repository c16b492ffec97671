#include <catch2/catch_amalgamated.hpp>

#include <partid/membership.hpp>

#include <algorithm>

using namespace partid;

namespace {

scheme_params test_params(std::uint64_t seed = 1) {
    scheme_params p;
    p.n1 = 21;
    p.n2 = 25;
    p.alpha = multiplicity_bound{2};
    p.parties = 3;
    p.delta = 2;
    p.rounds = 3;
    p.rng_seed = seed;
    return p;
}

} // namespace

TEST_CASE("setup rejects bad parameters", "[membership]") {
    scheme_params p = test_params();
    p.n1 = 3;
    p.alpha = multiplicity_bound{3}; // n1 < alpha+1
    CHECK_THROWS_AS(membership_setup(p), bad_params);

    scheme_params q = test_params();
    q.n1 = 20; // gcd(20, 2) = 2
    CHECK_THROWS_AS(membership_setup(q), bad_params);

    scheme_params s = test_params();
    s.parties = 1;
    CHECK_THROWS_AS(membership_setup(s), bad_params);
}

TEST_CASE("setup is infeasible when too few rows survive the margin", "[membership]") {
    scheme_params p = test_params();
    p.delta = 40; // no argument can be 41 away from 1, 21 and 25 at once
    CHECK_THROWS_AS(membership_setup(p), infeasible_distribution);
}

TEST_CASE("setup deals disjoint non-empty shares and withholds the rest", "[membership]") {
    const scheme_params p = test_params();
    const membership_setup_result setup = membership_setup(p);

    REQUIRE(setup.shares.size() == 3);
    std::set<std::size_t> seen;
    std::size_t distributed = 0;
    for (const member_share& share : setup.shares) {
        CHECK(!share.rows.empty());
        for (const split_row& row : share.rows) {
            CHECK(seen.insert(row.row).second); // disjoint
            CHECK(row.secret_args.size() >= 2);
            for (const std::uint64_t a : row.secret_args) {
                CHECK(a >= 1 + p.delta);
                CHECK((a > p.n1 ? a - p.n1 : p.n1 - a) >= p.delta);
                CHECK((a > p.n2 ? a - p.n2 : p.n2 - a) >= p.delta);
            }
            // the split covers the whole row
            std::vector<std::uint64_t> merged = row.secret_args;
            merged.insert(merged.end(), row.public_args.begin(), row.public_args.end());
            std::sort(merged.begin(), merged.end());
            CHECK(merged == setup.secret.expansion.terms[row.row].args);
            ++distributed;
        }
    }
    CHECK(distributed + setup.secret.withheld.size() == setup.secret.expansion.terms.size());
    for (const std::size_t row : setup.secret.withheld)
        CHECK(!seen.count(row));

    // about half of the eligible rows go out
    std::size_t eligible = 0;
    for (std::size_t row = 0; row < setup.secret.expansion.terms.size(); ++row)
        if (distributable(make_split(row, setup.secret.expansion.terms[row], p)))
            ++eligible;
    CHECK(distributed == std::max<std::size_t>(p.parties, eligible / 2));

    CHECK(setup.public_alpha == 2);
}

TEST_CASE("honest rounds pass and cheated values flip the verdict", "[membership]") {
    const scheme_params p = test_params(5);
    const membership_setup_result setup = membership_setup(p);

    round_record rec = membership_round(setup.secret, setup.shares, 77);
    CHECK(rec.pass);
    CHECK(rec.combined == rec.target);

    // resampling rule: every secret product and every complement is nonzero
    for (const auto& response : rec.responses)
        for (const auto& [row, value] : response)
            CHECK(value != 0);
    for (const auto& [row, value] : rec.complement_values)
        CHECK(value != 0);

    // a single response off by one flips the round
    std::vector<member_behavior> behaviors(3);
    behaviors[2].strategy = member_behavior::kind::constant_offset;
    behaviors[2].offset = 1;
    const round_record bad =
        run_membership_round(setup.secret, setup.shares, 77, behaviors, nullptr, 0);
    CHECK_FALSE(bad.pass);
}

TEST_CASE("swapped shares still pass: the combination is symmetric", "[membership]") {
    const scheme_params p = test_params(6);
    membership_setup_result setup = membership_setup(p);
    std::swap(setup.shares[0].rows, setup.shares[1].rows);
    const round_record rec = membership_round(setup.secret, setup.shares, 31);
    CHECK(rec.pass); // a known limitation, not a defect in the check
}

TEST_CASE("honest sessions accept; transcripts replay and stay clean", "[membership]") {
    const scheme_params p = test_params(2);
    const membership_outcome outcome = run_membership_session(p);
    CHECK(outcome.accepted);
    CHECK(outcome.rounds.size() == p.rounds);
    CHECK(replay_membership_verdict(outcome.log));

    // determinism: identical params and seed give identical transcripts
    const membership_outcome again = run_membership_session(p);
    CHECK(outcome.log.to_jsonl() == again.log.to_jsonl());

    // JSONL round trip
    const transcript parsed = transcript::from_jsonl(outcome.log.to_jsonl());
    CHECK(parsed.to_jsonl() == outcome.log.to_jsonl());
    CHECK(replay_membership_verdict(parsed));

    // secrecy hygiene: neither secret number nor any argument list is ever
    // published; only alpha, row ids and evaluated values appear
    for (const transcript_message& m : outcome.log.messages()) {
        CHECK(!m.payload.contains("n1"));
        CHECK(!m.payload.contains("n2"));
        CHECK(!m.payload.contains("args"));
        CHECK(!m.payload.contains("u_prime"));
    }

    CHECK_THROWS_AS(identify_cheaters(outcome.log, outcome.secret), not_rejected);
}

TEST_CASE("each cheater strategy is rejected and identified", "[membership]") {
    const member_behavior::kind strategies[] = {member_behavior::kind::constant_offset,
                                                member_behavior::kind::random_value,
                                                member_behavior::kind::replay_previous};
    for (const auto strategy : strategies) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const scheme_params p = test_params(100 + seed);
            std::vector<member_behavior> behaviors(3);
            behaviors[1].strategy = strategy;
            const membership_outcome outcome = run_membership_session(p, behaviors);
            INFO("strategy=" << static_cast<int>(strategy) << " seed=" << seed);
            CHECK_FALSE(outcome.accepted);
            CHECK(outcome.cheaters == std::set<std::size_t>{1});
            CHECK_FALSE(replay_membership_verdict(outcome.log));
        }
    }
}

TEST_CASE("two cheaters are both identified", "[membership]") {
    const scheme_params p = test_params(9);
    std::vector<member_behavior> behaviors(3);
    behaviors[0].strategy = member_behavior::kind::constant_offset;
    behaviors[0].offset = 4;
    behaviors[2].strategy = member_behavior::kind::random_value;
    const membership_outcome outcome = run_membership_session(p, behaviors);
    CHECK_FALSE(outcome.accepted);
    CHECK(outcome.cheaters == std::set<std::size_t>{0, 2});
}

TEST_CASE("a transcript-only observer cannot answer the next round", "[membership]") {
    // an eavesdropper is a party with no share: it can at best replay
    // published values, and the first fresh base set exposes it
    const scheme_params p = test_params(12);
    membership_setup_result setup = membership_setup(p);

    // strip member 0's share: its rows go unanswered
    setup.shares[0].rows.clear();
    const round_record rec = membership_round(setup.secret, setup.shares, 55);
    CHECK_FALSE(rec.pass);

    // across a whole session, every round fails and the verdict is reject
    bool all_rounds_pass = true;
    for (std::size_t round = 0; round < p.rounds; ++round) {
        const round_record r = run_membership_round(
            setup.secret, setup.shares, splitmix64::derive(p.rng_seed, round), {}, nullptr, round);
        all_rounds_pass = all_rounds_pass && r.pass;
    }
    CHECK_FALSE(all_rounds_pass);
}
