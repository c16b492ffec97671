#include <catch2/catch_amalgamated.hpp>

#include <partid/ballot.hpp>

using namespace partid;

namespace {

scheme_params test_params(std::size_t r = 3, std::uint64_t seed = 1) {
    scheme_params p;
    p.n1 = 21;
    p.n2 = 25;
    p.alpha = multiplicity_bound{2};
    p.parties = r;
    p.delta = 2;
    p.rounds = 1;
    p.rng_seed = seed;
    return p;
}

} // namespace

TEST_CASE("ballot setup elects 2r rows and shares two per voter", "[ballot]") {
    const scheme_params p = test_params(3);
    const ballot_setup_result setup = ballot_setup(p);

    CHECK(setup.secret.elected.size() == 6);
    std::set<std::size_t> elected(setup.secret.elected.begin(), setup.secret.elected.end());
    CHECK(elected.size() == 6); // distinct
    CHECK(setup.secret.elected.size() + setup.secret.remainder.size() ==
          setup.secret.expansion.terms.size());
    for (const std::size_t row : setup.secret.remainder)
        CHECK(!elected.count(row));

    REQUIRE(setup.shares.size() == 3);
    for (const voter_share& share : setup.shares) {
        CHECK(share.rows[0] == setup.secret.elected[share.voter]);
        CHECK(share.rows[1] == setup.secret.elected[3 + share.voter]);
        CHECK(share.secret_args[0].size() >= 2);
        CHECK(share.secret_args[1].size() >= 2);
    }

    // the public gets symbolic argument lists for every non-elected row
    CHECK(setup.pub.u_prime_args.size() == setup.secret.remainder.size());
    CHECK(setup.pub.parties == 3);
}

TEST_CASE("ballot setup errors", "[ballot]") {
    scheme_params gcd_bad = test_params();
    gcd_bad.n2 = 26; // gcd(26, 2) = 2
    CHECK_THROWS_AS(ballot_setup(gcd_bad), bad_params);

    scheme_params too_many = test_params();
    too_many.parties = 120; // pigeonhole: not enough eligible rows for 2r+1
    CHECK_THROWS_AS(ballot_setup(too_many), infeasible_distribution);
}

TEST_CASE("base set selection keeps every published value positive", "[ballot]") {
    const scheme_params p = test_params(3, 4);
    const ballot_setup_result setup = ballot_setup(p);
    const base_set star = select_ballot_base_set(setup, 99);

    const auto table = count_table_bounded(star, p.alpha, std::max(p.n1, p.n2));
    const published_values pub = publish_complements(setup.secret, table);
    for (const auto& pair : pub.v_pairs) {
        CHECK(pair[0] > 0);
        CHECK(pair[1] > 0);
    }
    for (const big_count& u : pub.u_values)
        CHECK(u > 0);
    for (std::size_t s = 0; s < p.parties; ++s)
        CHECK(compute_voter_value(setup.shares[s], pub.v_pairs[s], star, p.alpha) > 0);
}

TEST_CASE("base set selection gives up on hopeless parameters", "[ballot]") {
    scheme_params p = test_params(3, 4);
    p.star_max_element = 2; // two-element sets cannot cover the arguments
    const ballot_setup_result setup = ballot_setup(p);
    CHECK_THROWS_AS(select_ballot_base_set(setup, 1), no_viable_base_set);
}

TEST_CASE("degenerate candidate sets are not viable", "[ballot]") {
    const ballot_setup_result setup = ballot_setup(test_params(3, 4));
    // the empty set makes every count vanish for n >= 1
    CHECK_FALSE(viable_ballot_base_set(setup, base_set::explicit_set({})));
    CHECK_FALSE(viable_ballot_base_set(setup, base_set::explicit_set({1})));
    CHECK(viable_ballot_base_set(setup, select_ballot_base_set(setup, 1)));
}

TEST_CASE("a zeroed share yields a zero voter value", "[ballot]") {
    // corrupt input: secret factors that vanish on the challenge set; the
    // selection predicate is what keeps such sets out of real rounds
    voter_share share;
    share.secret_args = {std::vector<std::uint64_t>{2}, std::vector<std::uint64_t>{2}};
    const big_count v = compute_voter_value(share, {big_count(1), big_count(1)},
                                            base_set::squares(), multiplicity_bound{1});
    CHECK(v == 0);
}

TEST_CASE("voter values split the target exactly", "[ballot][property]") {
    const scheme_params p = test_params(4, 8);
    const ballot_setup_result setup = ballot_setup(p);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const base_set star = select_ballot_base_set(setup, seed);
        const auto table = count_table_bounded(star, p.alpha, std::max(p.n1, p.n2));
        const published_values pub = publish_complements(setup.secret, table);

        big_count total = 0;
        for (std::size_t s = 0; s < p.parties; ++s) {
            const big_count v_s = compute_voter_value(setup.shares[s], pub.v_pairs[s], star, p.alpha);
            // commission recomputation agrees with the voter's own value
            const big_count commission =
                args_value(setup.secret.splits[setup.shares[s].rows[0]].secret_args, table) * pub.v_pairs[s][0] +
                args_value(setup.secret.splits[setup.shares[s].rows[1]].secret_args, table) * pub.v_pairs[s][1];
            CHECK(v_s == commission);
            total += v_s;
        }
        for (std::size_t k = 0; k < setup.secret.remainder.size(); ++k)
            total += args_value(setup.pub.u_prime_args[k], table) * pub.u_values[k];
        CHECK(total == masked_pair_target(p.n1, p.n2, p.alpha, star));
    }
}

TEST_CASE("cast_vote adds the vote verbatim", "[ballot]") {
    CHECK(cast_vote(7, 1) == 8);
    CHECK(cast_vote(7, 0) == 7);
    CHECK(cast_vote(7, 2) == 9);   // fraud, for the inspection to catch
    CHECK(cast_vote(7, -1) == 6);
}

TEST_CASE("honest tallies count the ayes exactly", "[ballot]") {
    const scheme_params p = test_params(3, 2);
    const ballot_outcome outcome = run_ballot_session(p, {{1, 0, 1}});
    REQUIRE(outcome.items.size() == 1);
    const ballot_item_outcome& item = outcome.items[0];
    REQUIRE(item.tally.has_value());
    CHECK(item.tally->ayes == 2);
    CHECK(item.tally->nays == 1);
    CHECK(item.fair);

    const ballot_outcome all_nay = run_ballot_session(p, {{0, 0, 0}});
    REQUIRE(all_nay.items[0].tally.has_value());
    CHECK(all_nay.items[0].tally->ayes == 0);
    CHECK(all_nay.items[0].tally->nays == 3);
}

TEST_CASE("multi-item sessions share one setup", "[ballot]") {
    const scheme_params p = test_params(3, 3);
    const ballot_outcome outcome = run_ballot_session(p, {{1, 1, 1}, {0, 1, 0}});
    REQUIRE(outcome.items.size() == 2);
    CHECK(outcome.items[0].tally->ayes == 3);
    CHECK(outcome.items[1].tally->ayes == 1);
    // fresh challenge set per item
    CHECK(!(outcome.items[0].star == outcome.items[1].star));
}

TEST_CASE("vote vector size must match the decision-makers", "[ballot]") {
    CHECK_THROWS_AS(run_ballot_session(test_params(3), {{1, 0}}), bad_params);
}

TEST_CASE("fair vote table covers exactly the honest vectors", "[ballot]") {
    const hash_spec h;
    const std::vector<big_count> values{5, 9, 12};
    const auto table = publish_fair_vote_table(values, h);
    CHECK(table.size() <= 8);

    for (std::uint64_t mask = 0; mask < 8; ++mask) {
        std::vector<big_count> w = values;
        for (std::size_t s = 0; s < 3; ++s)
            w[s] += (mask >> s) & 1;
        CHECK(check_vote_hash(w, table, h) == vote_check::fair);
    }
    for (const big_count& fraud : {big_count(2), big_count(-1), big_count(7)}) {
        std::vector<big_count> w = values;
        w[1] += fraud;
        CHECK(check_vote_hash(w, table, h) == vote_check::fraudulent);
    }

    // degenerate and oversized tables
    CHECK(publish_fair_vote_table(std::vector<big_count>{}, h).size() == 1);
    CHECK_THROWS_AS(publish_fair_vote_table(std::vector<big_count>(25, 1), h), table_too_large);
}

TEST_CASE("tally is range-checked", "[ballot]") {
    const scheme_params p = test_params(3, 6);
    const ballot_outcome outcome = run_ballot_session(p, {{1, 0, 1}});
    const ballot_item_outcome& item = outcome.items[0];

    // redo the public arithmetic with a corrupted announcement
    std::vector<big_count> w = item.announced;
    w[0] += 9; // pushes y to 11 > r
    CHECK_THROWS_AS(
        tally_ballot(w, outcome.setup.pub, item.published.u_values, item.star, item.target),
        tally_out_of_range);

    std::vector<big_count> w2 = item.announced;
    w2[0] -= 3; // pushes y to -1
    CHECK_THROWS_AS(
        tally_ballot(w2, outcome.setup.pub, item.published.u_values, item.star, item.target),
        tally_out_of_range);
}

TEST_CASE("in-range fraud passes the tally but fails inspection", "[ballot]") {
    const scheme_params p = test_params(3, 7);
    // votes (2, 0, 1): the 2 is fraud that keeps y inside [0, r]
    const ballot_outcome outcome = run_ballot_session(p, {{2, 0, 1}});
    const ballot_item_outcome& item = outcome.items[0];
    REQUIRE(item.tally.has_value());
    CHECK(item.tally->ayes == 3); // wrong, and indistinguishable from honest 1,1,1 by sum
    CHECK_FALSE(item.fair);      // but the hash table catches it
}

TEST_CASE("ballot transcript is deterministic and anonymity-clean", "[ballot]") {
    const scheme_params p = test_params(3, 11);
    const ballot_outcome a = run_ballot_session(p, {{1, 0, 1}});
    const ballot_outcome b = run_ballot_session(p, {{1, 0, 1}});
    CHECK(a.log.to_jsonl() == b.log.to_jsonl());

    // swapping two voters' ballots moves nothing but the vote hash: the
    // published sums, tables and tally stay identical
    const ballot_outcome c = run_ballot_session(p, {{0, 1, 1}});
    REQUIRE(a.log.size() == c.log.size());
    for (std::size_t i = 0; i < a.log.size(); ++i) {
        const transcript_message& ma = a.log.messages()[i];
        const transcript_message& mc = c.log.messages()[i];
        if (ma.kind == "vote_hash")
            continue;
        CHECK(ma.to_json().dump() == mc.to_json().dump());
    }

    // per-voter W values appear nowhere in the public log
    for (const transcript_message& m : a.log.messages()) {
        CHECK(m.kind != "announced");
        if (m.kind == "vote_sum")
            CHECK(m.payload.at("sum").get<std::string>() ==
                  to_decimal(a.items[0].vote_sum));
    }
    const std::string jsonl = a.log.to_jsonl();
    for (const big_count& w : a.items[0].announced)
        CHECK(jsonl.find("\"" + to_decimal(w) + "\"") == std::string::npos);
}
