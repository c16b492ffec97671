// Command-line front end: exact partition counting, identity checks,
// protocol simulations and the brute-force experiment, all seeded and
// reproducible. Transcripts go to stdout (and --out DIR when given).

#include <CLI11.hpp>
#include <partid/partid.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace partid;

struct common_flags {
    std::string base = "primes";
    std::uint64_t n = 10;
    std::uint64_t alpha = 1;
};

std::vector<big_count> parse_votes(const std::string& csv) {
    std::vector<big_count> votes;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty())
            votes.push_back(from_decimal(tok));
    return votes;
}

void write_artifacts(const std::string& out_dir, const transcript& log) {
    if (out_dir.empty())
        return;
    std::filesystem::create_directories(out_dir);
    std::ofstream f(out_dir + "/transcript.jsonl", std::ios::binary);
    f << log.to_jsonl();
}

void emit_transcript(const transcript& log, const std::string& out_dir) {
    std::cout << log.to_jsonl();
    write_artifacts(out_dir, log);
}

int run_golden() {
    // The n=10, alpha=1 fixture: three classic part sets, the unrestricted
    // count, the eight bounded counts feeding the identity, and the
    // identity check itself.
    struct fixture {
        const char* name;
        base_set set;
        unsigned p10;
        unsigned table[8]; // p_1 at 1,2,3,4,5,6,8,10
    };
    const fixture fixtures[] = {
        {"primes", base_set::primes(), 5, {0, 1, 1, 0, 2, 0, 1, 2}},
        {"squares", base_set::squares(), 4, {1, 0, 0, 1, 1, 0, 0, 1}},
        {"odds", base_set::odds(), 10, {1, 0, 1, 1, 1, 1, 2, 2}},
    };
    const std::uint64_t args[8] = {1, 2, 3, 4, 5, 6, 8, 10};
    const multiplicity_bound one{1};
    bool ok = true;
    for (const fixture& f : fixtures) {
        const big_count p10 = count_unrestricted(f.set, 10);
        std::cout << "A=" << f.name << "  p(10)=" << to_decimal(p10);
        ok = ok && p10 == f.p10;
        const std::vector<big_count> table = count_table_bounded(f.set, one, 10);
        std::cout << "  p_1:";
        for (std::size_t i = 0; i < 8; ++i) {
            std::cout << ' ' << args[i] << "->" << to_decimal(table[args[i]]);
            ok = ok && table[args[i]] == f.table[i];
        }
        const verify_report rep = verify_identity(10, one, f.set);
        std::cout << "  identity " << (rep.equal ? "OK" : "MISMATCH") << " lhs=rhs="
                  << to_decimal(rep.lhs) << '\n';
        ok = ok && rep.equal;
    }
    if (!ok)
        std::cout << "golden fixture mismatch\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact partition-identity engine and scheme simulator"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file mirroring long flags; flags win");

    // ---- count ----------------------------------------------------------
    common_flags count_flags;
    bool count_unbounded = false;
    auto* cmd_count = app.add_subcommand("count", "partition count for one n");
    cmd_count->add_option("--base", count_flags.base, "base set spec")->capture_default_str();
    cmd_count->add_option("--n", count_flags.n, "target integer")->capture_default_str();
    cmd_count->add_option("--alpha", count_flags.alpha, "multiplicity bound")->capture_default_str();
    cmd_count->add_flag("--unbounded", count_unbounded, "ignore alpha, count unrestricted")
        ->capture_default_str();

    // ---- solutions ------------------------------------------------------
    std::uint64_t sol_n = 10, sol_alpha = 1;
    auto* cmd_solutions = app.add_subcommand("solutions", "print the solution matrix");
    cmd_solutions->add_option("--n", sol_n, "target integer")->capture_default_str();
    cmd_solutions->add_option("--alpha", sol_alpha, "multiplicity bound")->capture_default_str();

    // ---- identity verify -------------------------------------------------
    common_flags id_flags;
    auto* cmd_identity = app.add_subcommand("identity", "partition identity tools");
    cmd_identity->require_subcommand(1);
    auto* cmd_verify = cmd_identity->add_subcommand("verify", "check the identity on one base set");
    cmd_verify->add_option("--base", id_flags.base, "base set spec")->capture_default_str();
    cmd_verify->add_option("--n", id_flags.n, "target integer")->capture_default_str();
    cmd_verify->add_option("--alpha", id_flags.alpha, "multiplicity bound")->capture_default_str();

    // ---- expand ----------------------------------------------------------
    std::uint64_t ex_n1 = 10, ex_n2 = 10, ex_alpha = 1;
    std::string ex_base;
    auto* cmd_expand = app.add_subcommand("expand", "expand the masked two-number product");
    cmd_expand->add_option("--n1", ex_n1, "first number")->capture_default_str();
    cmd_expand->add_option("--n2", ex_n2, "second number")->capture_default_str();
    cmd_expand->add_option("--alpha", ex_alpha, "multiplicity bound")->capture_default_str();
    cmd_expand->add_option("--base", ex_base, "evaluate the expansion on this base set");

    // ---- simulate --------------------------------------------------------
    scheme_params params;
    std::string out_dir;
    auto* cmd_simulate = app.add_subcommand("simulate", "run a protocol session");
    cmd_simulate->require_subcommand(1);

    const auto add_param_flags = [&](CLI::App* cmd) {
        cmd->add_option("--n1", params.n1, "first secret number")->capture_default_str();
        cmd->add_option("--n2", params.n2, "second secret number")->capture_default_str();
        cmd->add_option("--alpha", params.alpha.alpha, "multiplicity bound")->capture_default_str();
        cmd->add_option("--r", params.parties, "party count")->capture_default_str();
        cmd->add_option("--delta", params.delta, "safety margin")->capture_default_str();
        cmd->add_option("--rounds", params.rounds, "challenge rounds")->capture_default_str();
        cmd->add_option("--seed", params.rng_seed, "session seed")->capture_default_str();
        cmd->add_option("--out", out_dir, "directory for artifacts");
    };

    std::vector<std::string> cheat_specs;
    auto* cmd_membership = cmd_simulate->add_subcommand("membership", "multi-round membership verification");
    add_param_flags(cmd_membership);
    cmd_membership->add_option("--cheat", cheat_specs,
                               "member behavior, MEMBER:STRATEGY[:OFFSET] with strategy "
                               "offset|random|replay");

    std::string votes_csv = "1,0,1";
    std::string votes_file;
    auto* cmd_ballot = cmd_simulate->add_subcommand("ballot", "secret ballot with inspection");
    add_param_flags(cmd_ballot);
    cmd_ballot->add_option("--votes", votes_csv, "comma-separated votes, one per decision-maker")
        ->capture_default_str();
    cmd_ballot->add_option("--votes-file", votes_file, "file with one vote vector per line");

    std::string objectors_csv;
    std::uint64_t window = default_perturb_window;
    auto* cmd_unanimity = cmd_simulate->add_subcommand("unanimity", "unanimity vote");
    add_param_flags(cmd_unanimity);
    cmd_unanimity->add_option("--objectors", objectors_csv, "comma-separated objector indices");
    cmd_unanimity->add_option("--window", window, "perturbation window")->capture_default_str();

    // ---- attack ----------------------------------------------------------
    std::uint64_t atk_u = 17, atk_v = 23, atk_alpha = 1, atk_bound = 30, atk_sets = 3,
                  atk_seed = 1, atk_max = 120;
    std::string atk_density = "1/2";
    auto* cmd_attack = app.add_subcommand("attack", "brute-force the hidden pair from leaked products");
    cmd_attack->add_option("--u", atk_u, "hidden first number")->capture_default_str();
    cmd_attack->add_option("--v", atk_v, "hidden second number")->capture_default_str();
    cmd_attack->add_option("--alpha", atk_alpha, "multiplicity bound")->capture_default_str();
    cmd_attack->add_option("--bound", atk_bound, "candidate search bound")->capture_default_str();
    cmd_attack->add_option("--sets", atk_sets, "number of observed base sets")->capture_default_str();
    cmd_attack->add_option("--seed", atk_seed, "base set seed")->capture_default_str();
    cmd_attack->add_option("--max", atk_max, "base set max element")->capture_default_str();
    cmd_attack->add_option("--density", atk_density, "base set density")->capture_default_str();
    cmd_attack->add_option("--out", out_dir, "directory for artifacts");

    // ---- golden ----------------------------------------------------------
    app.add_subcommand("golden", "replay the built-in worked example");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_count->parsed()) {
            const base_set a = base_set::parse(count_flags.base);
            const big_count c = count_unbounded
                                    ? count_unrestricted(a, count_flags.n)
                                    : count_bounded(a, multiplicity_bound{count_flags.alpha},
                                                    count_flags.n);
            std::cout << to_decimal(c) << '\n';
            return 0;
        }
        if (cmd_solutions->parsed()) {
            std::cout << enumerate_solutions(sol_n, multiplicity_bound{sol_alpha}).to_text();
            return 0;
        }
        if (cmd_verify->parsed()) {
            const verify_report rep =
                verify_identity(id_flags.n, multiplicity_bound{id_flags.alpha},
                                base_set::parse(id_flags.base));
            if (rep.equal) {
                std::cout << "OK lhs=rhs=" << to_decimal(rep.lhs) << '\n';
                return 0;
            }
            std::cout << "MISMATCH lhs=" << to_decimal(rep.lhs) << " rhs=" << to_decimal(rep.rhs)
                      << '\n';
            return 1;
        }
        if (cmd_expand->parsed()) {
            const expanded_product prod =
                expand_pair_product(ex_n1, ex_n2, multiplicity_bound{ex_alpha});
            std::cout << "terms=" << prod.terms.size() << '\n';
            for (const term& t : prod.terms)
                std::cout << t.source_rows[0] << ',' << t.source_rows[1] << ": "
                          << t.args_string() << '\n';
            if (!ex_base.empty()) {
                const base_set a = base_set::parse(ex_base);
                const big_count sum = evaluate_expansion(prod, a);
                const big_count target =
                    masked_pair_target(ex_n1, ex_n2, multiplicity_bound{ex_alpha}, a);
                std::cout << "sum=" << to_decimal(sum) << " target=" << to_decimal(target)
                          << (sum == target ? " equal" : " MISMATCH") << '\n';
                return sum == target ? 0 : 1;
            }
            return 0;
        }
        if (cmd_membership->parsed()) {
            std::vector<member_behavior> behaviors(params.parties);
            for (const std::string& spec : cheat_specs) {
                std::stringstream ss(spec);
                std::string who, what, amount;
                std::getline(ss, who, ':');
                std::getline(ss, what, ':');
                std::getline(ss, amount, ':');
                const std::size_t member = std::stoull(who);
                if (member >= behaviors.size())
                    throw bad_params("no such member: " + who);
                if (what == "offset") {
                    behaviors[member].strategy = member_behavior::kind::constant_offset;
                    behaviors[member].offset = amount.empty() ? big_count(1) : from_decimal(amount);
                } else if (what == "random") {
                    behaviors[member].strategy = member_behavior::kind::random_value;
                } else if (what == "replay") {
                    behaviors[member].strategy = member_behavior::kind::replay_previous;
                } else {
                    throw bad_params("unknown strategy: " + what);
                }
            }
            const membership_outcome outcome = run_membership_session(params, behaviors);
            emit_transcript(outcome.log, out_dir);
            return outcome.accepted ? 0 : 1;
        }
        if (cmd_ballot->parsed()) {
            std::vector<std::vector<big_count>> items;
            if (!votes_file.empty()) {
                std::ifstream f(votes_file);
                if (!f)
                    throw bad_params("cannot open " + votes_file);
                std::string line;
                while (std::getline(f, line))
                    if (!line.empty())
                        items.push_back(parse_votes(line));
            } else {
                items.push_back(parse_votes(votes_csv));
            }
            const ballot_outcome outcome = run_ballot_session(params, items);
            emit_transcript(outcome.log, out_dir);
            for (const ballot_item_outcome& item : outcome.items)
                if (!item.fair || item.out_of_range)
                    return 1;
            return 0;
        }
        if (cmd_unanimity->parsed()) {
            std::set<std::size_t> objectors;
            std::stringstream ss(objectors_csv);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty())
                    objectors.insert(std::stoull(tok));
            const unanimity_outcome outcome = run_unanimity_session(params, objectors, window);
            emit_transcript(outcome.log, out_dir);
            return outcome.unanimous ? 0 : 1;
        }
        if (cmd_attack->parsed()) {
            std::vector<base_set> sets;
            for (std::uint64_t k = 0; k < atk_sets; ++k)
                sets.push_back(base_set::seeded_random(splitmix64::derive(atk_seed, k),
                                                       parse_density(atk_density), atk_max));
            const std::vector<observation> obs =
                observe_pair(atk_u, atk_v, multiplicity_bound{atk_alpha}, sets);
            const attack_report report = attack_recover_pair(obs, atk_bound);
            json steps = json::array();
            for (const attack_step& s : report.steps)
                steps.push_back(json{{"base", s.base}, {"candidates", s.candidates}});
            json candidates = json::array();
            for (const auto& [u, v] : report.candidates)
                candidates.push_back(json::array({u, v}));
            const json out{{"bound", report.bound},
                           {"steps", steps},
                           {"candidates", candidates},
                           {"wall_ms", report.wall_ms}};
            std::cout << out.dump(2) << '\n';
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                std::ofstream f(out_dir + "/attack_report.json", std::ios::binary);
                f << out.dump(2) << '\n';
            }
            return 0;
        }
        if (app.get_subcommand("golden")->parsed())
            return run_golden();
    } catch (const scheme_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
