#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "partid/base_set.hpp"
#include "partid/bigint.hpp"
#include "partid/counting.hpp"
#include "partid/solution_matrix.hpp"

namespace partid {

/* A product of bounded partition counts, written as the multiset of its
 * arguments. Zero arguments are dropped (their factor is 1), so the empty
 * term evaluates to 1. Each term remembers which matrix row(s) produced it:
 * the protocols distribute terms row by row, not by value. */
struct term {
    std::vector<std::uint64_t> args;        // ascending
    std::vector<std::size_t> source_rows;   // one id for identity terms, two for expansions

    std::string args_string() const {
        std::string out;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(args[i]);
        }
        return out;
    }

    bool same_args(const term& other) const { return args == other.args; }

    bool operator==(const term&) const = default;
};

inline term make_term(std::vector<std::uint64_t> args, std::vector<std::size_t> rows) {
    std::sort(args.begin(), args.end());
    return term{std::move(args), std::move(rows)};
}

/* Evaluate a term against a precomputed count table (index = argument). */
inline big_count evaluate_term(const term& t, std::span<const big_count> table) {
    big_count v = 1;
    for (const std::uint64_t a : t.args)
        v *= table[a];
    return v;
}

inline big_count evaluate_term(const term& t, const base_set& a, multiplicity_bound alpha) {
    const std::uint64_t max_arg = t.args.empty() ? 0 : t.args.back();
    return evaluate_term(t, count_table_bounded(a, alpha, max_arg));
}

inline big_count evaluate_terms(std::span<const term> terms, std::span<const big_count> table) {
    big_count sum = 0;
    for (const term& t : terms)
        sum += evaluate_term(t, table);
    return sum;
}

/* The identity: for every base set A,
 *     p^A(n) = sum over matrix rows of prod over row args of p^A_alpha(arg).
 * Terms are listed in matrix row order. */
struct identity_expr {
    std::uint64_t n = 0;
    multiplicity_bound alpha{1};
    std::vector<term> terms;

    std::string to_text() const {
        std::string out;
        for (const term& t : terms) {
            out += t.args_string();
            out += '\n';
        }
        return out;
    }
};

inline identity_expr build_identity(std::uint64_t n, multiplicity_bound alpha) {
    const solution_matrix m = enumerate_solutions(n, alpha);
    identity_expr expr{n, alpha, {}};
    expr.terms.reserve(m.rows.size());
    for (std::size_t i = 0; i < m.rows.size(); ++i)
        expr.terms.push_back(make_term(m.rows[i].term_args(), {i}));
    return expr;
}

struct verify_report {
    big_count lhs;
    big_count rhs;
    bool equal;
};

/* Check the identity numerically on one base set, exact comparison. */
inline verify_report verify_identity(std::uint64_t n, multiplicity_bound alpha,
                                     const base_set& a) {
    const identity_expr expr = build_identity(n, alpha);
    const std::vector<big_count> table = count_table_bounded(a, alpha, n);
    verify_report rep{count_unrestricted(a, n), evaluate_terms(expr.terms, table), false};
    rep.equal = rep.lhs == rep.rhs;
    return rep;
}

/* Expansion of (p^A(n1) - p^A_alpha(n1)) * (p^A(n2) - p^A_alpha(n2)).
 * Subtracting the bounded count removes exactly the trivial row's term from
 * each identity; the product of the two remaining sums expands into one
 * term per pair of nontrivial rows. source_rows holds {row in n1's matrix,
 * row in n2's matrix}. */
struct expanded_product {
    std::uint64_t n1 = 0, n2 = 0;
    multiplicity_bound alpha{1};
    std::vector<term> terms;
};

/* Index of the trivial row's term: the only term whose argument multiset is
 * exactly {n} (a single nonzero coefficient at index i >= 1 cannot sum to n). */
inline std::size_t trivial_term_index(const identity_expr& e) {
    for (std::size_t i = 0; i < e.terms.size(); ++i)
        if (e.terms[i].args.size() == 1 && e.terms[i].args[0] == e.n)
            return i;
    throw scheme_error("identity lacks its trivial term");
}

inline expanded_product expand_pair_product(std::uint64_t n1, std::uint64_t n2,
                                            multiplicity_bound alpha) {
    const identity_expr e1 = build_identity(n1, alpha);
    const identity_expr e2 = build_identity(n2, alpha);
    const std::size_t t1 = trivial_term_index(e1);
    const std::size_t t2 = trivial_term_index(e2);
    if (e1.terms.size() < 2)
        throw no_nontrivial_rows("n1=" + std::to_string(n1) + " has only the trivial row for alpha=" +
                                 std::to_string(alpha.alpha));
    if (e2.terms.size() < 2)
        throw no_nontrivial_rows("n2=" + std::to_string(n2) + " has only the trivial row for alpha=" +
                                 std::to_string(alpha.alpha));

    expanded_product prod{n1, n2, alpha, {}};
    prod.terms.reserve((e1.terms.size() - 1) * (e2.terms.size() - 1));
    for (std::size_t i = 0; i < e1.terms.size(); ++i) {
        if (i == t1)
            continue;
        for (std::size_t j = 0; j < e2.terms.size(); ++j) {
            if (j == t2)
                continue;
            std::vector<std::uint64_t> args = e1.terms[i].args;
            args.insert(args.end(), e2.terms[j].args.begin(), e2.terms[j].args.end());
            prod.terms.push_back(make_term(std::move(args), {i, j}));
        }
    }
    return prod;
}

/* (p^A(n1) - p^A_alpha(n1)) * (p^A(n2) - p^A_alpha(n2)), computed directly. */
inline big_count masked_pair_target(std::uint64_t n1, std::uint64_t n2,
                                    multiplicity_bound alpha, const base_set& a) {
    const std::uint64_t limit = std::max(n1, n2);
    const std::vector<big_count> unrestricted = count_table_unrestricted(a, limit);
    const std::vector<big_count> bounded = count_table_bounded(a, alpha, limit);
    return (unrestricted[n1] - bounded[n1]) * (unrestricted[n2] - bounded[n2]);
}

inline big_count evaluate_expansion(const expanded_product& prod, const base_set& a) {
    const std::uint64_t limit = std::max(prod.n1, prod.n2);
    return evaluate_terms(prod.terms, count_table_bounded(a, prod.alpha, limit));
}

} // namespace partid
