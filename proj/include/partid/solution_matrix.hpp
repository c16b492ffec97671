#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "partid/counting.hpp"
#include "partid/errors.hpp"

namespace partid {

/* One representation of n as sum u_0*(alpha+1)^0 + u_1*(alpha+1)^1 + ...
 * with nonnegative coefficients, trailing zeros trimmed. */
struct solution_row {
    std::vector<std::uint64_t> coeffs;

    /* The nonzero coefficient values, ascending. These are the arguments of
     * the row's product term. */
    std::vector<std::uint64_t> term_args() const {
        std::vector<std::uint64_t> args;
        for (const std::uint64_t u : coeffs)
            if (u != 0)
                args.push_back(u);
        std::sort(args.begin(), args.end());
        return args;
    }

    /* The row (n, 0, 0, ...): the one-term representation n = n * 1. */
    bool is_trivial(std::uint64_t n) const {
        return coeffs.size() == 1 && coeffs[0] == n;
    }

    bool operator==(const solution_row&) const = default;
};

/* Every representation of n in radix alpha+1 with unbounded digits, in a
 * fixed canonical order: compare coefficient vectors from the highest index
 * down, larger first. The trivial row therefore always sorts last. */
struct solution_matrix {
    std::uint64_t n = 0;
    multiplicity_bound alpha{1};
    std::vector<solution_row> rows;

    std::size_t trivial_index() const {
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].is_trivial(n))
                return i;
        throw scheme_error("solution matrix lacks its trivial row");
    }

    std::string to_text() const {
        std::ostringstream os;
        os << n << ' ' << alpha.alpha << '\n';
        for (const solution_row& row : rows) {
            for (std::size_t i = 0; i < row.coeffs.size(); ++i) {
                if (i) os << ',';
                os << row.coeffs[i];
            }
            os << '\n';
        }
        return os.str();
    }

    static solution_matrix from_text(const std::string& text) {
        std::istringstream is(text);
        std::uint64_t n = 0, a = 0;
        if (!(is >> n >> a))
            throw parse_error("solution matrix header must be 'n alpha'");
        solution_matrix m{n, multiplicity_bound{a}, {}};
        const std::uint64_t radix = a + 1;
        std::string line;
        std::getline(is, line); // consume end of header line
        while (std::getline(is, line)) {
            if (line.empty())
                continue;
            solution_row row;
            std::stringstream ss(line);
            std::string tok;
            while (std::getline(ss, tok, ','))
                row.coeffs.push_back(std::stoull(tok));
            while (!row.coeffs.empty() && row.coeffs.back() == 0)
                row.coeffs.pop_back();
            std::uint64_t sum = 0, power = 1;
            for (const std::uint64_t u : row.coeffs) {
                sum += u * power;
                power *= radix;
            }
            if (sum != n)
                throw parse_error("row does not represent " + std::to_string(n) + ": " + line);
            m.rows.push_back(std::move(row));
        }
        return m;
    }

    bool operator==(const solution_matrix&) const = default;
};

/* Enumerate all solutions of n = sum u_i * (alpha+1)^i, complete and
 * duplicate-free, directly in canonical order. */
inline solution_matrix enumerate_solutions(std::uint64_t n, multiplicity_bound alpha) {
    if (n < 1)
        throw bad_params("solution matrix needs n >= 1");
    const std::uint64_t radix = alpha.alpha + 1;
    std::vector<std::uint64_t> powers{1};
    while (powers.back() <= n / radix)
        powers.push_back(powers.back() * radix);

    solution_matrix m{n, alpha, {}};
    std::vector<std::uint64_t> coeffs(powers.size(), 0);
    auto rec = [&](auto&& self, std::size_t idx, std::uint64_t remaining) -> void {
        if (idx == 0) {
            coeffs[0] = remaining;
            solution_row row{coeffs};
            while (!row.coeffs.empty() && row.coeffs.back() == 0)
                row.coeffs.pop_back();
            m.rows.push_back(std::move(row));
            return;
        }
        // highest coefficient first keeps the emitted order canonical
        for (std::uint64_t u = remaining / powers[idx] + 1; u-- > 0;) {
            coeffs[idx] = u;
            self(self, idx - 1, remaining - u * powers[idx]);
        }
        coeffs[idx] = 0;
    };
    rec(rec, powers.size() - 1, n);
    return m;
}

} // namespace partid
