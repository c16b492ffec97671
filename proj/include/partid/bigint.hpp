#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "partid/errors.hpp"

namespace partid {

/* Exact arbitrary-precision integer. Partition counts are never negative,
 * but tallies and perturbation deltas may be, so the full signed type is
 * used throughout. */
using big_count = mpz_class;

inline std::string to_decimal(const big_count& v) { return v.get_str(); }

inline big_count from_decimal(std::string_view s) {
    if (s.empty())
        throw parse_error("empty integer literal");
    try {
        return big_count(std::string(s), 10);
    } catch (const std::invalid_argument&) {
        throw parse_error("bad integer literal: " + std::string(s));
    }
}

} // namespace partid
