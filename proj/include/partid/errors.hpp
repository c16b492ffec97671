#pragma once

#include <stdexcept>
#include <string>

namespace partid {

/* Base class for every domain error raised by the library. Anything not
 * derived from scheme_error is a plain programming error. */
struct scheme_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct bad_params : scheme_error {
    using scheme_error::scheme_error;
};

struct infeasible_distribution : scheme_error {
    using scheme_error::scheme_error;
};

struct oracle_ceiling_exceeded : scheme_error {
    using scheme_error::scheme_error;
};

struct no_nontrivial_rows : scheme_error {
    using scheme_error::scheme_error;
};

struct no_viable_base_set : scheme_error {
    using scheme_error::scheme_error;
};

struct table_too_large : scheme_error {
    using scheme_error::scheme_error;
};

struct tally_out_of_range : scheme_error {
    using scheme_error::scheme_error;
};

struct not_rejected : scheme_error {
    using scheme_error::scheme_error;
};

struct bound_too_large : scheme_error {
    using scheme_error::scheme_error;
};

struct parse_error : scheme_error {
    using scheme_error::scheme_error;
};

} // namespace partid
