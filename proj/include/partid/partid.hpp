#pragma once

#include "partid/adversary.hpp"
#include "partid/ballot.hpp"
#include "partid/base_set.hpp"
#include "partid/bigint.hpp"
#include "partid/counting.hpp"
#include "partid/errors.hpp"
#include "partid/hash.hpp"
#include "partid/identity.hpp"
#include "partid/membership.hpp"
#include "partid/rng.hpp"
#include "partid/scheme.hpp"
#include "partid/solution_matrix.hpp"
#include "partid/transcript.hpp"
#include "partid/unanimity.hpp"
