#pragma once

#include "knomial/errors.hpp"
#include "knomial/numtheory.hpp"
#include "knomial/heisenberg.hpp"
#include "knomial/imprimitivity.hpp"
#include "knomial/clifford.hpp"
#include "knomial/sic.hpp"
#include "knomial/sic_data.hpp"
#include "knomial/search.hpp"
#include "knomial/json_io.hpp"
