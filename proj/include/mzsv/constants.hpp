#pragma once

#include "mzsv/types.hpp"

namespace mzsv {

/// pi at the current working precision.
Real const_pi();

/// log 2 at the current working precision.
Real const_log2();

}  // namespace mzsv
