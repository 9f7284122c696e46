#pragma once

#include "skorohod/value.hpp"
#include "skorohod/time_change.hpp"
#include "skorohod/cadlag.hpp"
#include "skorohod/value_map.hpp"
#include "skorohod/pseudometric.hpp"
#include "skorohod/distance.hpp"
#include "skorohod/oracle.hpp"
#include "skorohod/random.hpp"
#include "skorohod/topology.hpp"
#include "skorohod/counterexample.hpp"
