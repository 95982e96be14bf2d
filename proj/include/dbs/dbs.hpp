#pragma once

#include "dbs/diagnostics.hpp"
#include "dbs/errors.hpp"
#include "dbs/linalg.hpp"
#include "dbs/montecarlo.hpp"
#include "dbs/network.hpp"
#include "dbs/occupation.hpp"
#include "dbs/random.hpp"
#include "dbs/sampler.hpp"
#include "dbs/source.hpp"
