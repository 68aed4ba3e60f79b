#pragma once

#include "hctps/benchmarks.hpp"
#include "hctps/box.hpp"
#include "hctps/driver.hpp"
#include "hctps/error.hpp"
#include "hctps/experiment.hpp"
#include "hctps/fixtures.hpp"
#include "hctps/ga.hpp"
#include "hctps/json_io.hpp"
#include "hctps/report.hpp"
#include "hctps/rng.hpp"
#include "hctps/service.hpp"
#include "hctps/stats.hpp"
#include "hctps/store.hpp"
#include "hctps/subcube.hpp"
