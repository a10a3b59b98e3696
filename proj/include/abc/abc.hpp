// abc.hpp: everything in one include.
#pragma once

#include "abc/audit.hpp"
#include "abc/backend.hpp"
#include "abc/baselines.hpp"
#include "abc/ci_estimator.hpp"
#include "abc/config.hpp"
#include "abc/core.hpp"
#include "abc/dataset.hpp"
#include "abc/engine.hpp"
#include "abc/harness.hpp"
#include "abc/instances.hpp"
#include "abc/learners.hpp"
#include "abc/random.hpp"
#include "abc/report.hpp"
#include "abc/scheduler.hpp"
#include "abc/sources.hpp"
#include "abc/stats.hpp"
#include "abc/synthetic.hpp"
