#pragma once

#include "labelsearch/baselines.hpp"
#include "labelsearch/core.hpp"
#include "labelsearch/cost_model.hpp"
#include "labelsearch/gray.hpp"
#include "labelsearch/learners.hpp"
#include "labelsearch/report.hpp"
#include "labelsearch/scaling.hpp"
#include "labelsearch/search.hpp"
#include "labelsearch/stats.hpp"
#include "labelsearch/task_io.hpp"
