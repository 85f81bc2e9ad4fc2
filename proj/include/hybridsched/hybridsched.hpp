#pragma once

#include "hybridsched/rational.hpp"
#include "hybridsched/matrix.hpp"
#include "hybridsched/preprocess.hpp"
#include "hybridsched/matching.hpp"
#include "hybridsched/schedule.hpp"
#include "hybridsched/schedulers.hpp"
#include "hybridsched/analysis.hpp"
#include "hybridsched/oracle.hpp"
#include "hybridsched/workload.hpp"
