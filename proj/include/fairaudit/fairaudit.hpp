// SPDX-License-Identifier: Apache-2.0
#pragma once

// Umbrella header for the fairaudit library: demographic fairness measures
// (FDR, IR, GARBE) over disaggregated face-recognition error rates, sweep
// and scorecard analysis, and Pareto accuracy/fairness selection.

#include "fairaudit/audit.hpp"
#include "fairaudit/errors.hpp"
#include "fairaudit/metrics.hpp"
#include "fairaudit/model.hpp"
#include "fairaudit/pareto.hpp"
#include "fairaudit/report.hpp"
#include "fairaudit/version.hpp"
