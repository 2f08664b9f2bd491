// SPDX-License-Identifier: Apache-2.0
#pragma once

// Accuracy/fairness trade-space: a weighted total FNMR per algorithm on one
// axis, a fairness measure on the other (both minimized), non-domination
// classification, and frontier extraction with down-select accounting.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fairaudit/errors.hpp"
#include "fairaudit/metrics.hpp"
#include "fairaudit/model.hpp"

namespace fairaudit {

// Total FNMR across groups: the mated-count weighted average when counts are
// present, otherwise the unweighted mean of group FNMRs.
inline double total_fnmr(const AlgorithmRecord& r) {
  const auto& fnmr = r.rates().fnmr();
  if (r.mated_counts()) {
    double num = 0.0, den = 0.0;
    for (const auto& [g, c] : *r.mated_counts()) {
      num += static_cast<double>(c) * fnmr.at(g);
      den += static_cast<double>(c);
    }
    return num / den;
  }
  double sum = 0.0;
  for (const auto& [_, v] : fnmr) sum += v;
  return sum / static_cast<double>(fnmr.size());
}

enum class Efficiency { efficient, weakly_efficient, dominated };

inline const char* to_string(Efficiency e) {
  switch (e) {
    case Efficiency::efficient: return "efficient";
    case Efficiency::weakly_efficient: return "weakly_efficient";
    default: return "dominated";
  }
}

// Non-domination classification over points minimized in both coordinates:
//   efficient          no other point is <= in both and < in at least one
//   weakly_efficient   not efficient, but no other point is < in both
//   dominated          some other point is < in both
// Exact duplicates of an efficient point are all efficient. Runs as a sweep
// over points sorted by the first coordinate.
inline std::vector<Efficiency> classify(const std::vector<std::pair<double, double>>& points) {
  if (points.empty()) throw DomainError("classify requires at least one point");
  for (const auto& [a, f] : points)
    if (!std::isfinite(a) || !std::isfinite(f))
      throw DomainError("classify requires finite objectives");

  const std::size_t n = points.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return points[i].first < points[j].first;
  });

  std::vector<Efficiency> out(n, Efficiency::dominated);
  double prefix_min_f = std::numeric_limits<double>::infinity();  // over strictly smaller x
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    double group_min_f = std::numeric_limits<double>::infinity();
    while (j < n && points[order[j]].first == points[order[i]].first) {
      group_min_f = std::min(group_min_f, points[order[j]].second);
      ++j;
    }
    for (std::size_t k = i; k < j; ++k) {
      const double f = points[order[k]].second;
      if (f == group_min_f && f < prefix_min_f)
        out[order[k]] = Efficiency::efficient;
      else if (f <= prefix_min_f)  // no strict dominator exists
        out[order[k]] = Efficiency::weakly_efficient;
    }
    prefix_min_f = std::min(prefix_min_f, group_min_f);
    i = j;
  }
  return out;
}

// One algorithm in the trade-space. objective_fairness is the minimized
// fairness coordinate (1 - value for FDR, the value itself otherwise);
// measure_value keeps the measure's native reading.
struct ParetoPoint {
  std::string algorithm;
  double objective_accuracy = 0;   // total FNMR
  double objective_fairness = 0;
  double measure_value = 0;
  Efficiency classification = Efficiency::dominated;
  // Diagnostic: strictly below every other point in both objectives, the
  // condition written out in the strictest reading of Pareto efficiency.
  // At most one point can satisfy it.
  bool strictly_min_both = false;
};

struct FrontierResult {
  Measure measure;
  double alpha = 0.5;
  // All calculable points, sorted by (accuracy, fairness, name).
  std::vector<ParetoPoint> points;
  // Indices into points of the efficient set, ascending accuracy.
  std::vector<std::size_t> efficient;
  // Records excluded as incalculable under the measure.
  std::vector<std::string> excluded;

  std::size_t efficient_count() const { return efficient.size(); }
  std::size_t weakly_count() const {
    std::size_t k = 0;
    for (const auto& p : points)
      if (p.classification == Efficiency::weakly_efficient) ++k;
    return k;
  }
  // Fraction of candidates the frontier eliminates.
  double down_select_savings() const {
    if (points.empty()) return 0.0;
    return 1.0 - static_cast<double>(efficient.size()) / static_cast<double>(points.size());
  }
};

// Builds the trade-space for a dataset under one measure and risk weight.
// Incalculable records are excluded (and listed); an empty calculable set is
// an error.
inline FrontierResult frontier(const Dataset& d, Measure m, RiskWeight w) {
  if (d.empty()) throw DomainError("frontier requires a non-empty dataset");

  FrontierResult res;
  res.measure = m;
  res.alpha = w.alpha();

  std::optional<ZeroRateError> first_error;
  for (const auto& rec : d.records()) {
    ParetoPoint p;
    p.algorithm = rec.name();
    p.objective_accuracy = total_fnmr(rec);
    try {
      p.measure_value = evaluate(m, rec.rates(), w).value;
    } catch (const ZeroRateError& e) {
      if (!first_error) first_error = e;
      res.excluded.push_back(rec.name());
      continue;
    }
    p.objective_fairness = fairness_objective(m, p.measure_value);
    res.points.push_back(std::move(p));
  }
  if (res.points.empty()) throw *first_error;

  std::sort(res.points.begin(), res.points.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
    return std::tie(a.objective_accuracy, a.objective_fairness, a.algorithm) <
           std::tie(b.objective_accuracy, b.objective_fairness, b.algorithm);
  });

  std::vector<std::pair<double, double>> coords;
  coords.reserve(res.points.size());
  for (const auto& p : res.points) coords.emplace_back(p.objective_accuracy, p.objective_fairness);
  auto cls = classify(coords);
  for (std::size_t i = 0; i < cls.size(); ++i) {
    res.points[i].classification = cls[i];
    if (cls[i] == Efficiency::efficient) res.efficient.push_back(i);
  }
  for (std::size_t i = 0; i < res.points.size(); ++i) {
    bool strict = true;
    for (std::size_t j = 0; j < res.points.size() && strict; ++j) {
      if (i == j) continue;
      strict = res.points[i].objective_accuracy < res.points[j].objective_accuracy &&
               res.points[i].objective_fairness < res.points[j].objective_fairness;
    }
    res.points[i].strictly_min_both = strict;
  }
  return res;
}

}  // namespace fairaudit
