// SPDX-License-Identifier: Apache-2.0
#pragma once

// The three summative fairness measures over disaggregated error rates:
//
//   FDR    1 - (alpha*A + (1-alpha)*B),  A/B = max pairwise |FMR|/|FNMR|
//          difference across groups. 1 is fair, bounded in [0,1].
//   IR     A^alpha * B^(1-alpha),  A/B = max/min group FMR/FNMR ratio.
//          1 is fair, unbounded above, incalculable at zero rates.
//   GARBE  alpha*A + (1-alpha)*B,  A/B = bias-corrected Gini coefficient of
//          the group FMR/FNMR values. 0 is fair, bounded in [0,1].
//
// Every measure returns its A/B decomposition alongside the value. The terms
// carry no alpha dependence; weights apply only at aggregation, so a sweep
// over alpha can reuse one decomposition per record.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "fairaudit/errors.hpp"
#include "fairaudit/model.hpp"

namespace fairaudit {

enum class Measure { fdr, ir, garbe };

inline const char* to_string(Measure m) {
  switch (m) {
    case Measure::fdr: return "fdr";
    case Measure::ir: return "ir";
    default: return "garbe";
  }
}

inline Measure parse_measure(const std::string& name) {
  if (name == "fdr") return Measure::fdr;
  if (name == "ir") return Measure::ir;
  if (name == "garbe") return Measure::garbe;
  throw DomainError("unknown measure \"" + name + "\" (expected fdr, ir or garbe)");
}

// Relative concern for false-match differentials; the false-non-match weight
// is always derived as 1 - alpha.
class RiskWeight {
 public:
  explicit RiskWeight(double alpha) : alpha_(alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
      throw DomainError("alpha " + detail::format_double(alpha) + " is outside [0,1]");
  }
  double alpha() const { return alpha_; }
  double beta() const { return 1.0 - alpha_; }

  bool operator==(const RiskWeight&) const = default;

 private:
  double alpha_;
};

// The alpha-independent decomposition of a measure on one record.
struct MeasureTerms {
  double a;  // FMR side
  double b;  // FNMR side
};

struct MeasureResult {
  Measure measure;
  double alpha;
  double value;
  double term_a;
  double term_b;
  // Share of the aggregate attributable to the alpha-weighted term, in [0,1];
  // 0 when both weighted terms vanish. For the multiplicative IR the share is
  // taken in log space, where the weights act additively.
  double contribution_a;
};

// ---------------------------------------------------------------------------
// Gini coefficient
// ---------------------------------------------------------------------------

// Bias-corrected Gini coefficient of a sample of n >= 2 non-negative values:
// the mean absolute pairwise difference normalized by 2*mean, scaled by
// n/(n-1) so the one-hot sample attains exactly 1. An all-zero sample has no
// dispersion and returns 0.
//
// Computed over the sorted sample as sum(gap_k * (k+1) * (n-1-k)) /
// ((n-1) * total), which is algebraically the double pairwise sum and keeps
// equal-value samples at exactly 0.
inline double gini(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw DomainError("gini requires at least 2 values (got " + std::to_string(n) + ")");
  for (double v : values)
    if (!std::isfinite(v) || v < 0.0)
      throw DomainError("gini requires finite non-negative values (got " +
                        detail::format_double(v) + ")");

  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end());
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  if (total == 0.0) return 0.0;

  double pair_sum = 0.0;  // sum over i<j of x[j]-x[i]
  for (std::size_t k = 0; k + 1 < n; ++k)
    pair_sum += (x[k + 1] - x[k]) * static_cast<double>((k + 1) * (n - 1 - k));
  return std::clamp(pair_sum / (static_cast<double>(n - 1) * total), 0.0, 1.0);
}

inline double gini(const std::vector<double>& values) {
  return gini(std::span<const double>(values));
}

// Sums a partition of error counts, for demonstrating how regrouping biases
// Gini comparisons: merging groups can only lower the coefficient, so group
// sizes and grouping variables belong in any reported Gini. The partition
// must cover every index exactly once.
inline std::vector<double> merge_counts(std::span<const double> counts,
                                        const std::vector<std::vector<std::size_t>>& partition) {
  for (double c : counts)
    if (!std::isfinite(c) || c <= 0.0)
      throw DomainError("merge_counts requires positive counts");
  std::vector<bool> seen(counts.size(), false);
  std::vector<double> out;
  out.reserve(partition.size());
  for (const auto& part : partition) {
    double sum = 0.0;
    for (std::size_t i : part) {
      if (i >= counts.size())
        throw DomainError("partition index " + std::to_string(i) + " is out of range");
      if (seen[i])
        throw DomainError("partition covers index " + std::to_string(i) + " more than once");
      seen[i] = true;
      sum += counts[i];
    }
    out.push_back(sum);
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw DomainError("partition does not cover index " + std::to_string(i));
  return out;
}

// ---------------------------------------------------------------------------
// Term decompositions
// ---------------------------------------------------------------------------

namespace detail {

inline double spread(const std::map<GroupLabel, double>& rates) {
  double lo = rates.begin()->second, hi = lo;
  for (const auto& [_, v] : rates) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;  // equals the max pairwise absolute difference
}

inline double max_min_ratio(const std::map<GroupLabel, double>& rates, const char* kind) {
  auto it = rates.begin();
  const GroupLabel* min_group = &it->first;
  double lo = it->second, hi = it->second;
  for (++it; it != rates.end(); ++it) {
    if (it->second < lo) {
      lo = it->second;
      min_group = &it->first;
    }
    hi = std::max(hi, it->second);
  }
  if (lo == 0.0) throw ZeroRateError(kind, *min_group);
  return hi / lo;
}

}  // namespace detail

// A/B terms for one measure on one record. For IR, throws ZeroRateError when
// a group minimum is 0.
inline MeasureTerms measure_terms(Measure m, const GroupRates& rates) {
  switch (m) {
    case Measure::fdr:
      return {detail::spread(rates.fmr()), detail::spread(rates.fnmr())};
    case Measure::ir:
      return {detail::max_min_ratio(rates.fmr(), "FMR"),
              detail::max_min_ratio(rates.fnmr(), "FNMR")};
    default:
      return {gini(rates.fmr_values()), gini(rates.fnmr_values())};
  }
}

// Aggregates precomputed terms under a risk weight.
inline MeasureResult compose(Measure m, MeasureTerms t, RiskWeight w) {
  const double alpha = w.alpha(), beta = w.beta();
  MeasureResult r{m, alpha, 0.0, t.a, t.b, 0.0};
  switch (m) {
    case Measure::fdr: {
      const double differential = alpha * t.a + beta * t.b;
      r.value = std::clamp(1.0 - differential, 0.0, 1.0);
      if (differential > 0.0) r.contribution_a = std::clamp(alpha * t.a / differential, 0.0, 1.0);
      break;
    }
    case Measure::ir: {
      r.value = std::pow(t.a, alpha) * std::pow(t.b, beta);
      const double log_total = alpha * std::log(t.a) + beta * std::log(t.b);
      if (log_total > 0.0)
        r.contribution_a = std::clamp(alpha * std::log(t.a) / log_total, 0.0, 1.0);
      break;
    }
    default: {
      r.value = std::clamp(alpha * t.a + beta * t.b, 0.0, 1.0);
      if (r.value > 0.0) r.contribution_a = std::clamp(alpha * t.a / r.value, 0.0, 1.0);
      break;
    }
  }
  return r;
}

// Fairness Discrepancy Rate. Total on valid rates; 1 is fair.
inline MeasureResult fdr(const GroupRates& rates, RiskWeight w) {
  return compose(Measure::fdr, measure_terms(Measure::fdr, rates), w);
}

// Inequity Rate. Throws ZeroRateError when any group FMR or FNMR minimum is
// 0; 1 is fair; no finite upper bound.
inline MeasureResult inequity_rate(const GroupRates& rates, RiskWeight w) {
  return compose(Measure::ir, measure_terms(Measure::ir, rates), w);
}

// Gini Aggregation Rate for Biometric Equitability. Total on valid rates;
// 0 is fair.
inline MeasureResult garbe(const GroupRates& rates, RiskWeight w) {
  return compose(Measure::garbe, measure_terms(Measure::garbe, rates), w);
}

inline MeasureResult evaluate(Measure m, const GroupRates& rates, RiskWeight w) {
  return compose(m, measure_terms(m, rates), w);
}

// ---------------------------------------------------------------------------
// Measure traits
// ---------------------------------------------------------------------------

struct MeasureBounds {
  bool bounded;      // finite minimum and maximum
  double fair_value; // value at perfect fairness
  double min, max;   // meaningful only when bounded
};

inline MeasureBounds declared_bounds(Measure m) {
  switch (m) {
    case Measure::fdr: return {true, 1.0, 0.0, 1.0};
    case Measure::ir: return {false, 1.0, 1.0, 0.0};
    default: return {true, 0.0, 0.0, 1.0};
  }
}

// Maps a measure value onto a minimized objective (smaller = fairer), for
// trade-space work where both axes are minimized.
inline double fairness_objective(Measure m, double value) {
  return m == Measure::fdr ? 1.0 - value : value;
}

}  // namespace fairaudit
