// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dataset-level analysis: evaluate a measure over every (record, alpha) cell
// of a risk-weight grid, summarize the per-alpha distributions, locate the
// alpha at which the FMR-side term starts to dominate, and score each measure
// against the three functional criteria (intuitive term contributions,
// bounded domain, calculability at zero rates).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fairaudit/errors.hpp"
#include "fairaudit/metrics.hpp"
#include "fairaudit/model.hpp"

namespace fairaudit {

enum class Statistic { mean, median };

inline const char* to_string(Statistic s) { return s == Statistic::mean ? "mean" : "median"; }

namespace detail {

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Quantile by linear interpolation between order statistics; the median of
// an even-length sample is the midpoint of the two central values.
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double pos = p * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return quantile_sorted(v, 0.5);
}

}  // namespace detail

// Alpha grid from start to stop in increments of step, endpoints inclusive:
// "0:1:0.01" yields the 101-point grid.
inline std::vector<double> make_grid(double start, double stop, double step) {
  if (!(start >= 0.0 && stop <= 1.0 && start <= stop))
    throw DomainError("alpha grid must satisfy 0 <= start <= stop <= 1");
  if (start == stop) return {start};
  if (!(step > 0.0)) throw DomainError("alpha grid step must be positive");
  if ((stop - start) / step > 1e6)
    throw DomainError("alpha grid step " + detail::format_double(step) +
                      " yields over a million points");
  std::vector<double> grid;
  // i*step, not an accumulating sum, so long grids do not drift.
  for (std::size_t i = 0;; ++i) {
    double a = start + static_cast<double>(i) * step;
    if (a >= stop - step * 1e-9) break;
    grid.push_back(a);
  }
  grid.push_back(stop);
  return grid;
}

// Grid spec "start:stop:step", endpoints inclusive.
inline std::vector<double> parse_grid_spec(const std::string& spec) {
  auto p1 = spec.find(':');
  auto p2 = spec.find(':', p1 == std::string::npos ? p1 : p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos)
    throw DomainError("grid spec must be \"start:stop:step\" (got \"" + spec + "\")");
  auto start = detail::parse_double(spec.substr(0, p1));
  auto stop = detail::parse_double(spec.substr(p1 + 1, p2 - p1 - 1));
  auto step = detail::parse_double(spec.substr(p2 + 1));
  if (!start || !stop || !step)
    throw DomainError("grid spec must be numeric \"start:stop:step\" (got \"" + spec + "\")");
  return make_grid(*start, *stop, *step);
}

// One (record, alpha) evaluation. Incalculable cells (IR on a record with a
// zero group minimum) are excluded from all statistics.
struct SweepCell {
  bool calculable = false;
  double value = 0.0;
  double contribution_a = 0.0;
};

// Distribution summary of one alpha column, over calculable records only.
struct AlphaStats {
  std::size_t count = 0;
  double min = 0, max = 0, mean = 0, median = 0, p05 = 0, p95 = 0;
  double contribution_mean = 0, contribution_median = 0;
};

struct SweepResult {
  Measure measure;
  std::vector<double> alphas;
  std::vector<std::string> algorithms;             // row labels, dataset order
  std::vector<std::vector<SweepCell>> cells;       // [record][alpha]
  std::vector<AlphaStats> stats;                   // [alpha]
  std::vector<std::string> incalculable;           // names of excluded records

  std::size_t calculable_count() const { return algorithms.size() - incalculable.size(); }
};

// Evaluates the measure for every (record, alpha). Records the measure
// cannot score (IR zero-rate) are marked incalculable rather than aborting
// the sweep; if no record at all is calculable the zero-rate error
// propagates, since every statistic would be undefined.
inline SweepResult sweep(const Dataset& d, Measure m, const std::vector<double>& alphas) {
  if (d.empty()) throw DomainError("sweep requires a non-empty dataset");
  if (alphas.empty()) throw DomainError("sweep requires a non-empty alpha grid");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] >= 0.0 && alphas[i] <= 1.0))
      throw DomainError("alpha grid values must lie in [0,1]");
    if (i > 0 && !(alphas[i] > alphas[i - 1]))
      throw DomainError("alpha grid must be strictly increasing");
  }

  SweepResult res;
  res.measure = m;
  res.alphas = alphas;
  res.cells.resize(d.size());

  std::optional<ZeroRateError> first_error;
  std::vector<std::optional<MeasureTerms>> terms(d.size());
  for (std::size_t r = 0; r < d.size(); ++r) {
    const auto& rec = d.records()[r];
    res.algorithms.push_back(rec.name());
    try {
      terms[r] = measure_terms(m, rec.rates());
    } catch (const ZeroRateError& e) {
      if (!first_error) first_error = e;
      res.incalculable.push_back(rec.name());
    }
    res.cells[r].resize(alphas.size());
  }
  if (res.incalculable.size() == d.size()) throw *first_error;

  for (std::size_t r = 0; r < d.size(); ++r) {
    if (!terms[r]) continue;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
      auto mr = compose(m, *terms[r], RiskWeight(alphas[k]));
      res.cells[r][k] = {true, mr.value, mr.contribution_a};
    }
  }

  res.stats.resize(alphas.size());
  std::vector<double> vals, contribs;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    vals.clear();
    contribs.clear();
    for (std::size_t r = 0; r < d.size(); ++r) {
      if (!res.cells[r][k].calculable) continue;
      vals.push_back(res.cells[r][k].value);
      contribs.push_back(res.cells[r][k].contribution_a);
    }
    auto& st = res.stats[k];
    st.count = vals.size();
    std::sort(vals.begin(), vals.end());
    st.min = vals.front();
    st.max = vals.back();
    st.mean = detail::mean_of(vals);
    st.median = detail::quantile_sorted(vals, 0.5);
    st.p05 = detail::quantile_sorted(vals, 0.05);
    st.p95 = detail::quantile_sorted(vals, 0.95);
    st.contribution_mean = detail::mean_of(contribs);
    st.contribution_median = detail::median_of(contribs);
  }
  return res;
}

// Smallest grid alpha at which the chosen statistic of contribution_a
// reaches the level; nullopt when never reached on the grid.
inline std::optional<double> crossover_alpha(const SweepResult& s, Statistic stat,
                                             double level = 0.5) {
  for (std::size_t k = 0; k < s.alphas.size(); ++k) {
    double c = stat == Statistic::mean ? s.stats[k].contribution_mean
                                       : s.stats[k].contribution_median;
    if (c >= level) return s.alphas[k];
  }
  return std::nullopt;
}

inline std::optional<double> crossover_alpha(const Dataset& d, Measure m, Statistic stat,
                                             double level = 0.5, double resolution = 0.01) {
  return crossover_alpha(sweep(d, m, make_grid(0.0, 1.0, resolution)), stat, level);
}

// ---------------------------------------------------------------------------
// Functional criteria scorecard
// ---------------------------------------------------------------------------

struct FfmcOptions {
  // Band of risk weights within which the term-dominance crossover counts as
  // intuitive.
  double band_lo = 0.2;
  double band_hi = 0.8;
  Statistic statistic = Statistic::median;
  double level = 0.5;
  double resolution = 0.01;
};

struct FfmcCriterion {
  bool pass = false;
  std::string detail;
};

struct FfmcReport {
  Measure measure;
  FfmcCriterion ffmc1;  // term contributions intuitive over normal weights
  FfmcCriterion ffmc2;  // recognizable reference points / bounded domain
  FfmcCriterion ffmc3;  // calculable when a group shows no errors
  std::optional<double> crossover;  // alpha* behind ffmc1
  std::string notes;
};

// Synthetic probe with one zero-FMR group and one zero-FNMR group, so the
// verdict on zero-rate calculability never depends on the dataset at hand.
inline GroupRates zero_rate_probe() {
  return GroupRates({{"probe_a", 0.0}, {"probe_b", 1e-3}},
                    {{"probe_a", 2e-2}, {"probe_b", 0.0}});
}

inline FfmcReport ffmc_audit(const Dataset& d, Measure m, const FfmcOptions& opts = {}) {
  if (d.empty()) throw DomainError("ffmc audit requires a non-empty dataset");
  FfmcReport rep;
  rep.measure = m;

  // FFMC.1: the alpha at which the FMR term starts to dominate must fall in
  // a normal range of risk weights.
  try {
    rep.crossover = crossover_alpha(d, m, opts.statistic, opts.level, opts.resolution);
  } catch (const ZeroRateError& e) {
    rep.notes = e.what();
  }
  if (rep.crossover) {
    bool in_band = *rep.crossover >= opts.band_lo && *rep.crossover <= opts.band_hi;
    rep.ffmc1.pass = in_band;
    rep.ffmc1.detail = std::string(to_string(opts.statistic)) + " contribution_a reaches " +
                       detail::format_double(opts.level) + " at alpha=" +
                       detail::format_double(*rep.crossover) + (in_band ? ", inside" : ", outside") +
                       " band [" + detail::format_double(opts.band_lo) + ", " +
                       detail::format_double(opts.band_hi) + "]";
  } else {
    rep.ffmc1.pass = false;
    rep.ffmc1.detail = std::string(to_string(opts.statistic)) + " contribution_a never reaches " +
                       detail::format_double(opts.level) + " on the grid";
  }

  // FFMC.2: decided from the measure's declared analytic bounds, not the
  // empirical range, so the verdict is input-independent.
  auto bounds = declared_bounds(m);
  rep.ffmc2.pass = bounds.bounded;
  rep.ffmc2.detail = bounds.bounded
                         ? "bounded [" + detail::format_double(bounds.min) + ", " +
                               detail::format_double(bounds.max) + "], " +
                               detail::format_double(bounds.fair_value) + " is fair"
                         : "minimum " + detail::format_double(bounds.fair_value) +
                               ", no finite maximum";

  // FFMC.3: evaluate on the synthetic zero-rate probe.
  try {
    auto r = evaluate(m, zero_rate_probe(), RiskWeight(0.5));
    rep.ffmc3.pass = true;
    rep.ffmc3.detail = "zero-rate probe evaluates to " + detail::format_double(r.value);
  } catch (const ZeroRateError& e) {
    rep.ffmc3.pass = false;
    rep.ffmc3.detail = std::string("zero-rate probe fails: ") + e.what();
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

struct Histogram {
  double lo = 0, hi = 0;            // observed value range
  std::vector<std::size_t> counts;  // equal-width bins over [lo, hi]
  std::size_t total = 0;            // number of calculable records
};

// Histogram of measure values at one alpha. Incalculable records are
// skipped; if none remain the zero-rate error propagates. A degenerate
// range (all values equal) collapses to a single bin.
inline Histogram distribution(const Dataset& d, Measure m, RiskWeight w, std::size_t bins) {
  if (d.empty()) throw DomainError("distribution requires a non-empty dataset");
  if (bins == 0) throw DomainError("distribution requires at least 1 bin");

  std::vector<double> vals;
  std::optional<ZeroRateError> first_error;
  for (const auto& rec : d.records()) {
    try {
      vals.push_back(evaluate(m, rec.rates(), w).value);
    } catch (const ZeroRateError& e) {
      if (!first_error) first_error = e;
    }
  }
  if (vals.empty()) throw *first_error;

  Histogram h;
  h.total = vals.size();
  auto [lo_it, hi_it] = std::minmax_element(vals.begin(), vals.end());
  h.lo = *lo_it;
  h.hi = *hi_it;
  if (h.lo == h.hi) {
    h.counts.assign(1, vals.size());
    return h;
  }
  h.counts.assign(bins, 0);
  const double width = (h.hi - h.lo) / static_cast<double>(bins);
  for (double v : vals) {
    auto idx = static_cast<std::size_t>((v - h.lo) / width);
    h.counts[std::min(idx, bins - 1)] += 1;
  }
  return h;
}

}  // namespace fairaudit
