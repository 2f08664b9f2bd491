// SPDX-License-Identifier: Apache-2.0
#pragma once

// Report assembly: per-algorithm score tables, sweep/contribution tables,
// the FFMC scorecard, the Pareto trade-space, and their renderings as
// delimited tables (machine-readable), plain text (human-readable) and SVG
// plots. Machine-readable output is byte-deterministic for identical inputs
// and parameters; timestamps appear only where explicitly stamped.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fairaudit/audit.hpp"
#include "fairaudit/metrics.hpp"
#include "fairaudit/model.hpp"
#include "fairaudit/pareto.hpp"
#include "fairaudit/svg.hpp"
#include "fairaudit/version.hpp"

namespace fairaudit {

// ---------------------------------------------------------------------------
// Score table
// ---------------------------------------------------------------------------

struct ScoreRow {
  std::string algorithm;
  bool calculable = false;
  MeasureResult result{};
  std::string error;  // set when not calculable
};

inline std::vector<ScoreRow> score_table(const Dataset& d, Measure m, RiskWeight w) {
  if (d.empty()) throw DomainError("score requires a non-empty dataset");
  std::vector<ScoreRow> rows;
  rows.reserve(d.size());
  for (const auto& rec : d.records()) {
    ScoreRow row;
    row.algorithm = rec.name();
    try {
      row.result = evaluate(m, rec.rates(), w);
      row.calculable = true;
    } catch (const ZeroRateError& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Delimited renderings
// ---------------------------------------------------------------------------

namespace detail {

// Pads a data range for display; degenerate ranges widen around the value.
inline std::pair<double, double> pad_range(double lo, double hi, double frac = 0.06) {
  double pad = (hi - lo) * frac;
  if (pad <= 0.0) pad = std::max(std::abs(lo) * frac, 1e-6);
  return {lo - pad, hi + pad};
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open \"" + path.string() + "\" for writing");
  out << content;
  if (!out) throw Error("failed writing \"" + path.string() + "\"");
}

}  // namespace detail

inline std::string validation_csv(const ValidationReport& rep) {
  std::string out = "check,status,detail\n";
  for (const auto& c : rep.criteria)
    out += c.id + "," + to_string(c.status) + "," + detail::csv_escape(c.detail) + "\n";
  for (const auto& w : rep.warnings)
    out += w.id + "," + to_string(w.status) + "," + detail::csv_escape(w.detail) + "\n";
  return out;
}

inline std::string score_csv(const std::vector<ScoreRow>& rows, Measure m, double alpha) {
  std::string out = "algorithm,measure,alpha,value,term_a,term_b,contribution_a,calculable\n";
  for (const auto& r : rows) {
    out += detail::csv_escape(r.algorithm);
    out += std::string(",") + to_string(m) + "," + detail::format_double(alpha) + ",";
    if (r.calculable) {
      out += detail::format_double(r.result.value) + "," + detail::format_double(r.result.term_a) +
             "," + detail::format_double(r.result.term_b) + "," +
             detail::format_double(r.result.contribution_a) + ",true\n";
    } else {
      out += ",,,,false\n";
    }
  }
  return out;
}

inline std::string sweep_stats_csv(const SweepResult& s) {
  std::string out = "alpha,count,min,max,mean,median,p05,p95\n";
  for (std::size_t k = 0; k < s.alphas.size(); ++k) {
    const auto& st = s.stats[k];
    out += detail::format_double(s.alphas[k]) + "," + std::to_string(st.count) + "," +
           detail::format_double(st.min) + "," + detail::format_double(st.max) + "," +
           detail::format_double(st.mean) + "," + detail::format_double(st.median) + "," +
           detail::format_double(st.p05) + "," + detail::format_double(st.p95) + "\n";
  }
  return out;
}

inline std::string sweep_contribution_csv(const SweepResult& s) {
  std::string out = "alpha,contribution_mean,contribution_median\n";
  for (std::size_t k = 0; k < s.alphas.size(); ++k)
    out += detail::format_double(s.alphas[k]) + "," +
           detail::format_double(s.stats[k].contribution_mean) + "," +
           detail::format_double(s.stats[k].contribution_median) + "\n";
  return out;
}

// Record-by-alpha value matrix; incalculable cells are left empty.
inline std::string sweep_values_csv(const SweepResult& s) {
  std::string out = "algorithm";
  for (double a : s.alphas) out += "," + detail::format_double(a);
  out += "\n";
  for (std::size_t r = 0; r < s.algorithms.size(); ++r) {
    out += detail::csv_escape(s.algorithms[r]);
    for (std::size_t k = 0; k < s.alphas.size(); ++k)
      out += "," + (s.cells[r][k].calculable ? detail::format_double(s.cells[r][k].value)
                                             : std::string());
    out += "\n";
  }
  return out;
}

inline std::string ffmc_csv(const std::vector<FfmcReport>& reports) {
  std::string out = "measure,ffmc1,ffmc2,ffmc3,crossover_alpha,ffmc1_detail,ffmc2_detail,ffmc3_detail\n";
  for (const auto& r : reports) {
    out += std::string(to_string(r.measure)) + "," + (r.ffmc1.pass ? "pass" : "fail") + "," +
           (r.ffmc2.pass ? "pass" : "fail") + "," + (r.ffmc3.pass ? "pass" : "fail") + "," +
           (r.crossover ? detail::format_double(*r.crossover) : std::string()) + "," +
           detail::csv_escape(r.ffmc1.detail) + "," + detail::csv_escape(r.ffmc2.detail) + "," +
           detail::csv_escape(r.ffmc3.detail) + "\n";
  }
  return out;
}

inline std::string pareto_csv(const FrontierResult& f) {
  std::string out =
      "algorithm,total_fnmr,objective_fairness,measure_value,classification,strictly_min_both\n";
  for (const auto& p : f.points) {
    out += detail::csv_escape(p.algorithm) + "," + detail::format_double(p.objective_accuracy) +
           "," + detail::format_double(p.objective_fairness) + "," +
           detail::format_double(p.measure_value) + "," + to_string(p.classification) + "," +
           (p.strictly_min_both ? "true" : "false") + "\n";
  }
  return out;
}

inline std::string pareto_summary_csv(const FrontierResult& f) {
  std::string out = "measure,alpha,total,efficient,weakly_efficient,excluded,savings\n";
  out += std::string(to_string(f.measure)) + "," + detail::format_double(f.alpha) + "," +
         std::to_string(f.points.size()) + "," + std::to_string(f.efficient_count()) + "," +
         std::to_string(f.weakly_count()) + "," + std::to_string(f.excluded.size()) + "," +
         detail::format_double(f.down_select_savings()) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Text renderings
// ---------------------------------------------------------------------------

namespace detail {

inline std::string fixed(const std::string& s, int width) {
  std::string out = s;
  if (static_cast<int>(out.size()) < width) out.append(width - out.size(), ' ');
  return out;
}

inline std::string short_num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace detail

inline std::string render_validation_text(const ValidationReport& rep) {
  std::ostringstream os;
  os << "Data criteria\n";
  for (const auto& c : rep.criteria)
    os << "  " << detail::fixed(c.id, 6) << detail::fixed(to_string(c.status), 6) << c.detail
       << "\n";
  if (!rep.warnings.empty()) {
    os << "Warnings\n";
    for (const auto& w : rep.warnings) os << "  " << w.detail << "\n";
  }
  os << "Result: " << (rep.ok() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

inline std::string render_score_text(const std::vector<ScoreRow>& rows, Measure m, double alpha) {
  std::ostringstream os;
  os << "Measure " << to_string(m) << " at alpha=" << detail::short_num(alpha) << "\n";
  os << "  " << detail::fixed("algorithm", 30) << detail::fixed("value", 14)
     << detail::fixed("term_a", 14) << detail::fixed("term_b", 14) << "contribution_a\n";
  for (const auto& r : rows) {
    os << "  " << detail::fixed(r.algorithm, 30);
    if (r.calculable) {
      os << detail::fixed(detail::short_num(r.result.value), 14)
         << detail::fixed(detail::short_num(r.result.term_a), 14)
         << detail::fixed(detail::short_num(r.result.term_b), 14)
         << detail::short_num(r.result.contribution_a);
    } else {
      os << "incalculable: " << r.error;
    }
    os << "\n";
  }
  return os.str();
}

inline std::string render_ffmc_text(const std::vector<FfmcReport>& reports) {
  std::ostringstream os;
  os << "Functional fairness measure criteria\n";
  os << "  " << detail::fixed("measure", 10) << detail::fixed("FFMC.1", 8)
     << detail::fixed("FFMC.2", 8) << "FFMC.3\n";
  for (const auto& r : reports) {
    os << "  " << detail::fixed(to_string(r.measure), 10)
       << detail::fixed(r.ffmc1.pass ? "pass" : "fail", 8)
       << detail::fixed(r.ffmc2.pass ? "pass" : "fail", 8) << (r.ffmc3.pass ? "pass" : "fail")
       << "\n";
  }
  for (const auto& r : reports) {
    os << "  " << to_string(r.measure) << ":\n";
    os << "    FFMC.1: " << r.ffmc1.detail << "\n";
    os << "    FFMC.2: " << r.ffmc2.detail << "\n";
    os << "    FFMC.3: " << r.ffmc3.detail << "\n";
    if (!r.notes.empty()) os << "    note: " << r.notes << "\n";
  }
  return os.str();
}

inline std::string render_pareto_text(const FrontierResult& f,
                                      std::optional<double> inset_fnmr = std::nullopt) {
  std::ostringstream os;
  os << "Pareto trade-space: total FNMR vs " << to_string(f.measure)
     << " objective (alpha=" << detail::short_num(f.alpha) << ", both minimized)\n";
  os << "  candidates " << f.points.size() << ", efficient " << f.efficient_count()
     << ", weakly efficient " << f.weakly_count() << ", excluded " << f.excluded.size()
     << ", down-select savings " << detail::short_num(100.0 * f.down_select_savings()) << "%\n";
  os << "  frontier (ascending total FNMR):\n";
  for (std::size_t i : f.efficient) {
    const auto& p = f.points[i];
    os << "    " << detail::fixed(p.algorithm, 30)
       << "total_fnmr=" << detail::fixed(detail::short_num(p.objective_accuracy), 14)
       << to_string(f.measure) << "=" << detail::short_num(p.measure_value) << "\n";
  }
  if (!f.excluded.empty()) {
    os << "  excluded as incalculable:";
    for (const auto& n : f.excluded) os << " " << n;
    os << "\n";
  }
  if (inset_fnmr) {
    os << "  inset (total FNMR < " << detail::short_num(*inset_fnmr) << "):\n";
    for (const auto& p : f.points)
      if (p.objective_accuracy < *inset_fnmr)
        os << "    " << detail::fixed(p.algorithm, 30) << to_string(p.classification) << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Plots
// ---------------------------------------------------------------------------

inline std::string plot_distribution(const Histogram& h, Measure m, double alpha,
                                     const std::string& stamp = "") {
  svg::Plot plot(std::string(to_string(m)) + " distribution (alpha=" + svg::label_num(alpha) + ")",
                 std::string(to_string(m)) + " value", "count");
  double max_count = 0;
  for (auto c : h.counts) max_count = std::max(max_count, static_cast<double>(c));
  auto [x_lo, x_hi] = detail::pad_range(h.lo, h.hi, 0.02);
  plot.set_domain(x_lo, x_hi, 0, max_count * 1.05 + 1);
  const double width = h.lo == h.hi ? (x_hi - x_lo) / 2.0
                                    : (h.hi - h.lo) / static_cast<double>(h.counts.size());
  const double start = h.lo == h.hi ? h.lo - width / 2.0 : h.lo;
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    double x0 = start + static_cast<double>(i) * width;
    if (h.counts[i] > 0) plot.add_rect(x0, 0, x0 + width, static_cast<double>(h.counts[i]),
                                       "#4878a8");
  }
  return plot.render(stamp);
}

// Term magnitude summary: one five-number box (min, p05, median, p95, max)
// per term, over calculable records.
inline std::string plot_terms(const Dataset& d, Measure m, const std::string& stamp = "") {
  std::vector<double> a_vals, b_vals;
  for (const auto& rec : d.records()) {
    try {
      auto t = measure_terms(m, rec.rates());
      a_vals.push_back(t.a);
      b_vals.push_back(t.b);
    } catch (const ZeroRateError&) {
    }
  }
  svg::Plot plot(std::string(to_string(m)) + " term magnitudes", "term", "magnitude");
  if (a_vals.empty()) return plot.render(stamp);
  std::sort(a_vals.begin(), a_vals.end());
  std::sort(b_vals.begin(), b_vals.end());
  double hi = std::max(a_vals.back(), b_vals.back());
  plot.set_domain(0, 2, 0, hi * 1.1 + 1e-12);
  auto box = [&](double cx, const std::vector<double>& v, const std::string& fill) {
    double q1 = detail::quantile_sorted(v, 0.05), q2 = detail::quantile_sorted(v, 0.5),
           q3 = detail::quantile_sorted(v, 0.95);
    plot.add_polyline({{cx, v.front()}, {cx, v.back()}}, "#333", 1.0);
    plot.add_rect(cx - 0.18, q1, cx + 0.18, q3, fill);
    plot.add_polyline({{cx - 0.18, q2}, {cx + 0.18, q2}}, "#000", 1.5);
  };
  box(0.6, a_vals, "#4878a8");
  box(1.4, b_vals, "#a85848");
  plot.add_text(0.6, -hi * 0.04, "A (FMR side)", 9, "middle");
  plot.add_text(1.4, -hi * 0.04, "B (FNMR side)", 9, "middle");
  return plot.render(stamp);
}

inline std::string plot_sweep(const SweepResult& s, const std::string& stamp = "") {
  svg::Plot plot(std::string(to_string(s.measure)) + " values by alpha", "alpha",
                 std::string(to_string(s.measure)) + " value");
  double lo = s.stats.front().min, hi = s.stats.front().max;
  for (const auto& st : s.stats) {
    lo = std::min(lo, st.min);
    hi = std::max(hi, st.max);
  }
  auto [py_lo, py_hi] = detail::pad_range(lo, hi);
  plot.set_domain(s.alphas.front(), s.alphas.back(), py_lo, py_hi);
  std::vector<double> mins, maxs;
  std::vector<std::pair<double, double>> med;
  for (std::size_t k = 0; k < s.alphas.size(); ++k) {
    mins.push_back(s.stats[k].min);
    maxs.push_back(s.stats[k].max);
    med.emplace_back(s.alphas[k], s.stats[k].median);
  }
  plot.add_band(s.alphas, mins, maxs, "#c8d8e8");
  plot.add_polyline(med, "#204060", 1.8);
  plot.add_legend({{"min-max range", "#c8d8e8"}, {"median", "#204060"}});
  return plot.render(stamp);
}

inline std::string plot_contribution(const SweepResult& s, const std::string& stamp = "") {
  svg::Plot plot("relative contribution of the FMR term (" + std::string(to_string(s.measure)) +
                     ")",
                 "alpha", "contribution of A term");
  plot.set_domain(s.alphas.front(), s.alphas.back(), 0, 1);
  std::vector<std::pair<double, double>> mean_pts, median_pts;
  for (std::size_t k = 0; k < s.alphas.size(); ++k) {
    mean_pts.emplace_back(s.alphas[k], s.stats[k].contribution_mean);
    median_pts.emplace_back(s.alphas[k], s.stats[k].contribution_median);
  }
  plot.add_polyline({{s.alphas.front(), 0.5}, {s.alphas.back(), 0.5}}, "#999", 1.0, "4,3");
  plot.add_polyline(mean_pts, "#a85848", 1.8);
  plot.add_polyline(median_pts, "#204060", 1.8);
  plot.add_legend({{"mean", "#a85848"}, {"median", "#204060"}});
  return plot.render(stamp);
}

inline std::string plot_pareto(const FrontierResult& f, const std::string& stamp = "") {
  svg::Plot plot("Pareto trade-space (" + std::string(to_string(f.measure)) +
                     ", alpha=" + svg::label_num(f.alpha) + ")",
                 "total FNMR", std::string(to_string(f.measure)) + " objective");
  double x_lo = f.points.front().objective_accuracy, x_hi = x_lo;
  double y_lo = f.points.front().objective_fairness, y_hi = y_lo;
  for (const auto& p : f.points) {
    x_lo = std::min(x_lo, p.objective_accuracy);
    x_hi = std::max(x_hi, p.objective_accuracy);
    y_lo = std::min(y_lo, p.objective_fairness);
    y_hi = std::max(y_hi, p.objective_fairness);
  }
  auto [px_lo, px_hi] = detail::pad_range(x_lo, x_hi);
  auto [py_lo, py_hi] = detail::pad_range(y_lo, y_hi);
  const double xp = (px_hi - px_lo) * 0.01, yp = (py_hi - py_lo) * 0.01;  // label offsets
  plot.set_domain(px_lo, px_hi, py_lo, py_hi);

  std::vector<std::pair<double, double>> frontier_pts;
  for (std::size_t i : f.efficient)
    frontier_pts.emplace_back(f.points[i].objective_accuracy, f.points[i].objective_fairness);
  plot.add_polyline(frontier_pts, "#c03020", 1.8);
  for (const auto& p : f.points)
    if (p.classification != Efficiency::efficient)
      plot.add_point(p.objective_accuracy, p.objective_fairness,
                     p.classification == Efficiency::weakly_efficient ? "#d0a030" : "#8899aa");
  for (std::size_t i : f.efficient) {
    const auto& p = f.points[i];
    plot.add_point(p.objective_accuracy, p.objective_fairness, "#c03020", 3.0);
    plot.add_text(p.objective_accuracy + xp, p.objective_fairness + yp, p.algorithm, 8);
  }
  plot.add_legend({{"efficient", "#c03020"},
                   {"weakly efficient", "#d0a030"},
                   {"dominated", "#8899aa"}});
  return plot.render(stamp);
}

// ---------------------------------------------------------------------------
// Full audit bundle
// ---------------------------------------------------------------------------

struct Provenance {
  std::string input_path;
  std::string input_digest;  // fnv1a64 of the raw input bytes
  std::string tool_version{std::string(kVersion)};
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string timestamp;  // empty when suppressed
};

struct AuditParams {
  double alpha = 0.5;
  std::vector<double> grid = make_grid(0.0, 1.0, 0.01);
  Measure pareto_measure = Measure::garbe;
  std::size_t bins = 20;
  FfmcOptions ffmc;
  std::optional<double> inset_fnmr;
};

// Everything the "report" command emits, assembled in memory first. Sweeps
// or frontiers that cannot be computed (e.g. IR on a dataset where every
// record has a zero rate) carry an error string instead.
struct AuditReport {
  Provenance provenance;
  std::size_t record_count = 0;
  std::vector<GroupLabel> groups;
  ValidationReport validation;
  struct MeasureBlock {
    Measure measure{};
    std::vector<ScoreRow> scores;
    std::optional<SweepResult> sweep;
    std::optional<FfmcReport> ffmc;
    std::string error;
  };
  std::vector<MeasureBlock> measures;
  std::optional<FrontierResult> pareto;
  std::string pareto_error;
  AuditParams params;
};

inline AuditReport build_audit_report(const Dataset& d, const AuditParams& params,
                                      Provenance provenance) {
  if (d.empty()) throw DomainError("audit requires a non-empty dataset");
  AuditReport rep;
  rep.provenance = std::move(provenance);
  rep.params = params;
  rep.record_count = d.size();
  rep.groups = d.groups();
  rep.validation = validate(d);

  RiskWeight w(params.alpha);
  for (Measure m : {Measure::fdr, Measure::ir, Measure::garbe}) {
    AuditReport::MeasureBlock block;
    block.measure = m;
    block.scores = score_table(d, m, w);
    try {
      block.sweep = sweep(d, m, params.grid);
    } catch (const ZeroRateError& e) {
      block.error = e.what();
    }
    // the scorecard survives zero-rate datasets (FFMC.1 just reports the
    // failed crossover), so it is not tied to the sweep's fate
    block.ffmc = ffmc_audit(d, m, params.ffmc);
    rep.measures.push_back(std::move(block));
  }
  try {
    rep.pareto = frontier(d, params.pareto_measure, RiskWeight(params.alpha));
  } catch (const ZeroRateError& e) {
    rep.pareto_error = e.what();
  }
  return rep;
}

inline std::string render_provenance_text(const Provenance& p) {
  std::ostringstream os;
  os << "Provenance\n";
  os << "  input:   " << p.input_path << "\n";
  os << "  digest:  fnv1a64:" << p.input_digest << "\n";
  os << "  tool:    fairaudit " << p.tool_version << "\n";
  for (const auto& [k, v] : p.parameters) os << "  param:   " << k << "=" << v << "\n";
  if (!p.timestamp.empty()) os << "  written: " << p.timestamp << "\n";
  return os.str();
}

inline std::string render_report_text(const AuditReport& rep) {
  std::ostringstream os;
  os << "Face recognition fairness audit\n";
  os << "===============================\n\n";
  os << "Dataset: " << rep.record_count << " algorithm(s), " << rep.groups.size()
     << " demographic group(s):";
  for (const auto& g : rep.groups) os << " " << g;
  os << "\n\n";
  os << render_validation_text(rep.validation) << "\n";

  for (const auto& block : rep.measures) {
    os << render_score_text(block.scores, block.measure, rep.params.alpha);
    if (block.sweep) {
      const auto& s = *block.sweep;
      std::size_t k_mid = 0;
      for (std::size_t k = 0; k < s.alphas.size(); ++k)
        if (std::abs(s.alphas[k] - rep.params.alpha) <
            std::abs(s.alphas[k_mid] - rep.params.alpha))
          k_mid = k;
      const auto& st = s.stats[k_mid];
      os << "  at alpha=" << detail::short_num(s.alphas[k_mid]) << ": range ["
         << detail::short_num(st.min) << ", " << detail::short_num(st.max) << "], median "
         << detail::short_num(st.median) << "\n";
      // peak over the sweep, with the alpha attaining it
      double peak = s.stats.front().max;
      double peak_alpha = s.alphas.front();
      for (std::size_t k = 0; k < s.alphas.size(); ++k)
        if (s.stats[k].max > peak) {
          peak = s.stats[k].max;
          peak_alpha = s.alphas[k];
        }
      os << "  sweep maximum " << detail::short_num(peak) << " at alpha="
         << detail::short_num(peak_alpha) << "\n";
      if (!s.incalculable.empty())
        os << "  incalculable records: " << s.incalculable.size() << "\n";
    } else if (!block.error.empty()) {
      os << "  sweep unavailable: " << block.error << "\n";
    }
    os << "\n";
  }

  std::vector<FfmcReport> ffmc_rows;
  for (const auto& block : rep.measures)
    if (block.ffmc) ffmc_rows.push_back(*block.ffmc);
  if (!ffmc_rows.empty()) os << render_ffmc_text(ffmc_rows) << "\n";

  if (rep.pareto)
    os << render_pareto_text(*rep.pareto, rep.params.inset_fnmr) << "\n";
  else if (!rep.pareto_error.empty())
    os << "Pareto trade-space unavailable: " << rep.pareto_error << "\n\n";

  os << render_provenance_text(rep.provenance);
  return os.str();
}

// Writes the full bundle (text report, every delimited table, every plot)
// into a directory. Returns the list of files written, relative to dir.
inline std::vector<std::string> write_audit_bundle(const AuditReport& rep, const Dataset& d,
                                                   const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& content) {
    detail::write_file(dir / name, content);
    written.push_back(name);
  };
  const std::string stamp =
      rep.provenance.timestamp.empty() ? "" : "generated " + rep.provenance.timestamp;

  emit("report.txt", render_report_text(rep));
  emit("validation.csv", validation_csv(rep.validation));

  std::vector<FfmcReport> ffmc_rows;
  for (const auto& block : rep.measures) {
    std::string m(to_string(block.measure));
    emit("score_" + m + ".csv", score_csv(block.scores, block.measure, rep.params.alpha));
    if (block.ffmc) ffmc_rows.push_back(*block.ffmc);
    if (!block.sweep) continue;
    emit("sweep_" + m + "_stats.csv", sweep_stats_csv(*block.sweep));
    emit("sweep_" + m + "_contribution.csv", sweep_contribution_csv(*block.sweep));
    emit("sweep_" + m + "_values.csv", sweep_values_csv(*block.sweep));
    try {
      auto hist = distribution(d, block.measure, RiskWeight(rep.params.alpha), rep.params.bins);
      emit(m + "_distribution.svg", plot_distribution(hist, block.measure, rep.params.alpha,
                                                      stamp));
    } catch (const ZeroRateError&) {
    }
    emit(m + "_terms.svg", plot_terms(d, block.measure, stamp));
    emit(m + "_values_by_alpha.svg", plot_sweep(*block.sweep, stamp));
    emit(m + "_contribution.svg", plot_contribution(*block.sweep, stamp));
  }
  if (!ffmc_rows.empty()) emit("ffmc.csv", ffmc_csv(ffmc_rows));
  if (rep.pareto) {
    emit("pareto.csv", pareto_csv(*rep.pareto));
    emit("pareto_summary.csv", pareto_summary_csv(*rep.pareto));
    emit("pareto.svg", plot_pareto(*rep.pareto, stamp));
    if (rep.params.inset_fnmr) {
      FrontierResult inset = *rep.pareto;
      inset.points.clear();
      inset.efficient.clear();
      for (const auto& p : rep.pareto->points)
        if (p.objective_accuracy < *rep.params.inset_fnmr) inset.points.push_back(p);
      for (std::size_t i = 0; i < inset.points.size(); ++i)
        if (inset.points[i].classification == Efficiency::efficient) inset.efficient.push_back(i);
      emit("pareto_inset.csv", pareto_csv(inset));
      if (!inset.points.empty()) emit("pareto_inset.svg", plot_pareto(inset, stamp));
    }
  }
  return written;
}

}  // namespace fairaudit
