// SPDX-License-Identifier: Apache-2.0
#pragma once

// Command-line surface. Subcommands: validate | score | sweep | ffmc |
// pareto | report. Kept header-only and stream-parameterized so tests can
// drive it in-process.
//
// Exit codes: 0 success, 1 validation failure, 2 parse/read error,
// 3 incalculable-measure error, 4 bad arguments.

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "fairaudit/fairaudit.hpp"

namespace fairaudit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitIncalculable = 3;
inline constexpr int kExitBadArguments = 4;

namespace detail {

using fairaudit::detail::format_double;

struct CommonOptions {
  std::string input;
  std::string format = "wide";
  std::string fmr_scale = "linear";
  std::string label_map_path;
  std::string weights_path;
  std::string out_dir;
  std::string emit = "table";
  bool no_timestamps = false;
};

inline void add_input_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("input", opt.input, "input CSV file")->required();
  cmd->add_option("--format", opt.format, "input layout: wide|long")
      ->check(CLI::IsMember({"wide", "long"}));
  cmd->add_option("--fmr-scale", opt.fmr_scale,
                  "FMR cell encoding: linear|log10 (never autodetected)")
      ->check(CLI::IsMember({"linear", "log10"}));
  cmd->add_option("--label-map", opt.label_map_path,
                  "CSV mapping raw wide-format row labels to fmr:<group>/fnmr:<group>");
  cmd->add_option("--weights", opt.weights_path,
                  "group,count sidecar of mated-comparison counts applied to all records");
}

inline void add_output_options(CLI::App* cmd, CommonOptions& opt, bool with_plots) {
  cmd->add_option("--out", opt.out_dir, "directory to write output files into");
  cmd->add_option("--emit", opt.emit,
                  with_plots ? "output kind: table|report|plots" : "output kind: table|report")
      ->check(with_plots ? CLI::IsMember({"table", "report", "plots"})
                         : CLI::IsMember({"table", "report"}));
  cmd->add_flag("--no-timestamps", opt.no_timestamps,
                "suppress timestamps for byte-identical reruns");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read input file \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct LoadedDataset {
  Dataset data;
  std::string digest;
};

inline LoadedDataset load_dataset(const CommonOptions& opt) {
  const std::string bytes = read_file(opt.input);
  LabelMap label_map;
  if (!opt.label_map_path.empty()) {
    std::istringstream in(read_file(opt.label_map_path));
    label_map = parse_label_map(in);
  }
  const FmrScale scale = opt.fmr_scale == "log10" ? FmrScale::log10 : FmrScale::linear;
  std::istringstream in(bytes);
  Dataset d = opt.format == "long" ? parse_long_csv(in, scale)
                                   : parse_wide_csv(in, scale, label_map);
  if (!opt.weights_path.empty()) {
    std::istringstream win(read_file(opt.weights_path));
    auto counts = parse_counts_sidecar(win);
    try {
      d = d.with_counts(counts);
    } catch (const DomainError& e) {
      throw ParseError("weights sidecar does not match the dataset: " + std::string(e.what()));
    }
  }
  return {std::move(d), fairaudit::detail::fnv1a64_hex(bytes)};
}

inline std::string utc_now() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// "lo:hi" pair, e.g. the FFMC.1 pass band.
inline std::pair<double, double> parse_band(const std::string& spec) {
  auto p = spec.find(':');
  if (p == std::string::npos)
    throw DomainError("band must be \"lo:hi\" (got \"" + spec + "\")");
  auto lo = fairaudit::detail::parse_double(spec.substr(0, p));
  auto hi = fairaudit::detail::parse_double(spec.substr(p + 1));
  if (!lo || !hi || !(*lo <= *hi))
    throw DomainError("band must be numeric \"lo:hi\" with lo <= hi (got \"" + spec + "\")");
  return {*lo, *hi};
}

// Emits one named artifact either to the stream (prefixed with a "# file:"
// separator when several artifacts share it) or into --out.
class Emitter {
 public:
  Emitter(const CommonOptions& opt, std::ostream& out) : opt_(opt), out_(out) {
    if (!opt_.out_dir.empty()) std::filesystem::create_directories(opt_.out_dir);
  }

  void emit(const std::string& name, const std::string& content) {
    if (opt_.out_dir.empty()) {
      if (count_ > 0) out_ << "\n";
      if (multi_) out_ << "# file: " << name << "\n";
      out_ << content;
    } else {
      fairaudit::detail::write_file(std::filesystem::path(opt_.out_dir) / name, content);
      out_ << "wrote " << (std::filesystem::path(opt_.out_dir) / name).string() << "\n";
    }
    ++count_;
  }

  void expect_multiple() { multi_ = true; }

 private:
  const CommonOptions& opt_;
  std::ostream& out_;
  bool multi_ = false;
  std::size_t count_ = 0;
};

inline Provenance make_provenance(const CommonOptions& opt, const LoadedDataset& loaded,
                                  std::vector<std::pair<std::string, std::string>> params) {
  Provenance p;
  p.input_path = opt.input;
  p.input_digest = loaded.digest;
  p.parameters = std::move(params);
  p.parameters.emplace_back("format", opt.format);
  p.parameters.emplace_back("fmr-scale", opt.fmr_scale);
  if (!opt.weights_path.empty()) p.parameters.emplace_back("weights", opt.weights_path);
  if (!opt.label_map_path.empty()) p.parameters.emplace_back("label-map", opt.label_map_path);
  if (!opt.no_timestamps) p.timestamp = utc_now();
  return p;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fairness audit toolkit for disaggregated face recognition error rates"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  detail::CommonOptions opt;
  double alpha = 0.5;
  std::string measure_name = "garbe";
  std::string grid_spec = "0:1:0.01";
  std::size_t bins = 20;
  double inset_fnmr = 0.0;
  std::string band_spec = "0.2:0.8";

  auto* cmd_validate = app.add_subcommand("validate", "check the data criteria on an input file");
  detail::add_input_options(cmd_validate, opt);
  detail::add_output_options(cmd_validate, opt, false);

  auto* cmd_score = app.add_subcommand("score", "per-algorithm fairness measure table");
  detail::add_input_options(cmd_score, opt);
  detail::add_output_options(cmd_score, opt, false);
  cmd_score->add_option("--measure", measure_name, "fdr|ir|garbe");
  cmd_score->add_option("--alpha", alpha, "risk weight for FMR differentials");

  auto* cmd_sweep = app.add_subcommand("sweep", "alpha sweep statistics and contribution curves");
  detail::add_input_options(cmd_sweep, opt);
  detail::add_output_options(cmd_sweep, opt, true);
  cmd_sweep->add_option("--measure", measure_name, "fdr|ir|garbe");
  cmd_sweep->add_option("--grid", grid_spec, "alpha grid start:stop:step, endpoints inclusive");
  cmd_sweep->add_option("--alpha", alpha, "alpha used for the distribution panel");
  cmd_sweep->add_option("--bins", bins, "histogram bins for the distribution panel");

  auto* cmd_ffmc = app.add_subcommand("ffmc", "functional criteria scorecard for all measures");
  detail::add_input_options(cmd_ffmc, opt);
  detail::add_output_options(cmd_ffmc, opt, false);
  cmd_ffmc->add_option("--ffmc-band", band_spec, "FFMC.1 pass band lo:hi for the crossover alpha");
  cmd_ffmc->add_option("--grid", grid_spec,
                       "start:stop:step; only the step is used (crossover always scans 0:1)");

  auto* cmd_pareto = app.add_subcommand("pareto", "accuracy/fairness Pareto frontier");
  detail::add_input_options(cmd_pareto, opt);
  detail::add_output_options(cmd_pareto, opt, true);
  cmd_pareto->add_option("--measure", measure_name, "fdr|ir|garbe");
  cmd_pareto->add_option("--alpha", alpha, "risk weight for FMR differentials");
  auto* inset_opt =
      cmd_pareto->add_option("--inset-fnmr", inset_fnmr, "also emit a view of points below this total FNMR");

  auto* cmd_report = app.add_subcommand("report", "full audit bundle (tables, scorecard, plots)");
  detail::add_input_options(cmd_report, opt);
  detail::add_output_options(cmd_report, opt, true);
  cmd_report->add_option("--measure", measure_name, "measure for the Pareto trade-space");
  cmd_report->add_option("--alpha", alpha, "risk weight for per-algorithm tables");
  cmd_report->add_option("--grid", grid_spec, "alpha grid start:stop:step");
  cmd_report->add_option("--bins", bins, "histogram bins");
  auto* report_inset_opt =
      cmd_report->add_option("--inset-fnmr", inset_fnmr, "inset threshold for the Pareto view");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));

    detail::Emitter emitter(opt, out);
    const std::string stamp = opt.no_timestamps ? "" : "generated " + detail::utc_now();

    if (*cmd_validate) {
      auto loaded = detail::load_dataset(opt);
      auto rep = validate(loaded.data);
      if (opt.emit == "report")
        emitter.emit("validation.txt", render_validation_text(rep));
      else
        emitter.emit("validation.csv", validation_csv(rep));
      return rep.ok() ? kExitOk : kExitValidationFailure;
    }

    if (*cmd_score) {
      Measure m = parse_measure(measure_name);
      RiskWeight w(alpha);
      auto loaded = detail::load_dataset(opt);
      auto rows = score_table(loaded.data, m, w);
      std::string base = "score_" + std::string(to_string(m));
      if (opt.emit == "report")
        emitter.emit(base + ".txt", render_score_text(rows, m, alpha));
      else
        emitter.emit(base + ".csv", score_csv(rows, m, alpha));
      return kExitOk;
    }

    if (*cmd_sweep) {
      Measure m = parse_measure(measure_name);
      auto grid = parse_grid_spec(grid_spec);
      auto loaded = detail::load_dataset(opt);
      auto s = sweep(loaded.data, m, grid);
      std::string prefix = "sweep_" + std::string(to_string(m));
      if (opt.emit == "plots") {
        if (opt.out_dir.empty())
          throw DomainError("--emit plots requires --out to name a directory");
        emitter.expect_multiple();
        auto hist = distribution(loaded.data, m, RiskWeight(alpha), bins);
        emitter.emit(std::string(to_string(m)) + "_distribution.svg",
                     plot_distribution(hist, m, alpha, stamp));
        emitter.emit(std::string(to_string(m)) + "_terms.svg",
                     plot_terms(loaded.data, m, stamp));
        emitter.emit(std::string(to_string(m)) + "_values_by_alpha.svg", plot_sweep(s, stamp));
        emitter.emit(std::string(to_string(m)) + "_contribution.svg",
                     plot_contribution(s, stamp));
      } else if (opt.emit == "report") {
        std::ostringstream os;
        os << "Sweep of " << to_string(m) << " over " << s.alphas.size() << " alpha value(s), "
           << s.calculable_count() << "/" << s.algorithms.size() << " record(s) calculable\n";
        auto cross_med = crossover_alpha(s, Statistic::median);
        auto cross_mean = crossover_alpha(s, Statistic::mean);
        os << "  median contribution_a reaches 0.5 at alpha="
           << (cross_med ? detail::format_double(*cross_med) : "never") << "\n";
        os << "  mean contribution_a reaches 0.5 at alpha="
           << (cross_mean ? detail::format_double(*cross_mean) : "never") << "\n";
        emitter.emit(prefix + "_summary.txt", os.str());
      } else {
        emitter.expect_multiple();
        emitter.emit(prefix + "_stats.csv", sweep_stats_csv(s));
        emitter.emit(prefix + "_contribution.csv", sweep_contribution_csv(s));
        emitter.emit(prefix + "_values.csv", sweep_values_csv(s));
      }
      return kExitOk;
    }

    if (*cmd_ffmc) {
      FfmcOptions fopt;
      std::tie(fopt.band_lo, fopt.band_hi) = detail::parse_band(band_spec);
      auto grid = parse_grid_spec(grid_spec);
      fopt.resolution = grid.size() > 1 ? grid[1] - grid[0] : 0.01;
      auto loaded = detail::load_dataset(opt);
      std::vector<FfmcReport> reports;
      for (Measure m : {Measure::fdr, Measure::ir, Measure::garbe})
        reports.push_back(ffmc_audit(loaded.data, m, fopt));
      if (opt.emit == "report")
        emitter.emit("ffmc.txt", render_ffmc_text(reports));
      else
        emitter.emit("ffmc.csv", ffmc_csv(reports));
      return kExitOk;
    }

    if (*cmd_pareto) {
      Measure m = parse_measure(measure_name);
      auto loaded = detail::load_dataset(opt);
      auto f = frontier(loaded.data, m, RiskWeight(alpha));
      std::optional<double> inset;
      if (*inset_opt) inset = inset_fnmr;
      if (opt.emit == "plots") {
        if (opt.out_dir.empty())
          throw DomainError("--emit plots requires --out to name a directory");
        emitter.emit("pareto.svg", plot_pareto(f, stamp));
      } else if (opt.emit == "report") {
        emitter.emit("pareto.txt", render_pareto_text(f, inset));
      } else {
        emitter.expect_multiple();
        emitter.emit("pareto.csv", pareto_csv(f));
        emitter.emit("pareto_summary.csv", pareto_summary_csv(f));
        if (inset) {
          FrontierResult view = f;
          view.points.clear();
          view.efficient.clear();
          for (const auto& p : f.points)
            if (p.objective_accuracy < *inset) view.points.push_back(p);
          for (std::size_t i = 0; i < view.points.size(); ++i)
            if (view.points[i].classification == Efficiency::efficient)
              view.efficient.push_back(i);
          emitter.emit("pareto_inset.csv", pareto_csv(view));
        }
      }
      return kExitOk;
    }

    if (*cmd_report) {
      if (opt.out_dir.empty()) throw DomainError("report requires --out to name a directory");
      Measure m = parse_measure(measure_name);
      AuditParams params;
      params.alpha = alpha;
      params.grid = parse_grid_spec(grid_spec);
      params.pareto_measure = m;
      params.bins = bins;
      if (*report_inset_opt) params.inset_fnmr = inset_fnmr;
      auto loaded = detail::load_dataset(opt);
      auto provenance = detail::make_provenance(
          opt, loaded,
          {{"measure", measure_name},
           {"alpha", detail::format_double(alpha)},
           {"grid", grid_spec},
           {"bins", std::to_string(bins)}});
      auto report = build_audit_report(loaded.data, params, provenance);
      auto written = write_audit_bundle(report, loaded.data, opt.out_dir);
      out << "wrote " << written.size() << " file(s) to " << opt.out_dir << "\n";
      return kExitOk;
    }

    err << "error: no subcommand given\n";
    return kExitBadArguments;
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const ZeroRateError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIncalculable;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  }
}

}  // namespace fairaudit::cli
