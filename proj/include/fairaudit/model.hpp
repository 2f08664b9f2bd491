// SPDX-License-Identifier: Apache-2.0
#pragma once

// Domain model for demographically disaggregated face-recognition error
// rates: per-group FMR/FNMR at one operating threshold per algorithm, plus
// CSV ingestion (wide and long layouts) and dataset-level validation.
//
// All types are immutable after construction and safe for concurrent reads.

#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fairaudit/detail/common.hpp"
#include "fairaudit/errors.hpp"

namespace fairaudit {

// Group labels are opaque strings compared by exact equality.
using GroupLabel = std::string;

// How FMR cells are encoded in an input file. Never autodetected.
enum class FmrScale { linear, log10 };

inline const char* to_string(FmrScale s) {
  return s == FmrScale::linear ? "linear" : "log10";
}

// Per-group false match and false non-match rates at one threshold.
// Both maps share the same key set of at least two groups; every rate is
// finite and in [0,1]. Rates of exactly 0 or 1 are representable; their
// consequences (e.g. ratio measures becoming incalculable) are handled per
// measure, not here.
class GroupRates {
 public:
  GroupRates(std::map<GroupLabel, double> fmr, std::map<GroupLabel, double> fnmr)
      : fmr_(std::move(fmr)), fnmr_(std::move(fnmr)) {
    if (fmr_.size() < 2) throw DomainError("group rates need at least 2 demographic groups");
    if (fmr_.size() != fnmr_.size())
      throw DomainError("FMR and FNMR maps must cover the same groups");
    auto it_b = fnmr_.begin();
    for (auto it_a = fmr_.begin(); it_a != fmr_.end(); ++it_a, ++it_b) {
      if (it_a->first != it_b->first)
        throw DomainError("FMR and FNMR maps must cover the same groups (mismatch at \"" +
                          it_a->first + "\" vs \"" + it_b->first + "\")");
      check_rate(it_a->first, "FMR", it_a->second);
      check_rate(it_b->first, "FNMR", it_b->second);
    }
  }

  const std::map<GroupLabel, double>& fmr() const { return fmr_; }
  const std::map<GroupLabel, double>& fnmr() const { return fnmr_; }
  std::size_t group_count() const { return fmr_.size(); }

  std::vector<GroupLabel> groups() const {
    std::vector<GroupLabel> out;
    out.reserve(fmr_.size());
    for (const auto& [g, _] : fmr_) out.push_back(g);
    return out;
  }
  std::vector<double> fmr_values() const { return values_of(fmr_); }
  std::vector<double> fnmr_values() const { return values_of(fnmr_); }

  bool operator==(const GroupRates& other) const = default;

 private:
  static void check_rate(const GroupLabel& g, const char* kind, double v) {
    if (g.empty()) throw DomainError("group labels must be non-empty");
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
      throw DomainError(std::string(kind) + " for group \"" + g + "\" is " +
                        detail::format_double(v) + ", outside [0,1]");
  }
  static std::vector<double> values_of(const std::map<GroupLabel, double>& m) {
    std::vector<double> out;
    out.reserve(m.size());
    for (const auto& [_, v] : m) out.push_back(v);
    return out;
  }

  std::map<GroupLabel, double> fmr_;
  std::map<GroupLabel, double> fnmr_;
};

// A named algorithm with its rates, an optional free-text descriptor of the
// operating threshold, and optional per-group mated-comparison counts (used
// as FNMR weights when computing a total FNMR).
class AlgorithmRecord {
 public:
  AlgorithmRecord(std::string name, GroupRates rates,
                  std::optional<std::string> threshold_note = std::nullopt,
                  std::optional<std::map<GroupLabel, std::int64_t>> mated_counts = std::nullopt)
      : name_(std::move(name)),
        rates_(std::move(rates)),
        threshold_note_(std::move(threshold_note)),
        mated_counts_(std::move(mated_counts)) {
    if (name_.empty()) throw DomainError("algorithm name must be non-empty");
    if (mated_counts_) {
      if (mated_counts_->size() != rates_.group_count())
        throw DomainError("mated counts for \"" + name_ + "\" must cover exactly the rate groups");
      auto rit = rates_.fmr().begin();
      for (const auto& [g, c] : *mated_counts_) {
        if (g != rit->first)
          throw DomainError("mated counts for \"" + name_ + "\" must cover exactly the rate groups");
        if (c < 1)
          throw DomainError("mated count for \"" + name_ + "\"/\"" + g + "\" must be >= 1");
        ++rit;
      }
    }
  }

  const std::string& name() const { return name_; }
  const GroupRates& rates() const { return rates_; }
  const std::optional<std::string>& threshold_note() const { return threshold_note_; }
  const std::optional<std::map<GroupLabel, std::int64_t>>& mated_counts() const {
    return mated_counts_;
  }

  AlgorithmRecord with_counts(std::map<GroupLabel, std::int64_t> counts) const {
    return AlgorithmRecord(name_, rates_, threshold_note_, std::move(counts));
  }

  bool operator==(const AlgorithmRecord& other) const = default;

 private:
  std::string name_;
  GroupRates rates_;
  std::optional<std::string> threshold_note_;
  std::optional<std::map<GroupLabel, std::int64_t>> mated_counts_;
};

// An ordered collection of algorithm records. Names are unique. Group-set
// consistency across records is a data criterion checked by validate()
// rather than enforced here, so that audits can report violations instead
// of refusing to represent them.
class Dataset {
 public:
  Dataset() = default;

  explicit Dataset(std::vector<AlgorithmRecord> records) : records_(std::move(records)) {
    std::set<std::string> seen;
    for (const auto& r : records_) {
      if (!seen.insert(r.name()).second)
        throw DomainError("duplicate algorithm name \"" + r.name() + "\"");
    }
  }

  const std::vector<AlgorithmRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  const AlgorithmRecord* find(const std::string& name) const {
    for (const auto& r : records_)
      if (r.name() == name) return &r;
    return nullptr;
  }

  // Group labels of the first record (the common set for well-formed data).
  std::vector<GroupLabel> groups() const {
    return records_.empty() ? std::vector<GroupLabel>{} : records_.front().rates().groups();
  }

  // Applies one global mated-count map to every record.
  Dataset with_counts(const std::map<GroupLabel, std::int64_t>& counts) const {
    std::vector<AlgorithmRecord> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.with_counts(counts));
    return Dataset(std::move(out));
  }

  bool operator==(const Dataset& other) const = default;

 private:
  std::vector<AlgorithmRecord> records_;
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

// Optional rewrite of wide-format row labels before they are interpreted.
// Lets arbitrary published headers bind to the canonical
// "fmr:<group>" / "fnmr:<group>" form without code changes.
using LabelMap = std::map<std::string, std::string>;

namespace detail {

inline std::vector<std::vector<std::string>> read_csv_rows(std::istream& in,
                                                           std::vector<std::size_t>* line_numbers) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    rows.push_back(split_csv(line, lineno));
    if (line_numbers) line_numbers->push_back(lineno);
  }
  return rows;
}

inline double parse_rate_cell(const std::string& cell, FmrScale scale, const char* kind,
                              std::size_t row, std::size_t col) {
  auto v = parse_double(cell);
  if (!v || !std::isfinite(*v))
    throw ParseError(std::string("non-numeric ") + kind + " cell \"" + cell + "\"", row, col);
  double rate = *v;
  if (scale == FmrScale::log10) rate = std::pow(10.0, rate);
  if (!std::isfinite(rate) || rate < 0.0 || rate > 1.0)
    throw ParseError(std::string(kind) + " value " + format_double(rate) + " is outside [0,1]",
                     row, col);
  return rate;
}

}  // namespace detail

// Wide layout: row 1 = algorithm names, then one row per (rate kind, group)
// labelled "fmr:<group>" or "fnmr:<group>" in the first column. fmr_scale
// declares whether FMR cells are linear probabilities or log10 values
// (published tables often report log10(FMR)); FNMR cells are always linear.
inline Dataset parse_wide_csv(std::istream& in, FmrScale fmr_scale = FmrScale::linear,
                              const LabelMap& label_map = {}) {
  std::vector<std::size_t> lines;
  auto rows = detail::read_csv_rows(in, &lines);
  if (rows.empty()) throw ParseError("empty input: expected a header row of algorithm names");

  const auto& header = rows.front();
  if (header.size() < 2) throw ParseError("header row has no algorithm columns", lines[0]);
  const std::size_t n_algs = header.size() - 1;

  std::vector<std::string> names;
  names.reserve(n_algs);
  {
    std::set<std::string> seen;
    for (std::size_t c = 1; c < header.size(); ++c) {
      std::string name(detail::trim(header[c]));
      if (name.empty()) throw ParseError("empty algorithm name", lines[0], c + 1);
      if (!seen.insert(name).second)
        throw ParseError("duplicate algorithm name \"" + name + "\"", lines[0], c + 1);
      names.push_back(std::move(name));
    }
  }

  // Rate rows, classified by label prefix.
  std::vector<std::map<GroupLabel, double>> fmr(n_algs), fnmr(n_algs);
  std::set<GroupLabel> fmr_groups, fnmr_groups;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    std::string label(detail::trim(row[0]));
    if (auto it = label_map.find(label); it != label_map.end()) label = it->second;

    bool is_fmr = label.rfind("fmr:", 0) == 0;
    bool is_fnmr = label.rfind("fnmr:", 0) == 0;
    if (!is_fmr && !is_fnmr)
      throw ParseError("unrecognized row label \"" + label +
                           "\" (expected \"fmr:<group>\" or \"fnmr:<group>\")",
                       lines[r], 1);
    GroupLabel group = label.substr(is_fmr ? 4 : 5);
    if (group.empty()) throw ParseError("row label \"" + label + "\" has an empty group name",
                                        lines[r], 1);
    if (row.size() != n_algs + 1)
      throw ParseError("ragged row \"" + label + "\": has " + std::to_string(row.size() - 1) +
                           " cells, header has " + std::to_string(n_algs),
                       lines[r]);

    auto& groups = is_fmr ? fmr_groups : fnmr_groups;
    if (!groups.insert(group).second)
      throw ParseError("duplicate row label \"" + label + "\"", lines[r], 1);
    for (std::size_t c = 1; c < row.size(); ++c) {
      double rate = detail::parse_rate_cell(row[c], is_fmr ? fmr_scale : FmrScale::linear,
                                            is_fmr ? "FMR" : "FNMR", lines[r], c + 1);
      (is_fmr ? fmr : fnmr)[c - 1][group] = rate;
    }
  }

  if (fmr_groups.size() < 2)
    throw ParseError("found " + std::to_string(fmr_groups.size()) +
                     " FMR group row(s); need at least 2 demographic groups");
  if (fmr_groups != fnmr_groups)
    throw ParseError("FMR and FNMR rows cover different group sets");

  std::vector<AlgorithmRecord> records;
  records.reserve(n_algs);
  for (std::size_t i = 0; i < n_algs; ++i)
    records.emplace_back(names[i], GroupRates(std::move(fmr[i]), std::move(fnmr[i])));
  return Dataset(std::move(records));
}

// Long (tidy) layout: header "algorithm,group,fmr,fnmr[,mated_count]", one
// row per (algorithm, group). The observed algorithms x groups cross must be
// complete. Column order is taken from the header.
inline Dataset parse_long_csv(std::istream& in, FmrScale fmr_scale = FmrScale::linear) {
  std::vector<std::size_t> lines;
  auto rows = detail::read_csv_rows(in, &lines);
  if (rows.empty()) throw ParseError("empty input: expected a header row");

  std::map<std::string, std::size_t> col;
  for (std::size_t c = 0; c < rows[0].size(); ++c) {
    std::string name(detail::trim(rows[0][c]));
    if (!col.emplace(name, c).second)
      throw ParseError("duplicate column \"" + name + "\"", lines[0], c + 1);
  }
  for (const char* required : {"algorithm", "group", "fmr", "fnmr"})
    if (!col.count(required))
      throw ParseError(std::string("missing required column \"") + required + "\"", lines[0]);
  for (const auto& [name, c] : col)
    if (name != "algorithm" && name != "group" && name != "fmr" && name != "fnmr" &&
        name != "mated_count")
      throw ParseError("unknown column \"" + name + "\"", lines[0], c + 1);
  const bool has_counts = col.count("mated_count") > 0;
  const std::size_t width = rows[0].size();

  struct Cell {
    double fmr, fnmr;
    std::optional<std::int64_t> count;
  };
  std::vector<std::string> alg_order;
  std::set<GroupLabel> group_set;
  std::map<std::string, std::map<GroupLabel, Cell>> table;

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != width)
      throw ParseError("ragged row: has " + std::to_string(row.size()) + " cells, header has " +
                           std::to_string(width),
                       lines[r]);
    std::string alg(detail::trim(row[col["algorithm"]]));
    GroupLabel group(detail::trim(row[col["group"]]));
    if (alg.empty()) throw ParseError("empty algorithm cell", lines[r], col["algorithm"] + 1);
    if (group.empty()) throw ParseError("empty group cell", lines[r], col["group"] + 1);

    Cell cell{};
    cell.fmr = detail::parse_rate_cell(row[col["fmr"]], fmr_scale, "FMR", lines[r], col["fmr"] + 1);
    cell.fnmr = detail::parse_rate_cell(row[col["fnmr"]], FmrScale::linear, "FNMR", lines[r],
                                        col["fnmr"] + 1);
    if (has_counts) {
      auto raw = row[col["mated_count"]];
      auto n = detail::parse_int(raw);
      if (!n || *n < 1)
        throw ParseError("mated_count cell \"" + raw + "\" is not a positive integer", lines[r],
                         col["mated_count"] + 1);
      cell.count = *n;
    }

    if (!table.count(alg)) alg_order.push_back(alg);
    auto [_, inserted] = table[alg].emplace(group, cell);
    if (!inserted)
      throw ParseError("duplicate row for (\"" + alg + "\", \"" + group + "\")", lines[r]);
    group_set.insert(group);
  }

  if (group_set.size() < 2)
    throw ParseError("found " + std::to_string(group_set.size()) +
                     " group(s); need at least 2 demographic groups");

  std::vector<AlgorithmRecord> records;
  records.reserve(alg_order.size());
  for (const auto& alg : alg_order) {
    const auto& cells = table[alg];
    for (const auto& g : group_set)
      if (!cells.count(g))
        throw ParseError("missing row for (\"" + alg + "\", \"" + g +
                         "\"): algorithms x groups cross is incomplete");
    std::map<GroupLabel, double> fmr, fnmr;
    std::map<GroupLabel, std::int64_t> counts;
    for (const auto& [g, cell] : cells) {
      fmr[g] = cell.fmr;
      fnmr[g] = cell.fnmr;
      if (cell.count) counts[g] = *cell.count;
    }
    std::optional<std::map<GroupLabel, std::int64_t>> opt_counts;
    if (has_counts) opt_counts = std::move(counts);
    records.emplace_back(alg, GroupRates(std::move(fmr), std::move(fnmr)), std::nullopt,
                         std::move(opt_counts));
  }
  return Dataset(std::move(records));
}

// Weights sidecar: header "group,count", applied to all records.
inline std::map<GroupLabel, std::int64_t> parse_counts_sidecar(std::istream& in) {
  std::vector<std::size_t> lines;
  auto rows = detail::read_csv_rows(in, &lines);
  if (rows.empty()) throw ParseError("empty weights file: expected header \"group,count\"");
  if (rows[0].size() != 2 || detail::trim(rows[0][0]) != "group" ||
      detail::trim(rows[0][1]) != "count")
    throw ParseError("weights file header must be \"group,count\"", lines[0]);
  std::map<GroupLabel, std::int64_t> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 2) throw ParseError("ragged row in weights file", lines[r]);
    GroupLabel g(detail::trim(rows[r][0]));
    auto n = detail::parse_int(rows[r][1]);
    if (g.empty()) throw ParseError("empty group cell in weights file", lines[r], 1);
    if (!n || *n < 1)
      throw ParseError("count cell \"" + rows[r][1] + "\" is not a positive integer", lines[r], 2);
    if (!out.emplace(g, *n).second)
      throw ParseError("duplicate group \"" + g + "\" in weights file", lines[r], 1);
  }
  if (out.empty()) throw ParseError("weights file has no data rows");
  return out;
}

// Parses a label-map file: lines of "raw_label,canonical_label".
// '#' starts a comment line.
inline LabelMap parse_label_map(std::istream& in) {
  LabelMap out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto cells = detail::split_csv(line, lineno);
    if (cells.size() != 2)
      throw ParseError("label map lines must be \"raw_label,canonical_label\"", lineno);
    std::string from(detail::trim(cells[0])), to(detail::trim(cells[1]));
    if (from.empty() || to.empty()) throw ParseError("empty label in label map", lineno);
    if (!out.emplace(from, to).second)
      throw ParseError("duplicate label \"" + from + "\" in label map", lineno);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

// Canonical wide form. Mated counts do not fit this layout and are omitted.
inline void write_wide_csv(const Dataset& d, std::ostream& out) {
  out << "algorithm";
  for (const auto& r : d.records()) out << ',' << detail::csv_escape(r.name());
  out << '\n';
  for (const auto& g : d.groups()) {
    out << detail::csv_escape("fmr:" + g);
    for (const auto& r : d.records()) out << ',' << detail::format_double(r.rates().fmr().at(g));
    out << '\n';
  }
  for (const auto& g : d.groups()) {
    out << detail::csv_escape("fnmr:" + g);
    for (const auto& r : d.records()) out << ',' << detail::format_double(r.rates().fnmr().at(g));
    out << '\n';
  }
}

// Long form; includes the mated_count column only when every record has one.
inline void write_long_csv(const Dataset& d, std::ostream& out) {
  bool with_counts = !d.empty();
  for (const auto& r : d.records())
    if (!r.mated_counts()) with_counts = false;
  out << "algorithm,group,fmr,fnmr" << (with_counts ? ",mated_count" : "") << '\n';
  for (const auto& r : d.records()) {
    for (const auto& [g, v] : r.rates().fmr()) {
      out << detail::csv_escape(r.name()) << ',' << detail::csv_escape(g) << ','
          << detail::format_double(v) << ',' << detail::format_double(r.rates().fnmr().at(g));
      if (with_counts) out << ',' << r.mated_counts()->at(g);
      out << '\n';
    }
  }
}

inline std::string to_wide_csv(const Dataset& d) {
  std::ostringstream os;
  write_wide_csv(d, os);
  return os.str();
}

inline std::string to_long_csv(const Dataset& d) {
  std::ostringstream os;
  write_long_csv(d, os);
  return os.str();
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class CheckStatus { pass, fail, info };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "info";
  }
}

// Outcome of one data criterion or one warning probe. Validation never
// throws; it reports.
struct ValidationItem {
  std::string id;       // "C.1".."C.5" or "W.zero-rate"
  CheckStatus status;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationItem> criteria;
  std::vector<ValidationItem> warnings;  // zero-rate probes; never affect ok()

  // True when every pass/fail criterion passes.
  bool ok() const {
    for (const auto& c : criteria)
      if (c.status == CheckStatus::fail) return false;
    return true;
  }
};

// Checks the five data criteria for summative fairness evaluation:
//   C.1 false match rates present
//   C.2 false non-match rates present
//   C.3 a single threshold per algorithm
//   C.4 rates disaggregated by demographic group, consistently across records
//   C.5 number of algorithms covered (reported as a count; how many is
//       "representative" is left to the caller)
// plus a warning for any group with a zero FMR or FNMR, which makes ratio
// measures (IR) incalculable for that record.
inline ValidationReport validate(const Dataset& d) {
  ValidationReport rep;
  const auto n = d.size();

  // C.1 / C.2: rate presence. The type system guarantees both maps are
  // populated for every constructed record, so these report on coverage.
  rep.criteria.push_back({"C.1", n > 0 ? CheckStatus::pass : CheckStatus::fail,
                          n > 0 ? "per-group FMR present for all " + std::to_string(n) + " record(s)"
                                : "dataset has no records"});
  rep.criteria.push_back({"C.2", n > 0 ? CheckStatus::pass : CheckStatus::fail,
                          n > 0 ? "per-group FNMR present for all " + std::to_string(n) + " record(s)"
                                : "dataset has no records"});

  // C.3: the model stores one rate set per algorithm, i.e. a single
  // threshold; echo any threshold descriptors.
  std::size_t with_note = 0;
  for (const auto& r : d.records())
    if (r.threshold_note()) ++with_note;
  rep.criteria.push_back({"C.3", n > 0 ? CheckStatus::pass : CheckStatus::fail,
                          "one rate set per algorithm; " + std::to_string(with_note) +
                              " record(s) carry a threshold descriptor"});

  // C.4: disaggregation by a consistent group set.
  {
    CheckStatus st = n > 0 ? CheckStatus::pass : CheckStatus::fail;
    std::string detail;
    if (n > 0) {
      auto ref = d.records().front().rates().groups();
      detail = std::to_string(ref.size()) + " demographic group(s) per record";
      for (const auto& r : d.records()) {
        if (r.rates().groups() != ref) {
          st = CheckStatus::fail;
          detail = "group sets differ between \"" + d.records().front().name() + "\" and \"" +
                   r.name() + "\"";
          break;
        }
      }
    } else {
      detail = "dataset has no records";
    }
    rep.criteria.push_back({"C.4", st, detail});
  }

  // C.5: algorithm coverage, reported as a count.
  rep.criteria.push_back({"C.5", CheckStatus::info,
                          std::to_string(n) + " algorithm record(s)"});

  for (const auto& r : d.records()) {
    for (const auto& [g, v] : r.rates().fmr())
      if (v == 0.0)
        rep.warnings.push_back({"W.zero-rate", CheckStatus::info,
                                "\"" + r.name() + "\": FMR is 0 for group \"" + g +
                                    "\"; IR is incalculable for this record"});
    for (const auto& [g, v] : r.rates().fnmr())
      if (v == 0.0)
        rep.warnings.push_back({"W.zero-rate", CheckStatus::info,
                                "\"" + r.name() + "\": FNMR is 0 for group \"" + g +
                                    "\"; IR is incalculable for this record"});
  }
  return rep;
}

}  // namespace fairaudit
