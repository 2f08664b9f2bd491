// SPDX-License-Identifier: Apache-2.0
#pragma once

// Shared test utilities: independent brute-force oracles, random input
// generators, and a scratch-directory guard. The oracles deliberately follow
// the literal textbook formulations so they stay independent of the library
// implementations they check.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fairaudit/model.hpp"
#include "fairaudit/pareto.hpp"

namespace testsupport {

// |a-b| within tol, measured absolutely for small magnitudes and relatively
// for large ones.
inline bool approx(double a, double b, double tol = 1e-12) {
  double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

// Literal corrected Gini: (n/(n-1)) * sum_i sum_j |x_i - x_j| / (2 n^2 mean).
inline double literal_gini(const std::vector<double>& x) {
  const auto n = static_cast<double>(x.size());
  double mean = 0;
  for (double v : x) mean += v;
  mean /= n;
  if (mean == 0.0) return 0.0;
  double dsum = 0;
  for (double a : x)
    for (double b : x) dsum += std::abs(a - b);
  return (n / (n - 1.0)) * dsum / (2.0 * n * n * mean);
}

// Exhaustive pairwise domination, both objectives minimized.
inline std::vector<fairaudit::Efficiency> classify_oracle(
    const std::vector<std::pair<double, double>>& pts) {
  using fairaudit::Efficiency;
  std::vector<Efficiency> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false, strictly = false;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      const bool le_a = pts[j].first <= pts[i].first, le_f = pts[j].second <= pts[i].second;
      const bool lt_a = pts[j].first < pts[i].first, lt_f = pts[j].second < pts[i].second;
      if (le_a && le_f && (lt_a || lt_f)) dominated = true;
      if (lt_a && lt_f) strictly = true;
    }
    out.push_back(!dominated ? Efficiency::efficient
                             : (!strictly ? Efficiency::weakly_efficient
                                          : Efficiency::dominated));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

inline std::vector<std::string> group_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("g" + std::to_string(i));
  return out;
}

inline fairaudit::GroupRates make_rates(const std::vector<double>& fmr,
                                        const std::vector<double>& fnmr) {
  std::map<std::string, double> fm, fn;
  auto labels = group_labels(fmr.size());
  for (std::size_t i = 0; i < fmr.size(); ++i) {
    fm[labels[i]] = fmr[i];
    fn[labels[i]] = fnmr[i];
  }
  return fairaudit::GroupRates(std::move(fm), std::move(fn));
}

// Uniform rates in [0,1]; with zero_prob > 0, individual entries are zeroed.
inline fairaudit::GroupRates random_rates(std::mt19937_64& rng, std::size_t n_groups,
                                          double zero_prob = 0.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> fmr, fnmr;
  for (std::size_t i = 0; i < n_groups; ++i) {
    fmr.push_back(unit(rng) < zero_prob ? 0.0 : unit(rng));
    fnmr.push_back(unit(rng) < zero_prob ? 0.0 : unit(rng));
  }
  return make_rates(fmr, fnmr);
}

// All groups share one FMR and one FNMR, both strictly positive.
inline fairaudit::GroupRates fair_rates(std::mt19937_64& rng, std::size_t n_groups) {
  std::uniform_real_distribution<double> unit(1e-6, 1.0);
  double p = unit(rng), q = unit(rng);
  return make_rates(std::vector<double>(n_groups, p), std::vector<double>(n_groups, q));
}

// Synthetic corpus with the scale structure of operational face recognition
// rates: per-group FMRs orders of magnitude below FNMRs. Useful for
// exercising sweep/scorecard behavior on realistically skewed inputs.
inline fairaudit::Dataset paper_like_dataset(std::size_t n_algorithms = 126,
                                             std::size_t n_groups = 8,
                                             std::uint64_t seed = 20260810) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<fairaudit::AlgorithmRecord> records;
  for (std::size_t a = 0; a < n_algorithms; ++a) {
    const double fmr_center = std::pow(10.0, -5.5 + unit(rng));     // ~1e-5.5 .. 1e-4.5
    const double fnmr_center = std::pow(10.0, -2.3 + 1.2 * unit(rng));  // ~5e-3 .. 8e-2
    std::vector<double> fmr, fnmr;
    for (std::size_t g = 0; g < n_groups; ++g) {
      fmr.push_back(fmr_center * std::pow(10.0, 1.7 * (unit(rng) - 0.3)));
      fnmr.push_back(fnmr_center * std::pow(10.0, 0.8 * (unit(rng) - 0.3)));
    }
    std::map<std::string, std::int64_t> counts;
    auto labels = group_labels(n_groups);
    for (const auto& g : labels) counts[g] = 1000 + static_cast<std::int64_t>(unit(rng) * 9000);
    records.emplace_back("alg-" + std::to_string(a), make_rates(fmr, fnmr), std::nullopt,
                         counts);
  }
  return fairaudit::Dataset(std::move(records));
}

// RAII scratch directory under the system temp root.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    auto base = std::filesystem::temp_directory_path();
    for (int i = 0; i < 10000; ++i) {
      auto candidate = base / ("fairaudit_" + tag + "_" + std::to_string(i));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path_ = candidate;
        return;
      }
    }
    throw std::runtime_error("could not create scratch directory");
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

  std::filesystem::path write(const std::string& name, const std::string& content) const {
    auto p = path_ / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace testsupport
