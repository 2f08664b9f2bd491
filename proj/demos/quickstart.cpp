// SPDX-License-Identifier: Apache-2.0
//
// Minimal library walkthrough: build a record, score it with all three
// measures, then run a two-record Pareto selection.

#include <iostream>

#include "fairaudit/fairaudit.hpp"

int main() {
  using namespace fairaudit;

  GroupRates rates({{"group_a", 1e-5}, {"group_b", 3e-5}},   // FMR per group
                   {{"group_a", 0.013}, {"group_b", 0.065}});  // FNMR per group
  RiskWeight w(0.5);

  for (Measure m : {Measure::fdr, Measure::ir, Measure::garbe}) {
    auto r = evaluate(m, rates, w);
    std::cout << to_string(m) << " = " << r.value << "  (A=" << r.term_a << ", B=" << r.term_b
              << ", contribution_a=" << r.contribution_a << ")\n";
  }

  Dataset d({AlgorithmRecord("matcher-1", rates),
             AlgorithmRecord("matcher-2", GroupRates({{"group_a", 2e-5}, {"group_b", 2.2e-5}},
                                                     {{"group_a", 0.020}, {"group_b", 0.024}}))});
  auto f = frontier(d, Measure::garbe, w);
  for (const auto& p : f.points)
    std::cout << p.algorithm << ": total_fnmr=" << p.objective_accuracy
              << " garbe=" << p.measure_value << " -> " << to_string(p.classification) << "\n";
  return 0;
}
