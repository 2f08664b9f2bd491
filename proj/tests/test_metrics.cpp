// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "fairaudit/audit.hpp"
#include "fairaudit/metrics.hpp"
#include "support.hpp"

using namespace fairaudit;
using testsupport::approx;
using testsupport::literal_gini;
using testsupport::make_rates;

TEST_CASE("gini matches the published worked example") {
  CHECK(approx(gini({5.0, 5.0, 10.0}), 0.25));
  CHECK(approx(gini({10.0, 10.0}), 0.0));
}

TEST_CASE("gini of a one-hot sample attains the corrected maximum") {
  CHECK(approx(gini({0.0, 0.0, 7.0}), 1.0));
  for (std::size_t n = 2; n <= 10; ++n) {
    std::vector<double> v(n, 0.0);
    v.back() = 0.37;
    CHECK(approx(gini(v), 1.0));
  }
}

TEST_CASE("gini of an all-zero sample is 0 by convention") {
  CHECK(gini({0.0, 0.0}) == 0.0);
  CHECK(gini({0.0, 0.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("gini rejects short, negative and non-finite input") {
  CHECK_THROWS_AS(gini(std::vector<double>{1.0}), DomainError);
  CHECK_THROWS_AS(gini({0.5, -0.1}), DomainError);
  CHECK_THROWS_AS(gini({0.5, std::numeric_limits<double>::infinity()}), DomainError);
  CHECK_THROWS_AS(gini({0.5, std::nan("")}), DomainError);
}

TEST_CASE("gini equals the literal double-sum formulation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> len(2, 8);
  for (int it = 0; it < 2000; ++it) {
    std::vector<double> v(len(rng));
    for (auto& x : v) x = unit(rng) < 0.1 ? 0.0 : unit(rng);
    INFO("iteration " << it);
    REQUIRE(approx(gini(v), literal_gini(v)));
  }
}

TEST_CASE("merge_counts sums partition parts") {
  // regrouping {5,5,10} -> {10,10} hides the dispersion entirely
  std::vector<double> counts{5.0, 5.0, 10.0};
  auto merged = merge_counts(counts, {{0, 1}, {2}});
  REQUIRE(merged == std::vector<double>{10.0, 10.0});
  CHECK(approx(gini(counts), 0.25));
  CHECK(approx(gini(merged), 0.0));

  CHECK(merge_counts(counts, {{0}, {1}, {2}}) == counts);
  CHECK(merge_counts(std::vector<double>{1.0, 2.0, 3.0}, {{0, 1, 2}}) ==
        std::vector<double>{6.0});
}

TEST_CASE("merge_counts rejects bad partitions") {
  std::vector<double> counts{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(merge_counts(counts, {{0, 1}}), DomainError);          // incomplete
  CHECK_THROWS_AS(merge_counts(counts, {{0, 1}, {1, 2}}), DomainError);  // overlap
  CHECK_THROWS_AS(merge_counts(counts, {{0, 1}, {2, 3}}), DomainError);  // out of range
  CHECK_THROWS_AS(merge_counts(std::vector<double>{1.0, 0.0}, {{0, 1}}), DomainError);
}

TEST_CASE("fdr on identical groups is maximally fair") {
  auto rates = make_rates({0.01, 0.01}, {0.02, 0.02});
  auto r = fdr(rates, RiskWeight(0.5));
  CHECK(r.value == 1.0);
  CHECK(r.contribution_a == 0.0);
}

TEST_CASE("fdr hand-computed two-group example") {
  auto rates = make_rates({0.01, 0.02}, {0.02, 0.04});
  auto r = fdr(rates, RiskWeight(0.5));
  CHECK(approx(r.term_a, 0.01));
  CHECK(approx(r.term_b, 0.02));
  CHECK(approx(r.value, 0.985));
}

TEST_CASE("fdr boundary: total disagreement scores 0") {
  auto rates = make_rates({0.0, 1.0}, {0.0, 1.0});
  for (double a : {0.0, 0.3, 1.0}) CHECK(fdr(rates, RiskWeight(a)).value == 0.0);
}

TEST_CASE("inequity rate collapses to 1 on equal rates") {
  auto rates = make_rates({0.004, 0.004, 0.004}, {0.03, 0.03, 0.03});
  for (double a : {0.0, 0.25, 0.5, 1.0}) CHECK(inequity_rate(rates, RiskWeight(a)).value == 1.0);
}

TEST_CASE("inequity rate hand-computed two-group example") {
  auto rates = make_rates({0.01, 0.02}, {0.02, 0.04});
  auto r = inequity_rate(rates, RiskWeight(0.5));
  CHECK(approx(r.term_a, 2.0));
  CHECK(approx(r.term_b, 2.0));
  CHECK(approx(r.value, 2.0));
}

TEST_CASE("inequity rate reports the offending group on zero rates") {
  auto rates = make_rates({0.01, 0.02}, {0.0, 0.01});
  try {
    inequity_rate(rates, RiskWeight(0.5));
    FAIL("expected ZeroRateError");
  } catch (const ZeroRateError& e) {
    CHECK(e.rate_kind() == "FNMR");
    CHECK(e.group() == "g0");
  }
}

TEST_CASE("garbe on equal rates is 0 for any alpha") {
  auto rates = make_rates({0.004, 0.004, 0.004}, {0.03, 0.03, 0.03});
  for (double a : {0.0, 0.25, 0.5, 1.0}) CHECK(garbe(rates, RiskWeight(a)).value == 0.0);
}

TEST_CASE("garbe hand-computed two-group example") {
  auto rates = make_rates({0.01, 0.02}, {0.02, 0.04});
  auto r = garbe(rates, RiskWeight(0.5));
  CHECK(approx(r.term_a, 1.0 / 3.0));
  CHECK(approx(r.term_b, 1.0 / 3.0));
  CHECK(approx(r.value, 1.0 / 3.0));
}

TEST_CASE("inequity rate at the alpha endpoints degenerates to one ratio") {
  auto rates = make_rates({0.01, 0.05, 0.02}, {0.02, 0.04, 0.09});
  auto at0 = inequity_rate(rates, RiskWeight(0.0));
  auto at1 = inequity_rate(rates, RiskWeight(1.0));
  CHECK(at0.value == at0.term_b);
  CHECK(at0.contribution_a == 0.0);
  CHECK(at1.value == at1.term_a);
  CHECK(at1.contribution_a == 1.0);
}

TEST_CASE("garbe at the alpha endpoints degenerates to one gini") {
  auto rates = make_rates({0.01, 0.05, 0.02}, {0.02, 0.04, 0.09});
  CHECK(garbe(rates, RiskWeight(0.0)).value == gini(rates.fnmr_values()));
  CHECK(garbe(rates, RiskWeight(1.0)).value == gini(rates.fmr_values()));
}

TEST_CASE("garbe is affine in alpha") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 200; ++it) {
    auto rates = testsupport::random_rates(rng, 2 + it % 7);
    double g_fmr = gini(rates.fmr_values());
    double g_fnmr = gini(rates.fnmr_values());
    for (double a : {0.1, 0.4, 0.77}) {
      double expected = a * g_fmr + (1.0 - a) * g_fnmr;
      REQUIRE(approx(garbe(rates, RiskWeight(a)).value, expected));
    }
  }
}

TEST_CASE("perfect fairness fixed points hold for every measure") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 300; ++it) {
    auto rates = testsupport::fair_rates(rng, 2 + it % 7);
    for (double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      RiskWeight w(a);
      REQUIRE(fdr(rates, w).value == 1.0);
      REQUIRE(inequity_rate(rates, w).value == 1.0);
      REQUIRE(garbe(rates, w).value == 0.0);
    }
  }
}

TEST_CASE("bounds hold on random records") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int it = 0; it < 2000; ++it) {
    auto rates = testsupport::random_rates(rng, 2 + it % 7, it % 3 == 0 ? 0.2 : 0.0);
    RiskWeight w(unit(rng));
    auto f = fdr(rates, w);
    REQUIRE(f.value >= 0.0);
    REQUIRE(f.value <= 1.0);
    REQUIRE(f.contribution_a >= 0.0);
    REQUIRE(f.contribution_a <= 1.0);
    auto g = garbe(rates, w);
    REQUIRE(g.value >= 0.0);
    REQUIRE(g.value <= 1.0);

    auto fmr = rates.fmr_values();
    auto fnmr = rates.fnmr_values();
    bool has_zero = *std::min_element(fmr.begin(), fmr.end()) == 0.0 ||
                    *std::min_element(fnmr.begin(), fnmr.end()) == 0.0;
    if (has_zero) {
      REQUIRE_THROWS_AS(inequity_rate(rates, w), ZeroRateError);
    } else {
      auto ir = inequity_rate(rates, w);
      REQUIRE(ir.value >= 1.0);
      REQUIRE(ir.contribution_a >= 0.0);
      REQUIRE(ir.contribution_a <= 1.0);
    }
  }
}

TEST_CASE("measures are invariant under group relabeling") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  for (int it = 0; it < 200; ++it) {
    std::size_t n = 2 + it % 6;
    std::vector<double> fmr, fnmr;
    for (std::size_t i = 0; i < n; ++i) {
      fmr.push_back(unit(rng));
      fnmr.push_back(unit(rng));
    }
    auto base = make_rates(fmr, fnmr);
    // relabel so that lexicographic order reshuffles the value sequence
    std::map<std::string, double> fm, fn;
    for (std::size_t i = 0; i < n; ++i) {
      std::string label = "z" + std::to_string(n - i);
      fm[label] = fmr[i];
      fn[label] = fnmr[i];
    }
    GroupRates relabeled(fm, fn);
    RiskWeight w(unit(rng));
    for (Measure m : {Measure::fdr, Measure::ir, Measure::garbe}) {
      auto r1 = evaluate(m, base, w);
      auto r2 = evaluate(m, relabeled, w);
      REQUIRE(approx(r1.value, r2.value));
      REQUIRE(approx(r1.term_a, r2.term_a));
      REQUIRE(approx(r1.term_b, r2.term_b));
    }
  }
}

TEST_CASE("scaling FMRs leaves ratio and dispersion terms unchanged") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  for (int it = 0; it < 200; ++it) {
    std::size_t n = 2 + it % 6;
    std::vector<double> fmr, fnmr;
    for (std::size_t i = 0; i < n; ++i) {
      fmr.push_back(unit(rng));
      fnmr.push_back(unit(rng));
    }
    double c = unit(rng);  // (0,1] keeps scaled rates valid
    std::vector<double> scaled = fmr;
    for (auto& v : scaled) v *= c;
    auto base = make_rates(fmr, fnmr);
    auto mult = make_rates(scaled, fnmr);
    RiskWeight w(0.5);
    REQUIRE(approx(inequity_rate(base, w).term_a, inequity_rate(mult, w).term_a));
    REQUIRE(approx(garbe(base, w).term_a, garbe(mult, w).term_a));
    REQUIRE(approx(fdr(mult, w).term_a, c * fdr(base, w).term_a));
    // the FNMR side is untouched in all three
    REQUIRE(inequity_rate(base, w).term_b == inequity_rate(mult, w).term_b);
  }
}

TEST_CASE("fdr never increases when a term grows") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int it = 0; it < 500; ++it) {
    MeasureTerms t{unit(rng), unit(rng)};
    double bump = unit(rng) * (1.0 - t.a);
    RiskWeight w(unit(rng));
    double before = compose(Measure::fdr, t, w).value;
    double after = compose(Measure::fdr, {t.a + bump, t.b}, w).value;
    REQUIRE(after <= before);
    bump = unit(rng) * (1.0 - t.b);
    after = compose(Measure::fdr, {t.a, t.b + bump}, w).value;
    REQUIRE(after <= before);
  }
}

TEST_CASE("zero-rate probe record is scored by fdr and garbe") {
  auto probe = zero_rate_probe();
  CHECK_NOTHROW(fdr(probe, RiskWeight(0.5)));
  CHECK_NOTHROW(garbe(probe, RiskWeight(0.5)));
  CHECK_THROWS_AS(inequity_rate(probe, RiskWeight(0.5)), ZeroRateError);
}

TEST_CASE("risk weight validation") {
  CHECK_THROWS_AS(RiskWeight(-0.1), DomainError);
  CHECK_THROWS_AS(RiskWeight(1.1), DomainError);
  CHECK_THROWS_AS(RiskWeight(std::nan("")), DomainError);
  CHECK(RiskWeight(0.25).beta() == 0.75);
}

TEST_CASE("measure names parse and print") {
  CHECK(parse_measure("fdr") == Measure::fdr);
  CHECK(parse_measure("ir") == Measure::ir);
  CHECK(parse_measure("garbe") == Measure::garbe);
  CHECK_THROWS_AS(parse_measure("unknown"), DomainError);
  CHECK(std::string(to_string(Measure::garbe)) == "garbe");
}
