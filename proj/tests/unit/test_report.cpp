#include <cmath>

#include "doctest.h"
#include "ekspace/error.hpp"
#include "ekspace/report.hpp"

using namespace ekspace;

TEST_CASE("loglog_fit") {
  std::vector<std::pair<double, double>> cubic, quartic;
  for (int k = 1; k <= 30; ++k) {
    cubic.emplace_back(k, std::pow(k, 3));
    quartic.emplace_back(k, 7 * std::pow(k, 4));
  }
  const RegressionFit a = loglog_fit(cubic);
  CHECK(a.slope == doctest::Approx(3).epsilon(1e-12));
  CHECK(a.intercept == doctest::Approx(0).epsilon(1e-12));
  CHECK(a.points == 30);
  const RegressionFit b = loglog_fit(quartic, true);
  CHECK(b.slope == doctest::Approx(4).epsilon(1e-12));
  CHECK(b.intercept == doctest::Approx(std::log(7.0)).epsilon(1e-12));
  REQUIRE(b.parity_split);
  CHECK(b.parity_split->first.slope == doctest::Approx(4).epsilon(1e-12));
  CHECK(b.parity_split->second.slope == doctest::Approx(4).epsilon(1e-12));
  try {
    loglog_fit({{2, 8}});
    FAIL("expected DegenerateFit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateFit);
  }
  CHECK_THROWS(loglog_fit({{1, 1}, {2, 0}}));
}

TEST_CASE("tables") {
  const std::vector<CountRow> rows{{1, 12, 12, 0, 0, 0, 0}, {3, 8, 8, 0, 0, 0, 0}};
  const std::string text = render_count_table(rows, TableFormat::kText);
  CHECK(text.find("12") != std::string::npos);
  const std::string tsv = render_count_table(rows, TableFormat::kTsv);
  CHECK(tsv.find("1\t12\t12\t0\t0\t0\t0") != std::string::npos);
  const std::vector<GrowthRow> growth{{1, 10, 10}, {2, 50, 40}};
  CHECK(render_growth_table(growth, TableFormat::kTsv).find("2\t50\t40") != std::string::npos);

  RationalInvariant r;
  r.numerator = -1;
  r.denominator = 28;
  r.exact = true;
  CHECK(format_invariant(r, BigFloat(130)) == "-1/28");
  r.exact = false;
  CHECK(format_invariant(r, BigFloat::from_fraction(-1, 28, 130)).front() == '~');
}
