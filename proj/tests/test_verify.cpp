#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "qcs/verify.hpp"

using namespace qcs;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("standard grid stays inside the convergence guard") {
    const auto grid = standard_grid();
    CHECK(grid.size() >= 10);
    for (const auto& p : grid) {
        CHECK(p.action < convergence_guard * p.d.radius());
        CHECK(p.action > 0.0);
    }
    // J = 6 is admissible only for the two near-classical deformations.
    int with_j6 = 0;
    for (const auto& p : grid)
        if (p.action == 6.0) ++with_j6;
    CHECK(with_j6 == 2);
}

TEST_CASE("gamma grid spans two full turns inclusively") {
    const auto g = gamma_grid();
    REQUIRE(g.size() == 64);
    CHECK(g.front() == 0.0);
    CHECK_THAT(g.back(), Catch::Matchers::WithinRel(4.0 * pi, 1e-15));
}

TEST_CASE("the full invariant suite passes") {
    std::ostringstream table;
    const int status = run_checks(standard_checks(), table);
    INFO(table.str());
    CHECK(status == 0);
    CHECK_THAT(table.str(), ContainsSubstring("[PASS] qkernel/identity-ID1-gamma-derivative"));
    CHECK_THAT(table.str(), ContainsSubstring("0 failed"));
    CHECK_THAT(table.str(), !ContainsSubstring("[FAIL]"));
}

TEST_CASE("an injected fault is reported by name with exit 1") {
    auto checks = standard_checks();
    // Simulates a wrong-sign g_s consistency defect surfacing in a check.
    checks.push_back({"injected/wrong-sign-gs",
                      [] { return std::string("closed form disagrees with variances"); }});
    std::ostringstream table;
    const int status = run_checks(checks, table);
    CHECK(status == 1);
    CHECK_THAT(table.str(), ContainsSubstring("[FAIL] injected/wrong-sign-gs"));
    CHECK_THAT(table.str(), ContainsSubstring("closed form disagrees with variances"));
    CHECK_THAT(table.str(), ContainsSubstring("1 failed"));
}

TEST_CASE("a throwing check is caught and counted as a failure") {
    std::vector<Check> checks{{"throws/domain", []() -> std::string {
        throw divergence_error("beyond the radius");
    }}};
    std::ostringstream table;
    CHECK(run_checks(checks, table) == 1);
    CHECK_THAT(table.str(), ContainsSubstring("[FAIL] throws/domain"));
    CHECK_THAT(table.str(), ContainsSubstring("beyond the radius"));
}
