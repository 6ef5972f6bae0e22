#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "urel/radial_scheme.hpp"

using namespace urel;
using namespace urel::radial;

namespace {

// Literal transcription of the d=2 update formulas, kept independent of the
// production path (which integrates the weight x^{d-1} exactly for any d).
ConservedPair euler_d2_reference(double am, double bm, double ap, double bp, double xbar,
                                 double dx, double lam) {
    const double cm = flux_c({am, bm});
    const double cp = flux_c({ap, bp});
    const double qt = dx / (2.0 * xbar);
    const double a1 = 0.5 * (am + bm / lam) * (1.0 - qt) + 0.5 * (ap - bp / lam) * (1.0 + qt);
    const double eta = qt / (3.0 * lam);
    const double xi = 0.5 * (bm + cm / lam) * (1.0 - qt) + 0.5 * (bp - cp / lam) * (1.0 + qt) -
                      a1 * eta;
    const double b1 = (xi + eta * std::sqrt(4.0 * a1 * a1 * (1.0 + 3.0 * eta * eta) -
                                            3.0 * xi * xi)) /
                      (1.0 + 3.0 * eta * eta);
    return {a1, b1};
}

InitialData constant_state(double p, double v) {
    return {[p](double) { return p; }, [v](double) { return v; }, false};
}

} // namespace

TEST_CASE("grid construction", "[radial]") {
    auto g = build_grid(1.0, 2.0, 5000);
    CHECK(g.dt == 1e-4);
    CHECK(g.m_cells == 10000);
    CHECK(g.dx == 2e-4);
    CHECK(g.lambda == 1.0);
    CHECK(g.level_count() == 10001);
    CHECK(g.points_on_level(1) == 15000);
    CHECK(g.points_on_level(10001) == 10000);

    g = build_grid(6.0, 6.0, 5000);
    CHECK(g.dt == 6e-4);
    CHECK(g.m_cells == 5000);
    CHECK_THAT(g.dx, Catch::Matchers::WithinRel(1.2e-3, 1e-15));
    CHECK_THAT(g.lambda, Catch::Matchers::WithinRel(1.0, 1e-15));

    CHECK_THROWS_AS(build_grid(2.0, 1.0, 1), grid_error); // N x* < t*
    CHECK_THROWS_AS(build_grid(-1.0, 1.0, 10), grid_error);
    CHECK_THROWS_AS(build_grid(1.0, 1.0, 0), grid_error);
}

TEST_CASE("single-cell update keeps rest states fixed", "[radial]") {
    for (const double p : {0.5, 1.0, 7000.0}) {
        for (const double xbar : {0.3, 1.0, 42.0}) {
            const auto out = euler_update(3.0 * p, 0.0, 3.0 * p, 0.0, xbar, 0.5, 1.0);
            CHECK(out.a == 3.0 * p);
            CHECK(out.b == 0.0);
            const auto out3 = euler_update(3.0 * p, 0.0, 3.0 * p, 0.0, xbar, 0.5, 1.0, 3);
            CHECK(out3.a == 3.0 * p);
            CHECK(out3.b == 0.0);
        }
    }
}

TEST_CASE("boundary update", "[radial]") {
    const auto out = euler_update(4.0, 1.0, 3.0, 0.0, 0.0, 0.5, 1.0);
    CHECK(out.a == 3.0);
    CHECK(out.b == 0.0);
    // lambda-scaled correction
    const auto out2 = euler_update(4.0, 1.0, 3.0, 0.5, 0.0, 0.5, 2.0);
    CHECK(out2.a == 3.0 - 0.25);
    CHECK(out2.b == 0.0);
}

TEST_CASE("update golden values", "[radial]") {
    // frozen from a 50-digit evaluation of the d=2 formulas
    const auto d2 = euler_update(4.0, 1.0, 3.0, -1.0, 1.0, 0.5, 1.0, 2);
    CHECK_THAT(d2.a, Catch::Matchers::WithinRel(4.375, 1e-13));
    CHECK_THAT(d2.b, Catch::Matchers::WithinRel(-0.06948028394063481390603, 1e-12));
    CHECK(std::abs(d2.b) < d2.a);
    // frozen from the same evaluation with the x^2 weight
    const auto d3 = euler_update(4.0, 1.0, 3.0, -1.0, 1.0, 0.5, 1.0, 3);
    CHECK_THAT(d3.a, Catch::Matchers::WithinRel(4.269230769230769230769, 1e-13));
    CHECK_THAT(d3.b, Catch::Matchers::WithinRel(-0.2688699554122954844376, 1e-12));
}

TEST_CASE("d=2 update reproduces the planar-weight formulas", "[radial]") {
    std::mt19937_64 rng(314159);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 20000; ++trial) {
        const double am = std::exp(unit(rng) * 8.0 - 4.0);
        const double bm = (2.0 * unit(rng) - 1.0) * am * 0.999;
        const double ap = std::exp(unit(rng) * 8.0 - 4.0);
        const double bp = (2.0 * unit(rng) - 1.0) * ap * 0.999;
        const double dx = std::exp(unit(rng) * 4.0 - 3.0);
        const double xbar = dx / 2.0 + unit(rng) * 5.0 * dx; // q <= 1
        const double lam = 1.0 + 3.0 * unit(rng);
        const auto got = euler_update(am, bm, ap, bp, xbar, dx, lam, 2);
        const auto ref = euler_d2_reference(am, bm, ap, bp, xbar, dx, lam);
        REQUIRE_THAT(got.a, Catch::Matchers::WithinRel(ref.a, 1e-12));
        REQUIRE_THAT(got.b,
                     Catch::Matchers::WithinAbs(ref.b, 1e-12 * (std::abs(ref.b) + ref.a)));
        REQUIRE(std::abs(got.b) < got.a);
    }
}

TEST_CASE("update rejects bad geometry and states", "[radial]") {
    CHECK_THROWS_AS(euler_update(1.0, 2.0, 3.0, 0.0, 1.0, 0.5, 1.0), invalid_state_error);
    CHECK_THROWS_AS(euler_update(3.0, 0.0, 1.0, -1.0, 1.0, 0.5, 1.0), invalid_state_error);
    CHECK_THROWS_AS(euler_update(3.0, 0.0, 3.0, 0.0, 0.1, 0.5, 1.0), grid_error);  // q > 1
    CHECK_THROWS_AS(euler_update(3.0, 0.0, 3.0, 0.0, 1.0, 0.5, 0.5), grid_error);  // lambda < 1
    CHECK_THROWS_AS(euler_update(3.0, 0.0, 3.0, 0.0, -1.0, 0.5, 1.0), grid_error);
}

TEST_CASE("reflection", "[radial]") {
    const auto r = reflect_boundary({3.0, 0.5});
    CHECK(r.a == 3.0);
    CHECK(r.b == -0.5);
    CHECK(reflect_boundary({3.0, 0.0}).b == 0.0);
    const auto twice = reflect_boundary(reflect_boundary({2.0, -0.7}));
    CHECK(twice.a == 2.0);
    CHECK(twice.b == -0.7);
}

TEST_CASE("initialization samples cell midpoints", "[radial]") {
    const auto grid = build_grid(6.0, 6.0, 50);
    // rest data
    auto lvl = initialize(grid, [](double) { return 1.0; }, [](double) { return 0.0; });
    REQUIRE(static_cast<int>(lvl.states.size()) == grid.points_on_level(1));
    for (const auto& s : lvl.states) {
        REQUIRE(s.a == 3.0);
        REQUIRE(s.b == 0.0);
    }
    // bubble data: the jump lands between the midpoints straddling x = 1
    lvl = initialize(grid, [](double x) { return x <= 1.0 ? 1.0 : 0.1; },
                     [](double) { return 0.0; });
    for (std::size_t j = 0; j < lvl.positions.size(); ++j) {
        const double expect = lvl.positions[j] <= 1.0 ? 3.0 : 0.3;
        REQUIRE_THAT(lvl.states[j].a, Catch::Matchers::WithinRel(expect, 1e-14));
    }
    // four-velocity profile: b0 = 4 u0 sqrt(1 + u0^2)
    const auto grid5 = build_grid(6.0, 5.0, 60);
    InitialData periodic{[](double) { return 1.0; },
                         [](double x) { return x < 1.0 ? std::sin(2.0 * M_PI * x) : 0.0; },
                         true};
    lvl = initialize(grid5, periodic);
    for (std::size_t j = 0; j < lvl.positions.size(); ++j) {
        const double x = lvl.positions[j];
        if (x >= 1.0) {
            REQUIRE(lvl.states[j].b == 0.0);
            continue;
        }
        const double u = std::sin(2.0 * M_PI * x);
        REQUIRE_THAT(lvl.states[j].b,
                     Catch::Matchers::WithinAbs(4.0 * u * std::sqrt(1.0 + u * u), 1e-14));
    }
    // invalid data
    CHECK_THROWS_AS(initialize(grid, [](double) { return 0.0; }, [](double) { return 0.0; }),
                    invalid_state_error);
    CHECK_THROWS_AS(initialize(grid, [](double) { return 1.0; }, [](double) { return 1.0; }),
                    invalid_state_error);
}

TEST_CASE("level advancement bookkeeping", "[radial]") {
    const auto grid = build_grid(1.0, 2.0, 20);
    auto lvl1 = initialize(grid, constant_state(1.0, 0.0));
    REQUIRE(lvl1.n == 1);
    REQUIRE(static_cast<int>(lvl1.states.size()) == grid.m_cells + grid.n_half_steps);

    const auto lvl2 = advance_level(grid, lvl1);
    CHECK(lvl2.n == 2);
    CHECK(lvl2.states.size() == lvl1.states.size()); // first point is the boundary
    CHECK(lvl2.positions.front() == 0.0);

    const auto lvl3 = advance_level(grid, lvl2);
    CHECK(lvl3.states.size() == lvl2.states.size() - 1);

    // positions interleave: odd levels at midpoints, even at nodes
    for (std::size_t j = 0; j + 1 < lvl2.positions.size(); ++j) {
        REQUIRE(lvl2.positions[j] < lvl1.positions[j]);
        REQUIRE(lvl1.positions[j] < lvl2.positions[j + 1]);
    }

    // constant rest data is preserved bit-identically
    for (const auto& s : lvl3.states) {
        REQUIRE(s.a == 3.0);
        REQUIRE(s.b == 0.0);
    }

    LevelSolution bogus = lvl1;
    bogus.n = grid.level_count();
    CHECK_THROWS_AS(advance_level(grid, bogus), grid_error);
}

TEST_CASE("record thinning", "[radial]") {
    const auto grid = build_grid(1.0, 2.0, 10);
    const auto rec = run(grid, constant_state(2.0, 0.0), 2 * grid.n_half_steps);
    REQUIRE(rec.levels.size() == 2); // first and last only
    CHECK(rec.levels.front().n == 1);
    CHECK(rec.levels.back().n == grid.level_count());
    CHECK(rec.axis_time.size() == static_cast<std::size_t>(grid.level_count()));
    const auto dense = run(grid, constant_state(2.0, 0.0), 1);
    CHECK(dense.levels.size() == static_cast<std::size_t>(grid.level_count()));
}

TEST_CASE("positivity under random piecewise-constant data", "[radial]") {
    std::mt19937_64 rng(8086);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> cuts(5), ps(6), vs(6);
        for (auto& c : cuts) c = unit(rng);
        std::sort(cuts.begin(), cuts.end());
        for (auto& p : ps) p = std::exp(unit(rng) * std::log(1e6) - std::log(1e3));
        for (auto& v : vs) v = (2.0 * unit(rng) - 1.0) * 0.99;
        auto seg = [cuts](double x) {
            return std::upper_bound(cuts.begin(), cuts.end(), x) - cuts.begin();
        };
        InitialData data{[=](double x) { return ps[seg(x)]; },
                         [=](double x) { return vs[seg(x)]; }, false};
        const auto grid = build_grid(1.0, 1.0, 100);
        const auto rec = run(grid, data, 200);
        for (const auto& s : rec.final_level().states) REQUIRE(std::abs(s.b) < s.a);
    }
}

TEST_CASE("lemma inequalities hold on random samples", "[radial]") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 100000; ++k) {
        const double a = std::exp(unit(rng) * 12.0 - 6.0);
        const double b = (2.0 * unit(rng) - 1.0) * a * 0.99999;
        const double lam = 1.0 + 4.0 * unit(rng);
        const double c = flux_c({a, b});
        REQUIRE(-(a + b / lam) < b + c / lam);
        REQUIRE(b + c / lam < a + b / lam);
        REQUIRE(-(a - b / lam) < b - c / lam);
        REQUIRE(b - c / lam < a - b / lam);

        const double eta = unit(rng) / 3.0;
        const double xi = -a * (1.0 + eta) + 2.0 * a * unit(rng);
        if (eta > 0.0 && xi < a * (1.0 - eta)) {
            const double disc = 4.0 * a * a * (1.0 + 3.0 * eta * eta) - 3.0 * xi * xi;
            REQUIRE(disc > 0.0);
            REQUIRE(std::abs((xi + eta * std::sqrt(disc)) / (1.0 + 3.0 * eta * eta)) < a);
        }
    }
}

TEST_CASE("imploding self-similar data reaches the tabulated plateau", "[radial]") {
    const auto grid = build_grid(1.0, 2.0, 500);
    InitialData data = constant_state(1.0, -1.0 / std::sqrt(2.0));
    const auto rec = run(grid, data, 1000);
    const auto& lvl = rec.final_level();
    double sum = 0.0;
    long n = 0;
    for (std::size_t j = 0; j < lvl.positions.size(); ++j) {
        if (lvl.positions[j] < 0.1 || lvl.positions[j] > 0.35) continue;
        sum += to_primitive(lvl.states[j]).p;
        ++n;
    }
    CHECK_THAT(sum / n, Catch::Matchers::WithinRel(15.75505, 0.01));
}

TEST_CASE("d=3 branch reaches the tabulated plateau", "[radial]") {
    const auto grid = build_grid(1.0, 2.0, 800, 3);
    InitialData data = constant_state(1.0, -1.0 / std::sqrt(2.0));
    const auto rec = run(grid, data, 1600);
    const auto& lvl = rec.final_level();
    double sum = 0.0;
    long n = 0;
    for (std::size_t j = 0; j < lvl.positions.size(); ++j) {
        if (lvl.positions[j] < 0.1 || lvl.positions[j] > 0.35) continue;
        sum += to_primitive(lvl.states[j]).p;
        ++n;
    }
    CHECK_THAT(sum / n, Catch::Matchers::WithinRel(25.56463, 0.01));
}
