#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "urel/bench.hpp"
#include "urel/euler2d.hpp"

using namespace urel;
using namespace urel::euler2d;

namespace {

FieldState2D bubble_state(int cells, double l = 6.0) {
    const auto grid = make_grid(-l, l, -l, l, cells, cells);
    return init_radial(grid, [](double r) { return r <= 1.0 ? 1.0 : 0.1; },
                       [](double) { return 0.0; });
}

double total_energy(const FieldState2D& f) { return interior_total(f, 2); }

} // namespace

TEST_CASE("radial initialization", "[euler2d]") {
    const auto grid = make_grid(-2.0, 2.0, -2.0, 2.0, 16, 16);
    // rest state
    auto f = init_radial(grid, [](double) { return 0.5; }, [](double) { return 0.0; });
    for (const auto& w : f.w) {
        REQUIRE(w[0] == 0.0);
        REQUIRE(w[1] == 0.0);
        REQUIRE(w[2] == 1.5);
    }
    // imploding unit four-velocity: every cell has |u| = 1 pointing inward
    f = init_radial(grid, [](double) { return 1.0; }, [](double) { return -1.0; },
                    RadialKind::four_velocity);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const auto prim = eig::primitive_from_conserved<2>(f.w[grid.index(i, j)]);
            const double x = grid.cx(i), y = grid.cy(j);
            const double r = std::hypot(x, y);
            const double mag = std::hypot(prim.u[0], prim.u[1]);
            REQUIRE_THAT(mag, Catch::Matchers::WithinRel(1.0, 1e-12));
            REQUIRE_THAT(prim.u[0] * x + prim.u[1] * y, Catch::Matchers::WithinRel(-r, 1e-12));
        }
    // disc data
    f = bubble_state(16, 2.0);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const double r = std::hypot(grid.cx(i), grid.cy(j));
            const double expect = r <= 1.0 ? 3.0 : 0.3;
            REQUIRE_THAT(f.w[grid.index(i, j)][2], Catch::Matchers::WithinRel(expect, 1e-14));
        }
    CHECK_THROWS_AS(init_radial(grid, [](double) { return -1.0; }, [](double) { return 0.0; }),
                    invalid_state_error);
    CHECK_THROWS_AS(init_radial(grid, [](double) { return 1.0; }, [](double) { return 1.0; }),
                    invalid_state_error);
}

TEST_CASE("local Lax-Friedrichs flux", "[euler2d]") {
    const auto rest = eig::conserved<2>(1.0, {0.0, 0.0});
    // consistency: identical states give the physical flux
    auto f = llf_flux(rest, rest, {1.0, 0.0});
    CHECK(f[0] == 1.0);
    CHECK(f[1] == 0.0);
    CHECK(f[2] == 0.0);
    f = llf_flux(rest, rest, {0.0, 1.0});
    CHECK(f[1] == 1.0);

    // frozen golden for the bubble interface pair (p=1 | p=0.1), n = x̂:
    // dissipation speed is the sound speed 1/sqrt(3)
    const auto lo = eig::conserved<2>(0.1, {0.0, 0.0});
    f = llf_flux(rest, lo, {1.0, 0.0});
    CHECK_THAT(f[0], Catch::Matchers::WithinRel(0.55, 1e-14));
    CHECK(f[1] == 0.0);
    CHECK_THAT(f[2], Catch::Matchers::WithinRel(0.7794228634059947820874, 1e-13));

    // interior fast path agrees with the public flux on axis normals
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> logp(std::log(1e-2), std::log(1e2));
    std::uniform_real_distribution<double> uc(-3.0, 3.0);
    for (int t = 0; t < 2000; ++t) {
        const auto wl = eig::conserved<2>(std::exp(logp(rng)), {uc(rng), uc(rng)});
        const auto wr = eig::conserved<2>(std::exp(logp(rng)), {uc(rng), uc(rng)});
        for (int axis = 0; axis < 2; ++axis) {
            const Vec2 n = axis == 0 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
            const auto full = llf_flux(wl, wr, n);
            const auto fast = detail::llf_axis({wl, eig::pressure<2>(wl)},
                                               {wr, eig::pressure<2>(wr)}, axis);
            for (int c = 0; c < 3; ++c)
                REQUIRE_THAT(fast[c],
                             Catch::Matchers::WithinAbs(full[c], 1e-12 * (1.0 + std::abs(full[c]))));
        }
    }
}

TEST_CASE("a rest state stays at rest", "[euler2d]") {
    const auto grid = make_grid(-1.0, 1.0, -1.0, 1.0, 8, 8);
    auto f = init_radial(grid, [](double) { return 2.0; }, [](double) { return 0.0; });
    for (const int order : {1, 2}) {
        StepOptions opt;
        opt.order = order;
        const auto g = step(f, opt);
        REQUIRE(g.time > 0.0);
        for (std::size_t k = 0; k < g.w.size(); ++k) {
            REQUIRE(g.w[k][0] == 0.0);
            REQUIRE(g.w[k][1] == 0.0);
            REQUIRE_THAT(g.w[k][2], Catch::Matchers::WithinRel(6.0, 1e-14));
        }
    }
}

TEST_CASE("energy bookkeeping over one step", "[euler2d]") {
    // bubble data: boundary cells are at rest, so no energy crosses the edge
    for (const int order : {1, 2}) {
        auto f = bubble_state(64);
        const double before = total_energy(f);
        StepOptions opt;
        opt.order = order;
        const auto g = step(f, opt);
        CHECK_THAT(total_energy(g), Catch::Matchers::WithinRel(before, 1e-12));
        CHECK(g.floored_cells == 0);
    }
}

TEST_CASE("transpose symmetry of symmetric data", "[euler2d]") {
    // collapse-of-a-bubble data is symmetric under x <-> y; the scheme keeps
    // the discrete solution symmetric under the same swap
    const auto grid = make_grid(-6.0, 6.0, -6.0, 6.0, 48, 48);
    auto f = init_radial(grid, [](double r) { return r <= 1.0 ? 0.1 : 1.0; },
                         [](double) { return 0.0; });
    StepOptions opt;
    opt.order = 2;
    for (int s = 0; s < 10; ++s) f = step(f, opt);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const auto& a = f.w[grid.index(i, j)];
            const auto& b = f.w[grid.index(j, i)];
            REQUIRE_THAT(a[0], Catch::Matchers::WithinAbs(b[1], 1e-12));
            REQUIRE_THAT(a[1], Catch::Matchers::WithinAbs(b[0], 1e-12));
            REQUIRE_THAT(a[2], Catch::Matchers::WithinAbs(b[2], 1e-12));
        }
}

TEST_CASE("radial binning", "[euler2d]") {
    auto f = bubble_state(32);
    auto bins = radial_profile(f, 12);
    for (int b = 0; b < 12; ++b) {
        if (bins.count[b] == 0) continue;
        REQUIRE(bins.v[b] == 0.0);
        REQUIRE((bins.p[b] >= 0.1 - 1e-12 && bins.p[b] <= 1.0 + 1e-12));
    }
    // single global average
    bins = radial_profile(f, 1);
    REQUIRE(bins.count[0] > 0);
    CHECK(bins.r.size() == 1);
    CHECK_THROWS_AS(radial_profile(f, 0), error);
}

TEST_CASE("pressure floor accounting", "[euler2d]") {
    FieldState2D f;
    f.grid = make_grid(-1.0, 1.0, -1.0, 1.0, 4, 4);
    f.w.assign(16, eig::conserved<2>(1.0, {0.0, 0.0}));
    // a cell just outside the state space gets pulled back and counted
    f.w[5] = {3.0, 0.0, 3.0};
    detail::apply_floor(f, 1e-12);
    CHECK(f.floored_cells == 1);
    CHECK(eig::pressure<2>(f.w[5]) >= 0.9e-12);
    // non-positive energy cannot be floored
    f.w[6] = {0.0, 0.0, -1.0};
    CHECK_THROWS_AS(detail::apply_floor(f, 1e-12), blowup_error);
}

TEST_CASE("no floor events on the bubble benchmarks at small scale", "[euler2d]") {
    for (const bool inward : {false, true}) {
        const auto grid = make_grid(-6.0, 6.0, -6.0, 6.0, 128, 128);
        auto f = init_radial(grid,
                             [&](double r) {
                                 const bool inside = r <= 1.0;
                                 return (inside == inward) ? 0.1 : 1.0;
                             },
                             [](double) { return 0.0; });
        StepOptions opt;
        opt.order = 2;
        f = run_to_time(std::move(f), 1.0, opt);
        CHECK(f.floored_cells == 0);
        CHECK_THAT(f.time, Catch::Matchers::WithinRel(1.0, 1e-12));
    }
}

TEST_CASE("radial-symmetry deviation shrinks under refinement", "[euler2d]") {
    double prev = -1.0;
    for (const int cells : {48, 96}) {
        auto f = bubble_state(cells);
        StepOptions opt;
        opt.order = 1;
        f = run_to_time(std::move(f), 0.5, opt);
        const auto bins = radial_profile(f, 16);
        double worst = 0.0;
        for (std::size_t b = 0; b < bins.p_std.size(); ++b)
            if (bins.count[b] > 8) worst = std::max(worst, bins.p_std[b]);
        if (prev >= 0.0) CHECK(worst < prev);
        prev = worst;
    }
}

TEST_CASE("step validates its options", "[euler2d]") {
    auto f = bubble_state(16);
    CHECK_THROWS_AS(step(f, 0.0), grid_error);
    CHECK_THROWS_AS(step(f, 1.5), grid_error);
}
