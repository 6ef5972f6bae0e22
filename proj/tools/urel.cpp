// Command-line front end: benchmark runs, profile comparison, and the
// acceptance suite.
//
//   urel run --case 1 --solver radsym --n 5000 --out results/
//   urel run --case 1 --solver ode --d 3 --out results/
//   urel compare --a results/radsym_case1.csv --b results/ode_case1.csv
//   urel accept --out results/
//
// Exit codes: 0 success, 1 solver error, 2 acceptance failure.

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "urel/acceptance.hpp"
#include "urel/bench.hpp"

int main(int argc, char** argv) {
    CLI::App app{"ultra-relativistic Euler solver suite"};
    app.require_subcommand(1);

    urel::bench::RunConfig cfg;
    std::string config_path;
    auto* run = app.add_subcommand("run", "run one benchmark case with one solver");
    run->add_option("--case", cfg.case_id, "benchmark case id (1..5)")
        ->check(CLI::Range(1, 5));
    run->add_option("--solver", cfg.solver, "radsym | ode | euler2d");
    run->add_option("--n", cfg.n, "radial half-step count N");
    run->add_option("--grid", cfg.grid, "2D cells per direction");
    run->add_option("--d", cfg.dim, "space dimension (2 or 3)")->check(CLI::Range(2, 3));
    run->add_option("--t-end", cfg.t_end, "override final time");
    run->add_option("--out", cfg.out_dir, "output directory");
    run->add_option("--stride", cfg.record_stride, "record every k-th level");
    run->add_option("--step", cfg.ode_step, "ODE step size");
    run->add_option("--order", cfg.order, "euler2d spatial order (1 or 2)")
        ->check(CLI::Range(1, 2));
    run->add_option("--cfl", cfg.cfl, "euler2d CFL number");
    run->add_option("--bins", cfg.bins, "euler2d radial profile bins");
    run->add_option("--config", config_path, "key=value config file (flags win)");

    std::string path_a, path_b;
    int points = 1000;
    auto* cmp = app.add_subcommand("compare", "compare two radial profile CSVs");
    cmp->add_option("--a", path_a, "first profile")->required();
    cmp->add_option("--b", path_b, "second profile")->required();
    cmp->add_option("--points", points, "comparison radii count");

    std::string accept_out = "accept_out";
    auto* acc = app.add_subcommand("accept", "run the acceptance suite");
    acc->add_option("--out", accept_out, "directory for emitted artifacts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (!config_path.empty()) {
                const auto file_cfg = urel::bench::parse_config_file(config_path);
                auto flag_given = [&](const char* name) { return run->count(name) > 0; };
                if (!flag_given("--case")) cfg.case_id = file_cfg.case_id;
                if (!flag_given("--solver")) cfg.solver = file_cfg.solver;
                if (!flag_given("--n")) cfg.n = file_cfg.n;
                if (!flag_given("--grid")) cfg.grid = file_cfg.grid;
                if (!flag_given("--d")) cfg.dim = file_cfg.dim;
                if (!flag_given("--t-end")) cfg.t_end = file_cfg.t_end;
                if (!flag_given("--out")) cfg.out_dir = file_cfg.out_dir;
                if (!flag_given("--stride")) cfg.record_stride = file_cfg.record_stride;
                if (!flag_given("--step")) cfg.ode_step = file_cfg.ode_step;
                if (!flag_given("--order")) cfg.order = file_cfg.order;
                if (!flag_given("--cfl")) cfg.cfl = file_cfg.cfl;
                if (!flag_given("--bins")) cfg.bins = file_cfg.bins;
            }
            const auto files = urel::bench::run_case(cfg);
            for (const auto& f : files) std::cout << "wrote " << f << "\n";
            return 0;
        }
        if (cmp->parsed()) {
            const auto [ta, prof_a] = urel::bench::read_profile_csv(path_a);
            const auto [tb, prof_b] = urel::bench::read_profile_csv(path_b);
            const double lo = std::max(prof_a.x.front(), prof_b.x.front());
            const double hi = std::min(prof_a.x.back(), prof_b.x.back());
            std::vector<double> radii(points);
            for (int i = 0; i < points; ++i)
                radii[i] = lo + (hi - lo) * i / static_cast<double>(points - 1);
            const auto rep = urel::bench::compare(prof_a, prof_b, radii);
            std::cout << "L1(p)   = " << rep.l1_p << "\n"
                      << "L1(v)   = " << rep.l1_v << "\n"
                      << "Linf(p) = " << rep.linf_p << "\n"
                      << "Linf(v) = " << rep.linf_v << "\n";
            auto show = [](const char* tag, const std::optional<double>& s) {
                std::cout << tag;
                if (s)
                    std::cout << *s << "\n";
                else
                    std::cout << "none\n";
            };
            show("shock(a) = ", rep.shock_a);
            show("shock(b) = ", rep.shock_b);
            return 0;
        }
        if (acc->parsed()) {
            std::filesystem::create_directories(accept_out);
            urel::bench::write_landmarks_csv(
                (std::filesystem::path(accept_out) / "landmarks.csv").string());
            const auto results = urel::accept::run_all(std::cout);
            const bool ok = urel::accept::summarize(results, std::cout);
            return ok ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
