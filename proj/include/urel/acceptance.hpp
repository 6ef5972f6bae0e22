#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "urel/bench.hpp"
#include "urel/eigensystem.hpp"
#include "urel/euler2d.hpp"
#include "urel/radial_scheme.hpp"
#include "urel/selfsim.hpp"

// End-to-end verification suite. Every criterion is pinned here with its
// tolerance; `run_all` prints one pass/fail line per criterion and returns
// the results. The CLI subcommand `accept` and the test binary both drive it.

namespace urel::accept {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

namespace detail {

inline std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

class Suite {
public:
    explicit Suite(std::ostream& log) : log_(log) {}

    std::vector<CriterionResult> run_all() {
        criterion_1_table2();
        criterion_2_theta_bracket();
        criterion_3_example1();
        criterion_4_example2();
        criterion_5_focus_landmarks();
        criterion_6_positivity();
        criterion_7_stationary();
        criterion_8_lemmas();
        criterion_9_eigensystem();
        criterion_10_cross_solver();
        criterion_11_rk4_order();
        return results_;
    }

private:
    std::ostream& log_;
    std::vector<CriterionResult> results_;

    // shared expensive runs
    std::optional<radial::SpaceTimeRecord> ex3_record_;
    std::optional<bench::RadialProfileData> ex3_profile_;

    const radial::SpaceTimeRecord& ex3_record() {
        if (!ex3_record_) {
            const auto c = bench::find_case(3);
            ex3_record_ = bench::run_radial(c, 5000);
            ex3_profile_ = bench::final_profile(*ex3_record_);
        }
        return *ex3_record_;
    }

    void record(int id, const std::string& name, bool pass, const std::string& detail) {
        results_.push_back({id, name, pass, detail});
        log_ << (pass ? "[PASS] " : "[FAIL] ") << id << ". " << name << ": " << detail << "\n";
        log_.flush();
    }

    template <typename Fn>
    void guarded(int id, const std::string& name, Fn&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            record(id, name, false, std::string("exception: ") + e.what());
        }
    }

    void criterion_1_table2() {
        guarded(1, "shock-state table reproduction (ODE path)", [&] {
            struct Row {
                int dim;
                double s, pm, pp, vp;
            };
            const Row expected[] = {{2, 0.45503, 15.75505, 5.71869, -0.41629},
                                    {3, 0.52314, 25.56463, 17.16524, -0.17106}};
            bool pass = true;
            std::ostringstream os;
            for (const auto& row : expected) {
                const auto t0 = std::chrono::steady_clock::now();
                auto prof = selfsim::integrate(row.dim, -1.0 / std::sqrt(2.0));
                const auto sh = selfsim::fit_shock(prof);
                const double secs =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                const double tol = 1e-4;
                const bool ok = std::abs(sh.s_tilde - row.s) <= tol &&
                                std::abs(sh.p_minus - row.pm) <= tol &&
                                std::abs(sh.p_plus - row.pp) <= tol &&
                                std::abs(sh.v_plus - row.vp) <= tol && secs < 30.0;
                pass = pass && ok;
                os << "d=" << row.dim << " (s,p-,p+,v+)=(" << fmt(sh.s_tilde) << ","
                   << fmt(sh.p_minus) << "," << fmt(sh.p_plus) << "," << fmt(sh.v_plus)
                   << ") in " << fmt(secs) << "s; ";
            }
            record(1, "shock-state table reproduction (ODE path)", pass,
                   os.str() + "tolerance 1e-4, runtime < 30 s");
        });
    }

    void criterion_2_theta_bracket() {
        guarded(2, "theta_tilde bracket", [&] {
            const double sweep[] = {-0.1, -0.3, -0.5, -1.0 / std::sqrt(2.0), -0.9};
            bool pass = true;
            std::ostringstream os;
            for (const double v0 : sweep) {
                auto prof = selfsim::integrate(2, v0);
                const auto sh = selfsim::fit_shock(prof);
                const double lo = std::sqrt(3.0);
                const double hi = std::sqrt(v0 * v0 + 3.0) - v0;
                const bool ok = sh.theta_tilde > lo && sh.theta_tilde < hi;
                pass = pass && ok;
                os << "v0=" << fmt(v0) << ": " << fmt(sh.theta_tilde) << (ok ? " in " : " NOT in ")
                   << "(" << fmt(lo) << "," << fmt(hi) << "); ";
            }
            record(2, "theta_tilde bracket", pass, os.str());
        });
    }

    void criterion_3_example1() {
        guarded(3, "radial scheme vs ODE, imploding shock", [&] {
            const auto c = bench::find_case(1);
            const auto rec = bench::run_radial(c, 5000);
            const auto prof = bench::final_profile(rec);
            auto ode = bench::run_ode(c);
            const auto sh = *ode.shock;
            const double dx = rec.grid.dx;
            const double t = c.t_end;

            double plateau_sum = 0.0;
            long plateau_n = 0;
            for (std::size_t i = 0; i < prof.x.size(); ++i) {
                if (prof.x[i] >= 0.1 && prof.x[i] <= 0.35) {
                    plateau_sum += prof.p[i];
                    ++plateau_n;
                }
            }
            const double plateau = plateau_sum / plateau_n;
            const bool plateau_ok = std::abs(plateau / 15.75505 - 1.0) <= 0.02;

            const auto shock_pos = bench::detect_shock(prof.x, prof.v);
            const double shock_ref = sh.s_tilde * t;
            const bool shock_ok = shock_pos && std::abs(*shock_pos - shock_ref) <= 2.0 * dx;

            const auto [p_ref, v_ref] = selfsim::profile_at_time(ode, t, prof.x);
            double sum_p = 0.0, sum_v = 0.0;
            long n_used = 0;
            const double band = 5.0 * dx;
            for (std::size_t i = 0; i < prof.x.size(); ++i) {
                if (prof.x[i] > 2.0) break;
                if (shock_pos && std::abs(prof.x[i] - *shock_pos) <= band) continue;
                sum_p += std::abs(prof.p[i] - p_ref[i]);
                sum_v += std::abs(prof.v[i] - v_ref[i]);
                ++n_used;
            }
            const double mean_p = sum_p / n_used, mean_v = sum_v / n_used;
            const bool dist_ok = mean_p < 0.15 && mean_v < 0.01;

            record(3, "radial scheme vs ODE, imploding shock", plateau_ok && shock_ok && dist_ok,
                   "plateau=" + fmt(plateau) + " (2% of 15.75505), shock at " +
                       (shock_pos ? fmt(*shock_pos) : std::string("none")) + " vs " +
                       fmt(shock_ref) + " (2dx=" + fmt(2 * dx) + "), mean|dp|=" + fmt(mean_p) +
                       "<0.15, mean|dv|=" + fmt(mean_v) + "<0.01 (5dx shock band excluded)");
        });
    }

    void criterion_4_example2() {
        guarded(4, "radial scheme vs ODE, smooth expansion", [&] {
            const auto c = bench::find_case(2);
            const auto rec = bench::run_radial(c, 5000);
            const auto prof = bench::final_profile(rec);
            const auto ode = bench::run_ode(c);
            const auto [p_ref, v_ref] = selfsim::profile_at_time(ode, c.t_end, prof.x);
            double sum_p = 0.0, sum_v = 0.0;
            long n_used = 0;
            for (std::size_t i = 0; i < prof.x.size(); ++i) {
                if (prof.x[i] > 2.0) break;
                sum_p += std::abs(prof.p[i] - p_ref[i]);
                sum_v += std::abs(prof.v[i] - v_ref[i]);
                ++n_used;
            }
            const double mean_p = sum_p / n_used, mean_v = sum_v / n_used;
            record(4, "radial scheme vs ODE, smooth expansion", mean_p < 0.02 && mean_v < 0.005,
                   "mean|dp|=" + fmt(mean_p) + "<0.02, mean|dv|=" + fmt(mean_v) +
                       "<0.005 over x in [0,2]");
        });
    }

    void criterion_5_focus_landmarks() {
        guarded(5, "focus landmarks", [&] {
            const auto [t3, p3] = bench::detect_focus(ex3_record());
            const bool ex3_ok = t3 >= 4.98 && t3 <= 5.08;

            const auto c5 = bench::find_case(5);
            const auto rec5 = bench::run_radial(c5, 5000);
            const auto [t5, p5] = bench::detect_focus(rec5);
            const bool ex5_ok = t5 >= 0.74 && t5 <= 0.80;

            const auto shock = bench::detect_shock(ex3_profile_->x, ex3_profile_->v);
            const bool refl_ok = shock && std::abs(*shock - 0.55) <= 0.05;

            record(5, "focus landmarks", ex3_ok && ex5_ok && refl_ok,
                   "bubble expansion focus t=" + fmt(t3) + " (p=" + fmt(p3) +
                       ") in [4.98,5.08]; periodic-velocity focus t=" + fmt(t5) + " (p=" +
                       fmt(p5) + ") in [0.74,0.80]; reflected shock at " +
                       (shock ? fmt(*shock) : std::string("none")) + " vs 0.55+-0.05");
        });
    }

    void criterion_6_positivity() {
        guarded(6, "positivity on random piecewise-constant data", [&] {
            std::mt19937_64 rng(20240811);
            std::uniform_real_distribution<double> logp(std::log(1e-3), std::log(1e3));
            std::uniform_real_distribution<double> vdist(-0.99, 0.99);
            std::uniform_real_distribution<double> xdist(0.0, 1.0);
            int failures = 0;
            for (int trial = 0; trial < 100; ++trial) {
                constexpr int pieces = 8;
                std::vector<double> cuts(pieces - 1);
                for (auto& c : cuts) c = xdist(rng);
                std::sort(cuts.begin(), cuts.end());
                std::vector<double> ps(pieces), vs(pieces);
                for (int k = 0; k < pieces; ++k) {
                    ps[k] = std::exp(logp(rng));
                    vs[k] = vdist(rng);
                }
                auto piece = [cuts](double x) {
                    return std::upper_bound(cuts.begin(), cuts.end(), x) - cuts.begin();
                };
                radial::InitialData data{[=](double x) { return ps[piece(x)]; },
                                         [=](double x) { return vs[piece(x)]; }, false};
                try {
                    const auto grid = radial::build_grid(1.0, 1.0, 200);
                    const auto rec = radial::run(grid, data, 400);
                    for (const auto& s : rec.final_level().states)
                        if (!(std::abs(s.b) < s.a)) ++failures;
                } catch (const std::exception&) {
                    ++failures;
                }
            }
            record(6, "positivity on random piecewise-constant data", failures == 0,
                   std::to_string(failures) + " failures in 100 runs (N=200)");
        });
    }

    void criterion_7_stationary() {
        guarded(7, "stationary data reproduced bit-identically", [&] {
            bool pass = true;
            std::ostringstream os;
            for (const int n : {10, 1000}) {
                const auto grid = radial::build_grid(1.0, 2.0, n);
                const auto first = radial::initialize(
                    grid, [](double) { return 0.7; }, [](double) { return 0.0; });
                radial::LevelSolution cur = first, next;
                for (int lvl = 1; lvl <= 2 * n; ++lvl) {
                    radial::detail::advance_into(grid, cur, next);
                    std::swap(cur, next);
                }
                bool same = true;
                for (std::size_t i = 0; i < cur.states.size(); ++i) {
                    same = same &&
                           std::memcmp(&cur.states[i].a, &first.states[i].a, sizeof(double)) == 0 &&
                           std::memcmp(&cur.states[i].b, &first.states[i].b, sizeof(double)) == 0;
                }
                pass = pass && same;
                os << "N=" << n << (same ? " bit-identical; " : " DRIFTED; ");
            }
            record(7, "stationary data reproduced bit-identically", pass, os.str());
        });
    }

    void criterion_8_lemmas() {
        guarded(8, "stability lemma inequalities", [&] {
            std::mt19937_64 rng(7151); // fixed seed, 1e6 samples per lemma
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            long bad_1 = 0, bad_2 = 0;
            for (long k = 0; k < 1000000; ++k) {
                const double a = std::exp(unit(rng) * 10.0 - 5.0);
                const double b = (2.0 * unit(rng) - 1.0) * a * 0.999999;
                const double lam = 1.0 + 9.0 * unit(rng);
                const double c = flux_c({a, b});
                if (!(-(a + b / lam) < b + c / lam && b + c / lam < a + b / lam)) ++bad_1;
                if (!(-(a - b / lam) < b - c / lam && b - c / lam < a - b / lam)) ++bad_1;

                const double eta = unit(rng) / 3.0;
                if (eta == 0.0) continue;
                const double xi = -a * (1.0 + eta) + unit(rng) * a * 2.0;
                if (!(xi < a * (1.0 - eta))) continue;
                const double disc = 4.0 * a * a * (1.0 + 3.0 * eta * eta) - 3.0 * xi * xi;
                const double root = (xi + eta * std::sqrt(disc)) / (1.0 + 3.0 * eta * eta);
                if (!(disc > 0.0) || !(std::abs(root) < a)) ++bad_2;
            }
            record(8, "stability lemma inequalities", bad_1 == 0 && bad_2 == 0,
                   "violations: " + std::to_string(bad_1) + " (flux bounds), " +
                       std::to_string(bad_2) + " (root bound) in 1e6 samples each");
        });
    }

    template <int D>
    std::pair<double, double> eigen_errors(std::mt19937_64& rng, int trials) {
        std::uniform_real_distribution<double> logp(std::log(1e-2), std::log(1e2));
        std::uniform_real_distribution<double> uc(-5.0, 5.0);
        std::normal_distribution<double> gauss(0.0, 1.0);
        double worst_lr = 0.0, worst_ar = 0.0;
        for (int t = 0; t < trials; ++t) {
            const double p = std::exp(logp(rng));
            eig::Vec<D> u{}, n{};
            double nn = 0.0;
            for (int i = 0; i < D; ++i) {
                u[i] = uc(rng);
                n[i] = gauss(rng);
                nn += n[i] * n[i];
            }
            if (nn == 0.0) n[0] = 1.0, nn = 1.0;
            for (int i = 0; i < D; ++i) n[i] /= std::sqrt(nn);
            const auto w = eig::conserved<D>(p, u);
            const auto ed = eig::eigen<D>(w, n);

            for (int i = 0; i <= D; ++i) {
                for (int j = 0; j <= D; ++j) {
                    double s = 0.0;
                    for (int k = 0; k <= D; ++k) s += ed.left[i][k] * ed.right[k][j];
                    worst_lr = std::max(worst_lr, std::abs(s - (i == j ? 1.0 : 0.0)));
                }
                if (!(std::abs(ed.lambda[i]) < 1.0))
                    worst_lr = std::max(worst_lr, 1.0); // flag superluminal speeds
            }

            // central finite-difference Jacobian of the normal flux
            eig::Matrix<D> a{};
            for (int j = 0; j <= D; ++j) {
                auto wp = w, wm = w;
                const double h = 1e-7 * std::max(1.0, std::abs(w[j]));
                wp[j] += h;
                wm[j] -= h;
                const auto fp = eig::normal_flux<D>(wp, n);
                const auto fm = eig::normal_flux<D>(wm, n);
                for (int i = 0; i <= D; ++i) a[i][j] = (fp[i] - fm[i]) / (2.0 * h);
            }
            double norm_a = 0.0;
            for (int i = 0; i <= D; ++i)
                for (int j = 0; j <= D; ++j) norm_a = std::max(norm_a, std::abs(a[i][j]));
            for (int i = 0; i <= D; ++i) {
                for (int j = 0; j <= D; ++j) {
                    double ar = 0.0;
                    for (int k = 0; k <= D; ++k) ar += a[i][k] * ed.right[k][j];
                    const double rl = ed.right[i][j] * ed.lambda[j];
                    worst_ar = std::max(worst_ar, std::abs(ar - rl) / norm_a);
                }
            }
        }
        return {worst_lr, worst_ar};
    }

    void criterion_9_eigensystem() {
        guarded(9, "eigensystem verification", [&] {
            std::mt19937_64 rng(99301);
            const auto [lr1, ar1] = eigen_errors<1>(rng, 10000);
            const auto [lr2, ar2] = eigen_errors<2>(rng, 10000);
            const auto [lr3, ar3] = eigen_errors<3>(rng, 10000);
            const double lr = std::max({lr1, lr2, lr3});
            const double ar = std::max({ar1, ar2, ar3});
            record(9, "eigensystem verification", lr <= 1e-10 && ar <= 1e-6,
                   "max|LR-I|=" + fmt(lr) + " (<=1e-10), max|AR-RL|/|A|=" + fmt(ar) +
                       " (<=1e-6), 1e4 states per d in {1,2,3}, all |lambda|<1");
        });
    }

    void criterion_10_cross_solver() {
        guarded(10, "cross-solver convergence on the bubble expansion", [&] {
            const auto c = bench::find_case(3);
            ex3_record();
            const auto& radsym = *ex3_profile_;

            const int nbins = 120;
            std::vector<double> l1p;
            double mean_dv_fine = 0.0;
            long floored = 0;
            std::ostringstream os;
            euler2d::RadialBins bins_fine;
            for (const int cells : {128, 256, 512}) {
                euler2d::StepOptions opt;
                opt.order = 2;
                const auto state = bench::run_euler2d(c, cells, opt);
                floored += state.floored_cells;
                const auto bins = euler2d::radial_profile(state, nbins);
                double sum = 0.0;
                long cnt = 0;
                for (int bIdx = 0; bIdx < nbins; ++bIdx) {
                    if (bins.count[bIdx] == 0) continue;
                    sum += std::abs(bins.p[bIdx] -
                                    bench::interp(radsym.x, radsym.p, bins.r[bIdx]));
                    ++cnt;
                }
                l1p.push_back(sum / cnt);
                os << cells << ": L1(p)=" << fmt(l1p.back()) << "; ";
                if (cells == 512) bins_fine = bins;
            }
            const bool monotone = l1p[0] > l1p[1] && l1p[1] > l1p[2];

            // velocity agreement at 512^2 away from a 3-bin band around the shock
            const auto shock = bench::detect_shock(radsym.x, radsym.v);
            const double bin_w = bins_fine.r[1] - bins_fine.r[0];
            double sum_v = 0.0;
            long cnt_v = 0;
            for (int bIdx = 0; bIdx < nbins; ++bIdx) {
                if (bins_fine.count[bIdx] == 0) continue;
                if (shock && std::abs(bins_fine.r[bIdx] - *shock) <= 1.5 * bin_w) continue;
                sum_v += std::abs(bins_fine.v[bIdx] -
                                  bench::interp(radsym.x, radsym.v, bins_fine.r[bIdx]));
                ++cnt_v;
            }
            mean_dv_fine = sum_v / cnt_v;
            const bool v_ok = mean_dv_fine < 0.02;

            record(10, "cross-solver convergence on the bubble expansion",
                   monotone && v_ok && floored == 0,
                   os.str() + (monotone ? "monotone" : "NOT monotone") +
                       "; mean|dv|@512=" + fmt(mean_dv_fine) + "<0.02 (3-bin shock band), " +
                       std::to_string(floored) + " floored cells");
        });
    }

    void criterion_11_rk4_order() {
        guarded(11, "integrator order sanity", [&] {
            selfsim::OdeSettings coarse, fine;
            fine.step = coarse.step / 2.0;
            auto prof_a = selfsim::integrate(2, -1.0 / std::sqrt(2.0), coarse);
            auto prof_b = selfsim::integrate(2, -1.0 / std::sqrt(2.0), fine);
            const auto sh_a = selfsim::fit_shock(prof_a);
            const auto sh_b = selfsim::fit_shock(prof_b);
            const double diff = std::abs(sh_a.theta_tilde - sh_b.theta_tilde);
            record(11, "integrator order sanity", diff <= 1e-10,
                   "theta_tilde(h) - theta_tilde(h/2) = " + fmt(diff) + " (<=1e-10)");
        });
    }
};

} // namespace detail

inline std::vector<CriterionResult> run_all(std::ostream& log) {
    detail::Suite suite(log);
    return suite.run_all();
}

/// Print the summary table; returns true when every criterion passed.
inline bool summarize(const std::vector<CriterionResult>& results, std::ostream& os) {
    bool all = true;
    int passed = 0;
    for (const auto& r : results) {
        all = all && r.pass;
        passed += r.pass ? 1 : 0;
    }
    os << passed << "/" << results.size() << " acceptance criteria passed\n";
    return all;
}

} // namespace urel::accept
