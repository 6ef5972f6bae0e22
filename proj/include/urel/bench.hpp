#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "urel/csv.hpp"
#include "urel/errors.hpp"
#include "urel/euler2d.hpp"
#include "urel/radial_scheme.hpp"
#include "urel/selfsim.hpp"
#include "urel/state.hpp"

// Benchmark registry and run orchestration: the five radially symmetric test
// problems, drivers for the three solvers, radial-profile comparison metrics,
// and all file I/O (profile CSVs, shock-state tables, landmark goldens).

namespace urel::bench {

constexpr const char* kCsvMagic = "# urel-euler v1";

/// An expected scalar outcome of a benchmark run, with its check tolerance
/// and a note describing where the value comes from.
struct Landmark {
    std::string name;
    double value;
    double tolerance;
    std::string source;
};

struct BenchmarkCase {
    int id = 0;
    std::string title;
    int dim = 2;
    double t_end = 1.0;
    double x_star = 2.0; ///< radial extent; the 2D domain is [-x*, x*]^2
    radial::InitialData initial;
    bool has_ode_reference = false;
    selfsim::OdeSettings ode;
    std::vector<Landmark> landmarks;
};

inline std::vector<BenchmarkCase> registry() {
    std::vector<BenchmarkCase> cases;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    {
        BenchmarkCase c;
        c.id = 1;
        c.title = "imploding self-similar flow with a 3-shock";
        c.t_end = 1.0;
        c.x_star = 2.0;
        c.initial = {[](double) { return 1.0; }, [=](double) { return -inv_sqrt2; }, false};
        c.has_ode_reference = true;
        c.landmarks = {
            {"shock_speed_d2", 0.45503, 1e-4, "self-similar shock-state table, d=2"},
            {"p_minus_d2", 15.75505, 1e-4, "self-similar shock-state table, d=2"},
            {"p_plus_d2", 5.71869, 1e-4, "self-similar shock-state table, d=2"},
            {"v_plus_d2", -0.41629, 1e-4, "self-similar shock-state table, d=2"},
            {"shock_speed_d3", 0.52314, 1e-4, "self-similar shock-state table, d=3"},
            {"p_minus_d3", 25.56463, 1e-4, "self-similar shock-state table, d=3"},
            {"p_plus_d3", 17.16524, 1e-4, "self-similar shock-state table, d=3"},
            {"v_plus_d3", -0.17106, 1e-4, "self-similar shock-state table, d=3"},
        };
        cases.push_back(std::move(c));
    }
    {
        BenchmarkCase c;
        c.id = 2;
        c.title = "self-similar expansion";
        c.t_end = 1.0;
        c.x_star = 2.0;
        c.initial = {[](double) { return 1.0; }, [=](double) { return inv_sqrt2; }, false};
        c.has_ode_reference = true;
        cases.push_back(std::move(c));
    }
    {
        BenchmarkCase c;
        c.id = 3;
        c.title = "expansion of a high-pressure bubble";
        c.t_end = 6.0;
        c.x_star = 6.0;
        c.initial = {[](double x) { return x <= 1.0 ? 1.0 : 0.1; }, [](double) { return 0.0; },
                     false};
        c.landmarks = {
            {"focus_time", 5.032, 0.05, "on-axis pressure focus of the imploding secondary shock"},
            {"reflected_shock_radius", 0.55, 0.05, "reflected shock position at t = 6"},
        };
        cases.push_back(std::move(c));
    }
    {
        BenchmarkCase c;
        c.id = 4;
        c.title = "collapse of a low-pressure bubble";
        c.t_end = 6.0;
        c.x_star = 6.0;
        c.initial = {[](double x) { return x <= 1.0 ? 0.1 : 1.0; }, [](double) { return 0.0; },
                     false};
        cases.push_back(std::move(c));
    }
    {
        BenchmarkCase c;
        c.id = 5;
        c.title = "initially periodic radial four-velocity";
        c.t_end = 6.0;
        c.x_star = 5.0;
        c.initial = {[](double) { return 1.0; },
                     [](double x) { return x < 1.0 ? std::sin(2.0 * std::numbers::pi * x) : 0.0; }, true};
        c.landmarks = {
            {"focus_time", 0.77, 0.03, "first on-axis pressure focus"},
        };
        cases.push_back(std::move(c));
    }
    return cases;
}

inline BenchmarkCase find_case(int id) {
    for (auto& c : registry())
        if (c.id == id) return c;
    throw error("unknown benchmark case " + std::to_string(id));
}

// ---------------------------------------------------------------------------
// radial profiles and comparison metrics

struct RadialProfileData {
    std::vector<double> x, p, v;
};

inline RadialProfileData profile_of(const RadialField& field) {
    RadialProfileData out;
    out.x = field.positions;
    out.p.resize(field.states.size());
    out.v.resize(field.states.size());
    for (std::size_t i = 0; i < field.states.size(); ++i) {
        const auto prim = to_primitive(field.states[i]);
        out.p[i] = prim.p;
        out.v[i] = velocity(prim);
    }
    return out;
}

inline RadialProfileData final_profile(const radial::SpaceTimeRecord& rec) {
    return profile_of(radial::to_field(rec.grid, rec.final_level()));
}

inline double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - xs.begin());
    const double w = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
    return ys[k - 1] + w * (ys[k] - ys[k - 1]);
}

/// Adjacent-difference shock detector: a pair is flagged when |dv| exceeds
/// 10x the median adjacent |dv|; the position reported is the midpoint of the
/// strongest flagged pair.
inline std::optional<double> detect_shock(const std::vector<double>& x,
                                          const std::vector<double>& v) {
    if (x.size() < 3) return std::nullopt;
    std::vector<double> dv(x.size() - 1);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) dv[i] = std::abs(v[i + 1] - v[i]);
    std::vector<double> sorted(dv);
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    double best = 0.0;
    std::size_t best_i = 0;
    bool found = false;
    for (std::size_t i = 0; i < dv.size(); ++i) {
        if (dv[i] > 10.0 * median && dv[i] > best) {
            best = dv[i];
            best_i = i;
            found = true;
        }
    }
    if (!found) return std::nullopt;
    return 0.5 * (x[best_i] + x[best_i + 1]);
}

struct LandmarkCheck {
    std::string name;
    double expected, measured, tolerance;
    bool pass;
    std::string source;
};

struct ComparisonReport {
    double l1_p = 0.0, l1_v = 0.0;   ///< mean absolute differences
    double linf_p = 0.0, linf_v = 0.0;
    std::optional<double> shock_a, shock_b;
    std::vector<LandmarkCheck> landmark_checks;
};

inline ComparisonReport compare(const RadialProfileData& a, const RadialProfileData& b,
                                const std::vector<double>& common_radii) {
    if (a.x.empty() || b.x.empty() || common_radii.empty())
        throw error("compare: empty profile or radius set");
    const double lo = std::max(a.x.front(), b.x.front());
    const double hi = std::min(a.x.back(), b.x.back());
    if (!(lo < hi))
        throw error("compare: profiles do not overlap");
    if (common_radii.front() < lo - 1e-12 || common_radii.back() > hi + 1e-12)
        throw error("compare: common radii leave the overlap region");
    ComparisonReport rep;
    for (const double x : common_radii) {
        const double dp = std::abs(interp(a.x, a.p, x) - interp(b.x, b.p, x));
        const double dv = std::abs(interp(a.x, a.v, x) - interp(b.x, b.v, x));
        rep.l1_p += dp;
        rep.l1_v += dv;
        rep.linf_p = std::max(rep.linf_p, dp);
        rep.linf_v = std::max(rep.linf_v, dv);
    }
    rep.l1_p /= common_radii.size();
    rep.l1_v /= common_radii.size();
    rep.shock_a = detect_shock(a.x, a.v);
    rep.shock_b = detect_shock(b.x, b.v);
    return rep;
}

/// Time and value of the on-axis pressure maximum (earliest level on ties).
inline std::pair<double, double> detect_focus(const radial::SpaceTimeRecord& rec) {
    if (rec.axis_time.size() < 2)
        throw insufficient_record_error("detect_focus: record holds no usable axis trace");
    double t_best = rec.axis_time.front();
    double p_best = rec.axis_pressure.front();
    for (std::size_t i = 1; i < rec.axis_time.size(); ++i) {
        if (rec.axis_pressure[i] > p_best) {
            p_best = rec.axis_pressure[i];
            t_best = rec.axis_time[i];
        }
    }
    return {t_best, p_best};
}

// ---------------------------------------------------------------------------
// solver drivers

inline radial::SpaceTimeRecord run_radial(const BenchmarkCase& c, int n_half_steps,
                                          int record_stride = 0, int dim = 0,
                                          double t_end_override = 0.0) {
    const double t_end = t_end_override > 0.0 ? t_end_override : c.t_end;
    const auto grid =
        radial::build_grid(t_end, c.x_star, n_half_steps, dim > 0 ? dim : c.dim);
    const int stride = record_stride > 0 ? record_stride : 2 * n_half_steps;
    return radial::run(grid, c.initial, stride);
}

inline selfsim::SelfSimilarProfile run_ode(const BenchmarkCase& c, int dim = 0,
                                           double step_override = 0.0) {
    if (!c.has_ode_reference)
        throw error("case " + std::to_string(c.id) + " has no ODE reference");
    selfsim::OdeSettings opt = c.ode;
    if (step_override > 0.0) opt.step = step_override;
    const double v0 = c.initial.velocity(c.x_star); // constant far-field value
    auto prof = selfsim::integrate(dim > 0 ? dim : c.dim, v0, opt);
    if (v0 < 0.0) selfsim::fit_shock(prof, opt.shock_tol);
    return prof;
}

inline euler2d::FieldState2D run_euler2d(const BenchmarkCase& c, int cells,
                                         const euler2d::StepOptions& opt = {},
                                         double t_end_override = 0.0) {
    const double t_end = t_end_override > 0.0 ? t_end_override : c.t_end;
    const auto grid =
        euler2d::make_grid(-c.x_star, c.x_star, -c.x_star, c.x_star, cells, cells);
    auto state = euler2d::init_radial(grid, c.initial.pressure, c.initial.velocity,
                                      c.initial.velocity_is_four_velocity
                                          ? euler2d::RadialKind::four_velocity
                                          : euler2d::RadialKind::velocity);
    return euler2d::run_to_time(std::move(state), t_end, opt);
}

// ---------------------------------------------------------------------------
// file I/O

inline void write_profile_csv(const std::string& path, double t, const RadialProfileData& prof) {
    csv::Table tab;
    tab.magic = kCsvMagic;
    tab.columns = {"t", "x", "p", "v", "a", "b"};
    tab.rows.reserve(prof.x.size());
    for (std::size_t i = 0; i < prof.x.size(); ++i) {
        const auto c = to_conserved(primitive_from_pv(prof.p[i], prof.v[i]));
        tab.rows.push_back({t, prof.x[i], prof.p[i], prof.v[i], c.a, c.b});
    }
    csv::write_file(path, tab);
}

inline std::pair<double, RadialProfileData> read_profile_csv(const std::string& path) {
    const auto tab = csv::read_file(path);
    if (tab.rows.empty())
        throw error("profile csv '" + path + "' holds no rows");
    const std::size_t ix = tab.columns.empty() ? 1 : tab.column_index("x");
    const std::size_t ip = tab.columns.empty() ? 2 : tab.column_index("p");
    const std::size_t iv = tab.columns.empty() ? 3 : tab.column_index("v");
    RadialProfileData prof;
    for (const auto& row : tab.rows) {
        prof.x.push_back(row[ix]);
        prof.p.push_back(row[ip]);
        prof.v.push_back(row[iv]);
    }
    return {tab.rows.front()[0], prof};
}

inline void write_shock_csv(const std::string& path, const selfsim::ShockData& sh, int dim) {
    csv::Table tab;
    tab.magic = kCsvMagic;
    tab.columns = {"d", "theta_tilde", "s_tilde", "p_minus", "v_minus", "p_plus", "v_plus"};
    tab.rows.push_back({static_cast<double>(dim), sh.theta_tilde, sh.s_tilde, sh.p_minus,
                        sh.v_minus, sh.p_plus, sh.v_plus});
    csv::write_file(path, tab);
}

/// Golden landmark table for all registered cases (value, tolerance, source).
inline void write_landmarks_csv(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw error("cannot open '" + path + "'");
    os << kCsvMagic << '\n';
    os << "case,name,value,tolerance,source\n";
    for (const auto& c : registry())
        for (const auto& lm : c.landmarks)
            os << c.id << ',' << lm.name << ',' << csv::format_double(lm.value) << ','
               << csv::format_double(lm.tolerance) << ',' << '"' << lm.source << '"' << '\n';
}

// ---------------------------------------------------------------------------
// flat key=value run configuration

struct RunConfig {
    int case_id = 1;
    std::string solver = "radsym"; ///< radsym | ode | euler2d
    int n = 5000;                  ///< radial half-step count N
    int grid = 256;                ///< 2D cells per direction
    int dim = 2;
    double t_end = 0.0; ///< 0 = case default
    std::string out_dir = ".";
    int record_stride = 0; ///< 0 = final level only
    double ode_step = 1e-6;
    int order = 2; ///< euler2d spatial order
    double cfl = 0.45;
    int bins = 120; ///< euler2d radial profile bins
};

inline void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& val) {
    if (key == "case") cfg.case_id = std::stoi(val);
    else if (key == "solver") cfg.solver = val;
    else if (key == "n") cfg.n = std::stoi(val);
    else if (key == "grid") cfg.grid = std::stoi(val);
    else if (key == "d") cfg.dim = std::stoi(val);
    else if (key == "t_end") cfg.t_end = std::stod(val);
    else if (key == "out") cfg.out_dir = val;
    else if (key == "stride") cfg.record_stride = std::stoi(val);
    else if (key == "h") cfg.ode_step = std::stod(val);
    else if (key == "order") cfg.order = std::stoi(val);
    else if (key == "cfl") cfg.cfl = std::stod(val);
    else if (key == "bins") cfg.bins = std::stoi(val);
    else throw error("config: unknown key '" + key + "'");
}

inline RunConfig parse_config(std::istream& is) {
    RunConfig cfg;
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) apply_config_entry(cfg, key, val);
    }
    return cfg;
}

inline RunConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw error("cannot open config '" + path + "'");
    return parse_config(is);
}

/// Execute one benchmark run and emit its CSV artifacts. Returns the list of
/// files written.
inline std::vector<std::string> run_case(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    const auto c = find_case(cfg.case_id);
    fs::create_directories(cfg.out_dir);
    std::vector<std::string> written;
    const std::string tag = "case" + std::to_string(c.id) +
                            (cfg.dim == 3 ? "_d3" : "");
    const double t_end = cfg.t_end > 0.0 ? cfg.t_end : c.t_end;

    if (cfg.solver == "radsym") {
        const auto rec = run_radial(c, cfg.n, cfg.record_stride, cfg.dim, cfg.t_end);
        const std::string path = (fs::path(cfg.out_dir) / ("radsym_" + tag + ".csv")).string();
        write_profile_csv(path, t_end, final_profile(rec));
        written.push_back(path);
    } else if (cfg.solver == "ode") {
        auto prof = run_ode(c, cfg.dim, cfg.ode_step);
        if (prof.shock) {
            const std::string spath =
                (fs::path(cfg.out_dir) / ("ode_shock_" + tag + ".csv")).string();
            write_shock_csv(spath, *prof.shock, cfg.dim);
            written.push_back(spath);
        }
        const int samples = 2000;
        RadialProfileData grid_prof;
        grid_prof.x.resize(samples);
        for (int i = 0; i < samples; ++i)
            grid_prof.x[i] = c.x_star * (i + 1) / static_cast<double>(samples);
        auto [pv, vv] = selfsim::profile_at_time(prof, t_end, grid_prof.x);
        grid_prof.p = std::move(pv);
        grid_prof.v = std::move(vv);
        const std::string path = (fs::path(cfg.out_dir) / ("ode_" + tag + ".csv")).string();
        write_profile_csv(path, t_end, grid_prof);
        written.push_back(path);
    } else if (cfg.solver == "euler2d") {
        euler2d::StepOptions opt;
        opt.cfl = cfg.cfl;
        opt.order = cfg.order;
        const auto state = run_euler2d(c, cfg.grid, opt, cfg.t_end);
        const auto bins = euler2d::radial_profile(state, cfg.bins);
        RadialProfileData prof;
        for (std::size_t b = 0; b < bins.r.size(); ++b) {
            if (bins.count[b] == 0) continue;
            prof.x.push_back(bins.r[b]);
            prof.p.push_back(bins.p[b]);
            prof.v.push_back(bins.v[b]);
        }
        const std::string path = (fs::path(cfg.out_dir) /
                                  ("euler2d_" + tag + "_" + std::to_string(cfg.grid) + ".csv"))
                                     .string();
        write_profile_csv(path, state.time, prof);
        written.push_back(path);
    } else {
        throw error("unknown solver '" + cfg.solver + "'");
    }
    return written;
}

} // namespace urel::bench
