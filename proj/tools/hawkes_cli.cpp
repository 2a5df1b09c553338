// Command-line front end: model parsing, analytics dispatch, simulation and
// the validation suite. Every command is deterministic given its options and
// seed; all outputs are CSV files with 17-significant-digit floats plus a
// metadata.json describing the run.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hawkes/counts.hpp"
#include "hawkes/covariance.hpp"
#include "hawkes/csv.hpp"
#include "hawkes/laplace.hpp"
#include "hawkes/model_io.hpp"
#include "hawkes/moments.hpp"
#include "hawkes/parallel.hpp"
#include "hawkes/presets.hpp"
#include "hawkes/simulate.hpp"
#include "hawkes/validate.hpp"

namespace fs = std::filesystem;
using namespace hawkes;

namespace {

struct RunConfig {
    std::string model_path;
    std::string preset;
    double T = 10.0;
    int M = 2000;
    std::uint64_t seed = 20240901;
    std::string out = ".";
    int threads = 0;

    Grid grid() const { return Grid(T, M); }

    ModelSpec model() const {
        if (!preset.empty()) return preset_model(preset);
        if (!model_path.empty()) return load_model(model_path);
        return seasonal2d_model();
    }

    std::string path(const std::string& file) const { return (fs::path(out) / file).string(); }
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--model", cfg.model_path, "model spec file (JSON)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--preset", cfg.preset, "built-in model preset")
        ->check(CLI::IsMember(preset_names()));
    cmd->add_option("--T", cfg.T, "horizon");
    cmd->add_option("--M", cfg.M, "grid interval count");
    cmd->add_option("--seed", cfg.seed, "master seed");
    cmd->add_option("--out", cfg.out, "output directory");
    cmd->add_option("--threads", cfg.threads, "worker pool cap (HAWKES_LAB_THREADS fallback)");
}

void prepare(const RunConfig& cfg) {
    if (cfg.threads > 0) set_thread_count(cfg.threads);
    fs::create_directories(cfg.out);
}

void write_metadata(const RunConfig& cfg, const std::string& command,
                    const std::vector<std::string>& files,
                    const std::vector<std::string>& warnings) {
    nlohmann::json j;
    j["command"] = command;
    j["T"] = cfg.T;
    j["M"] = cfg.M;
    j["seed"] = cfg.seed;
    j["files"] = files;
    j["warnings"] = warnings;
    const ModelSpec m = cfg.model();
    const auto rep = stability_margin(m);
    j["stability"] = {{"alpha_max", rep.alpha_max},
                      {"d_alpha", rep.d_alpha},
                      {"stable", rep.stable},
                      {"spectral_radius", rep.spectral_radius}};
    std::ofstream out(cfg.path("metadata.json"));
    out << j.dump(2) << "\n";
}

std::vector<std::string> stability_warnings(const ModelSpec& m) {
    std::vector<std::string> w;
    const auto rep = stability_margin(m);
    if (!rep.stable)
        w.push_back("model fails the sufficient stability condition d*alpha_max < 1 "
                    "(moments may grow without bound)");
    return w;
}

std::vector<double> column(const GridFn& f, int i, int j) {
    std::vector<double> out(f.grid.nodes());
    for (int m = 0; m <= f.grid.M; ++m) out[m] = f.at(m, i, j);
    return out;
}

CsvTable node_table(const Grid& g, const std::vector<std::string>& names,
                    const std::vector<std::vector<double>>& cols) {
    CsvTable t;
    t.header = names;
    for (int m = 0; m <= g.M; ++m) {
        std::vector<double> row{g.node(m)};
        for (const auto& c : cols) row.push_back(c[m]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

// --- analytics builders -------------------------------------------------------

struct Analytics {
    ModelSpec model;
    Grid grid;
    FundamentalSeries series;
    MomentTable moments;
    CovContext ctx;
};

Analytics build(const RunConfig& cfg) {
    Analytics a{cfg.model(), cfg.grid(), {}, {}, {}};
    validate(a.model);
    a.series = fundamental_series(sample_kernel_matrix(a.model, a.grid), {.tolerance = 1e-10});
    a.moments = moment_table(a.model, a.series);
    a.ctx = make_cov_context(a.model, a.series, a.moments);
    return a;
}

std::string write_moments_csv(const RunConfig& cfg, const Analytics& a) {
    const int d = a.model.d;
    CsvTable t;
    t.header = {"t"};
    for (int i = 1; i <= d; ++i) t.header.push_back("M_full_" + std::to_string(i));
    for (int i = 1; i <= d; ++i) t.header.push_back("m_full_" + std::to_string(i));
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j)
            t.header.push_back("M_base_" + std::to_string(i) + std::to_string(j));
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j)
            t.header.push_back("m_base_" + std::to_string(i) + std::to_string(j));
    for (int m = 0; m <= a.grid.M; ++m) {
        std::vector<double> row{a.grid.node(m)};
        for (int i = 0; i < d; ++i) row.push_back(a.moments.M_full.at(m, i, 0));
        for (int i = 0; i < d; ++i) row.push_back(a.moments.m_full.at(m, i, 0));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) row.push_back(a.moments.M_base.at(m, i, j));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) row.push_back(a.moments.m_base.at(m, i, j));
        t.rows.push_back(std::move(row));
    }
    write_csv(t, cfg.path("moments.csv"));
    return "moments.csv";
}

std::string write_surface_csv(const RunConfig& cfg, const std::string& name, const Grid& g,
                              const std::function<double(int, int)>& value) {
    CsvTable t;
    t.header = {"t1_by_row_t2_by_column"};
    for (int m2 = 0; m2 <= g.M; ++m2) t.header.push_back(format_cell(g.node(m2)));
    for (int m1 = 0; m1 <= g.M; ++m1) {
        std::vector<double> row{g.node(m1)};
        for (int m2 = 0; m2 <= g.M; ++m2) row.push_back(value(m1, m2));
        t.rows.push_back(std::move(row));
    }
    write_csv(t, cfg.path(name));
    return name;
}

// --- subcommand drivers ---------------------------------------------------------

int cmd_simulate(const RunConfig& cfg, const std::string& method) {
    prepare(cfg);
    const ModelSpec m = cfg.model();
    validate(m);
    ThinningOptions topts;
    topts.lookahead = 10.0 * cfg.grid().tau();
    const Trajectory traj = method == "branching" ? simulate_branching(m, cfg.T, cfg.seed)
                                                  : simulate_thinning(m, cfg.T, cfg.seed, topts);
    CsvTable ev;
    ev.header = {"time", "component", "generation"};
    for (const auto& e : traj.events)
        ev.rows.push_back({e.t, static_cast<double>(e.component + 1),
                           static_cast<double>(e.generation)});
    write_csv(ev, cfg.path("events.csv"));

    const Grid g = cfg.grid();
    const auto counts = count_curve(traj, g, m.d);
    const auto lam = intensity_curve(m, traj, g);
    CsvTable cc, ic;
    cc.header = {"t"};
    ic.header = {"t"};
    for (int i = 1; i <= m.d; ++i) {
        cc.header.push_back("N_" + std::to_string(i));
        ic.header.push_back("lambda_" + std::to_string(i));
    }
    for (int node = 0; node <= g.M; ++node) {
        std::vector<double> r1{g.node(node)}, r2{g.node(node)};
        for (int i = 0; i < m.d; ++i) {
            r1.push_back(counts[static_cast<std::size_t>(node) * m.d + i]);
            r2.push_back(lam[static_cast<std::size_t>(node) * m.d + i]);
        }
        cc.rows.push_back(std::move(r1));
        ic.rows.push_back(std::move(r2));
    }
    write_csv(cc, cfg.path("counts.csv"));
    write_csv(ic, cfg.path("intensity.csv"));
    write_metadata(cfg, "simulate --method " + method, {"events.csv", "counts.csv", "intensity.csv"},
                   stability_warnings(m));
    std::printf("simulate: %zu events, acceptance ratio %.3f -> %s\n", traj.events.size(),
                traj.acceptance_ratio(), cfg.out.c_str());
    return 0;
}

int cmd_moments(RunConfig cfg, const std::string& figure) {
    if (!figure.empty() && cfg.preset.empty() && cfg.model_path.empty()) cfg.preset = "seasonal2d";
    prepare(cfg);
    const Analytics a = build(cfg);
    std::vector<std::string> files;
    files.push_back(write_moments_csv(cfg, a));

    if (figure == "fig1") {
        const GridFn lam = sample_baseline(a.model, a.grid);
        std::vector<std::string> names{"t"};
        std::vector<std::vector<double>> cols;
        for (int i = 1; i <= a.model.d; ++i) names.push_back("lambda0_" + std::to_string(i));
        for (int i = 0; i < a.model.d; ++i) cols.push_back(column(lam, i, 0));
        write_csv(node_table(a.grid, names, cols), cfg.path("baseline.csv"));
        const GridFn phi = sample_kernel_matrix(a.model, a.grid);
        names = {"t"};
        cols.clear();
        for (int i = 1; i <= a.model.d; ++i)
            for (int j = 1; j <= a.model.d; ++j)
                names.push_back("phi_" + std::to_string(i) + std::to_string(j));
        for (int i = 0; i < a.model.d; ++i)
            for (int j = 0; j < a.model.d; ++j) cols.push_back(column(phi, i, j));
        write_csv(node_table(a.grid, names, cols), cfg.path("kernels.csv"));
        files.push_back("baseline.csv");
        files.push_back("kernels.csv");
    } else if (figure == "fig2") {
        std::vector<std::string> names{"t"};
        std::vector<std::vector<double>> cols;
        for (int i = 1; i <= a.model.d; ++i)
            for (int j = 1; j <= a.model.d; ++j)
                names.push_back("psi_" + std::to_string(i) + std::to_string(j));
        for (int i = 0; i < a.model.d; ++i)
            for (int j = 0; j < a.model.d; ++j) cols.push_back(column(a.series.psi, i, j));
        write_csv(node_table(a.grid, names, cols), cfg.path("fundamental_series.csv"));
        files.push_back("fundamental_series.csv");
        std::printf("fundamental series: K=%d terms, last term norm %.3g\n", a.series.K,
                    a.series.last_term_norm);
    } else if (figure == "fig3") {
        const GridFn r = intensity_ratios(a.moments.m_base);
        std::vector<std::string> names{"t"};
        std::vector<std::vector<double>> cols;
        for (int i = 1; i <= a.model.d; ++i)
            for (int j = 1; j <= a.model.d; ++j)
                names.push_back("ratio_" + std::to_string(i) + std::to_string(j));
        for (int i = 0; i < a.model.d; ++i)
            for (int j = 0; j < a.model.d; ++j) cols.push_back(column(r, i, j));
        write_csv(node_table(a.grid, names, cols), cfg.path("ratios.csv"));
        names = {"t"};
        cols.clear();
        for (int i = 1; i <= a.model.d; ++i)
            for (int j = 1; j <= a.model.d; ++j)
                names.push_back("M_base_" + std::to_string(i) + std::to_string(j));
        for (int i = 0; i < a.model.d; ++i)
            for (int j = 0; j < a.model.d; ++j) cols.push_back(column(a.moments.M_base, i, j));
        write_csv(node_table(a.grid, names, cols), cfg.path("base_means.csv"));
        files.push_back("ratios.csv");
        files.push_back("base_means.csv");
    } else if (figure == "fig4") {
        std::vector<std::string> names{"t"};
        std::vector<std::vector<double>> cols;
        for (int i = 1; i <= a.model.d; ++i) names.push_back("m_full_" + std::to_string(i));
        for (int i = 0; i < a.model.d; ++i) cols.push_back(column(a.moments.m_full, i, 0));
        write_csv(node_table(a.grid, names, cols), cfg.path("full_intensities.csv"));
        names = {"t"};
        cols.clear();
        for (int i = 1; i <= a.model.d; ++i) names.push_back("M_full_" + std::to_string(i));
        for (int i = 0; i < a.model.d; ++i) cols.push_back(column(a.moments.M_full, i, 0));
        write_csv(node_table(a.grid, names, cols), cfg.path("full_means.csv"));
        files.push_back("full_intensities.csv");
        files.push_back("full_means.csv");
    } else if (!figure.empty()) {
        throw CLI::ValidationError("--figure", "moments supports fig1..fig4");
    }
    write_metadata(cfg, "moments", files, stability_warnings(a.model));
    std::printf("moments -> %s\n", cfg.out.c_str());
    return 0;
}

int cmd_covariance(RunConfig cfg, const std::string& figure, int igniter,
                   std::vector<int> pair, bool with_decomposition) {
    const bool surface_figure = figure == "fig6" || figure == "fig7";
    if (!figure.empty() && cfg.preset.empty() && cfg.model_path.empty()) cfg.preset = "seasonal2d";
    if (surface_figure && cfg.M == 2000) cfg.M = 500; // surface default mesh
    prepare(cfg);
    const Analytics a = build(cfg);
    const int d = a.model.d;
    std::vector<std::string> files;

    if (figure == "fig5") {
        const auto var11 = cov_band(a.ctx, 1, 0, 0, 0);
        const auto cov12 = cov_band(a.ctx, 1, 0, 1, 0);
        write_csv(node_table(a.grid, {"t", "C1_11", "C1_12"}, {var11, cov12}),
                  cfg.path("base_variance.csv"));
        files.push_back("base_variance.csv");
    } else if (figure == "fig6" || figure == "fig7") {
        const int jp = figure == "fig6" ? 1 : 0;
        const auto pairs = figure == "fig6"
                               ? std::vector<std::pair<int, int>>{{0, 0}, {0, 1}}
                               : std::vector<std::pair<int, int>>{{1, 1}, {1, 0}};
        for (auto [k, l] : pairs) {
            const auto s = correlation_surface(a.ctx, jp, k, l);
            const std::string name = "corr_" + std::to_string(jp) + "_" +
                                     std::to_string(k + 1) + "_" + std::to_string(l + 1) +
                                     ".csv";
            files.push_back(write_surface_csv(cfg, name, a.grid, [&](int m1, int m2) {
                return s.at(m1, m2);
            }));
        }
    } else if (!figure.empty()) {
        throw CLI::ValidationError("--figure", "covariance supports fig5..fig7");
    } else {
        // dense mirrored two-time tables for the requested igniter / pairs
        std::vector<std::pair<int, int>> pairs;
        if (pair.size() == 2)
            pairs.emplace_back(pair[0] - 1, pair[1] - 1);
        else
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) pairs.emplace_back(k, l);
        for (auto [k, l] : pairs) {
            if (k < 0 || k >= d || l < 0 || l >= d)
                throw CLI::ValidationError("--pair", "components are 1-based in 1..d");
            const auto kl = cov_table(a.ctx, igniter, k, l);
            const auto lk = (k == l) ? kl : cov_table(a.ctx, igniter, l, k);
            const std::string name = "cov_" + std::to_string(igniter) + "_" +
                                     std::to_string(k + 1) + "_" + std::to_string(l + 1) +
                                     ".csv";
            files.push_back(write_surface_csv(cfg, name, a.grid, [&](int m1, int m2) {
                return m1 <= m2 ? kl.at(m1, m2) : lk.at(m2, m1);
            }));
        }
    }
    if (with_decomposition) {
        const int k = pair.size() == 2 ? pair[0] - 1 : 0;
        const int l = pair.size() == 2 ? pair[1] - 1 : (d > 1 ? 1 : 0);
        const auto dec = decompose(a.ctx, igniter, k, l);
        write_csv(node_table(a.grid, {"t", "singular_density"}, {dec.singular}),
                  cfg.path("decomp_singular.csv"));
        files.push_back("decomp_singular.csv");
        const std::string name =
            "decomp_ac_" + std::to_string(k + 1) + "_" + std::to_string(l + 1) + ".csv";
        files.push_back(write_surface_csv(cfg, name, a.grid, [&](int m1, int m2) {
            return dec.ac_at(m1, m2);
        }));
    }
    write_metadata(cfg, "covariance", files, stability_warnings(a.model));
    std::printf("covariance -> %s\n", cfg.out.c_str());
    return 0;
}

int cmd_laplace1(const RunConfig& cfg, std::vector<double> a, const std::string& a_file) {
    prepare(cfg);
    const ModelSpec m = cfg.model();
    if (!a_file.empty()) {
        const CsvTable t = read_csv(a_file);
        if (t.rows.empty()) throw CLI::ValidationError("--a-file", "empty transform file");
        a = t.rows[0];
    }
    if (a.empty()) a.assign(m.d, 1.0);
    if (static_cast<int>(a.size()) != m.d)
        throw CLI::ValidationError("--a", "need d transform variables");
    const Grid g = cfg.grid();
    const auto r = laplace1(m, a, g);
    CsvTable t;
    t.header = {"t", "L_full"};
    for (int j = 1; j <= m.d; ++j) t.header.push_back("L_base_" + std::to_string(j));
    for (int node = 0; node <= g.M; ++node) {
        std::vector<double> row{g.node(node), r.full[node]};
        for (int j = 0; j < m.d; ++j) row.push_back(r.base[j][node]);
        t.rows.push_back(std::move(row));
    }
    write_csv(t, cfg.path("laplace1.csv"));
    write_metadata(cfg, "laplace1", {"laplace1.csv"}, stability_warnings(m));
    std::printf("laplace1 -> %s\n", cfg.path("laplace1.csv").c_str());
    return 0;
}

int cmd_laplace2(const RunConfig& cfg, std::vector<double> a1, std::vector<double> a2,
                 int gap_nodes) {
    prepare(cfg);
    const ModelSpec m = cfg.model();
    if (a1.empty()) a1.assign(m.d, 1.0);
    if (a2.empty()) a2.assign(m.d, 1.0);
    if (static_cast<int>(a1.size()) != m.d || static_cast<int>(a2.size()) != m.d)
        throw CLI::ValidationError("--a1/--a2", "need d transform variables each");
    const Grid g = cfg.grid();
    if (gap_nodes < 0) gap_nodes = g.M / 2;
    const auto band = laplace2_band(m, a1, a2, g, gap_nodes);
    CsvTable t;
    t.header = {"t1", "t2", "L_full"};
    for (int j = 1; j <= m.d; ++j) t.header.push_back("L_base_" + std::to_string(j));
    for (int r = 0; r + gap_nodes <= g.M; ++r) {
        std::vector<double> row{g.node(r), g.node(r + gap_nodes), band.full[r]};
        for (int j = 0; j < m.d; ++j) row.push_back(band.base[j][r]);
        t.rows.push_back(std::move(row));
    }
    write_csv(t, cfg.path("laplace2.csv"));
    write_metadata(cfg, "laplace2", {"laplace2.csv"}, stability_warnings(m));
    std::printf("laplace2 (band t2 - t1 = %g) -> %s\n", gap_nodes * g.tau(),
                cfg.path("laplace2.csv").c_str());
    return 0;
}

int cmd_counts(const RunConfig& cfg, int L_max) {
    prepare(cfg);
    const ModelSpec m = cfg.model();
    if (L_max <= 0) L_max = m.d == 1 ? 8 : 5;
    const Grid g = cfg.grid();
    const auto pmf = count_pmf(m, g, L_max);
    std::vector<std::string> files;
    for (int jp = 0; jp <= m.d; ++jp) {
        CsvTable t;
        t.header = {"t"};
        for (int i = 1; i <= m.d; ++i) t.header.push_back("l_" + std::to_string(i));
        t.header.push_back("probability");
        for (int node = 0; node <= g.M; node += std::max(1, g.M / 200))
            for (int id = 0; id < static_cast<int>(pmf.points.size()); ++id) {
                std::vector<double> row{g.node(node)};
                for (int i = 0; i < m.d; ++i)
                    row.push_back(static_cast<double>(pmf.points[id][i]));
                row.push_back(pmf.prob(jp, id, node));
                t.rows.push_back(std::move(row));
            }
        const std::string name = "pmf_" + std::to_string(jp) + ".csv";
        write_csv(t, cfg.path(name));
        files.push_back(name);
    }
    write_metadata(cfg, "counts", files, stability_warnings(m));
    std::printf("counts (L_max=%d) -> %s\n", L_max, cfg.out.c_str());
    return 0;
}

int cmd_validate(const RunConfig& cfg, const std::string& scale, bool negative_control) {
    prepare(cfg);
    ValidateOptions opts;
    opts.quick = scale == "quick";
    opts.negative_control = negative_control;
    opts.seed = cfg.seed;
    const auto results = run_acceptance(opts);
    const int failures = print_report(results);
    std::ofstream rep(cfg.path("validate_report.csv"));
    rep << "check,observed,expected,tolerance,pass\n";
    for (const auto& r : results) {
        std::string name = r.name;
        for (auto& ch : name)
            if (ch == ',') ch = ';';
        rep << name << ',' << format_cell(r.observed) << ',' << format_cell(r.expected) << ','
            << format_cell(r.tolerance) << ',' << (r.pass ? 1 : 0) << "\n";
    }
    std::printf("report -> %s\n", cfg.path("validate_report.csv").c_str());
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hawkes_lab: moments, covariances, transforms, count laws and simulators\n"
                 "for multivariate Hawkes processes with time-dependent baselines"};
    app.require_subcommand(1);

    RunConfig cfg;

    auto* sim = app.add_subcommand("simulate", "sample one trajectory, write event/count CSVs");
    std::string method = "thinning";
    add_common(sim, cfg);
    sim->add_option("--method", method, "thinning | branching")
        ->check(CLI::IsMember({"thinning", "branching"}));

    auto* mom = app.add_subcommand("moments", "first-order moment tables (figures 1-4)");
    std::string figure;
    add_common(mom, cfg);
    mom->add_option("--figure", figure, "fig1 | fig2 | fig3 | fig4");

    auto* cov = app.add_subcommand("covariance",
                                   "two-time covariance tables and surfaces (figures 5-7)");
    std::string cov_figure;
    int igniter = 0;
    std::vector<int> pair;
    bool with_dec = false;
    add_common(cov, cfg);
    cov->add_option("--figure", cov_figure, "fig5 | fig6 | fig7");
    cov->add_option("--igniter", igniter, "0 = full process, 1..d = base process");
    cov->add_option("--pair", pair, "component pair k l (1-based); default all")
        ->expected(2);
    cov->add_flag("--decomposition", with_dec, "also write the Lebesgue decomposition");

    auto* l1 = app.add_subcommand("laplace1", "single-time Laplace transforms on the grid");
    std::vector<double> avec;
    std::string a_file;
    add_common(l1, cfg);
    l1->add_option("--a", avec, "transform variables (repeat per component)");
    l1->add_option("--a-file", a_file, "CSV with one row of transform variables")
        ->check(CLI::ExistingFile);

    auto* l2 = app.add_subcommand("laplace2", "two-time Laplace transforms along a band");
    std::vector<double> a1, a2;
    int gap = -1;
    add_common(l2, cfg);
    l2->add_option("--a1", a1, "first-time transform variables");
    l2->add_option("--a2", a2, "second-time transform variables");
    l2->add_option("--gap", gap, "band offset in nodes (t2 = t1 + gap*tau); default M/2");

    auto* cnt = app.add_subcommand("counts", "count probability tables per igniter");
    int L_max = 0;
    add_common(cnt, cfg);
    cnt->add_option("--L-max", L_max, "lattice cutoff (default 8 for d=1, 5 otherwise)");

    auto* val = app.add_subcommand("validate", "run the acceptance suite, write a report");
    std::string scale = "full";
    bool negative_control = false;
    add_common(val, cfg);
    val->add_option("--scale", scale, "quick | full")
        ->check(CLI::IsMember({"quick", "full"}));
    val->add_flag("--negative-control", negative_control,
                  "include the mis-signed-recursion control check");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(cfg, method);
        if (mom->parsed()) return cmd_moments(cfg, figure);
        if (cov->parsed()) return cmd_covariance(cfg, cov_figure, igniter, pair, with_dec);
        if (l1->parsed()) return cmd_laplace1(cfg, avec, a_file);
        if (l2->parsed()) return cmd_laplace2(cfg, a1, a2, gap);
        if (cnt->parsed()) return cmd_counts(cfg, L_max);
        if (val->parsed()) return cmd_validate(cfg, scale, negative_control);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
