#include "sectorflow/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>

#include "sectorflow/csv.hpp"
#include "sectorflow/scenario.hpp"
#include "sectorflow/spectral.hpp"

namespace sectorflow {

namespace {

namespace fs = std::filesystem;

SpectralParams spectral_defaults(const MetricOverrides& m) {
    SpectralParams p;
    if (m.alpha) p.alpha = *m.alpha;
    if (m.beta) p.beta = *m.beta;
    if (m.c_exp) p.c_exp = *m.c_exp;
    if (m.sdos_factor) p.sdos_factor = *m.sdos_factor;
    return p;
}

PathParams path_defaults(const MetricOverrides& m, const SectorGraph& graph) {
    PathParams p;
    if (m.weight_lost) p.weight_lost = *m.weight_lost;
    p.max_n = m.max_n ? *m.max_n : std::max(1, diameter(graph));
    return p;
}

std::string out_path(const std::string& dir, const char* name) {
    return (fs::path(dir) / name).string();
}

void emit(const std::string& dir, const char* name, const std::string& content) {
    const std::string path = out_path(dir, name);
    write_file(path, content);
    std::cout << "wrote " << path << "\n";
}

void warn_if_unfinished(const SimulationTrace& trace) {
    if (!trace.horizon_too_small) return;
    std::cerr << "warning: " << trace.unarrived.size()
              << " aircraft did not arrive within the horizon:";
    for (int id : trace.unarrived) std::cerr << ' ' << id;
    std::cerr << "\n";
}

void warn_if_degenerate(const SectorGraph& graph) {
    try {
        if (fiedler(laplacian(graph, true)).degenerate)
            std::cerr << "warning: the smallest positive eigenvalue is repeated;"
                         " eigenvector-dependent scores depend on the solver's choice\n";
    } catch (const Error&) {
        // the actual metric call reports the real problem
    }
}

std::vector<RankedRow> build_ranking(std::vector<std::pair<SectorId, double>> scores) {
    std::sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<RankedRow> rows;
    for (std::size_t i = 0; i < scores.size(); ++i)
        rows.push_back({static_cast<int>(i) + 1, std::to_string(scores[i].first),
                        scores[i].second});
    return rows;
}

std::vector<RankedRow> build_ranking(std::vector<std::pair<RouteKey, double>> scores) {
    std::sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<RankedRow> rows;
    for (std::size_t i = 0; i < scores.size(); ++i)
        rows.push_back({static_cast<int>(i) + 1,
                        std::to_string(scores[i].first.first) + "-" +
                            std::to_string(scores[i].first.second),
                        scores[i].second});
    return rows;
}

int cmd_simulate(const ScenarioDocument& doc, const std::string& out_dir) {
    const NetworkState initial = initial_state(doc.graph, doc.fleet);
    const SimulationTrace trace = simulate(doc.graph, initial, doc.attacks, doc.horizon);
    emit(out_dir, "backlogs.csv", backlogs_csv(trace));
    emit(out_dir, "arrivals.csv", arrivals_csv(trace));
    emit(out_dir, "events.csv", events_csv(trace));
    warn_if_unfinished(trace);
    return 0;
}

int cmd_rank_spectral(const ScenarioDocument& doc, const std::string& out_dir,
                      const std::string& attack, const SpectralParams& params) {
    const SectorGraph& graph = doc.graph;
    warn_if_degenerate(graph);

    std::vector<RankedRow> rows;
    if (attack == "prdos") {
        std::vector<std::pair<RouteKey, double>> scores;
        for (const RouteKey& edge : graph.undirected_edges())
            scores.emplace_back(edge,
                                prdos_vulnerability(graph, edge.first, edge.second, params));
        rows = build_ranking(std::move(scores));
    } else {
        std::vector<std::pair<SectorId, double>> scores;
        for (SectorId s : graph.sector_order())
            scores.emplace_back(s, attack == "crdos"
                                       ? crdos_vulnerability(graph, s, params)
                                       : sdos_vulnerability(graph, s, params));
        rows = build_ranking(std::move(scores));
    }
    const std::string name = "spectral_" + attack + ".csv";
    const std::string path = out_path(out_dir, name.c_str());
    write_file(path, ranking_csv(rows));
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_rank_path(const ScenarioDocument& doc, const std::string& out_dir,
                  const PathParams& params) {
    const SectorGraph& graph = doc.graph;

    std::vector<std::pair<SectorId, double>> sector_scores;
    for (SectorId s : graph.sector_order())
        sector_scores.emplace_back(s, v_k(graph, s, params));
    emit(out_dir, "path_sectors.csv", ranking_csv(build_ranking(std::move(sector_scores))));

    std::vector<std::pair<RouteKey, double>> route_scores;
    for (const RouteKey& edge : graph.undirected_edges())
        route_scores.emplace_back(edge, v_k(graph, edge, params));
    emit(out_dir, "path_routes.csv", ranking_csv(build_ranking(std::move(route_scores))));
    return 0;
}

int cmd_compare(const ScenarioDocument& doc, const std::string& out_dir) {
    warn_if_degenerate(doc.graph);
    const SpectralParams spectral = spectral_defaults(doc.metrics);
    const PathParams paths = path_defaults(doc.metrics, doc.graph);

    const ComparisonReport report = rank_compare(doc.graph, spectral, paths);
    for (const ComparisonRow& row : report.rows)
        if (!row.error.empty())
            std::cerr << "warning: sector " << row.sector << " skipped: " << row.error << "\n";
    emit(out_dir, "metric_comparison.csv", comparison_csv(report));
    if (report.max_rank_difference)
        std::cout << "max rank difference: " << *report.max_rank_difference << "\n";
    else
        std::cout << "max rank difference: n/a\n";
    return 0;
}

int cmd_baseline_diff(const ScenarioDocument& doc, const std::string& out_dir) {
    const NetworkState initial = initial_state(doc.graph, doc.fleet);
    const SimulationTrace with_attacks =
        simulate(doc.graph, initial, doc.attacks, doc.horizon);
    const SimulationTrace baseline = simulate(doc.graph, initial, {}, doc.horizon);
    emit(out_dir, "arrival_deltas.csv", arrival_deltas_csv(baseline, with_attacks));
    emit(out_dir, "backlog_deltas.csv", backlog_deltas_csv(baseline, with_attacks));
    warn_if_unfinished(with_attacks);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"discrete-interval queue-network simulation and vulnerability ranking"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    std::string attack;
    int alpha = 0, beta = 0, max_n = 0;
    double c_exp = 0, sdos_factor = 0, weight_lost = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("scenario", scenario_path, "scenario file")->required();
        sub->add_option("--out", out_dir, "output directory (default: out)");
    };

    CLI::App* sim = app.add_subcommand("simulate", "run the scenario and write trace CSVs");
    add_common(sim);

    CLI::App* spectral =
        app.add_subcommand("rank-spectral", "rank attack targets by the eigenvector metric");
    add_common(spectral);
    spectral->add_option("--attack", attack, "crdos, prdos, or sdos")
        ->required()
        ->check(CLI::IsMember({"crdos", "prdos", "sdos"}));
    CLI::Option* alpha_opt = spectral->add_option("--alpha", alpha, "flow exponent");
    CLI::Option* beta_opt = spectral->add_option("--beta", beta, "difference exponent");
    CLI::Option* c_opt = spectral->add_option("--c", c_exp, "eigenvalue exponent");
    CLI::Option* sdos_opt =
        spectral->add_option("--sdos-factor", sdos_factor, "flow multiplier for sdos");

    CLI::App* path =
        app.add_subcommand("rank-path", "rank shutdown targets by the path-loss metric");
    add_common(path);
    CLI::Option* weight_opt =
        path->add_option("--weight-lost", weight_lost, "weight of fully lost paths");
    CLI::Option* max_n_opt =
        path->add_option("--max-n", max_n, "longest path length (default: graph diameter)");

    CLI::App* compare =
        app.add_subcommand("compare", "side-by-side sector ranking under both metrics");
    add_common(compare);

    CLI::App* diff = app.add_subcommand(
        "baseline-diff", "arrival and backlog deltas between attack and attack-free runs");
    add_common(diff);

    std::vector<std::string> argv_like = args;
    std::reverse(argv_like.begin(), argv_like.end());
    try {
        app.parse(argv_like);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const ScenarioDocument doc = load_scenario_file(scenario_path);
        if (sim->parsed()) return cmd_simulate(doc, out_dir);
        if (spectral->parsed()) {
            SpectralParams params = spectral_defaults(doc.metrics);
            if (alpha_opt->count()) params.alpha = alpha;
            if (beta_opt->count()) params.beta = beta;
            if (c_opt->count()) params.c_exp = c_exp;
            if (sdos_opt->count()) params.sdos_factor = sdos_factor;
            return cmd_rank_spectral(doc, out_dir, attack, params);
        }
        if (path->parsed()) {
            PathParams params = path_defaults(doc.metrics, doc.graph);
            if (weight_opt->count()) params.weight_lost = weight_lost;
            if (max_n_opt->count()) params.max_n = max_n;
            return cmd_rank_path(doc, out_dir, params);
        }
        if (compare->parsed()) return cmd_compare(doc, out_dir);
        if (diff->parsed()) return cmd_baseline_diff(doc, out_dir);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace sectorflow
