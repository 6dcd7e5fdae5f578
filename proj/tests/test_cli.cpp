#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sectorflow/cli.hpp>
#include <sectorflow/csv.hpp>
#include <sectorflow/scenario.hpp>
#include <sectorflow/spectral.hpp>

using namespace sectorflow;
namespace fs = std::filesystem;

namespace {

const std::string kScenarioDir = SECTORFLOW_SCENARIO_DIR;

fs::path fresh_dir(const std::string& tag) {
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path() /
                         ("sectorflow_cli_" + tag + "_" + std::to_string(counter++));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file ", path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

long line_count(const std::string& text) {
    return std::count(text.begin(), text.end(), '\n');
}

std::vector<std::string> data_rows(const std::string& text) {
    std::vector<std::string> rows;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line))
        if (!line.empty()) rows.push_back(line);
    return rows;
}

std::string last_field(const std::string& row) {
    return row.substr(row.find_last_of(',') + 1);
}

// run_cli with both streams captured so test output stays readable.
int run_quiet(const std::vector<std::string>& args, std::string* out = nullptr) {
    std::ostringstream captured_out, captured_err;
    std::streambuf* old_out = std::cout.rdbuf(captured_out.rdbuf());
    std::streambuf* old_err = std::cerr.rdbuf(captured_err.rdbuf());
    const int code = run_cli(args);
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    if (out) *out = captured_out.str();
    return code;
}

fs::path write_scenario(const std::string& tag, const std::string& text) {
    const fs::path path = fresh_dir(tag) / "scenario.json";
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path;
}

std::string triangle_json(const std::string& metrics) {
    return std::string(R"({
      "version": 1,
      "graph": {"sectors": [1, 2, 3], "routes": [
        {"from": 1, "to": 2, "capacity": 1, "flow": 2.0, "bidirectional": true},
        {"from": 2, "to": 3, "capacity": 1, "flow": 2.0, "bidirectional": true},
        {"from": 1, "to": 3, "capacity": 1, "flow": 2.0, "bidirectional": true}]},
      "aircraft": [],
      "attacks": [],
      "horizon": 1)") +
           (metrics.empty() ? "" : ",\n  \"metrics\": {" + metrics + "}") + "\n}";
}

template <typename Target, typename Score>
std::string expected_ranking(std::vector<std::pair<Target, Score>> scores,
                             const std::function<std::string(const Target&)>& label) {
    std::sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::string out = "rank,target,value\n";
    for (std::size_t i = 0; i < scores.size(); ++i)
        out += std::to_string(i + 1) + "," + label(scores[i].first) + "," +
               format_double(scores[i].second) + "\n";
    return out;
}

}  // namespace

TEST_CASE("simulate writes the three trace files") {
    const fs::path out = fresh_dir("simulate");
    CHECK(run_quiet({"simulate", kScenarioDir + "/case_study.json", "--out", out.string()}) == 0);

    const std::string backlogs = slurp(out / "backlogs.csv");
    CHECK(first_line(backlogs) == "t,from_sector,to_sector,backlog");
    CHECK(line_count(backlogs) == 1 + 41 * 7);  // t = 0..40, seven routes

    const std::string arrivals = slurp(out / "arrivals.csv");
    CHECK(first_line(arrivals) == "aircraft_id,arrival_t");
    CHECK(line_count(arrivals) == 1 + 21);
    CHECK(arrivals.find(",\n") == std::string::npos);  // everyone lands by t = 40

    const std::string events = slurp(out / "events.csv");
    CHECK(first_line(events) == "t,event,route,aircraft_id");
    CHECK(events.find("serve") != std::string::npos);
}

TEST_CASE("simulate reproduces the single-route reference backlog column") {
    const fs::path out = fresh_dir("longterm");
    CHECK(run_quiet({"simulate", kScenarioDir + "/longterm_u3c3.json", "--out",
                     out.string()}) == 0);
    const std::vector<std::string> rows = data_rows(slurp(out / "backlogs.csv"));
    REQUIRE(rows.size() == 17);  // one route, t = 0..16
    const std::vector<std::string> want = {"2", "2", "2", "5", "8", "11", "14", "14"};
    for (std::size_t t = 0; t < want.size(); ++t) CHECK(last_field(rows[t]) == want[t]);
}

TEST_CASE("simulate emits bare headers when nothing can move") {
    const fs::path out = fresh_dir("inert");
    const fs::path scenario = write_scenario("inert", R"({
      "version": 1,
      "graph": {"sectors": [1, 2], "routes": []},
      "aircraft": [],
      "attacks": [],
      "horizon": 1
    })");
    CHECK(run_quiet({"simulate", scenario.string(), "--out", out.string()}) == 0);
    CHECK(slurp(out / "backlogs.csv") == "t,from_sector,to_sector,backlog\n");
    CHECK(slurp(out / "arrivals.csv") == "aircraft_id,arrival_t\n");
    CHECK(slurp(out / "events.csv") == "t,event,route,aircraft_id\n");
}

TEST_CASE("rank-spectral emits exactly the library's scores") {
    const fs::path scenario = write_scenario("spectral", triangle_json(""));
    const SectorGraph graph = load_scenario_file(scenario.string()).graph;

    SUBCASE("crdos over sectors") {
        const fs::path out = fresh_dir("crdos");
        CHECK(run_quiet({"rank-spectral", scenario.string(), "--out", out.string(),
                         "--attack", "crdos"}) == 0);
        std::vector<std::pair<SectorId, double>> scores;
        for (SectorId s : graph.sector_order())
            scores.emplace_back(s, crdos_vulnerability(graph, s));
        CHECK(slurp(out / "spectral_crdos.csv") ==
              expected_ranking<SectorId, double>(
                  std::move(scores), [](const SectorId& s) { return std::to_string(s); }));
    }

    SUBCASE("prdos over undirected edges") {
        const fs::path out = fresh_dir("prdos");
        CHECK(run_quiet({"rank-spectral", scenario.string(), "--out", out.string(),
                         "--attack", "prdos"}) == 0);
        std::vector<std::pair<RouteKey, double>> scores;
        for (const RouteKey& e : graph.undirected_edges())
            scores.emplace_back(e, prdos_vulnerability(graph, e.first, e.second));
        CHECK(slurp(out / "spectral_prdos.csv") ==
              expected_ranking<RouteKey, double>(std::move(scores), [](const RouteKey& e) {
                  return std::to_string(e.first) + "-" + std::to_string(e.second);
              }));
    }

    SUBCASE("sdos with a flag-supplied factor") {
        const fs::path out = fresh_dir("sdos");
        CHECK(run_quiet({"rank-spectral", scenario.string(), "--out", out.string(),
                         "--attack", "sdos", "--sdos-factor", "3"}) == 0);
        SpectralParams params;
        params.sdos_factor = 3.0;
        std::vector<std::pair<SectorId, double>> scores;
        for (SectorId s : graph.sector_order())
            scores.emplace_back(s, sdos_vulnerability(graph, s, params));
        CHECK(slurp(out / "spectral_sdos.csv") ==
              expected_ranking<SectorId, double>(
                  std::move(scores), [](const SectorId& s) { return std::to_string(s); }));
    }
}

TEST_CASE("flags override the scenario metrics block, which overrides defaults") {
    const fs::path with_metrics =
        write_scenario("metrics_doc", triangle_json("\"alpha\": 2"));
    const fs::path plain = write_scenario("metrics_plain", triangle_json(""));

    const fs::path out_doc = fresh_dir("ov_doc");
    const fs::path out_flag = fresh_dir("ov_flag");
    const fs::path out_default = fresh_dir("ov_default");
    const fs::path out_back = fresh_dir("ov_back");

    CHECK(run_quiet({"rank-spectral", with_metrics.string(), "--out", out_doc.string(),
                     "--attack", "sdos"}) == 0);
    CHECK(run_quiet({"rank-spectral", plain.string(), "--out", out_flag.string(),
                     "--attack", "sdos", "--alpha", "2"}) == 0);
    CHECK(run_quiet({"rank-spectral", plain.string(), "--out", out_default.string(),
                     "--attack", "sdos"}) == 0);
    CHECK(run_quiet({"rank-spectral", with_metrics.string(), "--out", out_back.string(),
                     "--attack", "sdos", "--alpha", "1"}) == 0);

    const std::string doc_csv = slurp(out_doc / "spectral_sdos.csv");
    const std::string flag_csv = slurp(out_flag / "spectral_sdos.csv");
    const std::string default_csv = slurp(out_default / "spectral_sdos.csv");
    const std::string back_csv = slurp(out_back / "spectral_sdos.csv");

    CHECK(doc_csv == flag_csv);          // metrics block behaves like the flag
    CHECK(doc_csv != default_csv);       // and both differ from the defaults
    CHECK(back_csv == default_csv);      // a flag wins over the metrics block
}

TEST_CASE("rank-path writes sector and route rankings") {
    const fs::path out = fresh_dir("path");
    CHECK(run_quiet({"rank-path", kScenarioDir + "/case_study.json", "--out", out.string()}) ==
          0);

    const std::string sectors = slurp(out / "path_sectors.csv");
    CHECK(first_line(sectors) == "rank,target,value");
    CHECK(line_count(sectors) == 1 + 7);

    const std::string routes = slurp(out / "path_routes.csv");
    CHECK(first_line(routes) == "rank,target,value");
    CHECK(line_count(routes) == 1 + 7);

    const fs::path shallow = fresh_dir("path_shallow");
    CHECK(run_quiet({"rank-path", kScenarioDir + "/case_study.json", "--out",
                     shallow.string(), "--max-n", "1"}) == 0);
    CHECK(slurp(shallow / "path_sectors.csv") != sectors);
}

TEST_CASE("compare writes the side-by-side table and reports the rank gap") {
    const fs::path out = fresh_dir("compare");
    std::string stdout_text;
    CHECK(run_quiet({"compare", kScenarioDir + "/ring6.json", "--out", out.string()},
                    &stdout_text) == 0);
    const std::string table = slurp(out / "metric_comparison.csv");
    CHECK(first_line(table) == "sector,vk_rank,vk_value,vt_rank,vt_value,rank_difference");
    CHECK(line_count(table) == 1 + 6);
    CHECK(stdout_text.find("max rank difference: ") != std::string::npos);
}

TEST_CASE("baseline-diff is all zeros without attacks and positive under attack") {
    const fs::path quiet = fresh_dir("diff_quiet");
    CHECK(run_quiet({"baseline-diff", kScenarioDir + "/case_study.json", "--out",
                     quiet.string()}) == 0);
    for (const std::string& row : data_rows(slurp(quiet / "arrival_deltas.csv")))
        CHECK(last_field(row) == "0");
    for (const std::string& row : data_rows(slurp(quiet / "backlog_deltas.csv")))
        CHECK(last_field(row) == "0");

    const fs::path rdos = fresh_dir("diff_rdos");
    CHECK(run_quiet({"baseline-diff", kScenarioDir + "/case_study_rdos.json", "--out",
                     rdos.string()}) == 0);
    const std::string deltas = slurp(rdos / "arrival_deltas.csv");
    CHECK(first_line(deltas) == "aircraft_id,baseline_arrival_t,attack_arrival_t,delta");
    int positive = 0;
    for (const std::string& row : data_rows(deltas))
        if (std::stoi(last_field(row)) > 0) ++positive;
    CHECK(positive > 0);
}

TEST_CASE("missing or invalid scenarios exit with status 1") {
    const fs::path out = fresh_dir("bad");
    CHECK(run_quiet({"simulate", "/nonexistent/path.json", "--out", out.string()}) == 1);

    const fs::path garbage = write_scenario("garbage", "{ nope");
    CHECK(run_quiet({"simulate", garbage.string(), "--out", out.string()}) == 1);

    const fs::path unsupported = write_scenario("version", R"({
      "version": 2,
      "graph": {"sectors": [1, 2], "routes": []},
      "aircraft": [],
      "attacks": [],
      "horizon": 1
    })");
    CHECK(run_quiet({"simulate", unsupported.string(), "--out", out.string()}) == 1);
}

TEST_CASE("a ranking that disconnects the graph exits with status 2") {
    const fs::path scenario = write_scenario("p3", R"({
      "version": 1,
      "graph": {"sectors": [1, 2, 3], "routes": [
        {"from": 1, "to": 2, "capacity": 1, "flow": 2.0, "bidirectional": true},
        {"from": 2, "to": 3, "capacity": 1, "flow": 2.0, "bidirectional": true}]},
      "aircraft": [],
      "attacks": [],
      "horizon": 1
    })");
    const fs::path out = fresh_dir("disconnect");
    CHECK(run_quiet({"rank-spectral", scenario.string(), "--out", out.string(), "--attack",
                     "prdos"}) == 2);
    CHECK(run_quiet({"rank-spectral", scenario.string(), "--out", out.string(), "--attack",
                     "crdos"}) == 2);
}

TEST_CASE("malformed command lines are rejected") {
    CHECK(run_quiet({"no-such-command"}) != 0);
    CHECK(run_quiet({"rank-spectral", kScenarioDir + "/ring6.json"}) != 0);  // --attack missing
    CHECK(run_quiet({"rank-spectral", kScenarioDir + "/ring6.json", "--attack", "bogus"}) != 0);
    CHECK(run_quiet({"simulate"}) != 0);  // scenario path missing
}

TEST_CASE("repeated runs produce byte-identical outputs") {
    const fs::path a = fresh_dir("det_a");
    const fs::path b = fresh_dir("det_b");
    const std::string scenario = kScenarioDir + "/case_study_rst.json";
    CHECK(run_quiet({"simulate", scenario, "--out", a.string()}) == 0);
    CHECK(run_quiet({"simulate", scenario, "--out", b.string()}) == 0);
    for (const char* name : {"backlogs.csv", "arrivals.csv", "events.csv"})
        CHECK(slurp(a / name) == slurp(b / name));

    const fs::path ra = fresh_dir("det_rank_a");
    const fs::path rb = fresh_dir("det_rank_b");
    CHECK(run_quiet({"rank-spectral", kScenarioDir + "/ring6.json", "--out", ra.string(),
                     "--attack", "crdos"}) == 0);
    CHECK(run_quiet({"rank-spectral", kScenarioDir + "/ring6.json", "--out", rb.string(),
                     "--attack", "crdos"}) == 0);
    CHECK(slurp(ra / "spectral_crdos.csv") == slurp(rb / "spectral_crdos.csv"));
}
