#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

// Runs the installed binary, capturing stdout; stderr goes to a scratch file.
CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(ACHLIO_BIN) + " " + args + " 2>/tmp/achlio_test_stderr";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path);
    f << content;
    return path.string();
}

std::string golden_path(const std::string& name) {
    return std::string(ACHLIO_SOURCE_DIR) + "/tests/golden/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("threshold values and formats") {
    const auto r = run_cli("threshold --family clique --t 4 --r 2 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"10/19\"") != std::string::npos);
    CHECK(r.out.find("\"28/19\"") != std::string::npos);

    const auto cyc = run_cli("threshold --family cycle --t 3 --r 2");
    CHECK(cyc.exit_code == 0);
    CHECK(cyc.out.find("6/5") != std::string::npos);

    const auto bic = run_cli("threshold --family biclique --t 3 --r 2 --format json");
    CHECK(bic.out.find("\"18/31\"") != std::string::npos);
}

TEST_CASE("threshold star on a pattern file") {
    const std::string file = write_temp("achlio_k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    const auto r = run_cli("threshold --pattern " + file + " --r 2 --star --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"10/19\"") != std::string::npos);
    CHECK(r.out.find("\"witness_s\": 2") != std::string::npos);
}

TEST_CASE("exit codes distinguish usage and domain errors") {
    CHECK(run_cli("threshold --r 2 --family cycle --t 2").exit_code == 1);   // domain
    CHECK(run_cli("threshold --family cycle --t 3").exit_code == 2);         // missing --r
    CHECK(run_cli("threshold --family cycle --t 3 --r 2 --bogus").exit_code == 2);
    CHECK(run_cli("nonsense-subcommand").exit_code == 2);
    CHECK(run_cli("count --graph /nonexistent --pattern c3").exit_code == 1);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("simulate is reproducible byte for byte") {
    const std::string args =
        "simulate --n 80 --r 2 --pattern c3 --strategy min-danger --rounds 120 --seed 7";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"schema\": \"achlio-run-v1\"") != std::string::npos);

    // loss is data, not an error
    const auto lost =
        run_cli("simulate --n 10 --r 2 --pattern c3 --strategy first-edge --rounds 44 --seed 3");
    CHECK(lost.exit_code == 0);
}

TEST_CASE("kernel variants produce identical end-to-end output") {
    // same simulation through the scalar reference and the dispatched kernels
    const std::string args = std::string(ACHLIO_BIN) +
                             " simulate --n 400 --r 2 --pattern k4 --strategy min-danger"
                             " --rounds 1500 --seed 99 2>/dev/null";
    auto capture = [&](const std::string& env) {
        const std::string cmd = env + args;
        std::array<char, 4096> buf{};
        std::string out;
        FILE* pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        std::size_t got = 0;
        while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
        pclose(pipe);
        return out;
    };
    const std::string scalar = capture("ACHLIO_KERNEL=scalar ");
    const std::string dispatched = capture("");
    CHECK(scalar == dispatched);
    CHECK(scalar.find("\"rounds_run\"") != std::string::npos);
}

TEST_CASE("simulate keep-going reports every loss-tracking count") {
    const auto r = run_cli("simulate --n 12 --r 2 --pattern c3 --strategy first-edge "
                           "--rounds 60 --seed 2 --keep-going");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"stop_on_loss\": false") != std::string::npos);
    CHECK(r.out.find("\"rounds_run\": 60") != std::string::npos);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("loss_round").get<long long>() >= 1);
    CHECK(doc.at("class_counts")[0].at("count").get<long long>() > 0);
}

TEST_CASE("threshold on a general pattern with explicit s") {
    const std::string p4 = write_temp("achlio_p4t.txt", "4 3\n0 1\n1 2\n2 3\n");
    const auto r = run_cli("threshold --pattern " + p4 + " --r 2 --s 2 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"10/7\"") != std::string::npos);  // (4*2+2)/(4*1+3)
    // s out of range is a domain error
    CHECK(run_cli("threshold --pattern " + p4 + " --r 2 --s 3").exit_code == 1);
}

TEST_CASE("diagnose extremal accepts a host graph file") {
    const std::string host = write_temp("achlio_host2.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    const auto r = run_cli("diagnose extremal --graph " + host + " --p 1.0 --t 3 --format json");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("count").get<long long>() == 24);  // labeled 3-paths in K4
}

TEST_CASE("simulate auto rounds requires a known family or --s") {
    const auto ok = run_cli(
        "simulate --n 60 --r 2 --pattern k4 --strategy min-danger --rounds auto --seed 1");
    CHECK(ok.exit_code == 0);
    const std::string p4 = write_temp("achlio_p4.txt", "4 3\n0 1\n1 2\n2 3\n");
    const auto bad = run_cli("simulate --n 60 --r 2 --pattern " + p4 +
                             " --strategy min-danger --rounds auto --seed 1");
    CHECK(bad.exit_code == 1);
    const auto with_s = run_cli("simulate --n 60 --r 2 --pattern " + p4 +
                                " --strategy min-danger --rounds auto --seed 1 --s 2");
    CHECK(with_s.exit_code == 0);
}

TEST_CASE("count prints the copy count") {
    const std::string graph = write_temp("achlio_host.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    const std::string c4 = write_temp("achlio_c4.txt", "4 4\n0 1\n1 2\n2 3\n0 3\n");
    const auto r = run_cli("count --graph " + graph + " --pattern " + c4);
    CHECK(r.exit_code == 0);
    CHECK(r.out == "24\n");
}

TEST_CASE("verify-appendix passes and the tamper hook fails") {
    const auto ok = run_cli("verify-appendix --t-max 4 --clique-t-max 5 --r-max 3");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("0 failures") != std::string::npos);
    CHECK(ok.out.find("exception sightings: 1") != std::string::npos);

    const auto bad = run_cli("verify-appendix --t-max 4 --clique-t-max 5 --r-max 3 --tamper");
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("offline-k3 reports a survival tally") {
    const auto r = run_cli("offline-k3 --n 120 --m-exponent 1.1 --trials 5 --seed 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"survival_rate\"") != std::string::npos);
    const auto again = run_cli("offline-k3 --n 120 --m-exponent 1.1 --trials 5 --seed 2");
    CHECK(again.out == r.out);
}

TEST_CASE("experiment grid writes deterministic artifacts") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "achlio_exp_test";
    fs::create_directories(dir);
    const std::string cfg = write_temp("achlio_grid.json", R"({
        "mode": "grid",
        "pattern": "c3",
        "r": 2,
        "strategy": "min-danger",
        "n": [60],
        "m": {"rule": "list", "values": [40, 120]},
        "trials": 10,
        "base_seed": 5,
        "out_csv": ")" + (dir / "trials.csv").string() + R"(",
        "out_json": ")" + (dir / "summary.json").string() + R"("
    })");

    const auto serial = run_cli("experiment --config " + cfg + " --jobs 1");
    CHECK(serial.exit_code == 0);
    const std::string csv1 = read_file((dir / "trials.csv").string());
    const std::string sum1 = read_file((dir / "summary.json").string());

    const auto parallel = run_cli("experiment --config " + cfg + " --jobs 4");
    CHECK(parallel.exit_code == 0);
    CHECK(read_file((dir / "trials.csv").string()) == csv1);
    CHECK(read_file((dir / "summary.json").string()) == sum1);
    CHECK(serial.out == parallel.out);

    CHECK(csv1.rfind("# achlio-trials-v1\n", 0) == 0);
    CHECK(sum1.find("achlio-grid-summary-v1") != std::string::npos);
}

TEST_CASE("diagnose subcommands run end to end") {
    const auto code = run_cli("diagnose codegree --n 200 --p-coef 1.2 --samples 2 --seed 9 "
                              "--format json");
    CHECK(code.exit_code == 0);
    CHECK(code.out.find("\"schema\": \"achlio-codegree-v1\"") != std::string::npos);

    const auto ext = run_cli("diagnose extremal --n 120 --p 0.15 --seed 4 --t 3 --format json");
    CHECK(ext.exit_code == 0);
    CHECK(ext.out.find("\"kind\": \"paths\"") != std::string::npos);
}

TEST_CASE("ACHLIO_OUT_DIR anchors relative output paths") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "achlio_outdir_test";
    fs::create_directories(dir);
    fs::remove(dir / "report.json");
    const std::string cmd = "ACHLIO_OUT_DIR=" + dir.string() + " " + std::string(ACHLIO_BIN) +
                            " verify-appendix --t-max 3 --clique-t-max 4 --r-max 2 "
                            "--out report.json > /dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(dir / "report.json"));
    const auto doc = nlohmann::json::parse(read_file((dir / "report.json").string()));
    CHECK(doc.at("failures").get<int>() == 0);
}

TEST_CASE("json outputs carry the required fields of their shipped schemas") {
    // lightweight conformance: the top-level "required" list of each schema
    // in schemas/ must be present, and the "schema" tag must match.
    auto conforms = [](const std::string& output, const std::string& schema_file) {
        const auto doc = nlohmann::json::parse(output);
        const auto schema =
            nlohmann::json::parse(read_file(std::string(ACHLIO_SOURCE_DIR) + "/schemas/" +
                                            schema_file));
        for (const auto& key : schema.at("required"))
            if (!doc.contains(key.get<std::string>())) return false;
        return doc.at("schema").get<std::string>() == schema.at("$id").get<std::string>();
    };

    CHECK(conforms(run_cli("threshold --family clique --t 4 --r 2 --format json").out,
                   "threshold_report.schema.json"));
    const std::string k4 = write_temp("achlio_k4b.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    CHECK(conforms(run_cli("threshold --pattern " + k4 + " --r 2 --star --format json").out,
                   "theta_star.schema.json"));
    CHECK(conforms(run_cli("simulate --n 40 --r 2 --pattern c3 --strategy min-danger "
                           "--rounds 30 --seed 1")
                       .out,
                   "run_outcome.schema.json"));
    CHECK(conforms(
        run_cli("verify-appendix --t-max 3 --clique-t-max 4 --r-max 2 --format json").out,
        "verification_report.schema.json"));
    CHECK(conforms(run_cli("offline-k3 --n 60 --m-exponent 1.0 --trials 3 --seed 2").out,
                   "offline_k3.schema.json"));
    CHECK(conforms(run_cli("diagnose codegree --n 100 --p-coef 1.0 --samples 1 --seed 3 "
                           "--format json")
                       .out,
                   "codegree_report.schema.json"));
    CHECK(conforms(run_cli("diagnose extremal --n 60 --p 0.2 --seed 4 --t 3 --format json").out,
                   "extremal_report.schema.json"));

    // grid summary and crossing schemas, via config files
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "achlio_schema_test";
    fs::create_directories(dir);
    const std::string grid_cfg = write_temp("achlio_schema_grid.json", R"({
        "mode": "grid", "pattern": "c3", "r": 2, "strategy": "min-danger",
        "n": [40], "m": {"rule": "list", "values": [20]}, "trials": 4, "base_seed": 9,
        "out_json": ")" + (dir / "summary.json").string() + R"("})");
    CHECK(run_cli("experiment --config " + grid_cfg).exit_code == 0);
    CHECK(conforms(read_file((dir / "summary.json").string()), "grid_summary.schema.json"));

    const std::string cross_cfg = write_temp("achlio_schema_cross.json", R"({
        "mode": "crossing", "pattern": "c3", "r": 2, "strategy": "min-danger",
        "n": [60], "alpha_low": 0.9, "alpha_high": 1.4, "trials": 10, "base_seed": 9})");
    const auto cross = run_cli("experiment --config " + cross_cfg);
    CHECK(cross.exit_code == 0);
    CHECK(conforms(cross.out, "crossing.schema.json"));
    // the triangle family gets its reference exponent filled in: 2 - 4/5
    CHECK(cross.out.find("\"reference_exponent\": 1.2") != std::string::npos);
}

TEST_CASE("help text matches the golden files") {
    for (const auto& [args, name] :
         {std::pair{std::string("--help"), std::string("help_root.txt")},
          {"threshold --help", "help_threshold.txt"},
          {"simulate --help", "help_simulate.txt"},
          {"experiment --help", "help_experiment.txt"},
          {"verify-appendix --help", "help_verify.txt"},
          {"offline-k3 --help", "help_offline.txt"},
          {"count --help", "help_count.txt"},
          {"diagnose --help", "help_diagnose.txt"}}) {
        const auto r = run_cli(args);
        CHECK(r.exit_code == 0);
        CHECK(r.out == read_file(golden_path(name)));
    }
}

} // TEST_SUITE
