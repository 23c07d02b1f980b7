// End-to-end tests of the command-line tool: spawns the built binary and
// checks output, file round trips, and the documented exit codes
// (0 ok, 1 violation, 2 usage, 3 I/O or format).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

#include "cubelsh/dataset.hpp"

namespace {

struct CommandResult {
    int exit_code;
    std::string output;
};

CommandResult run_cli(const std::string& args) {
    const std::string command = std::string(CUBELSH_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buffer;
    while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe)) {
        output.append(buffer.data(), got);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

// scratch files live under the system temp dir, not the working directory
std::string scratch(const std::string& name) {
    static const std::filesystem::path dir = [] {
        auto path = std::filesystem::temp_directory_path() /
                    ("cubelsh_cli_test_" + std::to_string(getpid()));
        std::filesystem::create_directories(path);
        return path;
    }();
    return (dir / name).string();
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("spectrum of majority reports the known weight profile") {
    const CommandResult result = run_cli("spectrum --majority --d 3");
    CHECK(result.exit_code == 0);
    const auto report = nlohmann::json::parse(result.output);
    CHECK(report["d"] == 3);
    CHECK(report["weights"][1].get<double>() == doctest::Approx(0.75));
    CHECK(report["weights"][3].get<double>() == doctest::Approx(0.25));
    CHECK(std::abs(report["parseval_residual"].get<double>()) <= 1e-12);
}

TEST_CASE("spectrum of a dictator has all weight at degree one") {
    const CommandResult result = run_cli("spectrum --dictator --d 3 --i 2 --format csv");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("weight,1,1\n") != std::string::npos);
}

TEST_CASE("spectrum rejects ambiguous or broken sources") {
    CHECK(run_cli("spectrum --majority --dictator --d 3").exit_code == 2);

    std::ofstream bad(scratch("cli_bad_table.txt"));
    bad << "d=2\n+1 -1 -1\n"; // wrong length
    bad.close();
    const CommandResult result = run_cli("spectrum --table " + scratch("cli_bad_table.txt"));
    CHECK(result.exit_code == 3);
    CHECK(result.output.find("line 2") != std::string::npos);
}

TEST_CASE("rho-table emits the closed form and annotates skipped pairs") {
    const CommandResult result = run_cli("rho-table --alpha-grid 0.9 --beta-grid 0,0.5,0.9");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("0.17829854307709") != std::string::npos);
    CHECK(result.output.find("# skipped: beta >= alpha") != std::string::npos);
    // hypercontractive bound fills its column only on the beta = 0 row
    CHECK(result.output.find(",0.052631578947368") != std::string::npos);

    CHECK(run_cli("rho-table --alpha-grid , --beta-grid 0.5").exit_code == 2);
}

TEST_CASE("verify passes clean, fails under fault injection, rejects d_max > 4") {
    const std::string base = "verify --d-max 1 --grid-step 0.3 --samples 5 --gamma-trials 3";
    const CommandResult clean = run_cli(base);
    CHECK(clean.exit_code == 0);
    const auto report = nlohmann::json::parse(clean.output);
    CHECK(report["status"] == "pass");
    CHECK(report["total_violations"] == 0);

    const CommandResult faulty = run_cli(base + " --inject-fault");
    CHECK(faulty.exit_code == 1);
    CHECK(nlohmann::json::parse(faulty.output)["status"] == "fail");

    const CommandResult too_big = run_cli("verify --d-max 5");
    CHECK(too_big.exit_code == 2);
    CHECK(too_big.output.find("4294967296") != std::string::npos);
}

TEST_CASE("index build, query, and corrupt-file handling") {
    {
        cubelsh::Rng rng(2025);
        const cubelsh::BinaryDataset data = cubelsh::BinaryDataset::random(400, 64, rng);
        cubelsh::save_dataset(data, scratch("cli_data.bds"));
    }

    const CommandResult build = run_cli("index build --data " + scratch("cli_data.bds") + " --out " +
                                        scratch("cli_index.bli") +
                                        " --derive --alpha 0.9 --beta 0.5 --seed 11");
    CHECK(build.exit_code == 0);
    const auto params = nlohmann::json::parse(build.output);
    CHECK(params["n"] == 400);
    CHECK(params["k"].get<int>() >= 1);

    const CommandResult hit =
        run_cli("index query --index " + scratch("cli_index.bli") + " --data " +
                scratch("cli_data.bds") + " --row 7");
    CHECK(hit.exit_code == 0);
    CHECK(hit.output.find("7,0\n") != std::string::npos); // the row itself at distance 0

    const CommandResult both =
        run_cli("index query --index " + scratch("cli_index.bli") + " --data " +
                scratch("cli_data.bds") + " --row 7 --bits 01");
    CHECK(both.exit_code == 2);

    {
        std::ifstream in(scratch("cli_index.bli"), std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        std::ofstream out(scratch("cli_index_truncated.bli"), std::ios::binary);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() / 2));
    }
    const CommandResult broken =
        run_cli("index query --index " + scratch("cli_index_truncated.bli") + " --data " +
                scratch("cli_data.bds") + " --row 7");
    CHECK(broken.exit_code == 3);
    CHECK(broken.output.find("format error") != std::string::npos);
}

TEST_CASE("index bench reports recall against its closed-form expectation") {
    const CommandResult bench = run_cli(
        "index bench --n 1500 --d 64 --alpha 0.9 --beta 0.5 --planted 40 --seed 5 "
        "--collision-pairs 1500");
    CHECK(bench.exit_code == 0);
    const auto report = nlohmann::json::parse(bench.output);
    CHECK(report["params"]["k"].get<int>() >= 1);
    CHECK(report["recall"].get<double>() >= 0.0);
    CHECK(report["expected_recall"].get<double>() > 0.0);
    for (const auto& stratum : report["collision"]) {
        CHECK(stratum["within_3sigma"].get<bool>());
    }
}

TEST_CASE("identical flags and seeds give identical output") {
    const std::string args =
        "index bench --n 800 --d 32 --alpha 0.8 --beta 0.4 --planted 20 --seed 99 "
        "--collision-pairs 500";
    const CommandResult first = run_cli(args);
    const CommandResult second = run_cli(args);
    CHECK(first.exit_code == 0);
    // wall-clock timings aside, the reports must be identical
    auto normalize = [](const std::string& text) {
        auto report = nlohmann::json::parse(text);
        report.erase("build_seconds");
        report.erase("query_seconds");
        return report;
    };
    CHECK(normalize(first.output) == normalize(second.output));
}

TEST_SUITE_END();
