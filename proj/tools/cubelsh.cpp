// cubelsh: analysis and index tooling for Boolean-function locality-sensitive
// hashing. Subcommands: spectrum, rho-table, verify, index build|query|bench.
// Exit codes: 0 success, 1 verification violation, 2 usage error, 3 I/O or
// format error.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cubelsh/benchmark.hpp"
#include "cubelsh/boolean_function.hpp"
#include "cubelsh/fourier.hpp"
#include "cubelsh/lsh_index.hpp"
#include "cubelsh/optimality.hpp"
#include "cubelsh/rho.hpp"

using json = nlohmann::ordered_json;
using namespace cubelsh;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string fmt(double value) {
    std::ostringstream out;
    out << std::setprecision(17) << value;
    return out.str();
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw FormatError("output file", "cannot open '" + path + "' for writing");
    out << text;
}

// Grid specs: either "start:stop:step" or a comma-separated value list.
std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> values;
    if (spec.find(':') != std::string::npos) {
        std::istringstream in(spec);
        std::string a, b, c;
        if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c)) {
            throw InvalidArgument("grid spec must be start:stop:step, got '" + spec + "'");
        }
        const double start = std::stod(a), stop = std::stod(b), step = std::stod(c);
        if (step <= 0.0) throw InvalidArgument("grid step must be positive");
        for (double v = start; v <= stop + 1e-12; v += step) values.push_back(v);
    } else {
        std::istringstream in(spec);
        std::string token;
        while (std::getline(in, token, ',')) {
            if (!token.empty()) values.push_back(std::stod(token));
        }
    }
    if (values.empty()) throw InvalidArgument("grid spec '" + spec + "' produced no values");
    return values;
}

std::vector<int> parse_subset(const std::string& spec) {
    std::vector<int> subset;
    if (spec.empty()) return subset;
    std::istringstream in(spec);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (!token.empty()) subset.push_back(std::stoi(token));
    }
    return subset;
}

// --- spectrum ----------------------------------------------------------------

struct SpectrumOptions {
    bool dictator = false, parity = false, majority = false, random = false;
    std::string table_path;
    int d = 0, i = 1, sign = 1;
    std::string subset;
    std::uint64_t seed = 1;
    std::string out, format = "json";
};

int cmd_spectrum(const SpectrumOptions& options) {
    const int sources = int(options.dictator) + int(options.parity) + int(options.majority) +
                        int(options.random) + int(!options.table_path.empty());
    if (sources != 1) {
        std::cerr << "spectrum: pick exactly one of --dictator, --parity, --majority, --random, "
                     "--table\n";
        return kExitUsage;
    }

    BooleanFunction f = [&] {
        if (!options.table_path.empty()) {
            std::ifstream in(options.table_path);
            if (!in) {
                throw FormatError("table file", "cannot open '" + options.table_path + "'");
            }
            return read_table(in);
        }
        if (options.dictator) return make_dictator(options.d, options.i, options.sign);
        if (options.parity) return make_parity(options.d, parse_subset(options.subset));
        if (options.majority) return make_majority(options.d);
        Rng rng(options.seed);
        return make_random(options.d, rng);
    }();

    const FourierSpectrum spectrum = wht(f);
    const WeightAssignment profile = weight_profile(spectrum);
    double sum = 0.0;
    for (std::size_t k = 0; k < profile.size(); ++k) sum += profile[k];
    const double residual = sum - 1.0;

    if (options.format == "json") {
        json report;
        report["d"] = f.dimension();
        report["coefficients"] = spectrum.coefficients();
        report["weights"] = profile.values();
        report["parseval_residual"] = residual;
        write_output(report.dump(2) + "\n", options.out);
    } else {
        std::ostringstream csv;
        csv << "record,index,value\n";
        for (std::uint32_t mask = 0; mask < spectrum.size(); ++mask) {
            csv << "coefficient," << mask << ',' << fmt(spectrum[mask]) << '\n';
        }
        for (std::size_t k = 0; k < profile.size(); ++k) {
            csv << "weight," << k << ',' << fmt(profile[k]) << '\n';
        }
        csv << "parseval_residual,," << fmt(residual) << '\n';
        write_output(csv.str(), options.out);
    }
    return 0;
}

// --- rho-table ---------------------------------------------------------------

struct RhoTableOptions {
    std::string alpha_grid, beta_grid;
    std::string out, format = "csv";
};

int cmd_rho_table(const RhoTableOptions& options) {
    const std::vector<double> alphas = parse_grid(options.alpha_grid);
    const std::vector<double> betas = parse_grid(options.beta_grid);
    for (double v : alphas) {
        if (v < 0.0 || v >= 1.0) throw InvalidArgument("alpha grid values must lie in [0, 1)");
    }
    for (double v : betas) {
        if (v < 0.0 || v >= 1.0) throw InvalidArgument("beta grid values must lie in [0, 1)");
    }

    json rows = json::array();
    json skipped = json::array();
    std::ostringstream csv;
    csv << "alpha,beta,rho_bitsampling,lb_odonnell,lb_hypercontractive\n";

    for (double alpha : alphas) {
        for (double beta : betas) {
            if (!(beta < alpha)) {
                csv << "# skipped: beta >= alpha (alpha=" << fmt(alpha) << ", beta=" << fmt(beta)
                    << ")\n";
                skipped.push_back({{"alpha", alpha}, {"beta", beta}, {"reason", "beta >= alpha"}});
                continue;
            }
            const RhoParams params(alpha, beta);
            const double rho_value = bitsampling_rho(params);
            const ReferenceBounds bounds = reference_lower_bounds(params);
            csv << fmt(alpha) << ',' << fmt(beta) << ',' << fmt(rho_value) << ','
                << (bounds.odonnell ? fmt(*bounds.odonnell) : "") << ','
                << (bounds.hypercontractive ? fmt(*bounds.hypercontractive) : "") << '\n';
            json row;
            row["alpha"] = alpha;
            row["beta"] = beta;
            row["rho_bitsampling"] = rho_value;
            if (bounds.odonnell) row["lb_odonnell"] = *bounds.odonnell;
            if (bounds.hypercontractive) row["lb_hypercontractive"] = *bounds.hypercontractive;
            rows.push_back(std::move(row));
        }
    }

    if (options.format == "json") {
        json report;
        report["rows"] = std::move(rows);
        report["skipped"] = std::move(skipped);
        write_output(report.dump(2) + "\n", options.out);
    } else {
        write_output(csv.str(), options.out);
    }
    return 0;
}

// --- verify ------------------------------------------------------------------

struct VerifyOptions {
    int d_max = 4;
    double grid_step = 0.1;
    int samples = 100;
    int gamma_trials = 50;
    std::uint64_t seed = 1;
    bool inject_fault = false;
    std::string out;
};

int cmd_verify(const VerifyOptions& options) {
    VerificationConfig config;
    config.d_max = options.d_max;
    config.grid_step = options.grid_step;
    config.interior_samples = options.samples;
    config.gamma_trials = options.gamma_trials;
    config.seed = options.seed;
    config.dictator_rho_bias = options.inject_fault ? 1e-3 : 0.0;

    const std::vector<CheckReport> reports = run_verification(config);

    std::size_t total_violations = 0;
    json checks = json::array();
    for (const CheckReport& report : reports) {
        total_violations += report.violations.size();
        json entry;
        entry["check_name"] = report.name;
        entry["grid"] = report.grid;
        entry["cases"] = report.cases;
        entry["violations"] = report.violations;
        entry["elapsed"] = report.elapsed_seconds;
        checks.push_back(std::move(entry));
    }
    json summary;
    summary["checks"] = std::move(checks);
    summary["total_violations"] = total_violations;
    summary["status"] = total_violations == 0 ? "pass" : "fail";
    write_output(summary.dump(2) + "\n", options.out);
    return total_violations == 0 ? 0 : kExitViolation;
}

// --- index -------------------------------------------------------------------

struct IndexBuildOptions {
    std::string data_path, out_path;
    bool derive = false;
    std::uint32_t k = 0, L = 0;
    double alpha = 0.0, beta = 0.0;
    std::uint64_t seed = 1;
};

int cmd_index_build(const IndexBuildOptions& options) {
    const BinaryDataset data = load_dataset(options.data_path);
    const IndexParams params = [&] {
        if (options.derive) {
            return derive_params(data.count(), data.dimension(), options.alpha, options.beta,
                                 options.seed);
        }
        if (options.k == 0 || options.L == 0) {
            throw InvalidArgument("index build needs either --derive or explicit --k and --L");
        }
        return IndexParams(data.dimension(), options.k, options.L, options.seed, options.alpha,
                           options.beta);
    }();

    const LshIndex index = LshIndex::build(data, params);
    save_index(index, options.out_path);

    json report;
    report["data"] = options.data_path;
    report["index"] = options.out_path;
    report["n"] = data.count();
    report["d"] = params.dimension;
    report["k"] = params.key_bits;
    report["L"] = params.table_count;
    report["seed"] = params.seed;
    report["alpha"] = params.alpha;
    report["beta"] = params.beta;
    std::cout << report.dump(2) << "\n";
    return 0;
}

struct IndexQueryOptions {
    std::string index_path, data_path;
    std::int64_t row = -1;
    std::string bits;
    std::int64_t radius = -1;
    std::string out, format = "csv";
};

int cmd_index_query(const IndexQueryOptions& options) {
    const LshIndex index = load_index(options.index_path);
    const BinaryDataset data = load_dataset(options.data_path);
    if (data.count() != index.indexed_rows()) {
        throw InvalidArgument("dataset has " + std::to_string(data.count()) +
                              " rows but the index was built over " +
                              std::to_string(index.indexed_rows()));
    }

    if ((options.row >= 0) == !options.bits.empty()) {
        std::cerr << "index query: pick exactly one of --row or --bits\n";
        return kExitUsage;
    }
    BitVector q(data.dimension());
    if (options.row >= 0) {
        q = data.row(static_cast<std::uint64_t>(options.row));
    } else {
        if (options.bits.size() != data.dimension()) {
            throw InvalidArgument("--bits needs exactly " + std::to_string(data.dimension()) +
                                  " characters of 0/1");
        }
        for (std::uint32_t j = 0; j < data.dimension(); ++j) {
            if (options.bits[j] != '0' && options.bits[j] != '1') {
                throw InvalidArgument("--bits accepts only 0 and 1");
            }
            q.set(j, options.bits[j] == '1');
        }
    }

    std::optional<std::uint32_t> radius;
    if (options.radius >= 0) radius = static_cast<std::uint32_t>(options.radius);
    const std::vector<QueryHit> hits = index.query(data, q, radius);

    if (options.format == "json") {
        json rows = json::array();
        for (const QueryHit& hit : hits) {
            rows.push_back({{"row", hit.row}, {"distance", hit.distance}});
        }
        write_output(rows.dump(2) + "\n", options.out);
    } else {
        std::ostringstream csv;
        csv << "row,distance\n";
        for (const QueryHit& hit : hits) csv << hit.row << ',' << hit.distance << '\n';
        write_output(csv.str(), options.out);
    }
    return 0;
}

struct IndexBenchOptions {
    std::uint64_t n = 10000;
    std::uint32_t d = 128;
    double alpha = 0.9, beta = 0.5;
    std::uint32_t planted = 100;
    std::uint64_t seed = 42;
    std::uint64_t collision_pairs = 20000;
    std::string out;
};

int cmd_index_bench(const IndexBenchOptions& options) {
    BenchConfig config;
    config.n = options.n;
    config.d = options.d;
    config.alpha = options.alpha;
    config.beta = options.beta;
    config.planted = options.planted;
    config.seed = options.seed;
    config.collision_pairs = options.collision_pairs;

    const BenchReport report = run_planted_benchmark(config);

    json out;
    out["params"] = {{"d", report.params.dimension}, {"k", report.params.key_bits},
                     {"L", report.params.table_count}, {"seed", report.params.seed},
                     {"alpha", report.params.alpha},  {"beta", report.params.beta}};
    out["n"] = report.n;
    out["planted"] = report.planted;
    out["recall"] = report.recall;
    out["expected_recall"] = report.expected_recall;
    out["mean_candidates"] = report.mean_candidates;
    out["build_seconds"] = report.build_seconds;
    out["query_seconds"] = report.query_seconds;
    json strata = json::array();
    for (const CollisionStratum& stratum : report.collision) {
        strata.push_back({{"dimension", stratum.dimension},
                          {"distance", stratum.distance},
                          {"correlation", stratum.correlation},
                          {"expected", stratum.expected},
                          {"measured", stratum.measured},
                          {"sigma", stratum.sigma},
                          {"events", stratum.events},
                          {"within_3sigma", stratum.within_3_sigma()}});
    }
    out["collision"] = std::move(strata);
    write_output(out.dump(2) + "\n", options.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boolean locality-sensitive hashing toolkit"};
    app.require_subcommand(1);

    SpectrumOptions spectrum;
    CLI::App* spectrum_cmd =
        app.add_subcommand("spectrum", "Fourier coefficients and weight profile of a function");
    spectrum_cmd->add_flag("--dictator", spectrum.dictator, "f(x) = sign * x_i");
    spectrum_cmd->add_flag("--parity", spectrum.parity, "f(x) = prod_{i in S} x_i");
    spectrum_cmd->add_flag("--majority", spectrum.majority, "majority of the coordinates");
    spectrum_cmd->add_flag("--random", spectrum.random, "uniformly random truth table");
    spectrum_cmd->add_option("--table", spectrum.table_path, "read a truth-table text file");
    spectrum_cmd->add_option("--d", spectrum.d, "dimension");
    spectrum_cmd->add_option("--i", spectrum.i, "dictator coordinate (1-based)");
    spectrum_cmd->add_option("--sign", spectrum.sign, "dictator sign, +1 or -1");
    spectrum_cmd->add_option("--set", spectrum.subset, "parity subset, e.g. 1,3");
    spectrum_cmd->add_option("--seed", spectrum.seed, "seed for --random");
    spectrum_cmd->add_option("--out", spectrum.out, "output path (default stdout)");
    spectrum_cmd->add_option("--format", spectrum.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));

    RhoTableOptions rho_table;
    CLI::App* rho_cmd = app.add_subcommand("rho-table", "Closed-form rho values and bounds");
    rho_cmd->add_option("--alpha-grid", rho_table.alpha_grid, "start:stop:step or list")
        ->required();
    rho_cmd->add_option("--beta-grid", rho_table.beta_grid, "start:stop:step or list")->required();
    rho_cmd->add_option("--out", rho_table.out, "output path (default stdout)");
    rho_cmd->add_option("--format", rho_table.format, "csv|json")
        ->check(CLI::IsMember({"json", "csv"}));

    VerifyOptions verify;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Run the full optimality verification battery");
    verify_cmd->add_option("--d-max", verify.d_max, "largest dimension to enumerate (<= 4)");
    verify_cmd->add_option("--grid-step", verify.grid_step, "alpha/beta grid spacing");
    verify_cmd->add_option("--samples", verify.samples, "interior weight samples per pair");
    verify_cmd->add_option("--gamma-trials", verify.gamma_trials, "mixtures per gamma probe");
    verify_cmd->add_option("--seed", verify.seed, "seed for sampled checks");
    verify_cmd->add_option("--out", verify.out, "output path (default stdout)");
    verify_cmd->add_flag("--inject-fault", verify.inject_fault)->group(""); // harness self-test

    CLI::App* index_cmd = app.add_subcommand("index", "Bit-sampling index lifecycle");
    index_cmd->require_subcommand(1);

    IndexBuildOptions build;
    CLI::App* build_cmd = index_cmd->add_subcommand("build", "Build and save an index");
    build_cmd->add_option("--data", build.data_path, "dataset file (BDS1)")->required();
    build_cmd->add_option("--out", build.out_path, "index file to write (BLI1)")->required();
    build_cmd->add_flag("--derive", build.derive, "derive k and L from (n, alpha, beta)");
    build_cmd->add_option("--k", build.k, "sampled bits per table");
    build_cmd->add_option("--L", build.L, "number of tables");
    build_cmd->add_option("--alpha", build.alpha, "near correlation")->required();
    build_cmd->add_option("--beta", build.beta, "far correlation")->required();
    build_cmd->add_option("--seed", build.seed, "coordinate sampling seed");

    IndexQueryOptions query;
    CLI::App* query_cmd = index_cmd->add_subcommand("query", "Query a saved index");
    query_cmd->add_option("--index", query.index_path, "index file")->required();
    query_cmd->add_option("--data", query.data_path, "dataset file the index was built over")
        ->required();
    query_cmd->add_option("--row", query.row, "query with dataset row N");
    query_cmd->add_option("--bits", query.bits, "query with an explicit 0/1 string");
    query_cmd->add_option("--radius", query.radius, "drop candidates beyond this distance");
    query_cmd->add_option("--out", query.out, "output path (default stdout)");
    query_cmd->add_option("--format", query.format, "csv|json")
        ->check(CLI::IsMember({"json", "csv"}));

    IndexBenchOptions bench;
    CLI::App* bench_cmd =
        index_cmd->add_subcommand("bench", "Planted-neighbor recall and collision statistics");
    bench_cmd->add_option("--n", bench.n, "dataset size");
    bench_cmd->add_option("--d", bench.d, "dimension in bits");
    bench_cmd->add_option("--alpha", bench.alpha, "near correlation");
    bench_cmd->add_option("--beta", bench.beta, "far correlation");
    bench_cmd->add_option("--planted", bench.planted, "number of planted neighbors");
    bench_cmd->add_option("--seed", bench.seed, "workload seed");
    bench_cmd->add_option("--collision-pairs", bench.collision_pairs,
                          "pairs per collision stratum");
    bench_cmd->add_option("--out", bench.out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (spectrum_cmd->parsed()) return cmd_spectrum(spectrum);
        if (rho_cmd->parsed()) return cmd_rho_table(rho_table);
        if (verify_cmd->parsed()) return cmd_verify(verify);
        if (build_cmd->parsed()) return cmd_index_build(build);
        if (query_cmd->parsed()) return cmd_index_query(query);
        if (bench_cmd->parsed()) return cmd_index_bench(bench);
    } catch (const FormatError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitIo;
    } catch (const InvalidArgument& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const UnsupportedScale& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
