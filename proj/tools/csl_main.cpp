#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "csl/experiments.hpp"
#include "csl/model.hpp"
#include "csl/operators.hpp"
#include "csl/sampling.hpp"
#include "csl/verification.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "csl 0.1.0";

int log_level() {
    const char* env = std::getenv("CSL_LOG");
    if (!env) return 1;
    std::string v(env);
    if (v == "quiet") return 0;
    if (v == "debug") return 2;
    return 1;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[csl] " << msg << "\n";
}

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
}

template <typename T>
T require(const json& j, const std::string& section, const std::string& key) {
    if (!j.contains(key))
        throw ConfigError("config section '" + section + "': missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("config field '" + section + "." + key + "': " + e.what());
    }
}

std::vector<int> parse_m_grid(const json& grid) {
    if (grid.contains("m")) return require<std::vector<int>>(grid, "grid", "m");
    const int start = require<int>(grid, "grid", "m_start");
    const int stop = require<int>(grid, "grid", "m_stop");
    const int step = require<int>(grid, "grid", "m_step");
    if (step < 1) throw ConfigError("config field 'grid.m_step': must be >= 1");
    std::vector<int> out;
    for (int m = start; m <= stop; m += step) out.push_back(m);
    return out;
}

std::string join_ints(const std::vector<int>& v, char sep = '|') {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << sep;
        os << v[i];
    }
    return os.str();
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Written via a temp file so a failed run leaves no partial output.
class OutputFile {
public:
    explicit OutputFile(const fs::path& path) : path_(path), tmp_(path.string() + ".tmp") {
        fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
        stream_.open(tmp_, std::ios::binary);
        if (!stream_) throw std::runtime_error("cannot open output file: " + tmp_.string());
    }
    ~OutputFile() {
        if (!committed_) {
            stream_.close();
            std::error_code ec;
            fs::remove(tmp_, ec);
        }
    }
    std::ostream& stream() { return stream_; }
    void commit() {
        stream_.close();
        fs::rename(tmp_, path_);
        committed_ = true;
    }

private:
    fs::path path_;
    fs::path tmp_;
    std::ofstream stream_;
    bool committed_ = false;
};

void write_metadata(const fs::path& path, const json& config, std::uint64_t seed, int jobs,
                    double wall_seconds) {
    OutputFile meta(path);
    json j;
    j["config"] = config;
    j["version"] = kVersion;
    j["master_seed"] = seed;
    j["jobs"] = jobs;
    j["wall_seconds"] = wall_seconds;
    meta.stream() << j.dump(2) << "\n";
    meta.commit();
}

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_given = false;
    int jobs = 0;
    double noise = 0.0;
};

std::uint64_t resolve_seed(const CommonArgs& args, const json& config) {
    if (args.seed_given) return args.seed;
    if (config.contains("seeds") && config["seeds"].contains("master"))
        return config["seeds"]["master"].get<std::uint64_t>();
    return 0;
}

int resolve_jobs(const CommonArgs& args) {
    if (args.jobs > 0) return args.jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<csl::ModelSpec> parse_models(const json& config, int& n_out) {
    std::vector<csl::ModelSpec> models;
    if (config.contains("models")) {
        for (const auto& mj : config["models"]) {
            auto boundaries = require<std::vector<int>>(mj, "models[]", "levels");
            auto counts = require<std::vector<int>>(mj, "models[]", "local_s");
            csl::LevelStructure levels(boundaries);
            csl::LocalSparsities local(counts);
            local.validate_against(levels);
            models.push_back({local, levels});
        }
        if (models.empty()) throw ConfigError("config section 'models': empty list");
        n_out = models.front().levels.dimension();
        return models;
    }
    const json& mj = config.at("model");
    n_out = require<int>(mj, "model", "N");
    auto boundaries = require<std::vector<int>>(mj, "model", "levels");
    csl::LevelStructure levels(boundaries);
    if (levels.dimension() != n_out)
        throw ConfigError("config field 'model.levels': M_r must equal N");
    auto patterns = require<std::vector<std::vector<int>>>(mj, "model", "local_s");
    for (const auto& counts : patterns) {
        csl::LocalSparsities local(counts);
        local.validate_against(levels);
        models.push_back({local, levels});
    }
    if (models.empty()) throw ConfigError("config field 'model.local_s': empty list");
    return models;
}

int cmd_phase(const CommonArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    json config = load_config(args.config_path);
    if (!config.contains("model") && !config.contains("models"))
        throw ConfigError("phase config: need a 'model' or 'models' section");

    int n = 0;
    std::vector<csl::ModelSpec> models = parse_models(config, n);
    std::vector<csl::SolverKind> solvers;
    for (const auto& name :
         require<std::vector<std::string>>(config.at("solver"), "solver", "names"))
        solvers.push_back(csl::solver_kind_from_string(name));
    std::vector<int> m_grid = parse_m_grid(config.at("grid"));
    for (int m : m_grid)
        if (m < 1 || m > n) throw ConfigError("config field 'grid.m': values must lie in [1, N]");
    const int trials = config.value("trials", 50);
    const std::uint64_t seed = resolve_seed(args, config);
    const int jobs = resolve_jobs(args);
    const std::string tag = config.value("output", json::object()).value("tag", "run");

    log_info("phase: " + std::to_string(models.size()) + " models x " +
             std::to_string(solvers.size()) + " solvers x " + std::to_string(m_grid.size()) +
             " m values, " + std::to_string(trials) + " trials, jobs=" + std::to_string(jobs));

    csl::PhaseTransitionResult result =
        csl::phase_transition_line(solvers, models, n, m_grid, trials, seed, jobs, args.noise);

    const fs::path csv_path = fs::path(args.out_dir) / ("phase_" + tag + ".csv");
    OutputFile csv(csv_path);
    csv.stream() << "solver,N,levels,local_s,m,trials,successes,probability,seed\n";
    for (const auto& cell : result.cells) {
        csv.stream() << csl::to_string(cell.solver) << "," << n << ","
                     << join_ints(cell.model.levels.boundaries()) << ","
                     << join_ints(cell.model.local.counts()) << "," << cell.m << ","
                     << cell.trials << "," << cell.successes << ","
                     << format_double(cell.probability) << "," << seed << "\n";
    }
    csv.commit();

    if (config.value("output", json::object()).value("gnuplot", false)) {
        OutputFile dat(fs::path(args.out_dir) / ("phase_" + tag + ".dat"));
        dat.stream() << "# m probability (one block per solver/model)\n";
        for (std::size_t i = 0; i < result.cells.size(); ++i) {
            const auto& cell = result.cells[i];
            dat.stream() << cell.m << " " << format_double(cell.probability) << "\n";
            if (i + 1 < result.cells.size() && result.cells[i + 1].m <= cell.m)
                dat.stream() << "\n\n";
        }
        dat.commit();
    }

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_metadata(fs::path(args.out_dir) / ("phase_" + tag + ".meta.json"), config, seed, jobs, wall);
    log_info("phase: wrote " + csv_path.string());
    return 0;
}

int cmd_approx(const CommonArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    json config = load_config(args.config_path);
    const json& mj = config.at("model");
    const int n = require<int>(mj, "model", "N");
    if (n < 2 || (n & (n - 1)) != 0)
        throw ConfigError("config field 'model.N': must be a power of two");
    const json& sj = config.at("solver");
    std::vector<csl::EncoderKind> encoders;
    for (const auto& name : require<std::vector<std::string>>(sj, "solver", "encoders"))
        encoders.push_back(csl::encoder_kind_from_string(name));
    std::vector<csl::DecoderKind> decoders;
    for (const auto& name : require<std::vector<std::string>>(sj, "solver", "decoders"))
        decoders.push_back(csl::decoder_kind_from_string(name));
    std::vector<double> c_list = require<std::vector<double>>(sj, "solver", "C");
    const long bp_max_iterations = sj.value("bp_max_iterations", 1000000L);
    std::vector<int> m_list = parse_m_grid(config.at("grid"));
    const int runs = config.value("runs", 10);
    const std::uint64_t seed = resolve_seed(args, config);
    const int jobs = resolve_jobs(args);
    const std::string tag = config.value("output", json::object()).value("tag", "run");

    log_info("approx: N=" + std::to_string(n) + ", " + std::to_string(m_list.size()) +
             " m values, " + std::to_string(runs) + " runs, jobs=" + std::to_string(jobs));

    csl::ApproximationSweepResult result = csl::function_approx_sweep(
        encoders, decoders, m_list, c_list, n, runs, seed, jobs, bp_max_iterations);

    const fs::path csv_path = fs::path(args.out_dir) / ("approx_" + tag + ".csv");
    OutputFile csv(csv_path);
    csv.stream() << "encoder,decoder,C,N,m,runs,mean_rel_l2,median_rel_l2,seed\n";
    for (const auto& cell : result.cells) {
        csv.stream() << csl::to_string(cell.encoder) << "," << csl::to_string(cell.decoder) << ","
                     << format_double(cell.c) << "," << n << "," << cell.m << "," << cell.runs
                     << "," << format_double(cell.mean_rel_l2) << ","
                     << format_double(cell.median_rel_l2) << "," << seed << "\n";
    }
    csv.commit();

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_metadata(fs::path(args.out_dir) / ("approx_" + tag + ".meta.json"), config, seed, jobs, wall);
    log_info("approx: wrote " + csv_path.string());
    return 0;
}

csl::DenseMatrix load_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open matrix file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            try {
                row.push_back(std::stod(field));
            } catch (const std::exception&) {
                throw ConfigError("matrix file " + path + " line " + std::to_string(lineno) +
                                  ": bad number '" + field + "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ConfigError("matrix file " + path + " line " + std::to_string(lineno) +
                              ": ragged row");
        rows.push_back(row);
    }
    if (rows.empty()) throw ConfigError("matrix file " + path + ": empty");
    csl::DenseMatrix a(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.front().size(); ++j)
            a(i, j) = csl::Complex(rows[i][j], 0.0);
    return a;
}

csl::DenseMatrix unitary_dft_matrix(int n) {
    csl::DenseMatrix u(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double phase = -2.0 * M_PI * i * j / n;
            u(i, j) = scale * csl::Complex(std::cos(phase), std::sin(phase));
        }
    return u;
}

int cmd_verify(const CommonArgs& args) {
    json config = load_config(args.config_path);
    const json& mat = config.at("matrix");
    const std::string kind = require<std::string>(mat, "matrix", "kind");
    csl::DenseMatrix a;
    if (kind == "file") {
        a = load_matrix_csv(require<std::string>(mat, "matrix", "path"));
    } else if (kind == "identity") {
        const int n = require<int>(mat, "matrix", "cols");
        a = csl::DenseMatrix::Identity(n, n);
    } else if (kind == "dft") {
        a = unitary_dft_matrix(require<int>(mat, "matrix", "cols"));
    } else if (kind == "gaussian") {
        const int rows = require<int>(mat, "matrix", "rows");
        const int cols = require<int>(mat, "matrix", "cols");
        csl::Rng rng(resolve_seed(args, config));
        a = csl::gaussian_operator(rows, cols, rng)->to_dense();
    } else {
        throw ConfigError("config field 'matrix.kind': unknown kind '" + kind + "'");
    }

    const std::string tag = config.value("output", json::object()).value("tag", "verify");
    const fs::path csv_path = fs::path(args.out_dir) / ("verify_" + tag + ".csv");
    OutputFile csv(csv_path);
    csv.stream() << "quantity,detail,value\n";

    const json& model = config.at("model");
    if (model.contains("s")) {
        const int s = require<int>(model, "model", "s");
        const double delta = csl::ric_bruteforce(a, s);
        std::cout << "RIC delta_" << s << " = " << format_double(delta) << "\n";
        csv.stream() << "ric," << s << "," << format_double(delta) << "\n";
    }
    if (model.contains("levels")) {
        csl::LevelStructure levels(require<std::vector<int>>(model, "model", "levels"));
        csl::LocalSparsities local(require<std::vector<int>>(model, "model", "local_s"));
        const double delta = csl::ricl_bruteforce(a, local, levels);
        std::cout << "RICL delta_{(" << join_ints(local.counts(), ',') << "),("
                  << join_ints(levels.boundaries(), ',') << ")} = " << format_double(delta) << "\n";
        csv.stream() << "ricl," << join_ints(local.counts()) << ";"
                     << join_ints(levels.boundaries()) << "," << format_double(delta) << "\n";
    }
    if (config.contains("coherence")) {
        const json& cj = config["coherence"];
        auto sampling = require<std::vector<int>>(cj, "coherence", "sampling_levels");
        csl::LevelStructure sparsity(require<std::vector<int>>(cj, "coherence", "sparsity_levels"));
        Eigen::MatrixXd mu = csl::block_coherence(a, sampling, sparsity);
        std::cout << "block coherence mu_{k,l}:\n";
        for (int k = 0; k < mu.rows(); ++k) {
            for (int l = 0; l < mu.cols(); ++l) {
                std::cout << (l ? " " : "") << format_double(mu(k, l));
                csv.stream() << "coherence," << (k + 1) << ";" << (l + 1) << ","
                             << format_double(mu(k, l)) << "\n";
            }
            std::cout << "\n";
        }
    }
    csv.commit();
    log_info("verify: wrote " + csv_path.string());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compressed sensing with sparsity in levels: experiment harness"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonArgs args;
    auto add_common = [&](CLI::App* sub, bool with_noise) {
        sub->add_option("--config", args.config_path, "JSON config file")->required();
        sub->add_option("--out", args.out_dir, "output directory");
        sub->add_option("--seed", args.seed, "master seed (overrides config)")
            ->each([&](const std::string&) { args.seed_given = true; });
        sub->add_option("--jobs", args.jobs, "worker parallelism (default: cores)");
        if (with_noise) sub->add_option("--noise", args.noise, "measurement noise sigma");
    };

    CLI::App* phase = app.add_subcommand("phase", "phase-transition experiments");
    add_common(phase, true);
    CLI::App* approx = app.add_subcommand("approx", "function-approximation sweeps");
    add_common(approx, false);
    CLI::App* verify = app.add_subcommand("verify", "brute-force RIC/RICL/coherence report");
    add_common(verify, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (phase->parsed()) return cmd_phase(args);
        if (approx->parsed()) return cmd_approx(args);
        if (verify->parsed()) return cmd_verify(args);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
