// fidmom command line front end: load a channel (named fixture or JSON file),
// validate it, compute exact fidelity moments, sample the Monte Carlo oracle,
// sweep the variance over dimensions, or check the coefficient bounds.
//
// Exit codes: 0 success, 1 check failure, 2 input error, 3 budget abort.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fidmom/io.hpp"
#include "fidmom/mc.hpp"
#include "fidmom/moments.hpp"

namespace {

using nlohmann::json;
using namespace fidmom;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudget = 3;

struct ChannelOptions {
    std::string fixture;
    std::string file;
    std::string ideal_path;
    Index dim = 2;
    double p = 0.5;
    double gamma = 0.5;
    int rank = 2;
    std::uint64_t seed = 1;
};

void add_channel_flags(CLI::App* cmd, ChannelOptions& opt) {
    cmd->add_option("--fixture", opt.fixture,
                    "identity|depolarizing|dephasing|amplitude-damping|pauli-x|random");
    cmd->add_option("--file", opt.file, "channel JSON file");
    cmd->add_option("--ideal", opt.ideal_path, "JSON file with the ideal unitary");
    cmd->add_option("--dim", opt.dim, "dimension for fixtures that take one");
    cmd->add_option("--p", opt.p, "error probability for depolarizing/dephasing");
    cmd->add_option("--gamma", opt.gamma, "decay probability for amplitude damping");
    cmd->add_option("--rank", opt.rank, "Kraus rank for the random fixture");
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    return json::parse(in);
}

Matrix load_unitary_file(const std::string& path) {
    const json j = load_json_file(path);
    if (j.is_object() && j.contains("unitary")) return matrix_from_json(j.at("unitary"));
    return matrix_from_json(j);
}

KrausChannel fixture_channel(const ChannelOptions& opt) {
    if (opt.fixture == "identity") return unitary_channel(identity(opt.dim));
    if (opt.fixture == "depolarizing") return depolarizing(opt.dim, opt.p);
    if (opt.fixture == "dephasing") return dephasing(opt.p);
    if (opt.fixture == "amplitude-damping") return amplitude_damping(opt.gamma);
    if (opt.fixture == "pauli-x") {
        Matrix X(2, 2);
        X << 0.0, 1.0, 1.0, 0.0;
        return unitary_channel(X);
    }
    if (opt.fixture == "random") return random_cptp(opt.dim, opt.rank, opt.seed);
    throw std::invalid_argument("unknown fixture: " + opt.fixture);
}

// The deviation channel the analysis runs on, honoring --ideal
KrausChannel build_lambda(const ChannelOptions& opt) {
    if (opt.fixture.empty() == opt.file.empty())
        throw std::invalid_argument("give exactly one of --fixture or --file");
    ChannelSpec spec;
    if (!opt.file.empty()) {
        spec = channel_from_json(load_json_file(opt.file));
    } else {
        spec.channel = fixture_channel(opt);
    }
    if (!opt.ideal_path.empty()) spec.ideal = load_unitary_file(opt.ideal_path);
    return lambda_of(spec);
}

std::int64_t budget_from_env() {
    const char* env = std::getenv("FIDMOMENTS_BUDGET");
    if (env == nullptr) return kDefaultMomentBudget;
    char* end = nullptr;
    const long long value = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || value <= 0)
        throw std::invalid_argument("FIDMOMENTS_BUDGET must be a positive integer");
    return value;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot write file: " + out_path);
        out << text << "\n";
    }
}

json report_to_json(const MomentReport& rep) {
    json j;
    j["avg_fidelity"] = rep.avg;
    j["second_moment"] = rep.second_moment;
    j["variance"] = rep.variance;
    j["variance_raw"] = rep.variance_raw;
    j["variance_rational"] = rep.variance_rational;
    j["variance_paths_delta"] = rep.variance_raw - rep.variance_rational;
    if (rep.variance_qubit) j["variance_qubit"] = *rep.variance_qubit;
    j["variance_method"] = rep.variance_method;
    if (!rep.higher_moments.empty()) {
        json hm = json::array();
        for (const auto& [m, value] : rep.higher_moments)
            hm.push_back({{"m", m}, {"value", value}});
        j["higher_moments"] = std::move(hm);
    }
    j["flags"] = rep.flags;
    return j;
}

json compare_to_json(const std::vector<CompareRow>& rows) {
    json out = json::array();
    for (const auto& row : rows) {
        json r;
        r["name"] = row.name;
        r["analytic"] = row.analytic;
        r["empirical"] = row.empirical;
        r["stderr"] = row.std_error;
        r["z"] = std::isfinite(row.z) ? json(row.z) : json(nullptr);
        r["pass"] = row.pass;
        out.push_back(std::move(r));
    }
    return out;
}

int run_validate(const ChannelOptions& opt, const std::string& out_path) {
    const KrausChannel lambda = build_lambda(opt);
    const CptpReport rep = validate_cptp(lambda);
    json j;
    j["dim"] = lambda.d;
    j["kraus_rank"] = lambda.kraus.size();
    j["tp_residual"] = rep.tp_residual;
    j["min_choi_eig"] = rep.min_choi_eig;
    j["verdict"] = rep.verdict;
    emit(j.dump(2), out_path);
    return rep.verdict ? kExitOk : kExitCheckFailed;
}

int run_analyze(const ChannelOptions& opt, int m_max, bool cross_check_direct,
                const std::string& out_path) {
    const KrausChannel lambda = build_lambda(opt);
    if (!validate_cptp(lambda).verdict) {
        emit(json{{"error", "channel is not CPTP at tolerance 1e-8"}}.dump(2), out_path);
        return kExitCheckFailed;
    }
    const MomentReport rep = analyze(lambda, m_max, budget_from_env());
    json j = report_to_json(rep);
    j["dim"] = lambda.d;
    j["kraus_rank"] = lambda.kraus.size();
    if (cross_check_direct) {
        const double direct = second_moment_direct(lambda);
        j["second_moment_direct"] = direct;
        j["second_moment_direct_delta"] = rep.second_moment - direct;
    }
    emit(j.dump(2), out_path);
    return kExitOk;
}

int run_sample(const ChannelOptions& opt, int m_max, const SampleConfig& cfg,
               const std::string& out_path) {
    const KrausChannel lambda = build_lambda(opt);
    if (!validate_cptp(lambda).verdict) {
        emit(json{{"error", "channel is not CPTP at tolerance 1e-8"}}.dump(2), out_path);
        return kExitCheckFailed;
    }
    const MomentReport rep = analyze(lambda, m_max, budget_from_env());
    const EmpiricalMoments emp = estimate_moments(lambda, m_max, cfg);
    const std::vector<CompareRow> rows = compare(rep, emp);

    json j;
    j["dim"] = lambda.d;
    j["n_samples"] = emp.n_samples;
    j["seed"] = emp.seed;
    j["shards"] = emp.shards;
    j["analytic"] = report_to_json(rep);
    json moments = json::array();
    for (const auto& m : emp.moments)
        moments.push_back({{"m", m.order}, {"estimate", m.estimate}, {"stderr", m.std_error}});
    j["empirical"] = {{"moments", std::move(moments)},
                      {"variance", emp.variance_estimate},
                      {"variance_stderr", emp.variance_std_error}};
    j["compare"] = compare_to_json(rows);
    const bool all_pass =
        std::all_of(rows.begin(), rows.end(), [](const CompareRow& r) { return r.pass; });
    j["all_pass"] = all_pass;
    emit(j.dump(2), out_path);
    return all_pass ? kExitOk : kExitCheckFailed;
}

int run_sweep(const std::vector<Index>& dims, int rank, int trials, std::uint64_t seed,
              const std::string& format, const std::string& out_path) {
    const SweepResult result = scaling_sweep(dims, rank, trials, seed);
    if (format == "json") {
        json rows = json::array();
        for (const auto& r : result.rows)
            rows.push_back({{"d", r.d},
                            {"mean_var", r.mean_var},
                            {"max_var", r.max_var},
                            {"d_times_max_var", static_cast<double>(r.d) * r.max_var}});
        emit(json{{"rows", std::move(rows)}, {"trend_ok", result.trend_ok}}.dump(2), out_path);
    } else {
        std::ostringstream csv;
        csv << "d,mean_var,max_var,d_times_max_var";
        csv.precision(15);
        for (const auto& r : result.rows)
            csv << "\n"
                << r.d << "," << r.mean_var << "," << r.max_var << ","
                << static_cast<double>(r.d) * r.max_var;
        emit(csv.str(), out_path);
    }
    return result.trend_ok ? kExitOk : kExitCheckFailed;
}

int run_bounds(const ChannelOptions& opt, const std::string& out_path) {
    const KrausChannel lambda = build_lambda(opt);
    const BoundReport rep = bound_report(lambda);
    json j;
    j["dim"] = lambda.d;
    j["coefficients"] = {{"r", rep.r}, {"s", rep.s}, {"u", rep.u}, {"v", rep.v}, {"w", rep.w}};
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name},
                          {"value", c.value},
                          {"lo", c.lo},
                          {"hi", c.hi},
                          {"slack", c.slack},
                          {"holds", c.holds}});
    j["bounds"] = std::move(checks);
    j["all_hold"] = rep.all_hold;
    emit(j.dump(2), out_path);
    return rep.all_hold ? kExitOk : kExitCheckFailed;
}

std::vector<Index> parse_dims(const std::string& csv) {
    std::vector<Index> dims;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        dims.push_back(static_cast<Index>(std::stoll(item)));
    }
    if (dims.empty()) throw std::invalid_argument("--dims: expected a comma-separated list");
    return dims;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and Monte Carlo moments of the quantum gate fidelity"};
    app.require_subcommand(1);

    ChannelOptions copt;
    std::string out_path;
    int m_max = 2;
    bool cross_check_direct = false;
    SampleConfig cfg;
    cfg.n_samples = 100000;
    cfg.seed = 7;
    std::string dims_csv = "2,4,8,16";
    int sweep_rank = 2;
    int sweep_trials = 20;
    std::uint64_t sweep_seed = 1;
    std::string sweep_format = "csv";

    auto* validate = app.add_subcommand("validate", "CPTP validation report");
    add_channel_flags(validate, copt);
    validate->add_option("--seed", copt.seed, "seed for the random fixture");
    validate->add_option("--out", out_path, "write the report to a file");

    auto* analyze_cmd = app.add_subcommand("analyze", "exact fidelity moments");
    add_channel_flags(analyze_cmd, copt);
    analyze_cmd->add_option("--seed", copt.seed, "seed for the random fixture");
    analyze_cmd->add_option("--moments", m_max, "highest moment order");
    analyze_cmd->add_flag("--cross-check-direct", cross_check_direct,
                          "also run the 24-term direct chi-basis sum");
    analyze_cmd->add_option("--out", out_path, "write the report to a file");

    auto* sample = app.add_subcommand("sample", "Monte Carlo estimates and z-scores");
    add_channel_flags(sample, copt);
    std::uint64_t sample_seed = 7;
    sample->add_option("--samples", cfg.n_samples, "number of Haar samples");
    sample->add_option("--seed", sample_seed, "sampler seed (also seeds the random fixture)");
    sample->add_option("--shards", cfg.shards, "independent sampler shards");
    sample->add_option("--moments", m_max, "highest moment order");
    sample->add_option("--out", out_path, "write the report to a file");

    auto* sweep = app.add_subcommand("sweep", "variance scaling over dimensions");
    sweep->add_option("--dims", dims_csv, "comma-separated dimensions");
    sweep->add_option("--rank", sweep_rank, "Kraus rank of the random draws");
    sweep->add_option("--trials", sweep_trials, "channels per dimension");
    sweep->add_option("--seed", sweep_seed, "sweep seed");
    sweep->add_option("--format", sweep_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", out_path, "write the table to a file");

    auto* bounds = app.add_subcommand("bounds", "coefficient bound report");
    add_channel_flags(bounds, copt);
    bounds->add_option("--seed", copt.seed, "seed for the random fixture");
    bounds->add_option("--out", out_path, "write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (validate->parsed()) return run_validate(copt, out_path);
        if (analyze_cmd->parsed())
            return run_analyze(copt, m_max, cross_check_direct, out_path);
        if (sample->parsed()) {
            cfg.seed = sample_seed;
            copt.seed = sample_seed;
            return run_sample(copt, m_max, cfg, out_path);
        }
        if (sweep->parsed())
            return run_sweep(parse_dims(dims_csv), sweep_rank, sweep_trials, sweep_seed,
                             sweep_format, out_path);
        if (bounds->parsed()) return run_bounds(copt, out_path);
    } catch (const fidmom::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitInputError;
}
