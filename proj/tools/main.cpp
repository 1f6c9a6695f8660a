// entroprune: entropy-objective ensemble pruning CLI.
//
// Subcommands: prune, sweep-lambda, validate-objective, benchmark, oracle.
// Reports are JSON (default) or CSV, written atomically when --out is given.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "entroprune/distributed.hpp"
#include "entroprune/ensemble_io.hpp"
#include "entroprune/pruners.hpp"
#include "entroprune/rng.hpp"

using json = nlohmann::json;
using namespace entroprune;

namespace {

struct Options {
    std::string algo = "comep";
    double lambda = 0.5;
    int k = 3;
    int machines = 1;
    int workers = 0;
    std::uint64_t seed = 0;
    std::string criterion = "tdas";
    std::string out;
    std::string format = "json";
    std::string config;

    std::string predictions, labels;
    std::string test_predictions, test_labels;
    std::string dataset;
    std::string generator;
    std::string base = "stump";
    int estimators = 20;

    // command-specific
    std::string lambda_grid = "0.1,0.3,0.5,0.7,0.9";
    std::string k_grid;
    std::string machines_list = "2,3";
    int repetitions = 3;
    int combo_size = 3;
};

struct ResolvedInput {
    EnsemblePredictions validation;
    EnsemblePredictions test;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream stream(s);
    while (std::getline(stream, item, sep)) parts.push_back(item);
    return parts;
}

std::map<std::string, std::string> parse_kv(const std::string& spec) {
    std::map<std::string, std::string> kv;
    for (const std::string& part : split(spec, ',')) {
        if (part.empty()) continue;
        const auto eq = part.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("generator spec entries must look like key=value: " + part);
        kv[part.substr(0, eq)] = part.substr(eq + 1);
    }
    return kv;
}

double kv_num(const std::map<std::string, std::string>& kv, const std::string& key, double fallback) {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : std::stod(it->second);
}

BaseLearner parse_base(const std::string& name) {
    if (name == "stump") return BaseLearner::stump;
    if (name == "one_nn" || name == "1nn") return BaseLearner::one_nn;
    throw std::invalid_argument("unknown base learner: " + name + " (stump, one_nn)");
}

BestCriterion parse_criterion(const std::string& name) {
    if (name == "tdas") return BestCriterion::tdas;
    if (name == "accuracy" || name == "voted-accuracy") return BestCriterion::eval_accuracy;
    throw std::invalid_argument("unknown criterion: " + name + " (tdas, accuracy)");
}

ResolvedInput resolve_input(const Options& opt) {
    if (!opt.predictions.empty() || !opt.labels.empty()) {
        if (opt.predictions.empty() || opt.labels.empty())
            throw std::invalid_argument("--predictions and --labels must be given together");
        EnsemblePredictions validation = load_predictions(opt.predictions, opt.labels);
        if (!opt.test_predictions.empty()) {
            if (opt.test_labels.empty())
                throw std::invalid_argument("--test-predictions needs --test-labels");
            EnsemblePredictions test = load_predictions(opt.test_predictions, opt.test_labels);
            if (test.n() != validation.n())
                throw std::invalid_argument("test matrix must have the same classifier count");
            return {std::move(validation), std::move(test)};
        }
        EnsemblePredictions test = validation;
        return {std::move(validation), std::move(test)};
    }

    if (!opt.dataset.empty()) {
        const Dataset data = load_dataset(opt.dataset);
        SplitSpec spec;
        spec.seed = derive_seed(opt.seed, 101);
        BaggingResult bagged =
            bagging_train(data, spec, opt.estimators, parse_base(opt.base), derive_seed(opt.seed, 102));
        return {std::move(bagged.validation), std::move(bagged.test)};
    }

    if (!opt.generator.empty()) {
        const auto colon = opt.generator.find(':');
        const std::string name = opt.generator.substr(0, colon);
        const auto kv = colon == std::string::npos
                            ? std::map<std::string, std::string>{}
                            : parse_kv(opt.generator.substr(colon + 1));
        if (name == "synthetic") {
            EnsemblePredictions ens = synthetic_ensemble(
                static_cast<int>(kv_num(kv, "n", 10)), static_cast<int>(kv_num(kv, "d", 500)),
                static_cast<int>(kv_num(kv, "n_c", 2)), kv_num(kv, "acc", 0.75),
                kv_num(kv, "corr", 0.3), derive_seed(opt.seed, 103));
            EnsemblePredictions test = ens;
            return {std::move(ens), std::move(test)};
        }
        if (name == "blobs") {
            const Dataset data = gaussian_blobs(
                static_cast<int>(kv_num(kv, "d", 1000)), static_cast<int>(kv_num(kv, "f", 4)),
                static_cast<int>(kv_num(kv, "n_c", 2)), kv_num(kv, "spread", 1.5),
                derive_seed(opt.seed, 104));
            SplitSpec spec;
            spec.seed = derive_seed(opt.seed, 105);
            const auto base_it = kv.find("base");
            BaggingResult bagged = bagging_train(
                data, spec, static_cast<int>(kv_num(kv, "estimators", opt.estimators)),
                parse_base(base_it == kv.end() ? opt.base : base_it->second),
                derive_seed(opt.seed, 106));
            return {std::move(bagged.validation), std::move(bagged.test)};
        }
        throw std::invalid_argument("unknown generator: " + name + " (synthetic, blobs)");
    }

    throw std::invalid_argument("no input given: use --predictions/--labels, --dataset or --generator");
}

json config_echo(const std::string& command, const Options& opt) {
    json cfg{{"algo", opt.algo},
             {"lambda", opt.lambda},
             {"k", opt.k},
             {"machines", opt.machines},
             {"workers", opt.workers == 0 ? opt.machines : opt.workers},
             {"seed", opt.seed},
             {"criterion", opt.criterion},
             {"format", opt.format}};
    if (!opt.out.empty()) cfg["out"] = opt.out;
    if (!opt.predictions.empty()) cfg["predictions"] = opt.predictions;
    if (!opt.labels.empty()) cfg["labels"] = opt.labels;
    if (!opt.dataset.empty()) cfg["dataset"] = opt.dataset;
    if (!opt.generator.empty()) cfg["generator"] = opt.generator;
    if (command == "sweep-lambda") {
        cfg["lambda_grid"] = opt.lambda_grid;
        cfg["k_grid"] = opt.k_grid.empty() ? std::to_string(opt.k) : opt.k_grid;
    }
    if (command == "benchmark") {
        cfg["machines_list"] = opt.machines_list;
        cfg["repetitions"] = opt.repetitions;
    }
    if (command == "validate-objective") cfg["combo_size"] = opt.combo_size;
    return cfg;
}

json selection_json(const Selection& sel) {
    return {{"indices", sel.indices},
            {"tdas", sel.tdas},
            {"tdac_eval_count", sel.eval_count},
            {"k_clamped", sel.k_clamped}};
}

double number_or_nan(const json& v) { return v.is_null() ? std::nan("") : v.get<double>(); }

// Output is staged to a temp file and renamed, so a failed run never leaves
// a partial report behind.
void write_output(const std::string& out, const std::string& content) {
    if (out.empty()) {
        std::cout << content;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(out);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream stream(tmp);
        if (!stream) throw std::runtime_error("cannot write output file: " + out);
        stream << content;
        if (!stream.good()) {
            stream.close();
            fs::remove(tmp);
            throw std::runtime_error("failed while writing output file: " + out);
        }
    }
    fs::rename(tmp, target);
}

std::string csv_join_indices(const std::vector<int>& indices) {
    std::string s;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i > 0) s += ';';
        s += std::to_string(indices[i]);
    }
    return s;
}

std::string csv_num(double v) {
    if (std::isnan(v)) return "nan";
    std::ostringstream s;
    s.precision(12);
    s << v;
    return s.str();
}

// Parses "epfd", "epfd:<plugin>", "domep" or a plain plugin name; the first
// three force the two-round wrapper even with one machine.
struct AlgoSpec {
    std::string plugin;
    bool force_distributed = false;
};

AlgoSpec parse_algo(const std::string& algo, const PluginRegistry& registry) {
    AlgoSpec spec;
    if (algo == "domep" || algo == "epfd") {
        spec.plugin = "comep";
        spec.force_distributed = true;
    } else if (algo.rfind("epfd:", 0) == 0) {
        spec.plugin = algo.substr(5);
        spec.force_distributed = true;
    } else {
        spec.plugin = algo;
    }
    if (!registry.contains(spec.plugin))
        throw std::invalid_argument("unknown pruner plugin: " + spec.plugin);
    return spec;
}

json run_prune(const Options& opt) {
    const PluginRegistry registry = PluginRegistry::with_builtins();
    const AlgoSpec algo = parse_algo(opt.algo, registry);
    const BestCriterion criterion = parse_criterion(opt.criterion);
    const ResolvedInput input = resolve_input(opt);
    const ObjectiveParams params{opt.lambda, opt.k};
    params.validate();

    json report;
    report["command"] = "prune";
    report["config"] = config_echo("prune", opt);

    const auto t0 = std::chrono::steady_clock::now();
    Selection selected;
    if (opt.machines == 1 && !algo.force_distributed) {
        selected = registry.get(algo.plugin).prune(input.validation, params, opt.seed);
        report["wall_times_s"] = {
            {"total", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
    } else {
        const DistributedResult dist = epfd(input.validation, params, opt.machines,
                                            registry.get(algo.plugin), criterion, opt.seed,
                                            opt.workers);
        selected = dist.best;
        report["wall_times_s"] = {{"total", dist.wall_times.total_s},
                                  {"partition", dist.wall_times.partition_s},
                                  {"group", dist.wall_times.group_s},
                                  {"union", dist.wall_times.union_s},
                                  {"compare", dist.wall_times.compare_s}};
        json groups = json::array();
        for (std::size_t g = 0; g < dist.per_group.size(); ++g) {
            json entry = selection_json(dist.per_group[g]);
            entry["id"] = g;
            entry["members"] = dist.partition.groups[g];
            groups.push_back(std::move(entry));
        }
        report["distributed"] = {
            {"machines", opt.machines},
            {"winner", dist.winner_group < 0 ? "union" : "group " + std::to_string(dist.winner_group)},
            {"groups", std::move(groups)},
            {"union_pool", dist.union_pool},
            {"union_selection", selection_json(dist.union_selection)},
            {"tdac_eval_count_total", dist.eval_count_total},
            {"tdac_eval_count_critical_path", dist.eval_count_critical}};
    }

    report["selection"] = selection_json(selected);
    report["validation_accuracy"] =
        accuracy(majority_vote(input.validation, selected.indices), input.validation.labels());
    report["test_accuracy"] =
        accuracy(majority_vote(input.test, selected.indices), input.test.labels());
    return report;
}

json run_sweep_lambda(const Options& opt) {
    const ResolvedInput input = resolve_input(opt);

    std::vector<double> lambdas;
    for (const auto& s : split(opt.lambda_grid, ',')) lambdas.push_back(std::stod(s));
    std::vector<int> ks;
    for (const auto& s : split(opt.k_grid.empty() ? std::to_string(opt.k) : opt.k_grid, ','))
        ks.push_back(std::stoi(s));
    if (lambdas.empty() || ks.empty()) throw std::invalid_argument("sweep grids must be nonempty");

    json rows = json::array();
    for (int k : ks) {
        for (double lambda : lambdas) {
            const ObjectiveParams params{lambda, k};
            params.validate();
            Selection sel;
            if (opt.machines == 1) {
                sel = comep(input.validation, params);
            } else {
                sel = domep(input.validation, params, opt.machines, opt.seed, opt.workers).best;
            }
            rows.push_back(
                {{"lambda", lambda},
                 {"k", k},
                 {"tdas", sel.tdas},
                 {"validation_accuracy", accuracy(majority_vote(input.validation, sel.indices),
                                                  input.validation.labels())},
                 {"test_accuracy",
                  accuracy(majority_vote(input.test, sel.indices), input.test.labels())}});
        }
    }

    json report;
    report["command"] = "sweep-lambda";
    report["config"] = config_echo("sweep-lambda", opt);
    report["rows"] = std::move(rows);
    return report;
}

json run_validate_objective(const Options& opt) {
    const ResolvedInput input = resolve_input(opt);
    const int n = input.validation.n();
    const int k = std::min(opt.combo_size, n);
    if (k < 1) throw std::invalid_argument("--combo-size must be >= 1");
    if (binomial_or_max(n, k) > kDefaultEnumerationCap)
        throw std::invalid_argument("instance too large for oracle");

    TdacCache cache(input.validation, opt.lambda);
    json rows = json::array();
    std::vector<double> xs, ys;
    std::vector<int> combo(k);
    for (int i = 0; i < k; ++i) combo[i] = i;
    for (;;) {
        const double value = cache.tdas(combo);
        const double acc =
            accuracy(majority_vote(input.validation, combo), input.validation.labels());
        rows.push_back({{"subset", combo}, {"tdas", value}, {"accuracy", acc}});
        xs.push_back(value);
        ys.push_back(acc);
        int pos = k - 1;
        while (pos >= 0 && combo[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++combo[pos];
        for (int i = pos + 1; i < k; ++i) combo[i] = combo[i - 1] + 1;
    }

    // least-squares slope and Pearson correlation of accuracy against tdas
    const double count = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }

    json report;
    report["command"] = "validate-objective";
    report["config"] = config_echo("validate-objective", opt);
    report["rows"] = std::move(rows);
    report["subsets"] = xs.size();
    if (sxx < 1e-15 || syy < 1e-15) {
        // degenerate: zero variance in a column
        report["pearson_r"] = nullptr;
        report["slope"] = nullptr;
    } else {
        report["pearson_r"] = sxy / std::sqrt(sxx * syy);
        report["slope"] = sxy / sxx;
    }
    return report;
}

json run_benchmark(const Options& opt) {
    const ResolvedInput input = resolve_input(opt);
    std::vector<int> m_list;
    for (const auto& s : split(opt.machines_list, ',')) m_list.push_back(std::stoi(s));
    if (m_list.empty()) throw std::invalid_argument("--machines-list must be nonempty");

    const ObjectiveParams params{opt.lambda, opt.k};
    params.validate();
    const auto table =
        benchmark_speedup(input.validation, params, m_list, opt.repetitions, opt.seed, opt.workers);

    json rows = json::array();
    for (const SpeedupRow& row : table) {
        rows.push_back({{"m", row.machines},
                        {"time_s", row.distributed_time_s},
                        {"speedup", row.speedup},
                        {"efficiency", row.efficiency},
                        {"eval_count", row.distributed_evals_critical},
                        {"eval_count_total", row.distributed_evals_total},
                        {"centralized_time_s", row.centralized_time_s},
                        {"centralized_eval_count", row.centralized_evals},
                        {"eval_ratio", row.eval_ratio}});
    }

    json report;
    report["command"] = "benchmark";
    report["config"] = config_echo("benchmark", opt);
    report["rows"] = std::move(rows);
    return report;
}

json run_oracle(const Options& opt) {
    const ResolvedInput input = resolve_input(opt);
    const ObjectiveParams params{opt.lambda, opt.k};
    params.validate();

    const auto optimum = brute_force_optimum(input.validation, params);
    const Selection greedy = comep(input.validation, params);
    const DistributedResult dist =
        domep(input.validation, params, opt.machines, opt.seed, opt.workers);

    json report;
    report["command"] = "oracle";
    report["config"] = config_echo("oracle", opt);
    report["optimum"] = {{"indices", optimum.indices},
                         {"tdas", optimum.tdas},
                         {"subsets_evaluated", optimum.subsets_evaluated}};
    report["comep"] = selection_json(greedy);
    report["domep"] = selection_json(dist.best);
    report["domep"]["machines"] = opt.machines;
    if (optimum.tdas > 0.0) {
        report["comep_ratio"] = greedy.tdas / optimum.tdas;
        report["domep_ratio"] = dist.best.tdas / optimum.tdas;
    } else {
        report["comep_ratio"] = nullptr;
        report["domep_ratio"] = nullptr;
    }
    return report;
}

std::string to_csv(const json& report) {
    const std::string command = report["command"];
    std::ostringstream out;
    if (command == "prune") {
        out << "algo,lambda,k,machines,seed,indices,tdas,validation_accuracy,test_accuracy,"
               "tdac_eval_count,total_time_s\n";
        const auto& cfg = report["config"];
        const auto& sel = report["selection"];
        out << cfg["algo"].get<std::string>() << ',' << csv_num(cfg["lambda"]) << ','
            << cfg["k"].get<int>() << ',' << cfg["machines"].get<int>() << ','
            << cfg["seed"].get<std::uint64_t>() << ','
            << csv_join_indices(sel["indices"].get<std::vector<int>>()) << ','
            << csv_num(sel["tdas"]) << ',' << csv_num(report["validation_accuracy"]) << ','
            << csv_num(report["test_accuracy"]) << ','
            << sel["tdac_eval_count"].get<std::uint64_t>() << ','
            << csv_num(report["wall_times_s"]["total"]) << '\n';
    } else if (command == "sweep-lambda") {
        out << "lambda,k,tdas,validation_accuracy,test_accuracy\n";
        for (const auto& row : report["rows"])
            out << csv_num(row["lambda"]) << ',' << row["k"].get<int>() << ','
                << csv_num(row["tdas"]) << ',' << csv_num(row["validation_accuracy"]) << ','
                << csv_num(row["test_accuracy"]) << '\n';
    } else if (command == "validate-objective") {
        out << "subset,tdas,accuracy\n";
        for (const auto& row : report["rows"])
            out << csv_join_indices(row["subset"].get<std::vector<int>>()) << ','
                << csv_num(row["tdas"]) << ',' << csv_num(row["accuracy"]) << '\n';
        out << "# pearson_r=" << csv_num(number_or_nan(report["pearson_r"]))
            << " slope=" << csv_num(number_or_nan(report["slope"])) << '\n';
    } else if (command == "benchmark") {
        out << "m,time_s,speedup,efficiency,eval_count\n";
        for (const auto& row : report["rows"])
            out << row["m"].get<int>() << ',' << csv_num(row["time_s"]) << ','
                << csv_num(row["speedup"]) << ',' << csv_num(row["efficiency"]) << ','
                << row["eval_count"].get<std::uint64_t>() << '\n';
    } else if (command == "oracle") {
        out << "method,indices,tdas,ratio\n";
        out << "optimum," << csv_join_indices(report["optimum"]["indices"].get<std::vector<int>>())
            << ',' << csv_num(report["optimum"]["tdas"]) << ",1\n";
        out << "comep," << csv_join_indices(report["comep"]["indices"].get<std::vector<int>>())
            << ',' << csv_num(report["comep"]["tdas"]) << ','
            << csv_num(number_or_nan(report["comep_ratio"])) << '\n';
        out << "domep," << csv_join_indices(report["domep"]["indices"].get<std::vector<int>>())
            << ',' << csv_num(report["domep"]["tdas"]) << ','
            << csv_num(number_or_nan(report["domep_ratio"])) << '\n';
    }
    return out.str();
}

void add_common_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--algo", opt.algo,
                    "Pruner: comep, reduce-error, kappa, random, domep, epfd[:plugin]");
    cmd->add_option("--lambda", opt.lambda, "Diversity/accuracy trade-off weight in [0,1]");
    cmd->add_option("--k", opt.k, "Target sub-ensemble size");
    cmd->add_option("--machines", opt.machines, "Simulated machine count for distributed runs");
    cmd->add_option("--workers", opt.workers,
                    "Worker threads for group pruning (0 = one per machine)");
    cmd->add_option("--seed", opt.seed, "Random seed");
    cmd->add_option("--criterion", opt.criterion, "Best-of criterion: tdas or accuracy");
    cmd->add_option("--predictions", opt.predictions,
                    "Prediction matrix CSV (one row per classifier)");
    cmd->add_option("--labels", opt.labels, "True labels CSV (single row)");
    cmd->add_option("--test-predictions", opt.test_predictions, "Held-out prediction matrix CSV");
    cmd->add_option("--test-labels", opt.test_labels, "Held-out labels CSV");
    cmd->add_option("--dataset", opt.dataset, "Feature dataset CSV; bagging builds the ensemble");
    cmd->add_option("--generator", opt.generator,
                    "Fixture spec: synthetic:n=..,d=..,acc=..,corr=.. or blobs:d=..,f=..,base=..");
    cmd->add_option("--base", opt.base, "Bagging base learner: stump or one_nn");
    cmd->add_option("--estimators", opt.estimators, "Bagging ensemble size");
    cmd->add_option("--out", opt.out, "Output path (stdout when omitted)");
    cmd->add_option("--format", opt.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--config", opt.config, "Plain key=value file supplying defaults");
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// key=value defaults; anything given on the command line wins. Returns
// whether the file supplied a seed, so the environment fallback knows to
// stand down.
bool apply_config_file(const std::string& path, const CLI::App& active, Options& opt) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    bool seed_from_file = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string entry = trim(line);
        if (entry.empty() || entry[0] == '#') continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        " is not key=value: " + entry);
        const std::string key = trim(entry.substr(0, eq));
        const std::string value = trim(entry.substr(eq + 1));
        const auto* option = active.get_option_no_throw("--" + key);
        if (option == nullptr)
            throw std::invalid_argument("unknown config key for this command: " + key);
        if (option->count() > 0) continue;  // flag given explicitly

        if (key == "algo") opt.algo = value;
        else if (key == "lambda") opt.lambda = std::stod(value);
        else if (key == "k") opt.k = std::stoi(value);
        else if (key == "machines") opt.machines = std::stoi(value);
        else if (key == "workers") opt.workers = std::stoi(value);
        else if (key == "seed") { opt.seed = std::stoull(value); seed_from_file = true; }
        else if (key == "criterion") opt.criterion = value;
        else if (key == "predictions") opt.predictions = value;
        else if (key == "labels") opt.labels = value;
        else if (key == "test-predictions") opt.test_predictions = value;
        else if (key == "test-labels") opt.test_labels = value;
        else if (key == "dataset") opt.dataset = value;
        else if (key == "generator") opt.generator = value;
        else if (key == "base") opt.base = value;
        else if (key == "estimators") opt.estimators = std::stoi(value);
        else if (key == "out") opt.out = value;
        else if (key == "format") opt.format = value;
        else if (key == "lambda-grid") opt.lambda_grid = value;
        else if (key == "k-grid") opt.k_grid = value;
        else if (key == "machines-list") opt.machines_list = value;
        else if (key == "repetitions") opt.repetitions = std::stoi(value);
        else if (key == "combo-size") opt.combo_size = std::stoi(value);
        else throw std::invalid_argument("unknown config key: " + key);
    }
    return seed_from_file;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropy-objective ensemble pruning"};
    app.require_subcommand(1);

    Options opt;
    CLI::App* prune = app.add_subcommand("prune", "Prune an ensemble and report the selection");
    CLI::App* sweep = app.add_subcommand("sweep-lambda", "Accuracy across a lambda/k grid");
    CLI::App* validate =
        app.add_subcommand("validate-objective", "tdas vs voted accuracy over all k-combinations");
    CLI::App* bench = app.add_subcommand("benchmark", "Speedup and efficiency of distributed runs");
    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "Greedy and distributed results against the exhaustive optimum");

    for (CLI::App* cmd : {prune, sweep, validate, bench, oracle_cmd}) add_common_options(cmd, opt);
    sweep->add_option("--lambda-grid", opt.lambda_grid, "Comma-separated lambda values");
    sweep->add_option("--k-grid", opt.k_grid, "Comma-separated k values (defaults to --k)");
    bench->add_option("--machines-list", opt.machines_list, "Comma-separated machine counts");
    bench->add_option("--repetitions", opt.repetitions, "Timing repetitions per configuration");
    validate->add_option("--combo-size", opt.combo_size, "Combination size to enumerate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << json{{"error", {{"type", "config"}, {"message", e.what()}}}}.dump(2) << '\n';
        return 2;
    }

    CLI::App* active = app.get_subcommands().front();

    try {
        // precedence: flag, then config file, then ENTROPRUNE_SEED, then 0
        bool seed_from_file = false;
        if (!opt.config.empty()) seed_from_file = apply_config_file(opt.config, *active, opt);
        if (active->count("--seed") == 0 && !seed_from_file) {
            if (const char* env = std::getenv("ENTROPRUNE_SEED")) opt.seed = std::stoull(env);
        }
        json report;
        const std::string command = active->get_name();
        if (command == "prune") {
            report = run_prune(opt);
        } else if (command == "sweep-lambda") {
            report = run_sweep_lambda(opt);
        } else if (command == "validate-objective") {
            report = run_validate_objective(opt);
        } else if (command == "benchmark") {
            report = run_benchmark(opt);
        } else {
            report = run_oracle(opt);
        }
        write_output(opt.out, opt.format == "csv" ? to_csv(report) : report.dump(2) + "\n");
        return 0;
    } catch (const ParseError& e) {
        std::cerr << json{{"error", {{"type", "parse"}, {"message", e.what()}}}}.dump(2) << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", {{"type", "config"}, {"message", e.what()}}}}.dump(2) << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", {{"type", "runtime"}, {"message", e.what()}}}}.dump(2) << '\n';
        return 1;
    }
}
