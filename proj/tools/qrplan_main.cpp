// Command-line front end: solve / verify / augment / gen / bench / compare.
// Exit codes: 0 success (and feasible where that applies), 2 infeasible
// instance, 1 usage or IO error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <qrplan/qrplan.hpp>

namespace {

using namespace qrplan;

Topology load_topology_any(const std::string& path, const std::string& format,
                           const std::string& length_attr) {
    std::ifstream in(path);
    if (!in) fail("cannot read \"" + path + "\"");
    std::string fmt = format;
    if (fmt == "auto") {
        const auto dot = path.rfind('.');
        const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
        fmt = (ext == "graphml" || ext == "xml") ? "graphml" : "json";
    }
    if (fmt == "graphml") {
        auto slash = path.find_last_of("/\\");
        std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
        const auto dot = stem.rfind('.');
        if (dot != std::string::npos) stem = stem.substr(0, dot);
        return load_topology_graphml(in, stem, length_attr);
    }
    if (fmt == "json") return load_topology_json(in, path);
    fail("unknown format \"" + fmt + "\" (expected auto, json, or graphml)");
}

void write_solution_file(const std::string& path, const Placement& p) {
    std::ofstream out(path);
    if (!out) fail("cannot write \"" + path + "\"");
    save_solution_json(out, p);
}

int report_infeasible(const Infeasibility& inf) {
    std::cerr << "infeasible: " << inf.reason << "\n";
    if (inf.failing_pair)
        std::cerr << "failing pair: (" << inf.failing_pair->first << ", "
                  << inf.failing_pair->second << ")\n";
    return 2;
}

template <typename T>
std::vector<T> parse_list(const std::string& csv, T (*conv)(const std::string&)) {
    std::vector<T> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(conv(item));
    if (out.empty()) fail("empty list \"" + csv + "\"");
    return out;
}

double to_double(const std::string& s) {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) fail("not a number: \"" + s + "\"");
    return v;
}

int to_int(const std::string& s) {
    size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) fail("not an integer: \"" + s + "\"");
    return v;
}

struct CommonInput {
    std::string topology;
    std::string format = "auto";
    std::string length_attr = "length_km";
};

void add_input_flags(CLI::App* cmd, CommonInput& in) {
    cmd->add_option("--topology", in.topology, "topology file (JSON or GraphML)")->required();
    cmd->add_option("--format", in.format, "input format: auto, json, graphml")
        ->check(CLI::IsMember({"auto", "json", "graphml"}));
    cmd->add_option("--length-attr", in.length_attr, "GraphML edge attribute holding km length");
}

int cmd_solve(const CommonInput& in, double l_max, const std::string& algo, int k,
              const std::string& out_path) {
    const Topology t = load_topology_any(in.topology, in.format, in.length_attr);
    PlanConfig cfg;
    cfg.l_max_km = l_max;
    cfg.k = k;
    cfg.algorithm = algorithm_from_string(algo);

    const auto t0 = std::chrono::steady_clock::now();
    PlanResult res;
    switch (cfg.algorithm) {
        case Algorithm::sca:
            res = run_sca_robust(t, cfg);
            break;
        case Algorithm::mca_gp:
        case Algorithm::mca_flex:
            res = run_mca(t, cfg);
            break;
        case Algorithm::exact: {
            const DistanceOracle o = apsp(t);
            res = exact_min_placement(t, o, l_max, k);
            break;
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!res.feasible()) return report_infeasible(*res.infeasibility);
    write_solution_file(out_path, *res.placement);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", secs);
    std::cout << "repeaters: " << res.placement->total_repeaters() << "\n"
              << "runtime_s: " << buf << "\n";
    return 0;
}

int cmd_verify(const CommonInput& in, const std::string& solution_path, double l_max, int k) {
    const Topology t = load_topology_any(in.topology, in.format, in.length_attr);
    std::ifstream sin(solution_path);
    if (!sin) fail("cannot read \"" + solution_path + "\"");
    Placement p = load_solution_json(sin, solution_path);
    if (p.topology_name != t.name())
        fail("solution targets topology \"" + p.topology_name + "\" but the input is \"" +
             t.name() + "\"");
    if (l_max > 0.0) p.l_max_km = l_max;
    if (k > 0) p.k = k;

    const VerifyReport rep = verify(t, p, true);
    nlohmann::json j;
    j["feasible"] = rep.feasible;
    j["failing_pair"] = nullptr;
    if (rep.failing_pair)
        j["failing_pair"] = {rep.failing_pair->first, rep.failing_pair->second};
    if (p.k >= 2) {
        j["min_routes"] = nlohmann::json::array();
        for (const auto& [pair, routes] : rep.min_routes)
            j["min_routes"].push_back({{"a", pair.first}, {"b", pair.second}, {"routes", routes}});
        if (rep.survives_failures) j["survives_failures"] = *rep.survives_failures;
    }
    std::cout << j.dump(2) << "\n";
    return rep.feasible ? 0 : 2;
}

int cmd_augment(const CommonInput& in, double l_max, const std::string& out_path) {
    const Topology t = load_topology_any(in.topology, in.format, in.length_attr);
    const AugmentResult res = augment_long_links(t, l_max);
    std::ofstream out(out_path);
    if (!out) fail("cannot write \"" + out_path + "\"");
    save_topology_json(out, res.topology);
    std::cout << "synthetic_nodes_added: " << res.synthetic_added << "\n";
    return 0;
}

int cmd_gen(int n, const std::string& model, std::uint64_t seed, const std::string& out_path) {
    const Topology t = generate_random_topology(n, topology_model_from_string(model), seed);
    std::ofstream out(out_path);
    if (!out) fail("cannot write \"" + out_path + "\"");
    save_topology_json(out, t);
    std::cout << "name: " << t.name() << "\n";
    return 0;
}

int cmd_bench(const std::vector<std::string>& topo_paths, const CommonInput& fmt,
              const std::string& lmax_csv, const std::string& k_csv, const std::string& algo_csv,
              int repeats, const std::string& out_path, const std::string& jsonl_path) {
    const auto l_list = parse_list<double>(lmax_csv, to_double);
    const auto k_list = parse_list<int>(k_csv, to_int);
    std::vector<Algorithm> algos;
    for (const auto& name : parse_list<std::string>(algo_csv, [](const std::string& s) { return s; }))
        algos.push_back(algorithm_from_string(name));

    std::vector<BenchRecord> records;
    for (const auto& path : topo_paths) {
        const Topology t = load_topology_any(path, fmt.format, fmt.length_attr);
        auto part = run_sweep(t, l_list, k_list, algos, repeats);
        records.insert(records.end(), part.begin(), part.end());
    }
    write_csv(records, out_path);
    if (!jsonl_path.empty()) write_jsonl(records, jsonl_path);
    std::cout << "records: " << records.size() << "\n";
    return 0;
}

int cmd_compare(const CommonInput& in, double l_max, int k) {
    const Topology t = load_topology_any(in.topology, in.format, in.length_attr);
    const DistanceOracle o = apsp(t);
    const PlanResult exact = exact_min_placement(t, o, l_max, k);
    if (!exact.feasible()) return report_infeasible(*exact.infeasibility);
    std::cout << "exact: " << exact.placement->total_repeaters() << "\n";

    for (Algorithm algo : {Algorithm::sca, Algorithm::mca_gp, Algorithm::mca_flex}) {
        PlanConfig cfg;
        cfg.l_max_km = l_max;
        cfg.k = k;
        cfg.algorithm = algo;
        const PlanResult res = algo == Algorithm::sca ? run_sca_robust(t, cfg, &o)
                                                      : run_mca(t, cfg, &o);
        if (res.feasible())
            std::cout << to_string(algo) << ": " << res.placement->total_repeaters() << " (gap "
                      << optimality_gap(*res.placement, *exact.placement) << ")\n";
        else
            std::cout << to_string(algo) << ": infeasible\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum repeater placement planner"};
    app.require_subcommand(1);

    CommonInput solve_in, verify_in, augment_in, compare_in, bench_fmt;
    double solve_lmax = 0, verify_lmax = 0, augment_lmax = 0, compare_lmax = 0;
    int solve_k = 1, verify_k = 0, compare_k = 1, gen_n = 0, bench_repeats = 3;
    std::string solve_algo = "sca", solve_out, verify_solution, augment_out;
    std::string gen_model = "geometric", gen_out;
    std::uint64_t gen_seed = 1;
    std::vector<std::string> bench_topos;
    std::string bench_lmax, bench_k = "1", bench_algos = "sca,mca-gp,mca-flex";
    std::string bench_out, bench_jsonl;

    auto* solve = app.add_subcommand("solve", "plan repeater locations");
    add_input_flags(solve, solve_in);
    solve->add_option("--lmax", solve_lmax, "maximum qubit travel distance, km")->required();
    solve->add_option("--algo", solve_algo, "sca, mca-gp, mca-flex, or exact")
        ->check(CLI::IsMember({"sca", "mca-gp", "mca-flex", "exact"}));
    solve->add_option("--k", solve_k, "required number of disjoint routes per pair");
    solve->add_option("--out", solve_out, "solution file to write")->required();

    auto* verify_cmd = app.add_subcommand("verify", "check a solution file");
    add_input_flags(verify_cmd, verify_in);
    verify_cmd->add_option("--solution", verify_solution, "solution file")->required();
    verify_cmd->add_option("--lmax", verify_lmax, "override the solution's distance bound");
    verify_cmd->add_option("--k", verify_k, "override the solution's route count");

    auto* augment = app.add_subcommand("augment", "split links longer than the bound");
    add_input_flags(augment, augment_in);
    augment->add_option("--lmax", augment_lmax, "maximum segment length, km")->required();
    augment->add_option("--out", augment_out, "topology file to write")->required();

    auto* gen = app.add_subcommand("gen", "generate a seeded random topology");
    gen->add_option("--n", gen_n, "node count")->required();
    gen->add_option("--model", gen_model, "unit or geometric");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--out", gen_out, "topology file to write")->required();

    auto* bench = app.add_subcommand("bench", "sweep algorithms and emit CSV");
    bench->add_option("--topology", bench_topos, "topology file(s)")->required();
    bench->add_option("--format", bench_fmt.format, "input format: auto, json, graphml")
        ->check(CLI::IsMember({"auto", "json", "graphml"}));
    bench->add_option("--length-attr", bench_fmt.length_attr, "GraphML edge length attribute");
    bench->add_option("--lmax-list", bench_lmax, "comma-separated distance bounds")->required();
    bench->add_option("--k-list", bench_k, "comma-separated route counts");
    bench->add_option("--algos", bench_algos, "comma-separated algorithms");
    bench->add_option("--repeats", bench_repeats, "timing repetitions per cell");
    bench->add_option("--out", bench_out, "CSV file to write")->required();
    bench->add_option("--jsonl", bench_jsonl, "optional JSON-lines file to write");

    auto* compare = app.add_subcommand("compare", "gap of each heuristic to the exhaustive answer");
    add_input_flags(compare, compare_in);
    compare->add_option("--lmax", compare_lmax, "maximum qubit travel distance, km")->required();
    compare->add_option("--k", compare_k, "required number of disjoint routes per pair");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // help exits clean, every usage error is 1
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_in, solve_lmax, solve_algo, solve_k, solve_out);
        if (verify_cmd->parsed())
            return cmd_verify(verify_in, verify_solution, verify_lmax, verify_k);
        if (augment->parsed()) return cmd_augment(augment_in, augment_lmax, augment_out);
        if (gen->parsed()) return cmd_gen(gen_n, gen_model, gen_seed, gen_out);
        if (bench->parsed())
            return cmd_bench(bench_topos, bench_fmt, bench_lmax, bench_k, bench_algos,
                             bench_repeats, bench_out, bench_jsonl);
        if (compare->parsed()) return cmd_compare(compare_in, compare_lmax, compare_k);
    } catch (const qrplan::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
