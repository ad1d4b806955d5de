#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qrplan/exact.hpp"
#include "qrplan/mca.hpp"
#include "qrplan/placement.hpp"
#include "qrplan/sca.hpp"
#include "qrplan/topology.hpp"

namespace qrplan {

struct BenchRecord {
    std::string topology;
    Algorithm algorithm = Algorithm::sca;
    double l_max_km = 0.0;
    int k = 1;
    int repeaters_total = 0;
    int repeaters_synthetic = 0;
    double runtime_s = 0.0;
    double apsp_s = 0.0;
    bool feasible = false;
    int node_count = 0;  // carried for scaling fits, not serialized
};

namespace detail {

inline double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline bool same_outcome(const PlanResult& a, const PlanResult& b) {
    if (a.feasible() != b.feasible()) return false;
    if (!a.feasible()) return true;
    return a.placement->repeater_ids() == b.placement->repeater_ids();
}

}  // namespace detail

// One record per (algorithm, l_max, k) cell; runtime is the median of the
// repeated placement calls, distance precomputation is timed once and
// reported in its own column. Repeated runs must agree on the node set.
// Exhaustive-search cells that blow the budget are dropped, not failed.
inline std::vector<BenchRecord> run_sweep(const Topology& t, const std::vector<double>& l_max_list,
                                          const std::vector<int>& k_list,
                                          const std::vector<Algorithm>& algorithms, int repeats,
                                          const OracleBudget& budget = OracleBudget{}) {
    if (l_max_list.empty() || k_list.empty() || algorithms.empty())
        fail("sweep needs at least one l_max, one k, and one algorithm");
    if (repeats < 1) fail("repeats must be at least 1");

    const auto t0 = std::chrono::steady_clock::now();
    const DistanceOracle o = apsp(t);
    const double apsp_s = detail::seconds_since(t0);

    std::vector<BenchRecord> out;
    for (Algorithm algo : algorithms)
        for (double l_max : l_max_list)
            for (int k : k_list) {
                PlanConfig cfg;
                cfg.l_max_km = l_max;
                cfg.k = k;
                cfg.algorithm = algo;

                std::vector<double> times;
                PlanResult first;
                bool skipped = false;
                for (int r = 0; r < repeats && !skipped; ++r) {
                    const auto r0 = std::chrono::steady_clock::now();
                    PlanResult res;
                    switch (algo) {
                        case Algorithm::sca:
                            res = run_sca_robust(t, cfg, &o);
                            break;
                        case Algorithm::mca_gp:
                        case Algorithm::mca_flex:
                            res = run_mca(t, cfg, &o);
                            break;
                        case Algorithm::exact:
                            try {
                                res = exact_min_placement(t, o, l_max, k, budget);
                            } catch (const Error&) {
                                skipped = true;  // budget refusal: drop the cell
                                continue;
                            }
                            break;
                    }
                    times.push_back(detail::seconds_since(r0));
                    if (r == 0)
                        first = res;
                    else if (!detail::same_outcome(first, res))
                        fail(std::string("nondeterministic placement for ") + to_string(algo) + " on \"" +
                             t.name() + "\"");
                }
                if (skipped) continue;

                BenchRecord rec;
                rec.topology = t.name();
                rec.algorithm = algo;
                rec.l_max_km = l_max;
                rec.k = k;
                rec.runtime_s = detail::median_of(times);
                rec.apsp_s = apsp_s;
                rec.feasible = first.feasible();
                rec.node_count = t.node_count();
                if (first.feasible()) {
                    rec.repeaters_total = first.placement->total_repeaters();
                    rec.repeaters_synthetic = static_cast<int>(first.placement->synthetic_added.size());
                }
                out.push_back(std::move(rec));
            }
    return out;
}

namespace detail {

inline std::vector<BenchRecord> sorted_records(std::vector<BenchRecord> recs) {
    std::sort(recs.begin(), recs.end(), [](const BenchRecord& a, const BenchRecord& b) {
        if (a.topology != b.topology) return a.topology < b.topology;
        const std::string aa = to_string(a.algorithm), bb = to_string(b.algorithm);
        if (aa != bb) return aa < bb;
        if (a.l_max_km != b.l_max_km) return a.l_max_km < b.l_max_km;
        return a.k < b.k;
    });
    return recs;
}

inline std::string num(double v, const char* fmt) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

}  // namespace detail

inline void write_csv(const std::vector<BenchRecord>& records, std::ostream& os) {
    os << "topology,algorithm,l_max_km,k,repeaters_total,repeaters_synthetic,runtime_s,apsp_s,feasible\n";
    for (const auto& r : detail::sorted_records(records))
        os << r.topology << ',' << to_string(r.algorithm) << ',' << detail::num(r.l_max_km, "%g")
           << ',' << r.k << ',' << r.repeaters_total << ',' << r.repeaters_synthetic << ','
           << detail::num(r.runtime_s, "%.6f") << ',' << detail::num(r.apsp_s, "%.6f") << ','
           << (r.feasible ? "true" : "false") << '\n';
}

inline void write_jsonl(const std::vector<BenchRecord>& records, std::ostream& os) {
    for (const auto& r : detail::sorted_records(records)) {
        nlohmann::json row;
        row["topology"] = r.topology;
        row["algorithm"] = to_string(r.algorithm);
        row["l_max_km"] = r.l_max_km;
        row["k"] = r.k;
        row["repeaters_total"] = r.repeaters_total;
        row["repeaters_synthetic"] = r.repeaters_synthetic;
        row["runtime_s"] = r.runtime_s;
        row["apsp_s"] = r.apsp_s;
        row["feasible"] = r.feasible;
        os << row.dump() << '\n';
    }
}

inline void write_csv(const std::vector<BenchRecord>& records, const std::string& path) {
    std::ofstream os(path);
    if (!os) fail("cannot write \"" + path + "\"");
    write_csv(records, os);
}

inline void write_jsonl(const std::vector<BenchRecord>& records, const std::string& path) {
    std::ofstream os(path);
    if (!os) fail("cannot write \"" + path + "\"");
    write_jsonl(records, os);
}

// Least-squares slope of log(runtime) against log(node count); the growth
// exponent if runtime is polynomial in the size.
inline double scaling_fit(const std::vector<BenchRecord>& records) {
    std::set<int> sizes;
    for (const auto& r : records) sizes.insert(r.node_count);
    if (sizes.size() < 4)
        fail("scaling fit needs at least 4 distinct sizes, got " + std::to_string(sizes.size()));
    double sx = 0, sy = 0;
    for (const auto& r : records) {
        sx += std::log(static_cast<double>(r.node_count));
        sy += std::log(std::max(r.runtime_s, 1e-9));
    }
    const double n = static_cast<double>(records.size());
    const double mx = sx / n, my = sy / n;
    double num = 0, den = 0;
    for (const auto& r : records) {
        const double dx = std::log(static_cast<double>(r.node_count)) - mx;
        num += dx * (std::log(std::max(r.runtime_s, 1e-9)) - my);
        den += dx * dx;
    }
    return num / den;
}

}  // namespace qrplan
