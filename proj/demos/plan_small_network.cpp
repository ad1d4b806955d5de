// Walkthrough on a small metro network: plan with each algorithm, check the
// result, and show what link splitting does to an overlong span.

#include <iostream>

#include <qrplan/qrplan.hpp>

using namespace qrplan;

static Topology metro() {
    std::vector<NodeRecord> nodes;
    for (const char* id : {"north", "east", "south", "west", "harbor", "airport"})
        nodes.push_back(NodeRecord{id, NodeKind::physical, std::nullopt, std::nullopt});
    std::vector<EdgeRecord> edges = {
        {"east", "north", 70.0},  {"east", "south", 85.0},   {"south", "west", 60.0},
        {"north", "west", 95.0},  {"harbor", "south", 40.0}, {"airport", "north", 230.0},
    };
    return Topology::create("metro", nodes, edges);
}

int main() {
    const Topology t = metro();
    const double l_max = 100.0;

    for (Algorithm algo : {Algorithm::sca, Algorithm::mca_gp, Algorithm::mca_flex}) {
        PlanConfig cfg;
        cfg.l_max_km = l_max;
        cfg.k = 1;
        cfg.algorithm = algo;
        const PlanResult res =
            algo == Algorithm::sca ? run_sca_robust(t, cfg) : run_mca(t, cfg);
        std::cout << to_string(algo) << ": ";
        if (!res.feasible()) {
            std::cout << "infeasible (" << res.infeasibility->reason << ")\n";
            continue;
        }
        const Placement& p = *res.placement;
        std::cout << p.total_repeaters() << " repeater(s):";
        for (const auto& id : p.repeater_ids()) std::cout << ' ' << id;
        const VerifyReport rep = verify(t, p);
        std::cout << (rep.feasible ? "  [verified]" : "  [BROKEN]") << "\n";
    }

    const AugmentResult aug = augment_long_links(t, l_max);
    std::cout << "augment at " << l_max << " km adds " << aug.synthetic_added
              << " node(s); the airport span becomes:";
    for (const auto& e : aug.topology.edges())
        if (e.a.find("airport") != std::string::npos || e.b.find("airport") != std::string::npos ||
            e.a.find("syn:") == 0 || e.b.find("syn:") == 0)
            std::cout << "  " << e.a << "-" << e.b << " (" << e.length_km << " km)";
    std::cout << "\n";
    return 0;
}
