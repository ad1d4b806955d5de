#include <catch2/catch_amalgamated.hpp>

#include <qrplan/qrplan.hpp>

#include "support/helpers.hpp"

using namespace qrplan;
using testsupport::make_topo;

TEST_CASE("exhaustive search returns the lexicographically first minimum") {
    SECTION("one relay on the short line") {
        const auto t = testsupport::three_path();
        const auto o = apsp(t);
        const auto r = exact_min_placement(t, o, 100.0, 1);
        REQUIRE(r.feasible());
        CHECK(r.placement->centers.sorted_ids() == std::vector<std::string>{"B"});
        CHECK(r.placement->algorithm == Algorithm::exact);
        CHECK(r.placement->intermediates.empty());
        CHECK(r.placement->synthetic_added.empty());
    }
    SECTION("two relays on the six-stop line") {
        const auto t = testsupport::unit_path6();
        const auto o = apsp(t);
        const auto r = exact_min_placement(t, o, 2.0, 1);
        REQUIRE(r.feasible());
        CHECK(r.placement->centers.sorted_ids() == std::vector<std::string>{"B", "D"});
        CHECK(r.placement->total_repeaters() == 2);
    }
    SECTION("nothing when direct links already suffice") {
        const auto t = make_topo("triangle", {"A", "B", "C"},
                                 {{"A", "B", 50}, {"A", "C", 50}, {"B", "C", 50}});
        const auto o = apsp(t);
        const auto r = exact_min_placement(t, o, 100.0, 1);
        REQUIRE(r.feasible());
        CHECK(r.placement->total_repeaters() == 0);
    }
}

TEST_CASE("unfixable networks report the witness pair") {
    const auto t = testsupport::four_cycle();
    const auto o = apsp(t);
    const auto r = exact_min_placement(t, o, 100.0, 3);
    CHECK_FALSE(r.feasible());
    REQUIRE(r.infeasibility.has_value());
    REQUIRE(r.infeasibility->failing_pair.has_value());
    CHECK(*r.infeasibility->failing_pair == std::make_pair(std::string("A"), std::string("C")));
    CHECK(r.infeasibility->reason.find("no repeater subset") != std::string::npos);
}

TEST_CASE("budgets are enforced as hard errors") {
    SECTION("too many candidate nodes") {
        // 25-node star, every leaf 10km out: trivially solvable, but over the
        // default candidate ceiling
        std::vector<std::string> ids{"hub"};
        std::vector<std::tuple<std::string, std::string, double>> edges;
        for (int i = 0; i < 24; ++i) {
            ids.push_back("leaf" + std::string(1, static_cast<char>('a' + i)));
            edges.emplace_back("hub", ids.back(), 10.0);
        }
        const auto big = make_topo("wide-star", ids, edges);
        const auto o = apsp(big);
        try {
            exact_min_placement(big, o, 100.0, 1);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("25") != std::string::npos);
        }
        // a raised ceiling admits the same instance
        OracleBudget wide;
        wide.max_candidate_nodes = 30;
        const auto r = exact_min_placement(big, o, 100.0, 1, wide);
        REQUIRE(r.feasible());
        CHECK(r.placement->total_repeaters() == 0);
    }
    SECTION("subset ceiling") {
        const auto t = testsupport::unit_path6();
        const auto o = apsp(t);
        OracleBudget tight;
        tight.max_subsets = 3;
        CHECK_THROWS_AS(exact_min_placement(t, o, 2.0, 1, tight), Error);
    }
    SECTION("defaults") {
        OracleBudget d;
        CHECK(d.max_candidate_nodes == 20);
        CHECK(d.max_subsets == 5'000'000);
    }
}

TEST_CASE("exhaustive minimum matches independent subset search") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto t = generate_random_topology(7, TopologyModel::geometric, seed);
        const auto o = apsp(t);
        for (double l : {0.35, 0.5})
            for (int k : {1, 2}) {
                const auto expect = testsupport::brute_min_placement(t, l, k);
                const auto got = exact_min_placement(t, o, l, k);
                INFO("seed " << seed << " l " << l << " k " << k);
                if (expect.has_value()) {
                    REQUIRE(got.feasible());
                    CHECK(got.placement->centers.sorted_ids() == *expect);
                } else {
                    CHECK_FALSE(got.feasible());
                }
            }
    }
}

TEST_CASE("heuristics never beat the exhaustive answer") {
    for (std::uint64_t seed = 10; seed < 14; ++seed) {
        const auto t = generate_random_topology(9, TopologyModel::geometric, seed);
        const auto o = apsp(t);
        const double l = 0.5;
        const auto ex = exact_min_placement(t, o, l, 1);
        REQUIRE(ex.feasible());

        const auto sca = run_sca(t, l);
        REQUIRE(sca.feasible());
        CHECK(optimality_gap(*sca.placement, *ex.placement) >= 0);

        for (auto algo : {Algorithm::mca_gp, Algorithm::mca_flex}) {
            const auto r = run_mca(t, PlanConfig{l, 1, algo});
            REQUIRE(r.feasible());
            CHECK(optimality_gap(*r.placement, *ex.placement) >= 0);
        }
    }
}

TEST_CASE("gap comparison rejects mismatched problems") {
    const auto t = testsupport::three_path();
    const auto o = apsp(t);
    const auto a = exact_min_placement(t, o, 100.0, 1);
    REQUIRE(a.feasible());

    Placement other = *a.placement;
    other.l_max_km = 120.0;
    CHECK_THROWS_AS(optimality_gap(other, *a.placement), Error);
    other = *a.placement;
    other.k = 2;
    CHECK_THROWS_AS(optimality_gap(other, *a.placement), Error);
    other = *a.placement;
    other.topology_name = "elsewhere";
    CHECK_THROWS_AS(optimality_gap(other, *a.placement), Error);

    CHECK(optimality_gap(*a.placement, *a.placement) == 0);
}

TEST_CASE("parameters are validated") {
    const auto t = testsupport::three_path();
    const auto o = apsp(t);
    CHECK_THROWS_AS(exact_min_placement(t, o, 0.0, 1), Error);
    CHECK_THROWS_AS(exact_min_placement(t, o, 100.0, 0), Error);
}

TEST_CASE("ghost topologies search host nodes only") {
    const auto t = attach_ghosts(testsupport::three_path());
    const auto o = apsp(t);
    const auto r = exact_min_placement(t, o, 100.0, 1);
    REQUIRE(r.feasible());
    CHECK(r.placement->centers.sorted_ids() == std::vector<std::string>{"B"});
}
