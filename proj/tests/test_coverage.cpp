#include <catch2/catch_amalgamated.hpp>

#include <set>

#include <qrplan/qrplan.hpp>

#include "support/helpers.hpp"

using namespace qrplan;

TEST_CASE("coverage collects nodes within the length budget, boundary inclusive") {
    const auto t = testsupport::six_node();
    const auto o = apsp(t);

    const auto c = coverage(t, o, "C", 100.0);
    CHECK(c.center == "C");
    CHECK(c.members == std::vector<std::string>{"A", "C", "D", "E", "F"});

    // d(A,C) is exactly 95 and d(A,B) exactly 60; boundary case via d(B,A)=60 <= 60
    const auto tight = coverage(t, o, "B", 60.0);
    CHECK(tight.members == std::vector<std::string>{"A", "B", "F"});

    // zero reach still includes the center itself
    const auto self_only = coverage(t, o, "E", 1.0);
    CHECK(self_only.members == std::vector<std::string>{"E"});
}

TEST_CASE("coverage agrees with brute distances") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto t = generate_random_topology(8, TopologyModel::geometric, seed);
        const testsupport::BruteDistances bd(t);
        const auto o = apsp(t);
        for (const auto& n : t.nodes())
            for (double l : {0.1, 0.3, 0.6}) {
                const auto c = coverage(t, o, n.id, l);
                std::set<std::string> expect;
                for (const auto& m : t.nodes())
                    if (bd(n.id, m.id) <= l) expect.insert(m.id);
                CHECK(std::set<std::string>(c.members.begin(), c.members.end()) == expect);
            }
    }
}

TEST_CASE("ghosts are excluded from coverage in both roles") {
    const auto t = attach_ghosts(testsupport::three_path());
    const auto o = apsp(t);

    // members never include ghosts even though they sit at distance zero
    const auto c = coverage(t, o, "B", 150.0);
    CHECK(c.members == std::vector<std::string>{"A", "B", "C"});

    // a ghost cannot act as a center
    CHECK_THROWS_AS(coverage(t, o, "ghost:B", 150.0), Error);
    std::set<std::string> uncovered{"A"};
    CHECK_THROWS_AS(coverage_score(t, o, "ghost:B", uncovered, 150.0), Error);
}

TEST_CASE("coverage_score counts only the requested targets") {
    const auto t = testsupport::six_node();
    const auto o = apsp(t);

    std::set<std::string> all{"A", "B", "C", "D", "E", "F"};
    CHECK(coverage_score(t, o, "C", all, 100.0) == 5);
    CHECK(coverage_score(t, o, "A", all, 100.0) == 4);
    CHECK(coverage_score(t, o, "E", all, 100.0) == 2);

    std::set<std::string> just_b{"B"};
    CHECK(coverage_score(t, o, "A", just_b, 100.0) == 1);
    CHECK(coverage_score(t, o, "D", just_b, 100.0) == 0);
    CHECK(coverage_score(t, o, "C", {}, 100.0) == 0);
}

TEST_CASE("coverage is monotone in the length budget") {
    const auto t = generate_random_topology(10, TopologyModel::geometric, 9);
    const auto o = apsp(t);
    for (const auto& n : t.nodes()) {
        size_t prev = 0;
        for (double l : {0.05, 0.15, 0.3, 0.5, 1.0, 2.0}) {
            const auto c = coverage(t, o, n.id, l);
            CHECK(c.members.size() >= prev);
            prev = c.members.size();
        }
        // a budget covering the diameter covers everything
        CHECK(prev == static_cast<size_t>(t.node_count()));
    }
}
