#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "helpers.hpp"

using namespace hodgerank;

namespace {

// Flow value between two students by id, oriented from a to b.
double flow_between(const ComparisonGraph& g, const std::string& a, const std::string& b) {
    return g.flow().value(g.students().find(a), g.students().find(b));
}

double weight_between(const ComparisonGraph& g, const std::string& a, const std::string& b) {
    return g.weights().value(g.students().find(a), g.students().find(b));
}

} // namespace

TEST_CASE("student universe: graders and gradees, first appearance") {
    std::vector<GradeRecord> recs = {
        {"a1", "gary", "amy", 70},
        {"a1", "gary", "bob", 80},
        {"a1", "amy", "gary", 60},
    };
    IdIndex u = student_universe(recs);
    CHECK(u.ids() == std::vector<std::string>{"gary", "amy", "bob"});
    CHECK(assignment_order(recs) == std::vector<std::string>{"a1"});
}

TEST_CASE("one grader scoring several peers induces all their pairs") {
    std::vector<GradeRecord> recs = {
        {"a1", "g", "amy", 70},
        {"a1", "g", "bob", 80},
        {"a1", "g", "cat", 90},
    };
    IdIndex u = student_universe(recs);
    auto af = pairwise_flows(recs, "a1", u);
    CHECK(af.weights.entry_count() == 3);
    int amy = u.find("amy"), bob = u.find("bob"), cat = u.find("cat");
    CHECK(af.weights.value(amy, bob) == 1.0);
    CHECK(af.flow.value(amy, bob) == 10.0);  // toward the better submission
    CHECK(af.flow.value(bob, amy) == -10.0);
    CHECK(af.flow.value(amy, cat) == 20.0);
    CHECK(af.flow.value(bob, cat) == 10.0);
}

TEST_CASE("several graders of the same pair average their differences") {
    std::vector<GradeRecord> recs = {
        {"a1", "g1", "amy", 70}, {"a1", "g1", "bob", 80},  // diff 10
        {"a1", "g2", "amy", 50}, {"a1", "g2", "bob", 54},  // diff 4
    };
    IdIndex u = student_universe(recs);
    auto af = pairwise_flows(recs, "a1", u);
    CHECK(af.weights.value(u.find("amy"), u.find("bob")) == 2.0);
    CHECK(af.flow.value(u.find("amy"), u.find("bob")) == 7.0);
}

TEST_CASE("a constant grader offset cancels in the pairwise flow") {
    std::vector<GradeRecord> base = {
        {"a1", "g", "amy", 61}, {"a1", "g", "bob", 74}, {"a1", "g", "cat", 58},
    };
    std::vector<GradeRecord> shifted = base;
    for (auto& r : shifted) r.score += 17.0;

    IdIndex u = student_universe(base);
    auto f0 = pairwise_flows(base, "a1", u);
    auto f1 = pairwise_flows(shifted, "a1", u);
    for (const auto& [pair, y] : f0.flow.sorted_entries())
        CHECK(f1.flow.value(pair.first, pair.second) == y);
}

TEST_CASE("comparisons never cross graders or assignments") {
    std::vector<GradeRecord> recs = {
        {"a1", "g1", "amy", 70},
        {"a1", "g2", "bob", 80},  // different grader: no pair
        {"a2", "g1", "bob", 90},  // different assignment: no pair
    };
    IdIndex u = student_universe(recs);
    CHECK(pairwise_flows(recs, "a1", u).weights.entry_count() == 0);
    CHECK(pairwise_flows(recs, "a2", u).weights.entry_count() == 0);
}

TEST_CASE("tie policy: ties carry weight by default, strict mode drops them") {
    std::vector<GradeRecord> recs = {
        {"a1", "g", "amy", 75},
        {"a1", "g", "bob", 75},
    };
    IdIndex u = student_universe(recs);

    auto inclusive = pairwise_flows(recs, "a1", u, TiePolicy::include_ties);
    CHECK(inclusive.weights.value(u.find("amy"), u.find("bob")) == 1.0);
    CHECK(inclusive.flow.value(u.find("amy"), u.find("bob")) == 0.0);

    auto strict = pairwise_flows(recs, "a1", u, TiePolicy::paper_strict);
    CHECK(strict.weights.entry_count() == 0);
}

TEST_CASE("a later record for the same grader and gradee wins") {
    std::vector<GradeRecord> recs = {
        {"a1", "g", "amy", 10},
        {"a1", "g", "bob", 50},
        {"a1", "g", "amy", 40}, // replaces the 10
    };
    IdIndex u = student_universe(recs);
    auto af = pairwise_flows(recs, "a1", u);
    CHECK(af.flow.value(u.find("amy"), u.find("bob")) == 10.0);
}

TEST_CASE("aggregation: weighted mean vs raw sum") {
    // a1: one grader, difference 10; a2: two graders, difference 4 each.
    std::vector<GradeRecord> recs = {
        {"a1", "g1", "amy", 60}, {"a1", "g1", "bob", 70},
        {"a2", "g1", "amy", 50}, {"a2", "g1", "bob", 54},
        {"a2", "g2", "amy", 80}, {"a2", "g2", "bob", 84},
    };
    auto mean_graph = build_graph(recs, TiePolicy::include_ties, AggregateMode::weighted_mean);
    CHECK(weight_between(mean_graph, "amy", "bob") == 3.0);
    CHECK(flow_between(mean_graph, "amy", "bob") == Catch::Approx(6.0)); // (1*10 + 2*4) / 3

    auto sum_graph = build_graph(recs, TiePolicy::include_ties, AggregateMode::sum);
    CHECK(weight_between(sum_graph, "amy", "bob") == 3.0);
    CHECK(flow_between(sum_graph, "amy", "bob") == Catch::Approx(14.0)); // 10 + 4
}

TEST_CASE("build_graph on the cyclic fixture reproduces the known flow") {
    ComparisonGraph g = build_graph(testutil::cycle3_records());
    CHECK(g.edges().size() == 3);
    CHECK(flow_between(g, "s1", "s2") == 1.0);
    CHECK(flow_between(g, "s1", "s3") == -1.0);
    CHECK(flow_between(g, "s2", "s3") == -1.0);
    CHECK(weight_between(g, "s1", "s2") == 1.0);
    for (size_t i = 1; i < g.edges().size(); ++i) {
        auto a = std::pair{g.edges()[i - 1].u, g.edges()[i - 1].v};
        auto b = std::pair{g.edges()[i].u, g.edges()[i].v};
        CHECK(a < b);
    }
}

TEST_CASE("union-find counts merges") {
    UnionFind uf(5);
    CHECK(uf.components() == 5);
    CHECK(uf.unite(0, 1));
    CHECK(uf.unite(2, 3));
    CHECK_FALSE(uf.unite(1, 0));
    CHECK(uf.components() == 3);
    uf.unite(0, 2);
    uf.unite(3, 4);
    CHECK(uf.components() == 1);
    CHECK(uf.find(4) == uf.find(0));
}

TEST_CASE("connected components label in first-vertex order") {
    // two separate edges plus an isolated vertex
    IdIndex ids = testutil::vertex_ids(5);
    EdgeFlow flow(5);
    WeightMatrix w(5);
    w.set(0, 2, 1.0);
    w.set(1, 3, 1.0);
    ComparisonGraph g(ids, flow, w);
    auto lab = connected_components(g);
    CHECK(lab.count == 3);
    CHECK(lab.label == std::vector<int>{0, 1, 0, 1, 2});
}

TEST_CASE("component counts agree with a breadth-first oracle") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        testutil::RandomGraphSpec spec;
        spec.n = 3 + static_cast<int>(seed % 10);
        spec.seed = seed;
        spec.extra_edges = static_cast<int>(seed % 4);
        auto g = testutil::random_connected_graph(spec);
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
        auto lab = connected_components(g);
        CHECK(lab.count == testutil::bfs_component_count(g.size(), edges));
    }
}

TEST_CASE("component trajectory: two halves, then a bridge") {
    std::vector<GradeRecord> recs = {
        // a1: both halves internally connected
        {"a1", "x1", "x2", 70}, {"a1", "x1", "x3", 72},
        {"a1", "x2", "x1", 70}, {"a1", "x2", "x3", 72},
        {"a1", "y1", "y2", 70}, {"a1", "y1", "y3", 72},
        {"a1", "y2", "y1", 70}, {"a1", "y2", "y3", 72},
        // a2: more internal comparisons, still two halves
        {"a2", "x3", "x1", 64}, {"a2", "x3", "x2", 66},
        {"a2", "y3", "y1", 64}, {"a2", "y3", "y2", 66},
        // a3: one grader compares across the halves
        {"a3", "x1", "x3", 80}, {"a3", "x1", "y3", 75},
    };
    auto counts = component_trajectory(recs, {"a1", "a2", "a3"});
    CHECK(counts == std::vector<int>{2, 2, 1});

    // order matters: the bridge alone leaves most vertices isolated
    auto reversed = component_trajectory(recs, {"a3", "a2", "a1"});
    CHECK(reversed.size() == 3);
    CHECK(reversed.back() == 1);
    for (size_t i = 1; i < reversed.size(); ++i) CHECK(reversed[i] <= reversed[i - 1]);

    CHECK_THROWS_AS(component_trajectory(recs, {"a1", "a9"}), ValidationError);
}

TEST_CASE("trajectory is monotone non-increasing on random data") {
    CounterRng rng(77);
    std::vector<GradeRecord> recs;
    std::uint64_t c = 0;
    for (int a = 0; a < 6; ++a) {
        for (int g = 0; g < 8; ++g) {
            // each grader scores two random distinct peers
            int p1 = static_cast<int>(rng.below(9, c++, 8));
            int p2 = static_cast<int>(rng.below(9, c++, 8));
            if (p1 == g || p2 == g || p1 == p2) continue;
            double s1 = 40.0 + static_cast<double>(rng.below(9, c++, 30));
            double s2 = 40.0 + static_cast<double>(rng.below(9, c++, 30));
            recs.push_back({"a" + std::to_string(a), "g" + std::to_string(g),
                            "g" + std::to_string(p1), s1});
            recs.push_back({"a" + std::to_string(a), "g" + std::to_string(g),
                            "g" + std::to_string(p2), s2});
        }
    }
    auto order = assignment_order(recs);
    auto counts = component_trajectory(recs, order);
    REQUIRE(counts.size() == order.size());
    for (size_t i = 1; i < counts.size(); ++i) CHECK(counts[i] <= counts[i - 1]);
}

TEST_CASE("policy and mode names") {
    CHECK(std::string(tie_policy_name(TiePolicy::include_ties)) == "include");
    CHECK(std::string(tie_policy_name(TiePolicy::paper_strict)) == "paper-strict");
    CHECK(std::string(aggregate_mode_name(AggregateMode::weighted_mean)) == "mean");
    CHECK(std::string(aggregate_mode_name(AggregateMode::sum)) == "sum");
}
