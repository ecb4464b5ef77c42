// Minimal end-to-end use: parse a CSV, solve, print scores best-first.

#include <fstream>
#include <iostream>

#include <hodgerank/hodgerank.hpp>

int main(int argc, char** argv) {
    using namespace hodgerank;
    if (argc != 2) {
        std::cerr << "usage: rank_basic <grades.csv>\n";
        return 1;
    }
    std::ifstream in(argv[1]);
    if (!in) {
        std::cerr << "cannot open " << argv[1] << '\n';
        return 1;
    }

    auto [records, ingest] = parse_csv(in, ScoreScale{0, 100});
    std::cout << "accepted " << ingest.accepted << " records, rejected " << ingest.rejected
              << " rows\n";

    ComparisonGraph graph = build_graph(records);
    RankingResult ranking = solve_hodgerank(graph);
    for (const auto& warning : ranking.warnings) std::cerr << "warning: " << warning << '\n';

    std::vector<int> order(static_cast<size_t>(ranking.size()));
    for (int i = 0; i < ranking.size(); ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return ranking.scores[static_cast<size_t>(a)] > ranking.scores[static_cast<size_t>(b)];
    });
    for (int i : order)
        std::cout << ranking.students[static_cast<size_t>(i)] << ' '
                  << fmt_double(ranking.scores[static_cast<size_t>(i)]) << " (component "
                  << ranking.component_id[static_cast<size_t>(i)] << ")\n";
    return 0;
}
