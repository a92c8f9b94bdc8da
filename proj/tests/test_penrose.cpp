#include <catch_amalgamated.hpp>

#include "vtrees/penrose.hpp"

using namespace vtrees;

TEST_CASE("completion of small trees") {
    SECTION("single edge has nothing to add") {
        LabeledTree t = tree_from_edges(2, {{1, 2}});
        CHECK(penrose_completion(t).extra == 0);
    }
    SECTION("star centre 1 on [3]: both leaves share a generation") {
        LabeledTree t = tree_from_edges(3, {{1, 2}, {1, 3}});
        CHECK(penrose_completion(t).extra == edge_bit(3, 2, 3));
    }
    SECTION("path 1-2-3: the predecessor rule never fires") {
        LabeledTree t = tree_from_edges(3, {{1, 2}, {2, 3}});
        CHECK(penrose_completion(t).extra == 0);
    }
    SECTION("previous-generation rule needs a larger predecessor") {
        // path 3-1-2-4: vertex 4 sits one generation below 3, predecessor 2 < 3
        LabeledTree t = tree_from_edges(4, {{1, 3}, {1, 2}, {2, 4}});
        CHECK(penrose_completion(t).extra == (edge_bit(4, 2, 3) | edge_bit(4, 3, 4)));
    }
}

TEST_CASE("inverse map on connected graphs") {
    SECTION("a tree is its own interval bottom") {
        for (int n = 2; n <= 6; ++n) {
            enumerate_trees(n, [&](const LabeledTree& t) {
                REQUIRE(penrose_tree_of_graph(t.as_graph()) == t);
            });
        }
    }
    SECTION("triangle maps to the star at 1") {
        LabeledGraph triangle{3, edge_bit(3, 1, 2) | edge_bit(3, 1, 3) | edge_bit(3, 2, 3)};
        LabeledTree star = tree_from_edges(3, {{1, 2}, {1, 3}});
        CHECK(penrose_tree_of_graph(triangle) == star);
    }
    SECTION("K4 maps to the star at 1") {
        LabeledGraph k4{4, (EdgeBits{1} << pair_count(4)) - 1};
        LabeledTree star = tree_from_edges(4, {{1, 2}, {1, 3}, {1, 4}});
        CHECK(penrose_tree_of_graph(k4) == star);
    }
    SECTION("disconnected input is rejected") {
        LabeledGraph g{4, edge_bit(4, 1, 2)};
        CHECK_THROWS_AS(penrose_tree_of_graph(g), std::invalid_argument);
    }
}

TEST_CASE("interval membership is consistent with the inverse map") {
    // every subgraph H with tau <= H <= R(tau) maps back to tau
    for (int n = 3; n <= 5; ++n) {
        enumerate_trees(n, [&](const LabeledTree& t) {
            PenroseCompletion pc = penrose_completion(t);
            EdgeBits extra = pc.extra;
            // walk all subsets of the extra edges
            EdgeBits sub = 0;
            while (true) {
                LabeledGraph h{n, t.edges | sub};
                REQUIRE(penrose_tree_of_graph(h) == t);
                if (sub == extra) break;
                sub = (sub - extra) & extra;
            }
        });
    }
}

TEST_CASE("partition verification") {
    SECTION("n=2") {
        PartitionReport rep = verify_partition(2);
        CHECK(rep.interval_sum == 1);
        CHECK(rep.connected_count == 1);
        CHECK(rep.ok());
    }
    SECTION("n=3: interval sizes 2,1,1") {
        PartitionReport rep = verify_partition(3);
        CHECK(rep.interval_sum == 4);
        CHECK(rep.extra_size_hist.at(0) == 2);
        CHECK(rep.extra_size_hist.at(1) == 1);
        CHECK(rep.ok());
    }
    SECTION("n=4") {
        PartitionReport rep = verify_partition(4);
        CHECK(rep.interval_sum == 38);
        CHECK(rep.connected_count == 38);
        CHECK(rep.ok());
    }
    SECTION("cap refusal") { CHECK_THROWS_AS(verify_partition(7), CapError); }
    SECTION("parallel run reports identically") {
        PartitionReport serial = verify_partition(5, 1);
        PartitionReport parallel = verify_partition(5, 4);
        CHECK(serial.interval_sum == parallel.interval_sum);
        CHECK(serial.connected_count == parallel.connected_count);
        CHECK(serial.extra_size_hist == parallel.extra_size_hist);
        CHECK(serial.violations == parallel.violations);
    }
}
