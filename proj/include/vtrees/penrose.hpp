#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "vtrees/graphs.hpp"

namespace vtrees {

// Completion of a tree under the rules
//   P1: {i,j} with d(i) = d(j)                  (same generation)
//   P2: {i,j} with d(j) = d(i)-1 and i' < j     (previous generation, i' the
//                                                tree predecessor of i)
// with distances d measured from the root. `extra` never intersects the tree
// edges, and tree+extra stays connected by construction.
struct PenroseCompletion {
    LabeledTree tree;
    EdgeBits extra = 0;

    EdgeBits completed_edges() const { return tree.edges | extra; }
};

// Core rule application on an edge set restricted to a vertex subset. Used
// both for whole trees (root 1) and for splitting parts, which are rooted at
// their gateway vertex toward the ambient root.
inline EdgeBits penrose_extra_edges(int n, EdgeBits tree_edges, VertexMask vertices, int root) {
    std::vector<int> dist(static_cast<size_t>(n) + 1, -1);
    std::vector<int> pred(static_cast<size_t>(n) + 1, 0);
    dist[static_cast<size_t>(root)] = 0;
    std::vector<int> frontier{root};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int v : frontier) {
            for (int w = 1; w <= n; ++w) {
                if (w == v || !(vertices >> (w - 1) & 1)) continue;
                if (dist[static_cast<size_t>(w)] >= 0) continue;
                if (tree_edges >> pair_index(n, v, w) & 1) {
                    dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
                    pred[static_cast<size_t>(w)] = v;
                    next.push_back(w);
                }
            }
        }
        frontier = std::move(next);
    }

    EdgeBits extra = 0;
    for (int i = 1; i <= n; ++i) {
        if (!(vertices >> (i - 1) & 1)) continue;
        for (int j = i + 1; j <= n; ++j) {
            if (!(vertices >> (j - 1) & 1)) continue;
            if (tree_edges >> pair_index(n, i, j) & 1) continue;
            int di = dist[static_cast<size_t>(i)];
            int dj = dist[static_cast<size_t>(j)];
            if (di == dj) {
                extra |= edge_bit(n, i, j);  // P1
                continue;
            }
            int deep = di > dj ? i : j;
            int shallow = di > dj ? j : i;
            if (dist[static_cast<size_t>(deep)] == dist[static_cast<size_t>(shallow)] + 1 &&
                pred[static_cast<size_t>(deep)] < shallow)
                extra |= edge_bit(n, i, j);  // P2
        }
    }
    return extra;
}

inline PenroseCompletion penrose_completion(const LabeledTree& t) {
    validate_tree(t);
    return {t, penrose_extra_edges(t.n, t.edges, full_vertex_mask(t.n), 1)};
}

// Inverse of the scheme on connected graphs: the unique tree tau with
// E(tau) <= E(G) <= E(R(tau)). Zero or multiple matches signal a broken
// scheme, so both fail loudly. Brute-force interval search over all trees.
inline LabeledTree penrose_tree_of_graph(const LabeledGraph& g) {
    if (!is_connected(g)) throw std::invalid_argument("penrose_tree_of_graph: graph not connected");
    LabeledTree found{};
    int matches = 0;
    enumerate_trees(g.n, [&](const LabeledTree& t) {
        if ((g.edges & t.edges) != t.edges) return;
        PenroseCompletion pc = penrose_completion(t);
        if ((g.edges & ~pc.completed_edges()) != 0) return;
        found = t;
        ++matches;
    });
    if (matches != 1)
        throw std::logic_error("penrose_tree_of_graph: interval match count " +
                               std::to_string(matches) + ", scheme is broken");
    return found;
}

struct PartitionReport {
    int n = 0;
    std::uint64_t tree_count = 0;
    std::uint64_t connected_count = 0;
    std::uint64_t uniquely_assigned = 0;           // graphs lying in exactly one interval
    std::uint64_t interval_sum = 0;                // sum over trees of 2^|extra|
    std::map<int, std::uint64_t> extra_size_hist;  // |extra| -> number of trees
    std::vector<std::string> violations;           // expected empty

    bool ok() const {
        return violations.empty() && interval_sum == connected_count &&
               uniquely_assigned == connected_count;
    }
};

// Exhaustive check that the intervals [tau, R(tau)] tile the connected graphs
// on [n]: the 2^|extra| counting identity plus per-graph uniqueness of the
// assigned interval. Violations are reported, not thrown. The assignment scan
// may run on several threads; chunks merge in mask order, so the report is
// identical to the serial one.
inline PartitionReport verify_partition(int n, int threads = 1) {
    if (n < 1 || n > 6)
        throw CapError("verify_partition: n outside supported range (1..6)");
    PartitionReport rep;
    rep.n = n;

    std::vector<PenroseCompletion> completions;
    enumerate_trees(n, [&](const LabeledTree& t) { completions.push_back(penrose_completion(t)); });
    rep.tree_count = completions.size();
    for (const auto& pc : completions) {
        int sz = popcount64(pc.extra);
        ++rep.extra_size_hist[sz];
        rep.interval_sum += std::uint64_t{1} << sz;
    }

    struct Chunk {
        std::uint64_t connected = 0;
        std::uint64_t unique = 0;
        std::vector<std::string> violations;
    };
    EdgeBits mask_end = pair_count(n) >= 64 ? 0 : (EdgeBits{1} << pair_count(n));
    auto scan = [&](EdgeBits lo, EdgeBits hi) {
        Chunk out;
        for (EdgeBits mask = lo; mask < hi; ++mask) {
            LabeledGraph g{n, mask};
            if (!is_connected(g)) continue;
            ++out.connected;
            int matches = 0;
            for (const auto& pc : completions) {
                if ((g.edges & pc.tree.edges) != pc.tree.edges) continue;
                if ((g.edges & ~pc.completed_edges()) != 0) continue;
                ++matches;
            }
            if (matches == 1)
                ++out.unique;
            else
                out.violations.push_back("graph " + edge_set_hex(n, g.edges) + " lies in " +
                                         std::to_string(matches) + " intervals");
        }
        return out;
    };

    std::vector<Chunk> chunks;
    if (threads <= 1 || mask_end < 4096) {
        chunks.push_back(scan(0, mask_end));
    } else {
        std::uint64_t step = (mask_end + static_cast<std::uint64_t>(threads) - 1) / static_cast<std::uint64_t>(threads);
        std::vector<std::pair<EdgeBits, EdgeBits>> ranges;
        for (EdgeBits lo = 0; lo < mask_end; lo += step) ranges.emplace_back(lo, std::min<EdgeBits>(mask_end, lo + step));
        chunks.resize(ranges.size());
        std::vector<std::thread> pool;
        for (size_t r = 0; r < ranges.size(); ++r)
            pool.emplace_back([&, r] { chunks[r] = scan(ranges[r].first, ranges[r].second); });
        for (auto& th : pool) th.join();
    }
    for (const auto& chunk : chunks) {
        rep.connected_count += chunk.connected;
        rep.uniquely_assigned += chunk.unique;
        rep.violations.insert(rep.violations.end(), chunk.violations.begin(), chunk.violations.end());
    }
    if (rep.interval_sum != rep.connected_count)
        rep.violations.push_back("interval sum " + std::to_string(rep.interval_sum) +
                                 " != connected count " + std::to_string(rep.connected_count));
    return rep;
}

}  // namespace vtrees
