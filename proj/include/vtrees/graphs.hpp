#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vtrees {

// Enumeration caps. Beyond these the operations refuse instead of thrashing:
// connected-graph enumeration scans 2^C(n,2) edge subsets, tree enumeration
// decodes n^(n-2) Pruefer sequences.
constexpr int kMaxConnectedEnumN = 8;
constexpr int kMaxTreeEnumN = 9;

// Raised when a size cap is exceeded; callers distinguish this from plain
// usage errors (the CLI maps it to its own exit code).
struct CapError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Edge sets are bit fields indexed by unordered pairs {i,j}, i < j, in
// lexicographic order over (i,j). C(9,2) = 36 bits, so one 64-bit word is
// enough at the supported sizes. The mapping is fixed so serialized edge sets
// are stable across runs.
using EdgeBits = std::uint64_t;
using VertexMask = std::uint32_t;  // bit v-1 set <=> label v present

inline int pair_count(int n) { return n * (n - 1) / 2; }

inline int pair_index(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    return (i - 1) * (2 * n - i) / 2 + (j - i - 1);
}

inline EdgeBits edge_bit(int n, int i, int j) {
    return EdgeBits{1} << pair_index(n, i, j);
}

inline std::pair<int, int> pair_of_index(int n, int idx) {
    for (int i = 1; i < n; ++i) {
        int row = n - i;
        if (idx < row) return {i, i + 1 + idx};
        idx -= row;
    }
    throw std::out_of_range("pair_of_index: index beyond C(n,2)");
}

inline std::vector<std::pair<int, int>> edge_list(int n, EdgeBits bits) {
    std::vector<std::pair<int, int>> edges;
    for (int idx = 0; idx < pair_count(n); ++idx)
        if (bits >> idx & 1) edges.push_back(pair_of_index(n, idx));
    return edges;
}

inline int popcount64(EdgeBits bits) { return __builtin_popcountll(bits); }

// Hex dump of the bit field, fixed width for the ambient n (debug aid).
inline std::string edge_set_hex(int n, EdgeBits bits) {
    int digits = (pair_count(n) + 3) / 4;
    if (digits == 0) digits = 1;
    std::string s(static_cast<size_t>(digits), '0');
    for (int d = 0; d < digits; ++d) {
        int nib = static_cast<int>(bits >> (4 * (digits - 1 - d)) & 0xf);
        s[static_cast<size_t>(d)] = "0123456789abcdef"[nib];
    }
    return s;
}

struct LabeledGraph {
    int n = 0;          // vertex labels are 1..n
    EdgeBits edges = 0; // subset of the C(n,2) pair bits

    bool has_edge(int i, int j) const { return edges >> pair_index(n, i, j) & 1; }
    int edge_count() const { return popcount64(edges); }
    bool operator==(const LabeledGraph&) const = default;
};

inline VertexMask full_vertex_mask(int n) {
    return (VertexMask{1} << n) - 1;
}

// Adjacency of vertex v (1-based) restricted to the given edge set.
inline VertexMask neighbors(int n, EdgeBits edges, int v) {
    VertexMask m = 0;
    for (int w = 1; w <= n; ++w) {
        if (w == v) continue;
        if (edges >> pair_index(n, v, w) & 1) m |= VertexMask{1} << (w - 1);
    }
    return m;
}

// Vertices reachable from `start` along `edges`, confined to `allowed`.
inline VertexMask reach(int n, EdgeBits edges, int start, VertexMask allowed) {
    VertexMask seen = VertexMask{1} << (start - 1);
    VertexMask frontier = seen;
    while (frontier) {
        VertexMask next = 0;
        for (int v = 1; v <= n; ++v)
            if (frontier >> (v - 1) & 1) next |= neighbors(n, edges, v);
        next &= allowed & ~seen;
        seen |= next;
        frontier = next;
    }
    return seen;
}

inline bool is_connected(const LabeledGraph& g) {
    if (g.n <= 1) return true;
    return reach(g.n, g.edges, 1, full_vertex_mask(g.n)) == full_vertex_mask(g.n);
}

struct LabeledTree {
    int n = 0;
    EdgeBits edges = 0;

    LabeledGraph as_graph() const { return {n, edges}; }
    bool operator==(const LabeledTree&) const = default;
};

// |E| = n-1, connected and acyclic; any two imply the third, all three are
// cheap enough to check outright.
inline bool is_valid_tree(const LabeledTree& t) {
    if (t.n < 1) return false;
    if (popcount64(t.edges) != t.n - 1) return false;
    return is_connected(t.as_graph());
}

inline void validate_tree(const LabeledTree& t) {
    if (!is_valid_tree(t)) throw std::invalid_argument("not a valid labeled tree");
}

inline LabeledTree tree_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    LabeledTree t{n, 0};
    for (auto [i, j] : edges) t.edges |= edge_bit(n, i, j);
    validate_tree(t);
    return t;
}

// Unique tree on [len(seq)+2] whose Pruefer sequence is seq.
inline LabeledTree tree_from_prufer(const std::vector<int>& seq, int n) {
    if (n < 1 || n > kMaxTreeEnumN)
        throw CapError("tree_from_prufer: n outside supported range");
    if (static_cast<int>(seq.size()) != std::max(0, n - 2))
        throw std::invalid_argument("tree_from_prufer: sequence length must be n-2");
    for (int s : seq)
        if (s < 1 || s > n) throw std::invalid_argument("tree_from_prufer: entry out of range");

    LabeledTree t{n, 0};
    if (n == 1) return t;

    std::array<int, kMaxTreeEnumN + 1> degree{};
    for (int v = 1; v <= n; ++v) degree[static_cast<size_t>(v)] = 1;
    for (int s : seq) ++degree[static_cast<size_t>(s)];
    for (int s : seq) {
        int leaf = 0;
        for (int v = 1; v <= n; ++v)
            if (degree[static_cast<size_t>(v)] == 1) { leaf = v; break; }
        t.edges |= edge_bit(n, leaf, s);
        degree[static_cast<size_t>(leaf)] = 0;
        --degree[static_cast<size_t>(s)];
    }
    int a = 0, b = 0;
    for (int v = 1; v <= n; ++v) {
        if (degree[static_cast<size_t>(v)] != 1) continue;
        (a == 0 ? a : b) = v;
    }
    t.edges |= edge_bit(n, a, b);
    return t;
}

inline std::vector<int> prufer_from_tree(const LabeledTree& t) {
    validate_tree(t);
    int n = t.n;
    std::vector<int> seq;
    if (n <= 2) return seq;
    EdgeBits edges = t.edges;
    std::array<int, kMaxTreeEnumN + 1> degree{};
    for (auto [i, j] : edge_list(n, edges)) {
        ++degree[static_cast<size_t>(i)];
        ++degree[static_cast<size_t>(j)];
    }
    for (int step = 0; step < n - 2; ++step) {
        int leaf = 0;
        for (int v = 1; v <= n; ++v)
            if (degree[static_cast<size_t>(v)] == 1) { leaf = v; break; }
        int parent = 0;
        for (int w = 1; w <= n; ++w) {
            if (w == leaf) continue;
            if (edges >> pair_index(n, leaf, w) & 1) { parent = w; break; }
        }
        seq.push_back(parent);
        edges &= ~edge_bit(n, leaf, parent);
        degree[static_cast<size_t>(leaf)] = 0;
        --degree[static_cast<size_t>(parent)];
    }
    return seq;
}

// Streams every labeled tree on [n] exactly once, in lexicographic order of
// the Pruefer sequence. Count is n^(n-2) for n >= 2.
inline void enumerate_trees(int n, const std::function<void(const LabeledTree&)>& visit) {
    if (n < 1 || n > kMaxTreeEnumN)
        throw CapError("enumerate_trees: n outside supported range");
    if (n <= 2) {
        visit(tree_from_prufer({}, n));
        return;
    }
    std::vector<int> seq(static_cast<size_t>(n - 2), 1);
    while (true) {
        visit(tree_from_prufer(seq, n));
        int pos = n - 3;
        while (pos >= 0 && seq[static_cast<size_t>(pos)] == n) {
            seq[static_cast<size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0) break;
        ++seq[static_cast<size_t>(pos)];
    }
}

// Streams every connected labeled graph on [n] exactly once, ascending in the
// bit encoding of the edge set.
inline void enumerate_connected(int n, const std::function<void(const LabeledGraph&)>& visit) {
    if (n < 1 || n > kMaxConnectedEnumN)
        throw CapError("enumerate_connected: n outside supported range");
    EdgeBits all = (pair_count(n) == 64) ? ~EdgeBits{0} : (EdgeBits{1} << pair_count(n)) - 1;
    for (EdgeBits mask = 0;; ++mask) {
        LabeledGraph g{n, mask};
        if (is_connected(g)) visit(g);
        if (mask == all) break;
    }
}

inline std::uint64_t count_connected(int n) {
    std::uint64_t c = 0;
    enumerate_connected(n, [&](const LabeledGraph&) { ++c; });
    return c;
}

// Edge-count distances from `root`, restricted to the tree's edges. Entry 0
// of the result is unused; entry v is d(v).
inline std::vector<int> tree_distances(const LabeledTree& t, int root) {
    validate_tree(t);
    if (root < 1 || root > t.n) throw std::invalid_argument("tree_distances: bad root");
    std::vector<int> dist(static_cast<size_t>(t.n) + 1, -1);
    dist[static_cast<size_t>(root)] = 0;
    std::vector<int> frontier{root};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int v : frontier) {
            for (int w = 1; w <= t.n; ++w) {
                if (dist[static_cast<size_t>(w)] >= 0 || w == v) continue;
                if (t.edges >> pair_index(t.n, v, w) & 1) {
                    dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
                    next.push_back(w);
                }
            }
        }
        frontier = std::move(next);
    }
    return dist;
}

}  // namespace vtrees
