#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "vtrees/graphs.hpp"
#include "vtrees/penrose.hpp"
#include "vtrees/rational.hpp"

namespace vtrees {

// A tree living on a label subset of the ambient [n]. Parts of splittings and
// inputs of mergings are represented this way.
struct SubTree {
    VertexMask vertices = 0;
    EdgeBits edges = 0;

    bool operator<(const SubTree& o) const {
        return vertices != o.vertices ? vertices < o.vertices : edges < o.edges;
    }
    bool operator==(const SubTree&) const = default;
};

inline int min_label(VertexMask m) {
    if (m == 0) throw std::invalid_argument("min_label: empty vertex set");
    return __builtin_ctz(m) + 1;
}

inline bool subtree_valid(int n, const SubTree& s) {
    if (s.vertices == 0) return false;
    int vcount = __builtin_popcount(s.vertices);
    if (popcount64(s.edges) != vcount - 1) return false;
    for (auto [i, j] : edge_list(n, s.edges))
        if (!(s.vertices >> (i - 1) & 1) || !(s.vertices >> (j - 1) & 1)) return false;
    return reach(n, s.edges, min_label(s.vertices), s.vertices) == s.vertices;
}

inline SubTree subtree_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    SubTree s;
    for (auto [i, j] : edges) {
        s.edges |= edge_bit(n, i, j);
        s.vertices |= VertexMask{1} << (i - 1);
        s.vertices |= VertexMask{1} << (j - 1);
    }
    if (!subtree_valid(n, s)) throw std::invalid_argument("subtree_from_edges: not a tree on its label set");
    return s;
}

// Root of a part inside an ambient tree: the unique part vertex nearest the
// ambient root (the gateway through which every part vertex reaches it).
// `dist` holds ambient distances as produced by tree_distances.
inline int part_root(const std::vector<int>& dist, VertexMask vertices) {
    int best = 0;
    for (VertexMask m = vertices; m; m &= m - 1) {
        int v = __builtin_ctz(m) + 1;
        if (best == 0 || dist[static_cast<size_t>(v)] < dist[static_cast<size_t>(best)]) best = v;
    }
    if (best == 0) throw std::invalid_argument("part_root: empty vertex set");
    return best;
}

// Penrose completion of a part with an explicit root.
inline EdgeBits subtree_extra(int n, const SubTree& s, int root) {
    return penrose_extra_edges(n, s.edges, s.vertices, root);
}

// ---------------------------------------------------------------------------
// Merging of trees

struct MergeResult {
    int n = 0;
    std::map<std::pair<int, int>, int> multiplicity;  // edge -> how many parts carry it
    VertexMask vertex_union = 0;
    bool simple = false;
    bool connected = false;
    bool acyclic = false;
    bool proper = false;  // simple + connected + acyclic, i.e. the merge is a tree
};

inline MergeResult merge_trees(int n, const std::vector<SubTree>& parts) {
    if (parts.empty()) throw std::invalid_argument("merge_trees: no parts");
    MergeResult r;
    r.n = n;
    EdgeBits simple_edges = 0;
    for (const auto& p : parts) {
        if (!subtree_valid(n, p)) throw std::invalid_argument("merge_trees: invalid part");
        r.vertex_union |= p.vertices;
        for (auto [i, j] : edge_list(n, p.edges)) ++r.multiplicity[{i, j}];
        simple_edges |= p.edges;
    }
    r.simple = true;
    for (const auto& [e, mult] : r.multiplicity)
        if (mult > 1) r.simple = false;

    int vcount = __builtin_popcount(r.vertex_union);
    int ecount = popcount64(simple_edges);
    int components = 0;
    VertexMask remaining = r.vertex_union;
    while (remaining) {
        ++components;
        remaining &= ~reach(n, simple_edges, __builtin_ctz(remaining) + 1, r.vertex_union);
    }
    r.connected = components == 1;
    r.acyclic = r.simple && ecount == vcount - components;
    r.proper = r.simple && r.connected && r.acyclic;
    return r;
}

// ---------------------------------------------------------------------------
// Merging graph: bipartite between part indices and shared labels. The
// merging is proper iff this graph is a tree (given pairwise intersections of
// size at most one, which larger overlaps violate outright).

struct MergingGraph {
    int part_count = 0;
    std::vector<int> junctions;                // labels shared by >= 2 parts, ascending
    std::vector<std::pair<int, int>> edges;    // (part index, junction label)

    bool is_tree() const {
        int v = part_count + static_cast<int>(junctions.size());
        if (static_cast<int>(edges.size()) != v - 1) return false;
        // union-find over parts (0..k-1) and junctions (k..)
        std::vector<int> up(static_cast<size_t>(v));
        for (int i = 0; i < v; ++i) up[static_cast<size_t>(i)] = i;
        std::function<int(int)> find = [&](int x) {
            while (up[static_cast<size_t>(x)] != x) x = up[static_cast<size_t>(x)] = up[static_cast<size_t>(up[static_cast<size_t>(x)])];
            return x;
        };
        for (auto [part, label] : edges) {
            auto it = std::lower_bound(junctions.begin(), junctions.end(), label);
            int j = part_count + static_cast<int>(it - junctions.begin());
            int a = find(part), b = find(j);
            if (a == b) return false;  // cycle
            up[static_cast<size_t>(a)] = b;
        }
        int root = find(0);
        for (int i = 1; i < v; ++i)
            if (find(i) != root) return false;
        return true;
    }
};

inline MergingGraph merging_graph(const std::vector<VertexMask>& vertex_sets) {
    MergingGraph mg;
    mg.part_count = static_cast<int>(vertex_sets.size());
    VertexMask shared = 0;
    for (size_t i = 0; i < vertex_sets.size(); ++i) {
        for (size_t j = i + 1; j < vertex_sets.size(); ++j) {
            VertexMask inter = vertex_sets[i] & vertex_sets[j];
            if (__builtin_popcount(inter) >= 2)
                throw std::invalid_argument("merging_graph: parts share more than one label");
            shared |= inter;
        }
    }
    for (VertexMask m = shared; m; m &= m - 1) mg.junctions.push_back(__builtin_ctz(m) + 1);
    for (int p = 0; p < mg.part_count; ++p)
        for (int label : mg.junctions)
            if (vertex_sets[static_cast<size_t>(p)] >> (label - 1) & 1) mg.edges.emplace_back(p, label);
    return mg;
}

// ---------------------------------------------------------------------------
// Faithfulness: the completion of the whole tree must be exactly the union of
// the parts' completions, each part rooted at its vertex nearest vertex 1.
// Rooting parts this way is what reproduces the (n-1)^(n-1) count of
// non-splittable trees; rooting at e.g. the minimum label does not. The parts
// must form a proper merging equal to `whole`; anything else is a usage error.

inline bool is_faithful(const LabeledTree& whole, const std::vector<SubTree>& parts) {
    validate_tree(whole);
    MergeResult merge = merge_trees(whole.n, parts);
    if (!merge.proper) throw std::invalid_argument("is_faithful: parts do not form a proper merging");
    EdgeBits union_edges = 0;
    for (const auto& p : parts) union_edges |= p.edges;
    if (union_edges != whole.edges || merge.vertex_union != full_vertex_mask(whole.n))
        throw std::invalid_argument("is_faithful: merging differs from the whole tree");

    std::vector<int> dist = tree_distances(whole, 1);
    EdgeBits whole_extra = penrose_extra_edges(whole.n, whole.edges, full_vertex_mask(whole.n), 1);
    EdgeBits parts_extra = 0;
    for (const auto& p : parts) parts_extra |= subtree_extra(whole.n, p, part_root(dist, p.vertices));
    return parts_extra == whole_extra;
}

// ---------------------------------------------------------------------------
// Per-tree splitting workspace. Splittings of a tree are exactly the
// partitions of its edge set into connected classes: two edge-disjoint
// connected subtrees of a tree can share at most one vertex, so properness is
// automatic and the completion-union condition is the whole story.

class TreeSplitter {
  public:
    explicit TreeSplitter(const LabeledTree& t) : tree_(t) {
        validate_tree(t);
        edges_ = edge_list(t.n, t.edges);
        m_ = static_cast<int>(edges_.size());
        dist1_ = tree_distances(t, 1);
        extra_memo_.assign(size_t{1} << m_, kUnset);
        split_memo_.assign(size_t{1} << m_, -1);
    }

    int edge_count() const { return m_; }
    const LabeledTree& tree() const { return tree_; }

    VertexMask class_vertices(std::uint32_t cls) const {
        VertexMask v = 0;
        for (int e = 0; e < m_; ++e)
            if (cls >> e & 1) {
                v |= VertexMask{1} << (edges_[static_cast<size_t>(e)].first - 1);
                v |= VertexMask{1} << (edges_[static_cast<size_t>(e)].second - 1);
            }
        return v;
    }

    EdgeBits class_edge_bits(std::uint32_t cls) const {
        EdgeBits b = 0;
        for (int e = 0; e < m_; ++e)
            if (cls >> e & 1)
                b |= edge_bit(tree_.n, edges_[static_cast<size_t>(e)].first, edges_[static_cast<size_t>(e)].second);
        return b;
    }

    SubTree class_subtree(std::uint32_t cls) const {
        return {class_vertices(cls), class_edge_bits(cls)};
    }

    bool class_connected(std::uint32_t cls) const {
        if (cls == 0) return false;
        std::uint32_t seed = cls & (~cls + 1);
        VertexMask seen = class_vertices(seed);
        std::uint32_t absorbed = seed;
        bool grew = true;
        while (grew) {
            grew = false;
            for (int e = 0; e < m_; ++e) {
                if (!(cls >> e & 1) || (absorbed >> e & 1)) continue;
                VertexMask ev = VertexMask{1} << (edges_[static_cast<size_t>(e)].first - 1);
                ev |= VertexMask{1} << (edges_[static_cast<size_t>(e)].second - 1);
                if (ev & seen) {
                    seen |= ev;
                    absorbed |= std::uint32_t{1} << e;
                    grew = true;
                }
            }
        }
        return absorbed == cls;
    }

    // Completion of a connected class, rooted at its vertex nearest vertex 1
    // of the whole tree (memoized). Distances to 1 are constant offsets of
    // distances to that gateway inside the class, so nested cuts stay
    // consistent with the rooting of their enclosing part.
    EdgeBits class_extra(std::uint32_t cls) {
        EdgeBits& slot = extra_memo_[cls];
        if (slot == kUnset) {
            VertexMask v = class_vertices(cls);
            slot = penrose_extra_edges(tree_.n, class_edge_bits(cls), v, part_root(dist1_, v));
        }
        return slot;
    }

    // Maximal number of parts over all faithful splittings; 1 when only the
    // trivial splitting is faithful. Recursion over faithful binary cuts;
    // soundness of the recursion is established against the exhaustive
    // enumeration in the test suite.
    int max_splittability() {
        if (m_ == 0) return 1;  // single vertex, nothing to cut
        return max_split(full_class());
    }

    // Every faithful splitting (each splitting listed as class masks with the
    // lowest-numbered edge classes first). Exhaustive over edge partitions.
    std::vector<std::vector<std::uint32_t>> all_faithful_splittings() {
        std::vector<std::vector<std::uint32_t>> result;
        std::vector<int> rgs(static_cast<size_t>(m_), 0);
        enumerate_partitions(rgs, 1, 0, result);
        return result;
    }

  private:
    static constexpr EdgeBits kUnset = ~EdgeBits{0};

    std::uint32_t full_class() const { return (std::uint32_t{1} << m_) - 1; }

    int max_split(std::uint32_t cls) {
        int& slot = split_memo_[cls];
        if (slot >= 0) return slot;
        int best = 1;
        std::uint32_t low = cls & (~cls + 1);
        EdgeBits whole = class_extra(cls);
        // proper submasks containing the lowest edge: each unordered cut once
        for (std::uint32_t sub = (cls - 1) & cls; sub; sub = (sub - 1) & cls) {
            if (!(sub & low)) continue;
            std::uint32_t rest = cls ^ sub;
            if (!class_connected(sub) || !class_connected(rest)) continue;
            if ((class_extra(sub) | class_extra(rest)) != whole) continue;
            best = std::max(best, max_split(sub) + max_split(rest));
        }
        slot = best;
        return best;
    }

    bool splitting_faithful(const std::vector<std::uint32_t>& classes) {
        EdgeBits whole = class_extra(full_class());
        EdgeBits acc = 0;
        for (std::uint32_t cls : classes) acc |= class_extra(cls);
        return acc == whole;
    }

    void enumerate_partitions(std::vector<int>& rgs, int next_class, int pos,
                              std::vector<std::vector<std::uint32_t>>& out) {
        if (pos == m_) {
            std::vector<std::uint32_t> classes(static_cast<size_t>(next_class - 1), 0);
            for (int e = 0; e < m_; ++e)
                classes[static_cast<size_t>(rgs[static_cast<size_t>(e)] - 1)] |= std::uint32_t{1} << e;
            for (std::uint32_t cls : classes)
                if (!class_connected(cls)) return;
            if (splitting_faithful(classes)) out.push_back(std::move(classes));
            return;
        }
        for (int c = 1; c <= next_class; ++c) {
            rgs[static_cast<size_t>(pos)] = c;
            enumerate_partitions(rgs, std::max(next_class, c + 1), pos + 1, out);
        }
        rgs[static_cast<size_t>(pos)] = 0;
    }

    LabeledTree tree_;
    std::vector<std::pair<int, int>> edges_;
    int m_ = 0;
    std::vector<int> dist1_;
    std::vector<EdgeBits> extra_memo_;
    std::vector<int> split_memo_;
};

inline int max_splittability(const LabeledTree& t) {
    return TreeSplitter(t).max_splittability();
}

// Decode the idx-th Pruefer sequence (lexicographic order) directly; lets
// callers partition the tree stream into deterministic index ranges.
inline LabeledTree tree_from_index(int n, std::uint64_t idx) {
    if (n <= 2) return tree_from_prufer({}, n);
    std::vector<int> seq(static_cast<size_t>(n - 2));
    for (int pos = n - 3; pos >= 0; --pos) {
        seq[static_cast<size_t>(pos)] = 1 + static_cast<int>(idx % static_cast<std::uint64_t>(n));
        idx /= static_cast<std::uint64_t>(n);
    }
    return tree_from_prufer(seq, n);
}

inline std::uint64_t tree_count(int n) {
    if (n <= 2) return 1;
    std::uint64_t c = 1;
    for (int i = 0; i < n - 2; ++i) c *= static_cast<std::uint64_t>(n);
    return c;
}

// Histogram of max_splittability over all trees on [n]; entry l holds
// |T_Pen,l[n]|, entry 0 is unused.
inline std::vector<std::uint64_t> classify_splittable(int n, int threads = 1) {
    if (n < 1 || n > kMaxTreeEnumN)
        throw CapError("classify_splittable: n outside supported range");
    std::vector<std::uint64_t> counts(static_cast<size_t>(std::max(2, n)), 0);
    std::uint64_t total = tree_count(n);
    auto run_range = [n](std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::uint64_t> local(static_cast<size_t>(std::max(2, n)), 0);
        for (std::uint64_t i = lo; i < hi; ++i) {
            TreeSplitter splitter(tree_from_index(n, i));
            ++local[static_cast<size_t>(splitter.max_splittability())];
        }
        return local;
    };
    if (threads <= 1 || total < 1024) {
        counts = run_range(0, total);
    } else {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
        std::uint64_t chunk = (total + static_cast<std::uint64_t>(threads) - 1) / static_cast<std::uint64_t>(threads);
        for (std::uint64_t lo = 0; lo < total; lo += chunk) ranges.emplace_back(lo, std::min(total, lo + chunk));
        std::vector<std::vector<std::uint64_t>> partials(ranges.size());
        std::vector<std::thread> pool;
        for (size_t r = 0; r < ranges.size(); ++r)
            pool.emplace_back([&, r] { partials[r] = run_range(ranges[r].first, ranges[r].second); });
        for (auto& th : pool) th.join();
        for (const auto& part : partials)
            for (size_t l = 0; l < part.size(); ++l) counts[l] += part[l];
    }
    return counts;
}

inline std::uint64_t count_splittable(int n, int l, int threads = 1) {
    auto counts = classify_splittable(n, threads);
    if (l < 1) throw std::invalid_argument("count_splittable: l must be positive");
    if (l >= static_cast<int>(counts.size())) return 0;
    return counts[static_cast<size_t>(l)];
}

// Fast path for the l = 1 count: a tree is non-splittable iff it admits no
// faithful binary cut (equivalence with the full classification is exercised
// in the tests).
inline std::uint64_t count_nonsplittable(int n, int threads = 1) {
    if (n < 1 || n > kMaxTreeEnumN)
        throw CapError("count_nonsplittable: n outside supported range");
    std::uint64_t total = tree_count(n);
    auto run_range = [n](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t local = 0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            TreeSplitter splitter(tree_from_index(n, i));
            if (splitter.edge_count() == 0) {
                ++local;
                continue;
            }
            std::uint32_t full = (std::uint32_t{1} << splitter.edge_count()) - 1;
            EdgeBits whole = splitter.class_extra(full);
            bool splittable = false;
            std::uint32_t low = full & (~full + 1);
            for (std::uint32_t sub = (full - 1) & full; sub && !splittable; sub = (sub - 1) & full) {
                if (!(sub & low)) continue;
                std::uint32_t rest = full ^ sub;
                if (!splitter.class_connected(sub) || !splitter.class_connected(rest)) continue;
                splittable = (splitter.class_extra(sub) | splitter.class_extra(rest)) == whole;
            }
            if (!splittable) ++local;
        }
        return local;
    };
    if (threads <= 1 || total < 1024) return run_range(0, total);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
    std::uint64_t chunk = (total + static_cast<std::uint64_t>(threads) - 1) / static_cast<std::uint64_t>(threads);
    for (std::uint64_t lo = 0; lo < total; lo += chunk) ranges.emplace_back(lo, std::min(total, lo + chunk));
    std::vector<std::uint64_t> partials(ranges.size(), 0);
    std::vector<std::thread> pool;
    for (size_t r = 0; r < ranges.size(); ++r)
        pool.emplace_back([&, r] { partials[r] = run_range(ranges[r].first, ranges[r].second); });
    for (auto& th : pool) th.join();
    std::uint64_t sum = 0;
    for (std::uint64_t p : partials) sum += p;
    return sum;
}

// ---------------------------------------------------------------------------
// Counting Penrose-faithful mergings of a given collection of parts.
//
// A merging structure assigns each part a block of fresh labels from
// {2,...,n+1} (order-preservingly onto its non-root vertices, the blocks
// partitioning that range) plus a root label outside its block; parts are
// completed from their root images. Distinct structures are counted once,
// and the count must reproduce k! n! / prod_i k_i! (i!)^{k_i}.

inline std::uint64_t faithful_merging_formula(const std::vector<int>& edge_sizes) {
    if (edge_sizes.empty()) throw std::invalid_argument("faithful_merging_formula: no parts");
    int n = 0;
    std::map<int, int> by_size;
    for (int s : edge_sizes) {
        if (s < 1) throw std::invalid_argument("faithful_merging_formula: part needs >= 1 edge");
        n += s;
        ++by_size[s];
    }
    BigInt v = factorial(static_cast<unsigned>(edge_sizes.size())) * factorial(static_cast<unsigned>(n));
    for (auto [size, mult] : by_size) {
        v /= factorial(static_cast<unsigned>(mult));
        for (int i = 0; i < mult; ++i) v /= factorial(static_cast<unsigned>(size));
    }
    return v.get_ui();
}

inline std::uint64_t count_faithful_mergings(const std::vector<LabeledTree>& parts) {
    if (parts.empty()) throw std::invalid_argument("count_faithful_mergings: no parts");
    int n = 0;
    for (const auto& p : parts) {
        validate_tree(p);
        if (p.n < 2) throw std::invalid_argument("count_faithful_mergings: part needs >= 2 vertices");
        n += p.n - 1;
    }
    int N = n + 1;
    if (N > 10) throw CapError("count_faithful_mergings: combined size too large");

    std::vector<int> free_labels;
    for (int v = 2; v <= N; ++v) free_labels.push_back(v);

    struct Placed {
        EdgeBits edges;
        VertexMask vertices;
        int root;
        bool operator<(const Placed& o) const {
            if (edges != o.edges) return edges < o.edges;
            if (vertices != o.vertices) return vertices < o.vertices;
            return root < o.root;
        }
    };
    std::set<std::vector<Placed>> structures;

    std::vector<Placed> placed;
    std::function<void(size_t, std::vector<int>&)> assign = [&](size_t part_idx, std::vector<int>& remaining) {
        if (part_idx == parts.size()) {
            EdgeBits union_edges = 0;
            VertexMask union_vertices = 0;
            int total_edges = 0;
            for (const auto& pl : placed) {
                if (union_edges & pl.edges) return;  // repeated edge, merging not simple
                union_edges |= pl.edges;
                union_vertices |= pl.vertices;
                total_edges += popcount64(pl.edges);
            }
            if (union_vertices != full_vertex_mask(N)) return;
            if (reach(N, union_edges, 1, full_vertex_mask(N)) != full_vertex_mask(N)) return;
            if (total_edges != N - 1) return;  // with connectivity this makes the merge a tree
            EdgeBits whole_extra = penrose_extra_edges(N, union_edges, full_vertex_mask(N), 1);
            EdgeBits parts_extra = 0;
            for (const auto& pl : placed)
                parts_extra |= penrose_extra_edges(N, pl.edges, pl.vertices, pl.root);
            if (parts_extra != whole_extra) return;
            std::vector<Placed> key = placed;
            std::sort(key.begin(), key.end());
            structures.insert(std::move(key));
            return;
        }
        const LabeledTree& shape = parts[part_idx];
        int block_size = shape.n - 1;
        std::vector<int> block(static_cast<size_t>(block_size));
        std::vector<size_t> pick(static_cast<size_t>(block_size));
        std::function<void(size_t, size_t)> choose = [&](size_t from, size_t depth) {
            if (depth == static_cast<size_t>(block_size)) {
                std::vector<int> rest;
                for (size_t i = 0; i < remaining.size(); ++i)
                    if (std::find(pick.begin(), pick.end(), i) == pick.end()) rest.push_back(remaining[i]);
                for (int root = 1; root <= N; ++root) {
                    if (std::find(block.begin(), block.end(), root) != block.end()) continue;
                    // order-preserving relabeling: original vertex 1 -> root,
                    // originals 2..s -> block entries ascending
                    Placed pl{0, 0, root};
                    bool ok = true;
                    auto relabel = [&](int orig) { return orig == 1 ? root : block[static_cast<size_t>(orig - 2)]; };
                    for (auto [a, b] : edge_list(shape.n, shape.edges)) {
                        int x = relabel(a), y = relabel(b);
                        if (x == y) { ok = false; break; }
                        pl.edges |= edge_bit(N, x, y);
                        pl.vertices |= VertexMask{1} << (x - 1);
                        pl.vertices |= VertexMask{1} << (y - 1);
                    }
                    if (!ok) continue;
                    placed.push_back(pl);
                    assign(part_idx + 1, rest);
                    placed.pop_back();
                }
                return;
            }
            for (size_t i = from; i < remaining.size(); ++i) {
                pick[depth] = i;
                block[depth] = remaining[i];
                choose(i + 1, depth + 1);
            }
        };
        choose(0, 0);
    };
    assign(0, free_labels);
    return structures.size();
}

}  // namespace vtrees
