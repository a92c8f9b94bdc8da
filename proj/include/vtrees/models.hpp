#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "vtrees/graphs.hpp"
#include "vtrees/penrose.hpp"
#include "vtrees/rational.hpp"
#include "vtrees/splitting.hpp"

namespace vtrees {

// Exactly summable interaction models. Both are positive potentials, so the
// stability factor u = e^{2 beta B} is 1; beta itself never appears, the
// models are parameterized directly by their Mayer f-values.
//
//   OnePoint   : hard core on a single site, f = -1 for every pair.
//   Lattice1D a: sites are integers, f(x,y) = -1 if |x-y| < a, else 0.
struct WeightModel {
    enum class Kind { OnePoint, Lattice1D };
    Kind kind = Kind::OnePoint;
    int range = 1;  // a, only meaningful for Lattice1D

    std::string id() const {
        return kind == Kind::OnePoint ? "onepoint" : "lattice:a=" + std::to_string(range);
    }

    // C(beta): lattice sum of |f| over relative position, the count of sites
    // within the hard core.
    Rational temperedness() const {
        return kind == Kind::OnePoint ? Rational(1) : Rational(2 * range - 1);
    }

    Rational stability_u() const { return Rational(1); }
};

inline WeightModel parse_model(const std::string& text) {
    if (text == "onepoint") return {WeightModel::Kind::OnePoint, 1};
    const std::string prefix = "lattice:a=";
    if (text.rfind(prefix, 0) == 0) {
        const std::string arg = text.substr(prefix.size());
        if (!arg.empty() && arg.find_first_not_of("0123456789") == std::string::npos) {
            int a = std::atoi(arg.c_str());
            if (a >= 1) return {WeightModel::Kind::Lattice1D, a};
        }
    }
    throw std::invalid_argument("unknown model '" + text + "' (expected onepoint | lattice:a=<int>)");
}

inline Rational mayer_f(const WeightModel& model, long site_i, long site_j) {
    if (model.kind == WeightModel::Kind::OnePoint) return Rational(-1);
    long d = site_i - site_j;
    if (d < 0) d = -d;
    return d < model.range ? Rational(-1) : Rational(0);
}

namespace detail {

// Walks every configuration with nonzero tree-edge support: vertex `pin` sits
// at the origin and each further vertex is placed within the hard core of an
// already-placed neighbour, following a spanning tree of `edges`. Configurations
// violating a spanning-tree edge contribute zero anyway, so this enumeration
// is exact for full products over any edge superset.
template <typename Visit>
void for_each_support_config(const WeightModel& model, int n, EdgeBits edges, VertexMask vertices,
                             int pin, Visit&& visit) {
    std::vector<int> order;       // placement order, spanning-tree BFS from pin
    std::vector<int> parent;      // vertex this one is placed relative to
    std::vector<int> pos(static_cast<size_t>(n) + 1, 0);
    {
        VertexMask seen = VertexMask{1} << (pin - 1);
        order.push_back(pin);
        parent.push_back(0);
        size_t head = 0;
        while (head < order.size()) {
            int v = order[head++];
            for (int w = 1; w <= n; ++w) {
                if (!(vertices >> (w - 1) & 1) || (seen >> (w - 1) & 1)) continue;
                if (edges >> pair_index(n, v, w) & 1) {
                    seen |= VertexMask{1} << (w - 1);
                    order.push_back(w);
                    parent.push_back(v);
                }
            }
        }
        if (popcount64(static_cast<EdgeBits>(seen)) != __builtin_popcount(vertices))
            throw std::invalid_argument("support enumeration needs a connected edge set");
    }
    int spread = model.kind == WeightModel::Kind::OnePoint ? 0 : model.range - 1;
    auto rec = [&](auto&& self, size_t idx) -> void {
        if (idx == order.size()) {
            visit(pos);
            return;
        }
        int v = order[idx];
        int base = pos[static_cast<size_t>(parent[idx])];
        for (int d = -spread; d <= spread; ++d) {
            pos[static_cast<size_t>(v)] = base + d;
            self(self, idx + 1);
        }
    };
    pos[static_cast<size_t>(pin)] = 0;
    rec(rec, 1);
}

inline bool within_core(const WeightModel& model, int x, int y) {
    if (model.kind == WeightModel::Kind::OnePoint) return true;
    return std::abs(x - y) < model.range;
}

}  // namespace detail

// Infinite-volume weight of a connected graph: sum over configurations with
// the pinned vertex at the origin of prod_{e in E(G)} f_e. Finite because the
// support of f is bounded and G is connected.
inline Rational graph_weight_sum(const WeightModel& model, const LabeledGraph& g, int pin = 1) {
    if (!is_connected(g)) throw std::invalid_argument("graph_weight_sum: graph must be connected");
    if (pin < 1 || pin > g.n) throw std::invalid_argument("graph_weight_sum: bad pin vertex");
    auto edges = edge_list(g.n, g.edges);
    long count = 0;
    detail::for_each_support_config(model, g.n, g.edges, full_vertex_mask(g.n), pin,
                                    [&](const std::vector<int>& pos) {
        for (auto [i, j] : edges)
            if (!detail::within_core(model, pos[static_cast<size_t>(i)], pos[static_cast<size_t>(j)]))
                return;  // some f-factor vanishes
        ++count;
    });
    Rational w(count);
    if (static_cast<int>(edges.size()) % 2 == 1) w = -w;  // each f contributes -1 on support
    return w;
}

// Weight of a tree under the partition scheme: tree f-factors times
// (1+f)-factors over the completion edges, summed over configurations with
// vertex `root` pinned at the origin. The (1+f) factor is the indicator that
// the pair sits outside the hard core.
inline Rational subtree_scheme_weight(const WeightModel& model, int n, const SubTree& part, int root) {
    if (!subtree_valid(n, part)) throw std::invalid_argument("subtree_scheme_weight: invalid part");
    EdgeBits extra = subtree_extra(n, part, root);
    auto extra_pairs = edge_list(n, extra);
    long count = 0;
    detail::for_each_support_config(model, n, part.edges, part.vertices, root,
                                    [&](const std::vector<int>& pos) {
        for (auto [i, j] : extra_pairs)
            if (detail::within_core(model, pos[static_cast<size_t>(i)], pos[static_cast<size_t>(j)]))
                return;  // (1+f) = 0 inside the core
        ++count;
    });
    Rational w(count);
    if (popcount64(part.edges) % 2 == 1) w = -w;
    return w;
}

inline Rational tree_weight(const WeightModel& model, const LabeledTree& t) {
    validate_tree(t);
    return subtree_scheme_weight(model, t.n, {full_vertex_mask(t.n), t.edges}, 1);
}

inline Rational temperedness(const WeightModel& model) { return model.temperedness(); }

}  // namespace vtrees
