#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "vtrees/graphs.hpp"
#include "vtrees/models.hpp"
#include "vtrees/penrose.hpp"
#include "vtrees/rational.hpp"
#include "vtrees/series.hpp"
#include "vtrees/splitting.hpp"

namespace vtrees {

// Graph enumeration cap for cluster coefficients. C[7] already means 2^21
// edge subsets; lattice configuration sums on top of that are slow but exact.
constexpr int kMaxCoefficientN = 7;

inline void check_coefficient_cap(int nmax) {
    if (nmax < 1 || nmax > kMaxCoefficientN)
        throw CapError("coefficients: nmax outside supported range (1.." +
                                    std::to_string(kMaxCoefficientN) + ")");
}

// b_n = sum over connected graphs on [n] of the model's tilde-weight.
// Entries are 1-based: result[k] = b_k, result[0] unused. b_1 = 1 comes from
// pinning the single vertex at the origin.
inline std::vector<Rational> cluster_coefficients(const WeightModel& model, int nmax) {
    check_coefficient_cap(nmax);
    std::vector<Rational> b(static_cast<size_t>(nmax) + 1, Rational(0));
    for (int n = 1; n <= nmax; ++n) {
        Rational total = 0;
        enumerate_connected(n, [&](const LabeledGraph& g) { total += graph_weight_sum(model, g); });
        b[static_cast<size_t>(n)] = total;
    }
    return b;
}

// Weighted sums over l-splittable trees on [m]; result[l] = sum of
// tilde-weights over trees with max splittability exactly l.
inline std::vector<Rational> weighted_splittable_sums(const WeightModel& model, int m) {
    if (m < 2 || m > kMaxTreeEnumN)
        throw CapError("weighted_splittable_sums: m outside supported range");
    std::vector<Rational> sums(static_cast<size_t>(m), Rational(0));
    enumerate_trees(m, [&](const LabeledTree& t) {
        TreeSplitter splitter(t);
        sums[static_cast<size_t>(splitter.max_splittability())] += tree_weight(model, t);
    });
    return sums;
}

// T_Pen,1,w(z) = sum_k z^k/k! * (weighted sum over non-splittable trees on [k+1]).
inline PowerSeries weighted_t1_series(const WeightModel& model, int order) {
    PowerSeries s(order);
    for (int k = 1; k <= order; ++k) {
        auto sums = weighted_splittable_sums(model, k + 1);
        s[k] = sums[1] / Rational(factorial(static_cast<unsigned>(k)));
    }
    return s;
}

// Route 1: Bell-polynomial formula applied to the cluster coefficients.
inline std::vector<Rational> virial_via_bell(const WeightModel& model, int nmax) {
    check_coefficient_cap(nmax);
    auto b = cluster_coefficients(model, nmax);
    std::vector<Rational> b_list(b.begin() + 1, b.end());  // b_1, b_2, ...
    std::vector<Rational> beta(static_cast<size_t>(nmax) + 1, Rational(0));
    beta[1] = 1;
    for (int n = 1; n + 1 <= nmax; ++n) beta[static_cast<size_t>(n + 1)] = lagrange_virial(b_list, n);
    return beta;
}

// Route 2: independent series reversion of the same cluster coefficients.
inline std::vector<Rational> virial_via_reversion(const WeightModel& model, int nmax) {
    check_coefficient_cap(nmax);
    auto b = cluster_coefficients(model, nmax);
    std::vector<Rational> b_list(b.begin() + 1, b.end());
    std::vector<Rational> beta(static_cast<size_t>(nmax) + 1, Rational(0));
    beta[1] = 1;
    for (int n = 1; n + 1 <= nmax; ++n) beta[static_cast<size_t>(n + 1)] = reversion_oracle(b_list, n);
    return beta;
}

// Route 3: weighted trees under the Penrose scheme,
// beta_{n+1} = sum_m (-1)^m binom(n,m) * (weighted m-splittable sum on [n+1]).
inline std::vector<Rational> virial_via_trees(const WeightModel& model, int nmax) {
    check_coefficient_cap(nmax);
    std::vector<Rational> beta(static_cast<size_t>(nmax) + 1, Rational(0));
    beta[1] = 1;
    for (int n = 1; n + 1 <= nmax; ++n) {
        auto sums = weighted_splittable_sums(model, n + 1);
        Rational total = 0;
        for (int m = 1; m <= n; ++m) {
            Rational term = Rational(binomial_uint(static_cast<unsigned>(n), static_cast<unsigned>(m))) *
                            sums[static_cast<size_t>(m)];
            total += (m % 2 == 1) ? -term : term;
        }
        beta[static_cast<size_t>(n + 1)] = total;
    }
    return beta;
}

// Same route through the generating function:
// beta_{n+1}/(n+1)! = [z^n] (1 - T_Pen,1,w(z))^n / (n+1).
inline std::vector<Rational> virial_via_trees_gf(const WeightModel& model, int nmax) {
    check_coefficient_cap(nmax);
    std::vector<Rational> beta(static_cast<size_t>(nmax) + 1, Rational(0));
    beta[1] = 1;
    int order = nmax - 1;
    if (order < 1) return beta;
    PowerSeries t1w = weighted_t1_series(model, order);
    for (int n = 1; n + 1 <= nmax; ++n) {
        PowerSeries body = ps_pow(ps_sub(ps_const(1, order), t1w), static_cast<unsigned>(n));
        beta[static_cast<size_t>(n + 1)] =
            body[n] / Rational(n + 1) * Rational(factorial(static_cast<unsigned>(n + 1)));
    }
    return beta;
}

// Weighted power identity T_Pen,m,w = (T_Pen,1,w)^m: the m-splittable weighted
// sum on [n+1] must match the z^n coefficient of the m-th power, scaled by n!.
inline bool weighted_splittable_consistency(const WeightModel& model, int n) {
    if (n < 1 || n + 1 > kMaxTreeEnumN)
        throw CapError("weighted_splittable_consistency: n outside supported range");
    auto sums = weighted_splittable_sums(model, n + 1);
    PowerSeries t1w = weighted_t1_series(model, n);
    for (int m = 1; m <= n; ++m) {
        PowerSeries powm = ps_pow(t1w, static_cast<unsigned>(m));
        Rational expected = powm[n] * Rational(factorial(static_cast<unsigned>(n)));
        if (sums[static_cast<size_t>(m)] != expected) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

struct CoefficientTable {
    std::string model_id;
    int nmax = 0;
    std::string route;                // graph+bell | graph+reversion | penrose-trees
    std::vector<Rational> b;          // 1-based, may be empty for the tree route
    std::vector<Rational> beta;       // 1-based
};

inline CoefficientTable coefficient_table(const WeightModel& model, int nmax, const std::string& route) {
    CoefficientTable t;
    t.model_id = model.id();
    t.nmax = nmax;
    if (route == "bell") {
        t.route = "graph+bell";
        t.b = cluster_coefficients(model, nmax);
        t.beta = virial_via_bell(model, nmax);
    } else if (route == "reversion") {
        t.route = "graph+reversion";
        t.b = cluster_coefficients(model, nmax);
        t.beta = virial_via_reversion(model, nmax);
    } else if (route == "trees") {
        t.route = "penrose-trees";
        t.beta = virial_via_trees(model, nmax);
    } else {
        throw std::invalid_argument("coefficient_table: unknown route '" + route + "'");
    }
    return t;
}

}  // namespace vtrees
