#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "vtrees/rational.hpp"

namespace vtrees {

// Truncated formal power series over exact rationals. coeff[k] is the
// coefficient of z^k; coefficients beyond order() are unknown, not zero, and
// arithmetic never reports coefficients beyond the minimum order of its
// inputs.
struct PowerSeries {
    std::vector<Rational> c;  // size order+1

    PowerSeries() = default;
    explicit PowerSeries(int order) : c(static_cast<size_t>(order) + 1, Rational(0)) {
        if (order < 0) throw std::invalid_argument("PowerSeries: negative order");
    }

    int order() const { return static_cast<int>(c.size()) - 1; }
    const Rational& operator[](int k) const { return c[static_cast<size_t>(k)]; }
    Rational& operator[](int k) { return c[static_cast<size_t>(k)]; }

    PowerSeries truncated(int order) const {
        if (order > this->order()) throw std::invalid_argument("truncated: cannot extend order");
        PowerSeries r(order);
        for (int k = 0; k <= order; ++k) r[k] = (*this)[k];
        return r;
    }
};

inline PowerSeries ps_const(const Rational& v, int order) {
    PowerSeries r(order);
    r[0] = v;
    return r;
}

inline PowerSeries ps_identity(int order) {
    PowerSeries r(order);
    if (order >= 1) r[1] = 1;
    return r;
}

inline PowerSeries ps_add(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r(std::min(a.order(), b.order()));
    for (int k = 0; k <= r.order(); ++k) r[k] = a[k] + b[k];
    return r;
}

inline PowerSeries ps_sub(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r(std::min(a.order(), b.order()));
    for (int k = 0; k <= r.order(); ++k) r[k] = a[k] - b[k];
    return r;
}

inline PowerSeries ps_scale(const Rational& s, const PowerSeries& a) {
    PowerSeries r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

inline PowerSeries ps_mul(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r(std::min(a.order(), b.order()));
    for (int i = 0; i <= std::min(a.order(), r.order()); ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= r.order() && j <= b.order(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

inline PowerSeries ps_pow(const PowerSeries& a, unsigned k) {
    PowerSeries r = ps_const(1, a.order());
    for (unsigned i = 0; i < k; ++i) r = ps_mul(r, a);
    return r;
}

// a(b(z)); b must have zero constant term so each coefficient is a finite sum.
inline PowerSeries ps_compose(const PowerSeries& a, const PowerSeries& b) {
    if (b[0] != 0) throw std::invalid_argument("ps_compose: inner series needs zero constant term");
    int order = std::min(a.order(), b.order());
    PowerSeries r = ps_const(a[std::min(a.order(), order)], order);
    for (int k = std::min(a.order(), order) - 1; k >= 0; --k) {
        r = ps_mul(r, b.truncated(order));
        r[0] += a[k];
    }
    return r;
}

inline PowerSeries ps_derive(const PowerSeries& a) {
    if (a.order() == 0) throw std::invalid_argument("ps_derive: order too small");
    PowerSeries r(a.order() - 1);
    for (int k = 1; k <= a.order(); ++k) r[k - 1] = Rational(k) * a[k];
    return r;
}

// z d/dz; keeps the order since the k-th output coefficient is k*c_k.
inline PowerSeries ps_euler_derive(const PowerSeries& a) {
    PowerSeries r(a.order());
    for (int k = 0; k <= a.order(); ++k) r[k] = Rational(k) * a[k];
    return r;
}

inline PowerSeries ps_integrate(const PowerSeries& a) {
    PowerSeries r(a.order() + 1);
    for (int k = 0; k <= a.order(); ++k) r[k + 1] = a[k] / Rational(k + 1);
    return r;
}

inline PowerSeries ps_div(const PowerSeries& a, const PowerSeries& b) {
    if (b[0] == 0) throw std::invalid_argument("ps_div: division by series with zero constant term");
    PowerSeries r(std::min(a.order(), b.order()));
    for (int k = 0; k <= r.order(); ++k) {
        Rational acc = k <= a.order() ? a[k] : Rational(0);
        for (int j = 1; j <= k; ++j) acc -= b[j] * r[k - j];
        r[k] = acc / b[0];
    }
    return r;
}

inline PowerSeries ps_exp(const PowerSeries& a) {
    if (a[0] != 0) throw std::invalid_argument("ps_exp: argument needs zero constant term");
    PowerSeries r = ps_const(1, a.order());
    PowerSeries term = ps_const(1, a.order());
    for (int k = 1; k <= a.order(); ++k) {
        term = ps_scale(Rational(1) / Rational(k), ps_mul(term, a));
        r = ps_add(r, term);
    }
    return r;
}

// (1 + s)^r for rational exponent r, where s has zero constant term.
inline PowerSeries ps_binomial_pow(const PowerSeries& one_plus_s, const Rational& r) {
    if (one_plus_s[0] != 1) throw std::invalid_argument("ps_binomial_pow: constant term must be 1");
    PowerSeries s = one_plus_s;
    s[0] = 0;
    PowerSeries acc = ps_const(1, s.order());
    PowerSeries power = ps_const(1, s.order());
    for (int k = 1; k <= s.order(); ++k) {
        power = ps_mul(power, s);
        acc = ps_add(acc, ps_scale(gen_binomial(r, static_cast<unsigned>(k)), power));
    }
    return acc;
}

// Degree-ascending "c_k z^k" lines with exact fractions; zero terms skipped.
inline std::string ps_pretty(const PowerSeries& a, const std::string& var = "z") {
    std::string out;
    for (int k = 0; k <= a.order(); ++k) {
        if (a[k] == 0) continue;
        out += rational_to_string(a[k]) + " " + var + "^" + std::to_string(k) + "\n";
    }
    if (out.empty()) out = "0\n";
    return out;
}

// ---------------------------------------------------------------------------
// Bell and potential polynomials

// Partial Bell polynomial B_{n,k}(x_1,...) by its explicit sum over
// (k_1,...,k_n) with sum k_i = k and sum i*k_i = n.
inline Rational bell_partial(int n, int k, const std::vector<Rational>& xs) {
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("bell_partial: need 1 <= k <= n");
    if (static_cast<int>(xs.size()) < n - k + 1)
        throw std::invalid_argument("bell_partial: needs x_1..x_{n-k+1}");
    Rational total = 0;
    // counts[i] = k_i for block size i; recursion over i with running sums
    std::vector<int> counts(static_cast<size_t>(n) + 1, 0);
    auto rec = [&](auto&& self, int i, int parts_left, int weight_left) -> void {
        if (i > n) {
            if (parts_left != 0 || weight_left != 0) return;
            Rational term(factorial(static_cast<unsigned>(n)));
            for (int j = 1; j <= n; ++j) {
                int kj = counts[static_cast<size_t>(j)];
                if (kj == 0) continue;
                term /= Rational(factorial(static_cast<unsigned>(kj)));
                term *= pow_rational(xs[static_cast<size_t>(j - 1)] / Rational(factorial(static_cast<unsigned>(j))), static_cast<unsigned>(kj));
            }
            total += term;
            return;
        }
        for (int kj = 0; kj <= parts_left && kj * i <= weight_left; ++kj) {
            counts[static_cast<size_t>(i)] = kj;
            self(self, i + 1, parts_left - kj, weight_left - kj * i);
        }
        counts[static_cast<size_t>(i)] = 0;
    };
    rec(rec, 1, k, n);
    return total;
}

// Potential polynomial P_n^{(r)} = sum_k (r)^(k-falling) B_{n,k}(xs).
inline Rational potential_polynomial(int n, const Rational& r, const std::vector<Rational>& xs) {
    if (n < 1) throw std::invalid_argument("potential_polynomial: n >= 1");
    Rational total = 0;
    for (int k = 1; k <= n; ++k)
        total += falling_factorial(r, static_cast<unsigned>(k)) * bell_partial(n, k, xs);
    return total;
}

// ---------------------------------------------------------------------------
// Cluster -> virial conversion
//
// Both routes consume the cluster list b_1=1, b_2, ... and produce
// beta_{n+1}. They deliberately share no code: the Bell route is the closed
// formula, the reversion route inverts the density series term by term.

inline void check_b_list(const std::vector<Rational>& b, int n) {
    if (static_cast<int>(b.size()) < n + 1)
        throw std::invalid_argument("virial: need b_1..b_{n+1}");
    if (b[0] != 1) throw std::invalid_argument("virial: normalization requires b_1 = 1");
}

// beta_{n+1} = sum_k binom(-n,k) k! B_{n,k}(b_2,...,b_{n+1}).
inline Rational lagrange_virial(const std::vector<Rational>& b, int n) {
    check_b_list(b, n);
    std::vector<Rational> xs(b.begin() + 1, b.begin() + 1 + n);
    Rational total = 0;
    for (int k = 1; k <= n; ++k)
        total += gen_binomial(Rational(-n), static_cast<unsigned>(k)) *
                 Rational(factorial(static_cast<unsigned>(k))) * bell_partial(n, k, xs);
    return total;
}

// Independent oracle: build rho(z) = sum b_m z^m/(m-1)!, revert it by
// iterated substitution, compose the pressure series with z(rho), and read
// off (n+1)! times the rho^{n+1} coefficient.
inline Rational reversion_oracle(const std::vector<Rational>& b, int n) {
    check_b_list(b, n);
    int order = n + 1;
    PowerSeries rho(order), pressure(order);
    for (int m = 1; m <= order && m <= static_cast<int>(b.size()); ++m) {
        rho[m] = b[static_cast<size_t>(m - 1)] / Rational(factorial(static_cast<unsigned>(m - 1)));
        pressure[m] = b[static_cast<size_t>(m - 1)] / Rational(factorial(static_cast<unsigned>(m)));
    }
    // g = rho(z)/z has constant term 1; iterate z = rho / g(z)
    PowerSeries g(order - 1);
    for (int k = 0; k <= order - 1; ++k) g[k] = rho[k + 1];
    PowerSeries z_of_rho = ps_identity(order);
    for (int it = 0; it < order; ++it) {
        PowerSeries gz = ps_compose(g, z_of_rho.truncated(order - 1));
        PowerSeries inv = ps_div(ps_const(1, gz.order()), gz);
        PowerSeries next(order);
        for (int k = 1; k <= order; ++k) next[k] = (k - 1 <= inv.order() ? inv[k - 1] : Rational(0));
        z_of_rho = next;
    }
    PowerSeries p_of_rho = ps_compose(pressure, z_of_rho);
    return p_of_rho[n + 1] * Rational(factorial(static_cast<unsigned>(n + 1)));
}

// ---------------------------------------------------------------------------
// Tree generating functions (exponential, exact)

// T^bullet(z) = sum n^(n-1) z^n / n!   (rooted trees)
inline PowerSeries rooted_tree_series(int order) {
    PowerSeries r(order);
    for (int m = 1; m <= order; ++m) {
        BigInt p = 1;
        for (int i = 0; i < m - 1; ++i) p *= m;
        r[m] = Rational(p) / Rational(factorial(static_cast<unsigned>(m)));
    }
    return r;
}

// T(z) = sum n^(n-2) z^n / n!   (all trees)
inline PowerSeries tree_series(int order) {
    PowerSeries r(order);
    if (order >= 1) r[1] = 1;
    for (int m = 2; m <= order; ++m) {
        BigInt p = 1;
        for (int i = 0; i < m - 2; ++i) p *= m;
        r[m] = Rational(p) / Rational(factorial(static_cast<unsigned>(m)));
    }
    return r;
}

// T_1(z) = z + sum_{m>=2} (m-1)^(m-1) z^m / m!   (non-splittable trees)
inline PowerSeries t1_series(int order) {
    PowerSeries r(order);
    if (order >= 1) r[1] = 1;
    for (int m = 2; m <= order; ++m) {
        BigInt p = 1;
        for (int i = 0; i < m - 1; ++i) p *= m - 1;
        r[m] = Rational(p) / Rational(factorial(static_cast<unsigned>(m)));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Identity suite: the eight generating-function identities tying T, T^bullet
// and T_1 together, checked coefficient-by-coefficient.

struct IdentityCheck {
    std::string name;
    bool pass = false;
    int max_degree = 0;  // highest degree compared
};

namespace detail {
inline IdentityCheck ps_equal(const std::string& name, const PowerSeries& a, const PowerSeries& b) {
    int deg = std::min(a.order(), b.order());
    bool ok = true;
    for (int k = 0; k <= deg; ++k)
        if (a[k] != b[k]) { ok = false; break; }
    return {name, ok, deg};
}
}  // namespace detail

inline std::vector<IdentityCheck> identity_suite_for(const PowerSeries& t1, int order) {
    if (order < 1) throw std::invalid_argument("identity_suite: order >= 1");
    PowerSeries rooted = rooted_tree_series(order);
    PowerSeries trees = tree_series(order);
    PowerSeries one = ps_const(1, order);

    // s e^{-s} and companions, as series in s
    PowerSeries s = ps_identity(order);
    PowerSeries exp_minus_s = ps_exp(ps_scale(-1, s));
    PowerSeries se = ps_mul(s, exp_minus_s).truncated(order);
    PowerSeries geom(order);  // 1/(1-s)
    for (int k = 0; k <= order; ++k) geom[k] = 1;

    std::vector<IdentityCheck> out;
    out.push_back(detail::ps_equal(
        "dissymmetry", ps_sub(rooted, ps_scale(make_rational(1, 2), ps_mul(rooted, rooted))), trees));
    out.push_back(detail::ps_equal(
        "doubly-rooted", ps_euler_derive(rooted), ps_div(rooted, ps_sub(one, rooted))));
    out.push_back(detail::ps_equal(
        "functional-equation", rooted, ps_mul(ps_identity(order), ps_exp(rooted))));
    if (order >= 2) {
        PowerSeries tp = ps_derive(trees);
        PowerSeries tpp = ps_derive(tp);
        PowerSeries denom = ps_sub(ps_const(1, order - 1), ps_mul(ps_identity(order - 1), tp));
        out.push_back(detail::ps_equal(
            "second-derivative", tpp, ps_div(ps_mul(tp, tp), denom).truncated(order - 2)));
    } else {
        out.push_back({"second-derivative", true, 0});  // needs two derivatives
    }
    {
        PowerSeries tp = ps_derive(trees);
        out.push_back(detail::ps_equal(
            "t1-from-trees", t1.truncated(order - 1 >= 0 ? order - 1 : 0),
            ps_sub(ps_const(1, order - 1), ps_div(ps_const(1, order - 1), tp))));
    }
    {
        PowerSeries t1p = ps_derive(t1);
        out.push_back(detail::ps_equal(
            "t1-prime-rooted", t1p, ps_div(ps_const(1, order - 1), ps_sub(ps_const(1, order - 1), rooted.truncated(order - 1)))));
        out.push_back(detail::ps_equal(
            "t1-prime-at-se", ps_compose(t1p, se.truncated(order - 1)), geom.truncated(order - 1)));
    }
    out.push_back(detail::ps_equal(
        "t1-at-se", ps_compose(t1, se), ps_sub(one, exp_minus_s)));
    return out;
}

inline std::vector<IdentityCheck> identity_suite(int order) {
    return identity_suite_for(t1_series(order), order);
}

// Negative control: one bumped T_1 coefficient must make the suite fail.
inline std::vector<IdentityCheck> identity_suite_perturbed(int order) {
    PowerSeries t1 = t1_series(order);
    int bump = std::min(3, order);
    t1[bump] += 1;
    return identity_suite_for(t1, order);
}

// sum_{k=1}^m binom(-n,k) binom(m-1,k-1) == (-1)^m binom(n,m), exact.
inline bool binomial_identity_check(int n, int m) {
    if (m < 1 || m > n) throw std::invalid_argument("binomial_identity_check: need 1 <= m <= n");
    Rational lhs = 0;
    for (int k = 1; k <= m; ++k)
        lhs += gen_binomial(Rational(-n), static_cast<unsigned>(k)) *
               gen_binomial(Rational(m - 1), static_cast<unsigned>(k - 1));
    Rational rhs = gen_binomial(Rational(n), static_cast<unsigned>(m));
    if (m % 2 == 1) rhs = -rhs;
    return lhs == rhs;
}

}  // namespace vtrees
