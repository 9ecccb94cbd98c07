#pragma once

#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "mfcalc/polynomial.hpp"

namespace mfcalc {

enum class MonomialOrder { Grevlex, Lex };

/// Strict "greater" in the given order.
inline bool mono_greater(const Monomial& a, const Monomial& b, MonomialOrder ord) {
    switch (ord) {
    case MonomialOrder::Lex:
        return a > b;
    case MonomialOrder::Grevlex: {
        long long da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        // a > b iff the LAST nonzero entry of a-b is negative
        for (int i = (int)a.size() - 1; i >= 0; --i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
    }
    return false;
}

inline std::pair<Monomial, Rational> leading_term(const Polynomial& f, MonomialOrder ord) {
    if (f.is_zero()) throw Error("leading term of zero polynomial");
    auto it = f.terms().begin();
    Monomial best = it->first;
    Rational c = it->second;
    for (++it; it != f.terms().end(); ++it) {
        if (mono_greater(it->first, best, ord)) {
            best = it->first;
            c = it->second;
        }
    }
    return {best, c};
}

struct GroebnerBasis {
    std::vector<Polynomial> generators; // reduced, monic
    MonomialOrder order = MonomialOrder::Grevlex;
};

/// Multivariate division remainder: no term of the result is divisible by any
/// leading monomial of gb. Linear in f.
inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb) {
    std::vector<std::pair<Monomial, Rational>> lts;
    lts.reserve(gb.generators.size());
    for (auto& g : gb.generators) lts.push_back(leading_term(g, gb.order));

    Polynomial rem(f.n());
    Polynomial work = f;
    while (!work.is_zero()) {
        auto [m, c] = leading_term(work, gb.order);
        bool reduced = false;
        for (size_t i = 0; i < lts.size(); ++i) {
            if (!divides(lts[i].first, m)) continue;
            Monomial q = mono_div(m, lts[i].first);
            Rational factor = c / lts[i].second;
            work -= Polynomial::monomial(f.n(), q, factor) * gb.generators[i];
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.add_term(m, c);
            work.add_term(m, -c);
        }
    }
    return rem;
}

namespace detail {

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, MonomialOrder ord) {
    auto [mf, cf] = leading_term(f, ord);
    auto [mg, cg] = leading_term(g, ord);
    Monomial l = mono_lcm(mf, mg);
    Polynomial a = Polynomial::monomial(f.n(), mono_div(l, mf), Rational(1) / cf);
    Polynomial b = Polynomial::monomial(f.n(), mono_div(l, mg), Rational(1) / cg);
    return a * f - b * g;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

} // namespace detail

/// Buchberger with the coprime-leading-monomial criterion, then inter-reduction
/// to the unique reduced monic basis. Terminates on every input.
inline GroebnerBasis buchberger(std::vector<Polynomial> gens,
                                MonomialOrder order = MonomialOrder::Grevlex) {
    std::vector<Polynomial> basis;
    for (auto& g : gens)
        if (!g.is_zero()) basis.push_back(g);
    if (basis.empty()) throw Error("Groebner basis of the zero ideal");

    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j)
            pairs.emplace_back(i, j);

    GroebnerBasis current{basis, order};
    while (!pairs.empty()) {
        auto [i, j] = pairs.back();
        pairs.pop_back();
        auto lti = leading_term(current.generators[i], order).first;
        auto ltj = leading_term(current.generators[j], order).first;
        if (detail::coprime(lti, ltj)) continue;
        Polynomial s = detail::s_polynomial(current.generators[i], current.generators[j], order);
        Polynomial r = normal_form(s, current);
        if (r.is_zero()) continue;
        size_t k = current.generators.size();
        for (size_t t = 0; t < k; ++t) pairs.emplace_back(t, k);
        current.generators.push_back(r);
    }

    // Inter-reduce: drop generators whose lead is divisible by another lead,
    // fully reduce tails, normalize leading coefficients to 1.
    std::vector<Polynomial>& g = current.generators;
    std::vector<Polynomial> reduced;
    for (size_t i = 0; i < g.size(); ++i) {
        auto lti = leading_term(g[i], order).first;
        bool redundant = false;
        for (size_t j = 0; j < g.size(); ++j) {
            if (i == j) continue;
            auto ltj = leading_term(g[j], order).first;
            if (divides(ltj, lti) && !(lti == ltj && j > i)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) reduced.push_back(g[i]);
    }
    GroebnerBasis trimmed{reduced, order};
    std::vector<Polynomial> final_basis;
    for (size_t i = 0; i < trimmed.generators.size(); ++i) {
        GroebnerBasis others{{}, order};
        for (size_t j = 0; j < trimmed.generators.size(); ++j)
            if (j != i) others.generators.push_back(trimmed.generators[j]);
        Polynomial r = others.generators.empty()
                           ? trimmed.generators[i]
                           : normal_form(trimmed.generators[i], others);
        if (r.is_zero()) continue;
        auto [m, c] = leading_term(r, order);
        final_basis.push_back(Rational(1) / c * r);
    }
    std::sort(final_basis.begin(), final_basis.end(),
              [&](const Polynomial& a, const Polynomial& b) {
                  return mono_greater(leading_term(b, order).first,
                                      leading_term(a, order).first, order);
              });
    return GroebnerBasis{final_basis, order};
}

/// Milnor-ring data of an isolated singularity: Jacobian Groebner basis,
/// standard monomial basis, Milnor number, Hessian normal form, socle degree.
/// `full` is false for reduction-only data of a non-isolated potential, where
/// only the Jacobian basis and normal forms are available.
struct MilnorData {
    int n = 0;
    Polynomial w;
    GroebnerBasis jacobian_gb;
    std::vector<Monomial> basis; // standard monomials, grlex ascending
    long long mu = 0;
    Polynomial hessian_nf;
    std::optional<WeightSystem> ws;
    std::optional<long long> socle_degree;
    bool full = true;

    Polynomial nf(const Polynomial& f) const { return normal_form(f, jacobian_gb); }
};

/// Jacobian normal-form data without the zero-dimensionality requirements;
/// enough to reduce twisted de Rham classes of an arbitrary potential.
inline MilnorData jacobian_reduction_data(const Polynomial& w,
                                          MonomialOrder order = MonomialOrder::Grevlex) {
    if (w.is_zero()) throw Error("reduction data of the zero potential");
    std::vector<Polynomial> jac;
    for (int i = 0; i < w.n(); ++i) {
        Polynomial d = w.derivative(i);
        if (!d.is_zero()) jac.push_back(d);
    }
    if (jac.empty()) throw Error("all partial derivatives vanish");
    MilnorData md;
    md.n = w.n();
    md.w = w;
    md.jacobian_gb = buchberger(jac, order);
    md.full = false;
    return md;
}

namespace detail {

inline void enumerate_standard(const std::vector<Monomial>& leads, Monomial& cur, int var,
                               const std::vector<int>& bound, std::vector<Monomial>& out,
                               long long cap) {
    if (var == (int)cur.size()) {
        for (auto& l : leads)
            if (divides(l, cur)) return;
        out.push_back(cur);
        if ((long long)out.size() > cap)
            throw NotIsolatedError("standard monomial count exceeded cap");
        return;
    }
    for (int e = 0; e < bound[var]; ++e) {
        cur[var] = e;
        enumerate_standard(leads, cur, var + 1, bound, out, cap);
    }
    cur[var] = 0;
}

} // namespace detail

inline MilnorData milnor_data(const Polynomial& w, std::optional<WeightSystem> ws = {},
                              MonomialOrder order = MonomialOrder::Grevlex) {
    int n = w.n();
    if (w.is_zero()) throw Error("milnor data of the zero potential");
    if (w.constant_value() != 0)
        throw CriticalValueNonzeroError("potential has nonzero value at the origin");
    if (ws) {
        if ((int)ws->weights.size() != n)
            throw RingMismatchError("weight system has wrong variable count");
        auto d = w.weighted_degree(*ws);
        if (!d || *d != ws->h)
            throw Error("potential is not quasi-homogeneous of the declared degree");
    }

    std::vector<Polynomial> jac;
    for (int i = 0; i < n; ++i) jac.push_back(w.derivative(i));
    for (auto& p : jac)
        if (p.is_zero()) throw NotIsolatedError("a partial derivative vanishes identically");

    MilnorData md;
    md.n = n;
    md.w = w;
    md.ws = ws;
    md.jacobian_gb = buchberger(jac, order);

    // Zero-dimensionality: each variable must have a pure power among the
    // leading monomials (this is also the x_i-power radical-membership check).
    std::vector<Monomial> leads;
    for (auto& g : md.jacobian_gb.generators)
        leads.push_back(leading_term(g, order).first);
    std::vector<int> bound(n, -1);
    for (auto& l : leads) {
        int nz = -1, count = 0;
        for (int i = 0; i < n; ++i)
            if (l[i] > 0) { nz = i; ++count; }
        if (count == 1 && (bound[nz] < 0 || l[nz] < bound[nz])) bound[nz] = l[nz];
        if (count == 0) throw Error("Jacobian ideal contains a unit");
    }
    for (int i = 0; i < n; ++i)
        if (bound[i] < 0)
            throw NotIsolatedError("no pure power of variable " + std::to_string(i + 1) +
                                   " in the Jacobian leading ideal");

    Monomial cur(n, 0);
    detail::enumerate_standard(leads, cur, 0, bound, md.basis, 1 << 20);
    std::sort(md.basis.begin(), md.basis.end(), [](const Monomial& a, const Monomial& b) {
        return GrlexGreater{}(b, a);
    });
    md.mu = (long long)md.basis.size();

    // Hessian determinant via cofactor expansion (n is small).
    std::vector<std::vector<Polynomial>> hess(n, std::vector<Polynomial>(n, Polynomial(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) hess[i][j] = w.derivative(i).derivative(j);
    std::vector<int> cols(n);
    for (int i = 0; i < n; ++i) cols[i] = i;
    std::function<Polynomial(int, std::vector<int>&)> det = [&](int row, std::vector<int>& cs) {
        if (cs.empty()) return Polynomial::constant(n, 1);
        Polynomial acc(n);
        for (size_t k = 0; k < cs.size(); ++k) {
            int c = cs[k];
            std::vector<int> rest;
            for (size_t t = 0; t < cs.size(); ++t)
                if (t != k) rest.push_back(cs[t]);
            Polynomial sub = det(row + 1, rest);
            Polynomial term = hess[row][c] * sub;
            acc += (k % 2 == 0) ? term : -term;
        }
        return acc;
    };
    md.hessian_nf = md.nf(det(0, cols));
    if (md.hessian_nf.is_zero())
        throw NotIsolatedError("Hessian lies in the Jacobian ideal");

    if (ws) {
        // Product formula cross-check and socle-degree bookkeeping.
        Rational product = 1;
        for (long long wi : ws->weights)
            product *= Rational(ws->h - wi, wi);
        if (product != Rational(md.mu))
            throw Error("Milnor number disagrees with the product formula");
        long long socle = 0;
        for (long long wi : ws->weights) socle += ws->h - 2 * wi;
        md.socle_degree = socle;
        int at_socle = 0;
        for (auto& m : md.basis) {
            long long d = ws->degree(m);
            if (d > socle) throw Error("standard monomial above the socle degree");
            if (d == socle) ++at_socle;
        }
        if (at_socle != 1) throw Error("socle is not one-dimensional");
        auto hd = md.hessian_nf.weighted_degree(*ws);
        if (!hd || *hd != socle) throw Error("Hessian class is not of socle degree");
    }
    return md;
}

} // namespace mfcalc
