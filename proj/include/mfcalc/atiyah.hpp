#pragma once

#include <string>
#include <vector>

#include "mfcalc/derham.hpp"
#include "mfcalc/mf.hpp"
#include "mfcalc/rng.hpp"

namespace mfcalc {

/// Global sign relating this engine's exponential convention to the reported
/// Chern classes. Calibrated once on w = xy (chern coefficient +1) and frozen.
/// The residue comparison is bilinear in the classes, so it cannot see this sign.
inline constexpr int sigma_ch = -1;

/// An even algebraic connection on the trivialized bundle E0 + E1, given by
/// its matrix of one-forms.
struct Connection {
    SuperForm gamma;

    static Connection zero(const MatrixFactorization& E) {
        return Connection{SuperForm(E.n(), E.r0(), E.r1())};
    }

    void check() const {
        for (auto& [mask, m] : gamma.terms()) {
            if (std::popcount(mask) != 1)
                throw ShapeMismatchError("connection term of form degree != 1");
            if (!split_parity(m, gamma.r0()).odd.is_zero())
                throw ShapeMismatchError("connection matrix has an odd block");
        }
    }
};

inline Connection random_even_connection(const MatrixFactorization& E, Rng& rng,
                                         int max_degree = 2, int terms_per_entry = 1) {
    SuperForm gamma(E.n(), E.r0(), E.r1());
    for (int var = 0; var < E.n(); ++var) {
        PolyMatrix m(E.size(), E.size(), E.n());
        bool nonzero = false;
        for (int i = 0; i < E.size(); ++i)
            for (int j = 0; j < E.size(); ++j) {
                bool even_block = (i < E.r0()) == (j < E.r0());
                if (!even_block) continue;
                if (rng.integer(0, 2) != 0) continue; // sparse
                Polynomial p = rng.polynomial(E.n(), max_degree, terms_per_entry);
                if (!p.is_zero()) nonzero = true;
                m.at(i, j) = p;
            }
        if (nonzero) gamma.add(1u << var, m);
    }
    return Connection{gamma};
}

/// Entrywise exterior derivative of the odd differential, as a superform.
inline SuperForm d_delta(const MatrixFactorization& E) {
    SuperForm out(E.n(), E.r0(), E.r1());
    PolyMatrix delta = E.delta();
    for (int var = 0; var < E.n(); ++var) {
        PolyMatrix m(E.size(), E.size(), E.n());
        for (int i = 0; i < E.size(); ++i)
            for (int j = 0; j < E.size(); ++j) m.at(i, j) = delta.at(i, j).derivative(var);
        out.add(1u << var, m);
    }
    return out;
}

/// Representative of the Atiyah class for a global even connection: scalar
/// part the identity, one-form part A with [delta, A] = -dw (x) I exactly.
struct AtiyahRep {
    SuperForm one_form;
};

inline AtiyahRep atiyah_rep(const MatrixFactorization& E, const Connection& nabla) {
    nabla.check();
    if (nabla.gamma.r0() != E.r0() || nabla.gamma.r1() != E.r1())
        throw ShapeMismatchError("connection shape does not match E");
    SuperForm delta = E.delta_superform();
    SuperForm a = d_delta(E) + supercommutator(nabla.gamma, delta);
    return AtiyahRep{a};
}

/// Exact check of the chain identity [delta, A] = -dw (x) I.
inline bool atiyah_chain_identity(const MatrixFactorization& E, const AtiyahRep& rep) {
    SuperForm delta = E.delta_superform();
    SuperForm lhs = supercommutator(delta, rep.one_form);
    SuperForm rhs(E.n(), E.r0(), E.r1());
    for (int var = 0; var < E.n(); ++var) {
        Polynomial dw = E.w().derivative(var);
        if (dw.is_zero()) continue;
        rhs.add(1u << var, Rational(-1) * PolyMatrix::scalar(E.size(), dw));
    }
    return lhs == rhs;
}

/// exp(at(E)) as the truncated power series sum A^i / i!, i <= n.
inline SuperForm exp_at_series(const MatrixFactorization& E, const Connection& nabla) {
    SuperForm a = atiyah_rep(E, nabla).one_form;
    SuperForm acc = SuperForm::unit(E.n(), E.r0(), E.r1());
    SuperForm power = acc;
    for (int i = 1; i <= E.n(); ++i) {
        power = super_mul(power, a);
        if (power.is_zero()) break;
        acc += Rational(Integer(1), factorial(i)) * power;
    }
    return acc;
}

/// exp(at(E)) via the iterate-and-rescale construction: multiply out
/// (1 + A)^n with n = dim, then rescale the degree-i component by
/// (n-i)!/n! = 1/(n (n-1) ... (n-i+1)). Must equal exp_at_series exactly.
inline SuperForm exp_at_iterated(const MatrixFactorization& E, const Connection& nabla) {
    int n = E.n();
    SuperForm a = atiyah_rep(E, nabla).one_form;
    SuperForm step = SuperForm::unit(n, E.r0(), E.r1()) + a;
    SuperForm iterate = SuperForm::unit(n, E.r0(), E.r1());
    for (int k = 0; k < n; ++k) iterate = super_mul(iterate, step);
    SuperForm out(n, E.r0(), E.r1());
    for (int i = 0; i <= n; ++i) {
        SuperForm part = iterate.degree_part(i);
        if (part.is_zero()) continue;
        out += Rational(factorial(n - i), factorial(n)) * part;
    }
    return out;
}

/// A closed even/odd endomorphism of E, with a printable name.
struct Cocycle {
    std::string name;
    int parity = 0;
    PolyMatrix matrix;

    SuperForm superform(const MatrixFactorization& E) const {
        return SuperForm::of_matrix(E.n(), E.r0(), E.r1(), matrix);
    }
};

inline bool is_cocycle(const MatrixFactorization& E, const PolyMatrix& x) {
    SuperForm sf = SuperForm::of_matrix(E.n(), E.r0(), E.r1(), x);
    return supercommutator(E.delta_superform(), sf).is_zero();
}

namespace detail {

/// Odd Koszul-factor cocycle a_i iota_i - b_i (e_i ^) on the exterior basis.
inline PolyMatrix koszul_factor_cocycle(const KoszulProv& prov, int factor, int n) {
    int r = (int)prov.a.size();
    std::vector<std::uint32_t> even, odd;
    for (std::uint32_t S = 0; S < (1u << r); ++S)
        (std::popcount(S) % 2 == 0 ? even : odd).push_back(S);
    int r0 = (int)even.size();
    int size = r0 + (int)odd.size();
    auto position = [&](std::uint32_t S) {
        if (std::popcount(S) % 2 == 0)
            return (int)(std::lower_bound(even.begin(), even.end(), S) - even.begin());
        return r0 + (int)(std::lower_bound(odd.begin(), odd.end(), S) - odd.begin());
    };
    PolyMatrix m(size, size, n);
    std::uint32_t bit = 1u << factor;
    for (std::uint32_t S = 0; S < (1u << r); ++S) {
        int sign = std::popcount(S & (bit - 1)) % 2 == 0 ? 1 : -1;
        if (S & bit)
            m.at(position(S & ~bit), position(S)) += Rational(sign) * prov.a[factor];
        else
            m.at(position(S | bit), position(S)) += Rational(-sign) * prov.b[factor];
    }
    return m;
}

/// Graded tensor of endomorphisms on the block layout of tensor():
/// (x (x) y)(e (x) f) = (-1)^{|y| |e|} x(e) (x) y(f).
inline PolyMatrix endo_tensor(const MatrixFactorization& E, const MatrixFactorization& F,
                              const Cocycle& x, const Cocycle& y) {
    int e0 = E.r0(), e1 = E.r1(), f0 = F.r0(), f1 = F.r1();
    int n = E.n();
    int R0 = e0 * f0 + e1 * f1, R1 = e0 * f1 + e1 * f0;
    auto gen = [&](int ep, int i, int fp, int j) {
        // global index of generator (e-parity, i) (x) (f-parity, j)
        if (ep == 0 && fp == 0) return i * f0 + j;
        if (ep == 1 && fp == 1) return e0 * f0 + i * f1 + j;
        if (ep == 0 && fp == 1) return R0 + i * f1 + j;
        return R0 + e0 * f1 + i * f0 + j;
    };
    auto xblock = [&](int rp, int cp) -> std::pair<int, int> {
        return {rp == 0 ? 0 : E.r0(), cp == 0 ? 0 : E.r0()};
    };
    PolyMatrix m(R0 + R1, R0 + R1, n);
    for (int ep = 0; ep <= 1; ++ep)
        for (int fp = 0; fp <= 1; ++fp) {
            int xe = (ep + x.parity) % 2; // parity of x(e)
            int yf = (fp + y.parity) % 2;
            int sign = (y.parity * ep) % 2 == 0 ? 1 : -1;
            auto [xr, xc] = xblock(xe, ep);
            auto [yr, yc] = std::pair<int, int>{yf == 0 ? 0 : F.r0(), fp == 0 ? 0 : F.r0()};
            int src_cnt_e = ep == 0 ? e0 : e1;
            int dst_cnt_e = xe == 0 ? e0 : e1;
            int src_cnt_f = fp == 0 ? f0 : f1;
            int dst_cnt_f = yf == 0 ? f0 : f1;
            for (int i = 0; i < src_cnt_e; ++i)
                for (int k = 0; k < dst_cnt_e; ++k) {
                    const Polynomial& xe_entry = x.matrix.at(xr + k, xc + i);
                    if (xe_entry.is_zero()) continue;
                    for (int j = 0; j < src_cnt_f; ++j)
                        for (int l = 0; l < dst_cnt_f; ++l) {
                            const Polynomial& yf_entry = y.matrix.at(yr + l, yc + j);
                            if (yf_entry.is_zero()) continue;
                            m.at(gen(xe, k, yf, l), gen(ep, i, fp, j)) +=
                                Rational(sign) * (xe_entry * yf_entry);
                        }
                }
        }
    return m;
}

} // namespace detail

/// Generators of closed endomorphisms: the Milnor-basis multiples of the
/// identity plus the structural odd cocycles the constructors provide.
/// Every returned cocycle satisfies [delta, x] = 0 exactly.
inline std::vector<Cocycle> cocycle_basis(const MatrixFactorization& E, const MilnorData& md,
                                          size_t cap = 16) {
    std::vector<Cocycle> out;
    for (auto& mono : md.basis) {
        Polynomial f = Polynomial::monomial(E.n(), mono);
        std::string nm = total_degree(mono) == 0 ? "id" : "g[" + f.str() + "]";
        out.push_back({nm, 0, PolyMatrix::scalar(E.size(), f)});
        if (out.size() >= cap) break;
    }

    struct Visitor {
        const MatrixFactorization& E;
        const MilnorData& md;
        size_t cap;
        std::vector<Cocycle>& out;

        void structural(const MatrixFactorization& cur) {
            if (std::holds_alternative<KoszulProv>(cur.provenance())) {
                const auto& prov = std::get<KoszulProv>(cur.provenance());
                int r = (int)prov.a.size();
                std::vector<PolyMatrix> factors;
                for (int i = 0; i < r; ++i)
                    factors.push_back(detail::koszul_factor_cocycle(prov, i, cur.n()));
                if (r == 1) {
                    for (auto& mono : md.basis) {
                        if (total_degree(mono) == 0) continue;
                        Polynomial g = Polynomial::monomial(cur.n(), mono);
                        push({"g[" + g.str() + "]*m1", 1, g * factors[0]});
                    }
                    push({"m1", 1, factors[0]});
                } else {
                    for (int i = 0; i < r; ++i)
                        push({"m" + std::to_string(i + 1), 1, factors[i]});
                    PolyMatrix prod = factors[0];
                    std::string nm = "m1";
                    for (int i = 1; i < r; ++i) {
                        prod = factors[i] * prod;
                        nm = "m" + std::to_string(i + 1) + "*" + nm;
                    }
                    push({nm, r % 2, prod});
                }
            } else if (std::holds_alternative<TensorProv>(cur.provenance())) {
                const auto& prov = std::get<TensorProv>(cur.provenance());
                auto lhs = cocycle_basis(*prov.left, md, 4);
                auto rhs = cocycle_basis(*prov.right, md, 4);
                for (auto& x : lhs)
                    for (auto& y : rhs) {
                        if (x.name == "id" && y.name == "id") continue;
                        push({"tens(" + x.name + "," + y.name + ")", (x.parity + y.parity) % 2,
                              detail::endo_tensor(*prov.left, *prov.right, x, y)});
                    }
            } else if (std::holds_alternative<ShiftProv>(cur.provenance())) {
                const auto& prov = std::get<ShiftProv>(cur.provenance());
                auto inner = cocycle_basis(*prov.inner, md, 6);
                const MatrixFactorization& I = *prov.inner;
                for (auto& x : inner) {
                    if (x.name == "id") continue;
                    PolyMatrix m(cur.size(), cur.size(), cur.n());
                    // relabel blocks: E[1]_0 = E_1, E[1]_1 = E_0
                    for (int i = 0; i < I.r1(); ++i)
                        for (int j = 0; j < I.r1(); ++j)
                            m.at(i, j) = x.matrix.at(I.r0() + i, I.r0() + j);
                    for (int i = 0; i < I.r0(); ++i)
                        for (int j = 0; j < I.r0(); ++j)
                            m.at(I.r1() + i, I.r1() + j) = x.matrix.at(i, j);
                    for (int i = 0; i < I.r1(); ++i)
                        for (int j = 0; j < I.r0(); ++j)
                            m.at(i, I.r1() + j) = x.matrix.at(I.r0() + i, j);
                    for (int i = 0; i < I.r0(); ++i)
                        for (int j = 0; j < I.r1(); ++j)
                            m.at(I.r1() + i, j) = x.matrix.at(i, I.r0() + j);
                    push({"sh(" + x.name + ")", x.parity, m});
                }
            } else if (std::holds_alternative<DualProv>(cur.provenance())) {
                const auto& prov = std::get<DualProv>(cur.provenance());
                auto inner = cocycle_basis(*prov.inner, md, 6);
                const MatrixFactorization& I = *prov.inner;
                for (auto& x : inner) {
                    if (x.name == "id") continue;
                    PolyMatrix m(cur.size(), cur.size(), cur.n());
                    for (int i = 0; i < I.r0(); ++i)
                        for (int j = 0; j < I.r0(); ++j) m.at(j, i) = x.matrix.at(i, j);
                    for (int i = 0; i < I.r1(); ++i)
                        for (int j = 0; j < I.r1(); ++j)
                            m.at(I.r0() + j, I.r0() + i) = x.matrix.at(I.r0() + i, I.r0() + j);
                    // odd blocks transpose with one sign flip
                    for (int i = 0; i < I.r0(); ++i)
                        for (int j = 0; j < I.r1(); ++j)
                            m.at(j + I.r0(), i) += -x.matrix.at(i, I.r0() + j);
                    for (int i = 0; i < I.r1(); ++i)
                        for (int j = 0; j < I.r0(); ++j)
                            m.at(j, I.r0() + i) += x.matrix.at(I.r0() + i, j);
                    push({"dual(" + x.name + ")", x.parity, m});
                }
            } else if (std::holds_alternative<SumProv>(cur.provenance())) {
                const auto& prov = std::get<SumProv>(cur.provenance());
                auto embed = [&](const MatrixFactorization& part, const Cocycle& x, bool left) {
                    PolyMatrix m(cur.size(), cur.size(), cur.n());
                    const MatrixFactorization& L = *prov.left;
                    int off0 = left ? 0 : L.r0();
                    int off1 = left ? 0 : L.r1();
                    int pr0 = part.r0();
                    for (int i = 0; i < part.size(); ++i)
                        for (int j = 0; j < part.size(); ++j) {
                            int gi = i < pr0 ? off0 + i : cur.r0() + off1 + (i - pr0);
                            int gj = j < pr0 ? off0 + j : cur.r0() + off1 + (j - pr0);
                            m.at(gi, gj) = x.matrix.at(i, j);
                        }
                    return m;
                };
                for (auto& x : cocycle_basis(*prov.left, md, 4))
                    if (x.name != "id" || true)
                        push({"inl(" + x.name + ")", x.parity, embed(*prov.left, x, true)});
                for (auto& x : cocycle_basis(*prov.right, md, 4))
                    push({"inr(" + x.name + ")", x.parity, embed(*prov.right, x, false)});
            }
        }

        void push(Cocycle c) {
            if (out.size() >= cap) return;
            if (c.matrix.is_zero()) return;
            if (!is_cocycle(E, c.matrix))
                throw NotCocycleError("generated endomorphism " + c.name + " is not closed");
            out.push_back(std::move(c));
        }
    };

    Visitor v{E, md, cap, out};
    v.structural(E);
    return out;
}

/// Theorem A boundary-bulk map: x -> str(exp(at(E)) * x), reduced to a
/// Milnor class. Checks [delta, x] = 0 and chain-level closedness exactly.
inline HHClass boundary_bulk(const MatrixFactorization& E, const Cocycle& x,
                             const Connection& nabla, std::shared_ptr<const MilnorData> md) {
    SuperForm xf = x.superform(E);
    if (!supercommutator(E.delta_superform(), xf).is_zero())
        throw NotCocycleError("boundary-bulk input is not closed: " + x.name);
    SuperForm integrand = super_mul(exp_at_series(E, nabla), xf);
    DifferentialForm theta = supertrace(integrand);
    HHClass cls = reduce(theta, md, (x.parity + E.n()) % 2);
    cls.g = Rational(sigma_ch) * cls.g;
    return cls;
}

inline HHClass chern(const MatrixFactorization& E, std::shared_ptr<const MilnorData> md,
                     const Connection& nabla) {
    return boundary_bulk(E, Cocycle{"id", 0, PolyMatrix::identity(E.size(), E.n())}, nabla, md);
}

inline HHClass chern(const MatrixFactorization& E, std::shared_ptr<const MilnorData> md) {
    return chern(E, md, Connection::zero(E));
}

struct LemmaTensorReport {
    HHClass lhs; // chern of E (x) F
    HHClass rhs; // reduced product of the two separately computed characters
    bool match = false;
};

/// Class-level consequence of the tensor-product lemma:
/// chern(E (x) F) agrees with the reduced product of str(exp(at E)) and the
/// Chern-Weil character of the complex F computed from its own differentials.
inline LemmaTensorReport lemma_tensor_check(const MatrixFactorization& E, const FreeComplex& C,
                                            std::shared_ptr<const MilnorData> md) {
    MatrixFactorization EF = tensor_with_complex(E, C);
    HHClass lhs = chern(EF, md);

    DifferentialForm theta_e = supertrace(exp_at_series(E, Connection::zero(E)));
    MatrixFactorization folded = fold_complex(C);
    DifferentialForm theta_f = supertrace(exp_at_series(folded, Connection::zero(folded)));
    HHClass rhs = reduce(wedge(theta_e, theta_f), md, E.n() % 2);
    rhs.g = Rational(sigma_ch) * rhs.g;
    LemmaTensorReport rep{lhs, rhs, false};
    rep.match = (lhs.g == rhs.g);
    return rep;
}

} // namespace mfcalc
