#pragma once

#include <bit>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mfcalc/forms.hpp"
#include "mfcalc/polynomial.hpp"

namespace mfcalc {

/// Internal generator weights of a G_m-equivariant matrix factorization.
/// Entry (d1)_{ij} is quasi-homogeneous of weighted degree u_i - v_j,
/// entry (d0)_{ji} of degree v_j - u_i + h.
struct Grading {
    WeightSystem ws;
    std::vector<long long> u; // E0 generator weights
    std::vector<long long> v; // E1 generator weights
};

class MatrixFactorization;
using MFPtr = std::shared_ptr<const MatrixFactorization>;

struct RawProv {};
struct KoszulProv {
    std::vector<Polynomial> a, b;
};
struct TensorProv {
    MFPtr left, right;
};
struct DualProv {
    MFPtr inner;
};
struct ShiftProv {
    MFPtr inner;
};
struct SumProv {
    MFPtr left, right;
};
using Provenance = std::variant<RawProv, KoszulProv, TensorProv, DualProv, ShiftProv, SumProv>;

struct ValidationReport {
    bool ok = true;
    std::string message;
};

/// An element v + f of L_w = [T_X -> O_X]: a polynomial vector field plus a function.
struct LwElement {
    std::vector<Polynomial> vector_field;
    Polynomial function;
};

/// A finite complex of free modules with polynomial differential, d^2 = 0.
/// diffs[k] maps level (min_deg + k) to level (min_deg + k + 1).
struct FreeComplex {
    int n = 0;
    int min_deg = 0;
    std::vector<int> ranks;
    std::vector<PolyMatrix> diffs; // size ranks.size() - 1

    void check() const {
        if (ranks.empty()) throw Error("empty complex");
        if (diffs.size() + 1 != ranks.size()) throw ShapeMismatchError("complex differential count");
        for (size_t k = 0; k < diffs.size(); ++k) {
            if (diffs[k].rows() != ranks[k + 1] || diffs[k].cols() != ranks[k])
                throw ShapeMismatchError("complex differential shape");
            if (k + 1 < diffs.size()) {
                PolyMatrix sq = diffs[k + 1] * diffs[k];
                if (!sq.is_zero()) throw Error("complex differential does not square to zero");
            }
        }
    }
};

/// Pair of polynomial matrices (d1, d0) with d1 d0 = d0 d1 = w * I.
/// d1: E1 -> E0 (r0 x r1), d0: E0 -> E1 (r1 x r0).
class MatrixFactorization {
public:
    MatrixFactorization(Polynomial w, PolyMatrix d1, PolyMatrix d0,
                        std::optional<Grading> grading = {}, Provenance prov = RawProv{})
        : w_(std::move(w)), d1_(std::move(d1)), d0_(std::move(d0)),
          grading_(std::move(grading)), prov_(std::move(prov)) {
        r0_ = d1_.rows();
        r1_ = d1_.cols();
        if (d0_.rows() != r1_ || d0_.cols() != r0_)
            throw ShapeMismatchError("d0 shape does not match d1");
    }

    const Polynomial& w() const { return w_; }
    int n() const { return w_.n(); }
    int r0() const { return r0_; }
    int r1() const { return r1_; }
    int size() const { return r0_ + r1_; }
    const PolyMatrix& d1() const { return d1_; }
    const PolyMatrix& d0() const { return d0_; }
    const std::optional<Grading>& grading() const { return grading_; }
    const Provenance& provenance() const { return prov_; }

    /// The odd differential as a single square matrix on E0 + E1.
    PolyMatrix delta() const {
        PolyMatrix m(size(), size(), n());
        for (int i = 0; i < r0_; ++i)
            for (int j = 0; j < r1_; ++j) m.at(i, r0_ + j) = d1_.at(i, j);
        for (int i = 0; i < r1_; ++i)
            for (int j = 0; j < r0_; ++j) m.at(r0_ + i, j) = d0_.at(i, j);
        return m;
    }

    SuperForm delta_superform() const {
        return SuperForm::of_matrix(n(), r0_, r1_, delta());
    }

    std::vector<long long> all_weights() const {
        if (!grading_) return {};
        std::vector<long long> w = grading_->u;
        w.insert(w.end(), grading_->v.begin(), grading_->v.end());
        return w;
    }

private:
    Polynomial w_;
    int r0_, r1_;
    PolyMatrix d1_, d0_;
    std::optional<Grading> grading_;
    Provenance prov_;
};

inline ValidationReport validate(const MatrixFactorization& E) {
    int n = E.n();
    const Polynomial& w = E.w();
    PolyMatrix p10 = E.d1() * E.d0();
    PolyMatrix p01 = E.d0() * E.d1();
    for (int i = 0; i < E.r0(); ++i)
        for (int j = 0; j < E.r0(); ++j) {
            Polynomial expect = (i == j) ? w : Polynomial(n);
            if (!(p10.at(i, j) == expect))
                return {false, "d1*d0 entry (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") = " + p10.at(i, j).str() + ", expected " + expect.str()};
        }
    for (int i = 0; i < E.r1(); ++i)
        for (int j = 0; j < E.r1(); ++j) {
            Polynomial expect = (i == j) ? w : Polynomial(n);
            if (!(p01.at(i, j) == expect))
                return {false, "d0*d1 entry (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") = " + p01.at(i, j).str() + ", expected " + expect.str()};
        }
    if (!w.is_zero() && E.r0() != E.r1())
        return {false, "nonzero potential requires equal ranks"};
    if (E.grading()) {
        const Grading& g = *E.grading();
        if ((int)g.u.size() != E.r0() || (int)g.v.size() != E.r1())
            return {false, "grading length mismatch"};
        for (int i = 0; i < E.r0(); ++i)
            for (int j = 0; j < E.r1(); ++j) {
                const Polynomial& e = E.d1().at(i, j);
                if (!e.is_zero() && !e.is_quasi_homogeneous(g.ws, g.u[i] - g.v[j]))
                    return {false, "d1 entry (" + std::to_string(i) + "," + std::to_string(j) +
                                       ") not homogeneous of degree " +
                                       std::to_string(g.u[i] - g.v[j])};
            }
        for (int j = 0; j < E.r1(); ++j)
            for (int i = 0; i < E.r0(); ++i) {
                const Polynomial& e = E.d0().at(j, i);
                if (!e.is_zero() && !e.is_quasi_homogeneous(g.ws, g.v[j] - g.u[i] + g.ws.h))
                    return {false, "d0 entry (" + std::to_string(j) + "," + std::to_string(i) +
                                       ") not homogeneous of degree " +
                                       std::to_string(g.v[j] - g.u[i] + g.ws.h)};
            }
    }
    return {};
}

/// Koszul matrix factorization of w = sum a_i b_i on the exterior algebra of
/// rank r: even/odd exterior degrees are E0/E1, a_i acts by contraction and
/// b_i by wedging. Rank-one case: d1 = (a), d0 = (b).
inline MatrixFactorization koszul(const std::vector<Polynomial>& a,
                                  const std::vector<Polynomial>& b,
                                  std::optional<WeightSystem> ws = {}) {
    if (a.empty() || a.size() != b.size())
        throw ShapeMismatchError("koszul needs equally many a's and b's");
    int r = (int)a.size();
    int n = a[0].n();
    Polynomial w(n);
    for (int i = 0; i < r; ++i) w += a[i] * b[i];

    std::vector<std::uint32_t> even, odd;
    for (std::uint32_t S = 0; S < (1u << r); ++S)
        (std::popcount(S) % 2 == 0 ? even : odd).push_back(S);
    auto index_of = [&](std::uint32_t S) {
        const auto& list = (std::popcount(S) % 2 == 0) ? even : odd;
        return (int)(std::lower_bound(list.begin(), list.end(), S) - list.begin());
    };

    int r0 = (int)even.size(), r1 = (int)odd.size();
    PolyMatrix d1(r0, r1, n), d0(r1, r0, n);
    auto apply_delta = [&](std::uint32_t S, PolyMatrix& target, int col) {
        for (int i = 0; i < r; ++i) {
            std::uint32_t bit = 1u << i;
            int sign = std::popcount(S & (bit - 1)) % 2 == 0 ? 1 : -1;
            if (S & bit) {
                target.at(index_of(S & ~bit), col) += Rational(sign) * a[i];
            } else {
                target.at(index_of(S | bit), col) += Rational(sign) * b[i];
            }
        }
    };
    for (int c = 0; c < r0; ++c) apply_delta(even[c], d0, c);
    for (int c = 0; c < r1; ++c) apply_delta(odd[c], d1, c);

    std::optional<Grading> grading;
    if (ws) {
        bool ok = true;
        std::vector<long long> da(r);
        for (int i = 0; i < r; ++i) {
            auto dai = a[i].is_zero() ? std::nullopt : a[i].weighted_degree(*ws);
            auto dbi = b[i].is_zero() ? std::nullopt : b[i].weighted_degree(*ws);
            if (!dai || !dbi || *dai + *dbi != ws->h) { ok = false; break; }
            da[i] = *dai;
        }
        if (ok) {
            auto weight_of = [&](std::uint32_t S) {
                long long wgt = (long long)(std::popcount(S) / 2) * ws->h;
                for (int i = 0; i < r; ++i)
                    if (S & (1u << i)) wgt -= da[i];
                return wgt;
            };
            Grading g{*ws, {}, {}};
            for (auto S : even) g.u.push_back(weight_of(S));
            for (auto S : odd) g.v.push_back(weight_of(S));
            grading = g;
        }
    }
    return MatrixFactorization(w, d1, d0, grading, KoszulProv{a, b});
}

inline MatrixFactorization rank_one(const Polynomial& a, const Polynomial& b,
                                    std::optional<WeightSystem> ws = {}) {
    return koszul({a}, {b}, ws);
}

/// Tensor product of matrix factorizations of w and w'; the result factors
/// w + w'. Blocks: (E(x)F)_0 = E0F0 + E1F1, (E(x)F)_1 = E0F1 + E1F0, with
/// differential delta_E (x) id + sigma (x) delta_F.
inline MatrixFactorization tensor(const MatrixFactorization& E, const MatrixFactorization& F) {
    if (E.n() != F.n()) throw RingMismatchError("tensor over different rings");
    int n = E.n();
    int e0 = E.r0(), e1 = E.r1(), f0 = F.r0(), f1 = F.r1();
    int R0 = e0 * f0 + e1 * f1;
    int R1 = e0 * f1 + e1 * f0;
    auto e0f0 = [&](int i, int j) { return i * f0 + j; };
    auto e1f1 = [&](int i, int j) { return e0 * f0 + i * f1 + j; };
    auto e0f1 = [&](int i, int j) { return i * f1 + j; };
    auto e1f0 = [&](int i, int j) { return e0 * f1 + i * f0 + j; };

    PolyMatrix d0(R1, R0, n), d1(R0, R1, n);
    // d0: from E0F0
    for (int i = 0; i < e0; ++i)
        for (int j = 0; j < f0; ++j) {
            int col = e0f0(i, j);
            for (int k = 0; k < e1; ++k) d0.at(e1f0(k, j), col) += E.d0().at(k, i);
            for (int l = 0; l < f1; ++l) d0.at(e0f1(i, l), col) += F.d0().at(l, j);
        }
    // d0: from E1F1
    for (int i = 0; i < e1; ++i)
        for (int j = 0; j < f1; ++j) {
            int col = e1f1(i, j);
            for (int k = 0; k < e0; ++k) d0.at(e0f1(k, j), col) += E.d1().at(k, i);
            for (int l = 0; l < f0; ++l) d0.at(e1f0(i, l), col) -= F.d1().at(l, j);
        }
    // d1: from E0F1
    for (int i = 0; i < e0; ++i)
        for (int j = 0; j < f1; ++j) {
            int col = e0f1(i, j);
            for (int k = 0; k < e1; ++k) d1.at(e1f1(k, j), col) += E.d0().at(k, i);
            for (int l = 0; l < f0; ++l) d1.at(e0f0(i, l), col) += F.d1().at(l, j);
        }
    // d1: from E1F0
    for (int i = 0; i < e1; ++i)
        for (int j = 0; j < f0; ++j) {
            int col = e1f0(i, j);
            for (int k = 0; k < e0; ++k) d1.at(e0f0(k, j), col) += E.d1().at(k, i);
            for (int l = 0; l < f1; ++l) d1.at(e1f1(i, l), col) -= F.d0().at(l, j);
        }

    std::optional<Grading> grading;
    if (E.grading() && F.grading() && E.grading()->ws == F.grading()->ws) {
        const Grading& ge = *E.grading();
        const Grading& gf = *F.grading();
        Grading g{ge.ws, std::vector<long long>(R0), std::vector<long long>(R1)};
        for (int i = 0; i < e0; ++i)
            for (int j = 0; j < f0; ++j) g.u[e0f0(i, j)] = ge.u[i] + gf.u[j];
        for (int i = 0; i < e1; ++i)
            for (int j = 0; j < f1; ++j) g.u[e1f1(i, j)] = ge.v[i] + gf.v[j] + ge.ws.h;
        for (int i = 0; i < e0; ++i)
            for (int j = 0; j < f1; ++j) g.v[e0f1(i, j)] = ge.u[i] + gf.v[j];
        for (int i = 0; i < e1; ++i)
            for (int j = 0; j < f0; ++j) g.v[e1f0(i, j)] = ge.v[i] + gf.u[j];
        grading = g;
    }
    return MatrixFactorization(E.w() + F.w(), d1, d0, grading,
                               TensorProv{std::make_shared<MatrixFactorization>(E),
                                          std::make_shared<MatrixFactorization>(F)});
}

/// Dual: factorization of -w with d1' = -d0^T, d0' = d1^T. Involutive up to
/// negating both differentials (the canonical sign).
inline MatrixFactorization dual(const MatrixFactorization& E) {
    std::optional<Grading> grading;
    if (E.grading()) {
        Grading g{E.grading()->ws, {}, {}};
        for (long long x : E.grading()->u) g.u.push_back(-x);
        for (long long x : E.grading()->v) g.v.push_back(-x - g.ws.h);
        grading = g;
    }
    return MatrixFactorization(-E.w(), -E.d0().transpose(), E.d1().transpose(), grading,
                               DualProv{std::make_shared<MatrixFactorization>(E)});
}

/// Shift E[1]: swap E0 and E1 and negate the differential. Exactly involutive
/// on the underlying matrices; on gradings, shift twice is the twist by h.
inline MatrixFactorization shift(const MatrixFactorization& E) {
    std::optional<Grading> grading;
    if (E.grading()) {
        Grading g{E.grading()->ws, {}, {}};
        for (long long x : E.grading()->v) g.u.push_back(x + g.ws.h);
        for (long long x : E.grading()->u) g.v.push_back(x);
        grading = g;
    }
    return MatrixFactorization(E.w(), -E.d0(), -E.d1(), grading,
                               ShiftProv{std::make_shared<MatrixFactorization>(E)});
}

/// Twist by chi^1 (adds t to every generator weight); identity on matrices.
inline MatrixFactorization twist(const MatrixFactorization& E, long long t) {
    std::optional<Grading> grading = E.grading();
    if (grading) {
        for (auto& x : grading->u) x += t;
        for (auto& x : grading->v) x += t;
    }
    return MatrixFactorization(E.w(), E.d1(), E.d0(), grading, E.provenance());
}

inline MatrixFactorization direct_sum(const MatrixFactorization& E, const MatrixFactorization& F) {
    if (!(E.w() == F.w())) throw Error("direct sum requires equal potentials");
    int n = E.n();
    int R0 = E.r0() + F.r0(), R1 = E.r1() + F.r1();
    PolyMatrix d1(R0, R1, n), d0(R1, R0, n);
    for (int i = 0; i < E.r0(); ++i)
        for (int j = 0; j < E.r1(); ++j) d1.at(i, j) = E.d1().at(i, j);
    for (int i = 0; i < F.r0(); ++i)
        for (int j = 0; j < F.r1(); ++j) d1.at(E.r0() + i, E.r1() + j) = F.d1().at(i, j);
    for (int i = 0; i < E.r1(); ++i)
        for (int j = 0; j < E.r0(); ++j) d0.at(i, j) = E.d0().at(i, j);
    for (int i = 0; i < F.r1(); ++i)
        for (int j = 0; j < F.r0(); ++j) d0.at(E.r1() + i, E.r0() + j) = F.d0().at(i, j);
    std::optional<Grading> grading;
    if (E.grading() && F.grading() && E.grading()->ws == F.grading()->ws) {
        Grading g{E.grading()->ws, E.grading()->u, E.grading()->v};
        g.u.insert(g.u.end(), F.grading()->u.begin(), F.grading()->u.end());
        g.v.insert(g.v.end(), F.grading()->v.begin(), F.grading()->v.end());
        grading = g;
    }
    return MatrixFactorization(E.w(), d1, d0, grading,
                               SumProv{std::make_shared<MatrixFactorization>(E),
                                       std::make_shared<MatrixFactorization>(F)});
}

/// Fold a finite free complex to a Z/2-graded matrix factorization of 0.
inline MatrixFactorization fold_complex(const FreeComplex& C,
                                        std::optional<WeightSystem> ws = {},
                                        const std::vector<std::vector<long long>>& level_weights = {}) {
    C.check();
    int n = C.n;
    std::vector<int> even_levels, odd_levels;
    for (size_t k = 0; k < C.ranks.size(); ++k) {
        int deg = C.min_deg + (int)k;
        (((deg % 2) + 2) % 2 == 0 ? even_levels : odd_levels).push_back((int)k);
    }
    auto offset = [&](const std::vector<int>& levels, int k) {
        int off = 0;
        for (int l : levels) {
            if (l == k) return off;
            off += C.ranks[l];
        }
        throw IndexError("level not found");
    };
    int R0 = 0, R1 = 0;
    for (int l : even_levels) R0 += C.ranks[l];
    for (int l : odd_levels) R1 += C.ranks[l];
    PolyMatrix d0(R1, R0, n), d1(R0, R1, n);
    for (size_t k = 0; k + 1 < C.ranks.size(); ++k) {
        int deg = C.min_deg + (int)k;
        bool from_even = ((deg % 2) + 2) % 2 == 0;
        const auto& src_levels = from_even ? even_levels : odd_levels;
        const auto& dst_levels = from_even ? odd_levels : even_levels;
        PolyMatrix& target = from_even ? d0 : d1;
        int roff = offset(dst_levels, (int)k + 1);
        int coff = offset(src_levels, (int)k);
        for (int i = 0; i < C.ranks[k + 1]; ++i)
            for (int j = 0; j < C.ranks[k]; ++j) target.at(roff + i, coff + j) = C.diffs[k].at(i, j);
    }
    std::optional<Grading> grading;
    if (ws && !level_weights.empty()) {
        Grading g{*ws, std::vector<long long>(R0, 0), std::vector<long long>(R1, 0)};
        for (size_t k = 0; k < C.ranks.size(); ++k) {
            int deg = C.min_deg + (int)k;
            bool ev = ((deg % 2) + 2) % 2 == 0;
            // level 2m (resp. 2m-1) is twisted by chi^{-m}
            long long m = ev ? deg / 2 : (deg + 1) / 2;
            int off = offset(ev ? even_levels : odd_levels, (int)k);
            for (int j = 0; j < C.ranks[k]; ++j) {
                long long base = level_weights[k].empty() ? 0 : level_weights[k][j];
                (ev ? g.u : g.v)[off + j] = base - m * ws->h;
            }
        }
        grading = g;
    }
    return MatrixFactorization(Polynomial(n), d1, d0, grading, RawProv{});
}

/// E tensor a finite complex of free modules, as a factorization of w.
inline MatrixFactorization tensor_with_complex(const MatrixFactorization& E, const FreeComplex& C) {
    std::optional<WeightSystem> ws;
    if (E.grading()) ws = E.grading()->ws;
    MatrixFactorization folded = fold_complex(C);
    if (E.grading()) {
        // grading of the folded complex defaults to weight zero per generator,
        // valid only when the differentials are homogeneous of degree 0
        MatrixFactorization graded_folded =
            fold_complex(C, ws, std::vector<std::vector<long long>>(
                                    C.ranks.size(), std::vector<long long>()));
        bool ok = true;
        for (size_t k = 0; k < C.diffs.size() && ok; ++k)
            for (int i = 0; i < C.diffs[k].rows() && ok; ++i)
                for (int j = 0; j < C.diffs[k].cols() && ok; ++j) {
                    const Polynomial& e = C.diffs[k].at(i, j);
                    if (!e.is_zero() && !e.is_quasi_homogeneous(*ws, 0)) ok = false;
                }
        if (ok) return tensor(E, graded_folded);
    }
    return tensor(E, folded);
}

} // namespace mfcalc
