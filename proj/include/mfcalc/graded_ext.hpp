#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "mfcalc/atiyah.hpp"
#include "mfcalc/linalg.hpp"
#include "mfcalc/mf.hpp"

namespace mfcalc {

inline std::vector<Monomial> monomials_of_weighted_degree(int n, const WeightSystem& ws,
                                                          long long d) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    Monomial cur(n, 0);
    std::function<void(int, long long)> rec = [&](int var, long long remaining) {
        if (var == n) {
            if (remaining == 0) out.push_back(cur);
            return;
        }
        for (int e = 0; e * ws.weights[var] <= remaining; ++e) {
            cur[var] = e;
            rec(var + 1, remaining - e * ws.weights[var]);
        }
        cur[var] = 0;
    };
    rec(0, d);
    return out;
}

/// One (cohomological degree, internal twist) piece of the graded Hom complex.
struct HomDegreePiece {
    int k = 0;
    long long j = 0;
    long long dim_in = 0;   // dim of the (k, j) strand space
    long long rank_in = 0;  // rank of the incoming differential D^{k-1}
    long long rank_out = 0; // rank of the outgoing differential D^k
    long long hom_dim = 0;  // dim ker D^k - rank D^{k-1}
};

namespace detail {

/// Basis element of the degree-k, twist-j strand: an entry position of one of
/// the two component maps times a monomial.
struct StrandBasis {
    // (block: 0 = component on E0, 1 = component on E1, row t, col i, monomial)
    std::vector<std::tuple<int, int, int, Monomial>> elems;
    std::map<std::tuple<int, int, int, Monomial>, int> index;

    void push(int block, int t, int i, const Monomial& m) {
        index[{block, t, i, m}] = (int)elems.size();
        elems.emplace_back(block, t, i, m);
    }

    long long dim() const { return (long long)elems.size(); }
};

/// Generator labels of C(F)^k: F0 tensor chi^s for k = 2s, F1 tensor chi^{s+1}
/// for k = 2s + 1.
inline std::vector<long long> cf_labels(const MatrixFactorization& F, int k) {
    const Grading& g = *F.grading();
    std::vector<long long> out;
    if (((k % 2) + 2) % 2 == 0) {
        long long s = (k >= 0 ? k / 2 : -((-k + 1) / 2));
        for (long long x : g.u) out.push_back(x + s * g.ws.h);
    } else {
        long long s = (k - 1) >= 0 ? (k - 1) / 2 : -((1 - k) / 2);
        for (long long x : g.v) out.push_back(x + (s + 1) * g.ws.h);
    }
    return out;
}

inline StrandBasis strand_basis(const MatrixFactorization& E, const MatrixFactorization& F,
                                int k, long long j) {
    const Grading& ge = *E.grading();
    const WeightSystem& ws = ge.ws;
    int n = E.n();
    StrandBasis basis;
    std::vector<long long> tgt_e = cf_labels(F, k);
    for (int t = 0; t < (int)tgt_e.size(); ++t)
        for (int i = 0; i < (int)ge.u.size(); ++i)
            for (auto& m : monomials_of_weighted_degree(n, ws, tgt_e[t] - ge.u[i] + j))
                basis.push(0, t, i, m);
    std::vector<long long> tgt_o = cf_labels(F, k + 1);
    for (int t = 0; t < (int)tgt_o.size(); ++t)
        for (int i = 0; i < (int)ge.v.size(); ++i)
            for (auto& m : monomials_of_weighted_degree(n, ws, tgt_o[t] - ws.h - ge.v[i] + j))
                basis.push(1, t, i, m);
    return basis;
}

/// Matrix of D: strand (k, j) -> strand (k + 1, j), D(f) = dF f - (-1)^k f dE.
inline RationalMatrix strand_differential(const MatrixFactorization& E,
                                          const MatrixFactorization& F, int k, long long j,
                                          const StrandBasis& src, const StrandBasis& dst) {
    int n = E.n();
    RationalMatrix D((int)dst.dim(), (int)src.dim());
    auto mk = [&](int kk) -> const PolyMatrix& {
        return (((kk % 2) + 2) % 2 == 0) ? F.d0() : F.d1();
    };
    Rational sgn = (((k % 2) + 2) % 2 == 0) ? -1 : 1; // -(-1)^k
    auto deposit = [&](int col, int block, int t, int i, const Polynomial& p) {
        for (auto& [mono, c] : p.terms()) {
            auto it = dst.index.find({block, t, i, mono});
            if (it == dst.index.end())
                throw Error("strand bookkeeping error: image term outside target strand");
            D.at(it->second, col) += c;
        }
    };
    for (int col = 0; col < (int)src.elems.size(); ++col) {
        auto [block, t, i, mono] = src.elems[col];
        Polynomial pm = Polynomial::monomial(n, mono);
        if (block == 0) {
            const PolyMatrix& M = mk(k); // C(F)^k -> C(F)^{k+1}
            for (int s = 0; s < M.rows(); ++s) {
                const Polynomial& entry = M.at(s, t);
                if (!entry.is_zero()) deposit(col, 0, s, i, entry * pm);
            }
            // -(-1)^k phi_e d1^E contributes to the E1 component
            for (int ii = 0; ii < E.d1().cols(); ++ii) {
                const Polynomial& entry = E.d1().at(i, ii);
                if (!entry.is_zero()) deposit(col, 1, t, ii, sgn * (pm * entry));
            }
        } else {
            const PolyMatrix& M = mk(k + 1); // C(F)^{k+1} -> C(F)^{k+2}
            for (int s = 0; s < M.rows(); ++s) {
                const Polynomial& entry = M.at(s, t);
                if (!entry.is_zero()) deposit(col, 1, s, i, entry * pm);
            }
            // -(-1)^k phi_o d0^E contributes to the E0 component of degree k+1
            for (int ii = 0; ii < E.d0().cols(); ++ii) {
                const Polynomial& entry = E.d0().at(i, ii);
                if (!entry.is_zero()) deposit(col, 0, t, ii, sgn * (pm * entry));
            }
        }
    }
    return D;
}

inline void require_graded_pair(const MatrixFactorization& E, const MatrixFactorization& F) {
    if (!E.grading() || !F.grading()) throw UngradedError("graded Hom needs graded inputs");
    if (!(E.grading()->ws == F.grading()->ws))
        throw RingMismatchError("weight systems differ");
}

} // namespace detail

/// Dimension data of H^k of the internal-weight-j strand of Hom(E, F),
/// computed by exact linear algebra over Q.
inline HomDegreePiece graded_hom_dim(const MatrixFactorization& E, const MatrixFactorization& F,
                                     int k, long long j) {
    detail::require_graded_pair(E, F);
    detail::StrandBasis below = detail::strand_basis(E, F, k - 1, j);
    detail::StrandBasis here = detail::strand_basis(E, F, k, j);
    detail::StrandBasis above = detail::strand_basis(E, F, k + 1, j);
    RationalMatrix Din = detail::strand_differential(E, F, k - 1, j, below, here);
    RationalMatrix Dout = detail::strand_differential(E, F, k, j, here, above);
    HomDegreePiece piece;
    piece.k = k;
    piece.j = j;
    piece.dim_in = here.dim();
    piece.rank_in = Din.rank();
    piece.rank_out = Dout.rank();
    piece.hom_dim = piece.dim_in - piece.rank_out - piece.rank_in;
    if (piece.hom_dim < 0) throw Error("negative cohomology dimension: bookkeeping bug");
    return piece;
}

struct ExtTable {
    std::vector<HomDegreePiece> pieces; // k in {0,1} per twist j
    long long ext0 = 0;                 // sum of h^{0,j}
    long long ext1 = 0;                 // sum of h^{1,j}
    long long chi = 0;                  // ext0 - ext1
    long long window = 0;
};

/// Scan the fundamental domain k in {0,1} over the finite twist window,
/// verifying an all-zero margin at both ends.
inline ExtTable ext_table(const MatrixFactorization& E, const MatrixFactorization& F,
                          std::optional<long long> window = {}) {
    detail::require_graded_pair(E, F);
    const WeightSystem& ws = E.grading()->ws;
    long long spread = 0;
    {
        std::vector<long long> all = E.all_weights();
        auto fw = F.all_weights();
        all.insert(all.end(), fw.begin(), fw.end());
        long long lo = all[0], hi = all[0];
        for (long long x : all) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        spread = hi - lo;
    }
    long long socle = 0;
    for (long long wi : ws.weights) socle += ws.h - 2 * wi;
    long long J = window ? *window : socle + ws.h + spread;
    long long margin = 2;

    ExtTable table;
    table.window = J;
    for (long long j = -(J + margin); j <= J + margin; ++j) {
        for (int k = 0; k <= 1; ++k) {
            HomDegreePiece piece = graded_hom_dim(E, F, k, j);
            if (piece.hom_dim != 0 && std::llabs(j) > J)
                throw WindowNotClosedError("nonzero Ext dimension at twist " + std::to_string(j) +
                                           " outside window " + std::to_string(J));
            if (piece.hom_dim != 0) table.pieces.push_back(piece);
            if (k == 0) table.ext0 += piece.hom_dim;
            else table.ext1 += piece.hom_dim;
        }
    }
    table.chi = table.ext0 - table.ext1;
    return table;
}

/// chi = sum over twists of (-1)^k dim H^k, folded by 2-periodicity to k in {0,1}.
inline long long euler_pairing(const MatrixFactorization& E, const MatrixFactorization& F) {
    return ext_table(E, F).chi;
}

/// One-variable brute-force oracle via the 2-periodic free resolution:
/// Ext of coker(d1^E) with values in M' = coker(d1^F) over Q[x]/(x^M),
/// by plain linear algebra. Demands stabilization between M and M + N.
inline std::pair<long long, long long> brute_force_ext_1var(const MatrixFactorization& E,
                                                            const MatrixFactorization& F,
                                                            int M) {
    if (E.n() != 1 || F.n() != 1) throw Error("brute force oracle is one-variable only");
    if (!(E.w() == F.w())) throw Error("oracle needs equal potentials");
    const Polynomial& w = E.w();
    if (w.terms().size() != 1) throw Error("oracle potential must be a monomial x^N");
    int N = (int)w.degree();
    if (M < 3 * N) throw Error("truncation order must be at least 3N");

    auto compute = [&](int order) -> std::pair<long long, long long> {
        // quotient basis of M' = Q[x]^{r0F} / (columns of d1^F times monomials)
        int q_amb = F.r0() * order;
        auto flat = [&](int gen, int deg) { return gen * order + deg; };
        std::vector<std::vector<Rational>> image;
        for (int t = 0; t < order; ++t)
            for (int jcol = 0; jcol < F.r1(); ++jcol) {
                std::vector<Rational> vec(q_amb, 0);
                bool nonzero = false;
                for (int i = 0; i < F.r0(); ++i) {
                    const Polynomial& entry = F.d1().at(i, jcol);
                    for (auto& [mono, c] : entry.terms()) {
                        int d = mono[0] + t;
                        if (d >= order) continue;
                        vec[flat(i, d)] += c;
                        nonzero = true;
                    }
                }
                if (nonzero) image.push_back(std::move(vec));
            }
        // column echelon of the image; pivot rows are eliminated coordinates
        std::vector<int> pivot_of_col;
        std::vector<std::vector<Rational>> echelon;
        for (auto vec : image) {
            for (size_t e = 0; e < echelon.size(); ++e) {
                int p = pivot_of_col[e];
                if (vec[p] != 0) {
                    Rational f = vec[p] / echelon[e][p];
                    for (int r = 0; r < q_amb; ++r) vec[r] -= f * echelon[e][r];
                }
            }
            int p = -1;
            for (int r = 0; r < q_amb; ++r)
                if (vec[r] != 0) { p = r; break; }
            if (p < 0) continue;
            pivot_of_col.push_back(p);
            echelon.push_back(std::move(vec));
        }
        std::vector<bool> is_pivot(q_amb, false);
        for (int p : pivot_of_col) is_pivot[p] = true;
        std::vector<int> quot_rows;
        for (int r = 0; r < q_amb; ++r)
            if (!is_pivot[r]) quot_rows.push_back(r);
        int q = (int)quot_rows.size();
        std::vector<int> quot_index(q_amb, -1);
        for (int idx = 0; idx < q; ++idx) quot_index[quot_rows[idx]] = idx;

        auto project = [&](std::vector<Rational> vec) {
            for (size_t e = 0; e < echelon.size(); ++e) {
                int p = pivot_of_col[e];
                if (vec[p] != 0) {
                    Rational f = vec[p] / echelon[e][p];
                    for (int r = 0; r < q_amb; ++r) vec[r] -= f * echelon[e][r];
                }
            }
            std::vector<Rational> out(q, 0);
            for (int r = 0; r < q_amb; ++r)
                if (vec[r] != 0) out[quot_index[r]] = vec[r];
            return out;
        };

        // matrix of "precompose with dX" : M'^{cols(dX)} -> M'^{rows-of-target}
        auto precompose = [&](const PolyMatrix& dX) {
            int src_blocks = dX.rows(); // phi has one M'-coordinate per generator hit
            int dst_blocks = dX.cols();
            RationalMatrix out(dst_blocks * q, src_blocks * q);
            for (int i = 0; i < dX.rows(); ++i)
                for (int jj = 0; jj < dX.cols(); ++jj) {
                    const Polynomial& entry = dX.at(i, jj);
                    if (entry.is_zero()) continue;
                    // multiplication by entry on M', in quotient coordinates
                    for (int idx = 0; idx < q; ++idx) {
                        int row = quot_rows[idx];
                        int gen = row / order, deg = row % order;
                        std::vector<Rational> vec(q_amb, 0);
                        for (auto& [mono, c] : entry.terms()) {
                            int d = deg + mono[0];
                            if (d < order) vec[flat(gen, d)] += c;
                        }
                        auto img = project(std::move(vec));
                        for (int r = 0; r < q; ++r)
                            if (img[r] != 0) out.at(jj * q + r, i * q + idx) += img[r];
                    }
                }
            return out;
        };

        RationalMatrix A = precompose(E.d1()); // M'^{r0} -> M'^{r1}
        RationalMatrix B = precompose(E.d0()); // M'^{r1} -> M'^{r0}
        long long rank_a = A.rank();
        long long rank_b = B.rank();
        long long ext0 = (long long)E.r0() * q - rank_a - rank_b;
        long long ext1 = (long long)E.r1() * q - rank_b - rank_a;
        if (ext0 < 0 || ext1 < 0) throw Error("oracle rank bookkeeping bug");
        return {ext0, ext1};
    };

    auto first = compute(M);
    auto second = compute(M + N);
    if (first != second)
        throw NotStabilizedError("oracle dimensions differ between truncations " +
                                 std::to_string(M) + " and " + std::to_string(M + N));
    return first;
}

/// Sign of the Riemann-Roch comparison; the n-dependence is the parity of
/// n(n+1)/2, the constant factor is calibrated on w = xy and frozen at +1.
inline int sigma_rr(int n) {
    return ((long long)n * (n + 1) / 2) % 2 == 0 ? 1 : -1;
}

struct RrhReport {
    long long chi = 0;
    Rational residue_side;
    bool match = false;
    int sigma = 1;
    HHClass ch_e, ch_f;
};

/// Riemann-Roch consistency: Euler pairing against the residue pairing of the
/// two Chern classes (plain first argument, no dualization).
inline RrhReport rrh_check(const MatrixFactorization& E, const MatrixFactorization& F,
                           std::shared_ptr<const MilnorData> md) {
    detail::require_graded_pair(E, F);
    if (E.n() % 2 != 0) throw Error("rrh check needs an even number of variables");
    RrhReport rep;
    rep.sigma = sigma_rr(E.n());
    rep.chi = euler_pairing(E, F);
    rep.ch_e = chern(E, md);
    rep.ch_f = chern(F, md);
    rep.residue_side = Rational(rep.sigma) * pairing(rep.ch_e, rep.ch_f);
    rep.match = (rep.residue_side == Rational(rep.chi));
    return rep;
}

} // namespace mfcalc
