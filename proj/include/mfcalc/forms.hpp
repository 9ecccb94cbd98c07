#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "mfcalc/polynomial.hpp"

namespace mfcalc {

/// Sign of sorting the concatenation dx_A ^ dx_B into ascending order,
/// assuming A and B are disjoint index sets (bitmasks).
inline int merge_sign(std::uint32_t a, std::uint32_t b) {
    int inversions = 0;
    for (int i = 0; i < 32; ++i) {
        if (!(b & (1u << i))) continue;
        // count members of a strictly greater than i
        std::uint32_t higher = a & ~((1u << (i + 1)) - 1);
        inversions += std::popcount(higher);
    }
    return inversions % 2 == 0 ? 1 : -1;
}

/// Polynomial differential form on affine n-space. Components are indexed by
/// bitmasks over the variables; only sorted (canonical) index tuples are kept.
class DifferentialForm {
public:
    DifferentialForm() : n_(0) {}
    explicit DifferentialForm(int n) : n_(n) {}

    static DifferentialForm from_poly(const Polynomial& p) {
        DifferentialForm f(p.n());
        f.add(0u, p);
        return f;
    }

    static DifferentialForm d_of(const Polynomial& p) {
        DifferentialForm f(p.n());
        for (int i = 0; i < p.n(); ++i) f.add(1u << i, p.derivative(i));
        return f;
    }

    static DifferentialForm volume(int n, const Polynomial& coeff) {
        DifferentialForm f(n);
        f.add((1u << n) - 1, coeff);
        return f;
    }

    int n() const { return n_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<std::uint32_t, Polynomial>& components() const { return comps_; }

    Polynomial component(std::uint32_t mask) const {
        auto it = comps_.find(mask);
        return it == comps_.end() ? Polynomial(n_) : it->second;
    }

    /// Coefficient polynomial of the degree-k part as a form; zero if absent.
    DifferentialForm degree_part(int k) const {
        DifferentialForm f(n_);
        for (auto& [m, p] : comps_)
            if (std::popcount(m) == k) f.add(m, p);
        return f;
    }

    int max_degree() const {
        int d = -1;
        for (auto& [m, p] : comps_) d = std::max(d, std::popcount(m));
        return d;
    }

    void add(std::uint32_t mask, const Polynomial& p) {
        if (p.is_zero()) return;
        auto it = comps_.find(mask);
        if (it == comps_.end()) {
            comps_[mask] = p;
        } else {
            it->second += p;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    DifferentialForm operator-() const {
        DifferentialForm r(n_);
        for (auto& [m, p] : comps_) r.comps_[m] = -p;
        return r;
    }

    DifferentialForm& operator+=(const DifferentialForm& o) {
        for (auto& [m, p] : o.comps_) add(m, p);
        return *this;
    }

    DifferentialForm& operator-=(const DifferentialForm& o) {
        for (auto& [m, p] : o.comps_) add(m, -p);
        return *this;
    }

    friend DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b) { return a += b; }
    friend DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b) { return a -= b; }

    friend DifferentialForm operator*(const Polynomial& c, const DifferentialForm& f) {
        DifferentialForm r(f.n_);
        for (auto& [m, p] : f.comps_) r.add(m, c * p);
        return r;
    }

    friend DifferentialForm operator*(const Rational& c, const DifferentialForm& f) {
        DifferentialForm r(f.n_);
        if (c == 0) return r;
        for (auto& [m, p] : f.comps_) r.add(m, c * p);
        return r;
    }

    friend DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
        if (a.n_ != b.n_) throw RingMismatchError("wedge over different rings");
        DifferentialForm r(a.n_);
        for (auto& [ma, pa] : a.comps_)
            for (auto& [mb, pb] : b.comps_) {
                if (ma & mb) continue;
                Rational s = merge_sign(ma, mb);
                r.add(ma | mb, s * (pa * pb));
            }
        return r;
    }

    /// Exterior derivative; d^2 = 0, graded Leibniz.
    DifferentialForm d() const {
        DifferentialForm r(n_);
        for (auto& [m, p] : comps_) {
            for (int i = 0; i < n_; ++i) {
                std::uint32_t bit = 1u << i;
                if (m & bit) continue;
                Polynomial dp = p.derivative(i);
                if (dp.is_zero()) continue;
                r.add(m | bit, Rational(merge_sign(bit, m)) * dp);
            }
        }
        return r;
    }

    /// Contraction with a polynomial vector field (used by test oracles).
    DifferentialForm contract(const std::vector<Polynomial>& field) const {
        DifferentialForm r(n_);
        for (auto& [m, p] : comps_) {
            for (int i = 0; i < n_; ++i) {
                std::uint32_t bit = 1u << i;
                if (!(m & bit)) continue;
                std::uint32_t lower = m & (bit - 1);
                Rational s = std::popcount(lower) % 2 == 0 ? 1 : -1;
                r.add(m & ~bit, s * (field[i] * p));
            }
        }
        return r;
    }

    bool operator==(const DifferentialForm& o) const { return n_ == o.n_ && comps_ == o.comps_; }

    std::string str(const std::vector<std::string>& names = {}) const {
        if (comps_.empty()) return "0";
        std::string out;
        for (auto& [m, p] : comps_) {
            if (!out.empty()) out += " + ";
            out += "(" + p.str(names) + ")";
            for (int i = 0; i < n_; ++i)
                if (m & (1u << i)) out += "*d" + Polynomial::var_name(i, names);
        }
        return out;
    }

private:
    int n_;
    std::map<std::uint32_t, Polynomial> comps_;
};

/// Dense matrix of polynomials.
class PolyMatrix {
public:
    PolyMatrix() : rows_(0), cols_(0), n_(0) {}
    PolyMatrix(int rows, int cols, int n)
        : rows_(rows), cols_(cols), n_(n), data_(rows * cols, Polynomial(n)) {}

    static PolyMatrix identity(int size, int n) {
        PolyMatrix m(size, size, n);
        for (int i = 0; i < size; ++i) m.at(i, i) = Polynomial::constant(n, 1);
        return m;
    }

    static PolyMatrix scalar(int size, const Polynomial& c) {
        PolyMatrix m(size, size, c.n());
        for (int i = 0; i < size; ++i) m.at(i, i) = c;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int n() const { return n_; }

    Polynomial& at(int r, int c) { return data_[r * cols_ + c]; }
    const Polynomial& at(int r, int c) const { return data_[r * cols_ + c]; }

    bool is_zero() const {
        for (auto& p : data_)
            if (!p.is_zero()) return false;
        return true;
    }

    PolyMatrix operator-() const {
        PolyMatrix r = *this;
        for (auto& p : r.data_) p = -p;
        return r;
    }

    PolyMatrix& operator+=(const PolyMatrix& o) {
        require_shape(o.rows_, o.cols_);
        for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    PolyMatrix& operator-=(const PolyMatrix& o) {
        require_shape(o.rows_, o.cols_);
        for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }

    friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
    friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.cols_ != b.rows_) throw ShapeMismatchError("matrix product shape mismatch");
        PolyMatrix r(a.rows_, b.cols_, a.n_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const Polynomial& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    const Polynomial& bkj = b.at(k, j);
                    if (bkj.is_zero()) continue;
                    r.at(i, j) += aik * bkj;
                }
            }
        return r;
    }

    friend PolyMatrix operator*(const Polynomial& c, const PolyMatrix& m) {
        PolyMatrix r = m;
        for (auto& p : r.data_) p = c * p;
        return r;
    }

    friend PolyMatrix operator*(const Rational& c, const PolyMatrix& m) {
        PolyMatrix r = m;
        for (auto& p : r.data_) p = c * p;
        return r;
    }

    PolyMatrix transpose() const {
        PolyMatrix r(cols_, rows_, n_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    PolyMatrix map_entries(const std::function<Polynomial(const Polynomial&)>& fn) const {
        PolyMatrix r(rows_, cols_, n_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(i, j) = fn(at(i, j));
        return r;
    }

    bool operator==(const PolyMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    void require_shape(int r, int c) const {
        if (rows_ != r || cols_ != c) throw ShapeMismatchError("matrix shape mismatch");
    }

    int rows_, cols_, n_;
    std::vector<Polynomial> data_;
};

/// Split of a square matrix over E0 + E1 into its block-diagonal (even) and
/// block-off-diagonal (odd) parts.
struct ParitySplit {
    PolyMatrix even;
    PolyMatrix odd;
};

inline ParitySplit split_parity(const PolyMatrix& m, int r0) {
    ParitySplit s{PolyMatrix(m.rows(), m.cols(), m.n()), PolyMatrix(m.rows(), m.cols(), m.n())};
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            bool even_block = (i < r0) == (j < r0);
            (even_block ? s.even : s.odd).at(i, j) = m.at(i, j);
        }
    return s;
}

/// Element of Omega^* tensor End(E0 + E1) stored as a sum of
/// (basis form dx_S) tensor (polynomial matrix) terms. Multiplication follows
/// the Koszul rule (w (x) A) * (e (x) B) = (-1)^{|A| |e|} (w ^ e) (x) (A B).
class SuperForm {
public:
    SuperForm() : n_(0), r0_(0), r1_(0) {}
    SuperForm(int n, int r0, int r1) : n_(n), r0_(r0), r1_(r1) {}

    static SuperForm unit(int n, int r0, int r1) {
        SuperForm u(n, r0, r1);
        u.add(0u, PolyMatrix::identity(r0 + r1, n));
        return u;
    }

    static SuperForm of_matrix(int n, int r0, int r1, const PolyMatrix& m) {
        SuperForm u(n, r0, r1);
        u.add(0u, m);
        return u;
    }

    int n() const { return n_; }
    int r0() const { return r0_; }
    int r1() const { return r1_; }
    int size() const { return r0_ + r1_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::uint32_t, PolyMatrix>& terms() const { return terms_; }

    PolyMatrix term(std::uint32_t mask) const {
        auto it = terms_.find(mask);
        return it == terms_.end() ? PolyMatrix(size(), size(), n_) : it->second;
    }

    void add(std::uint32_t mask, const PolyMatrix& m) {
        if (m.is_zero()) return;
        auto it = terms_.find(mask);
        if (it == terms_.end()) {
            terms_[mask] = m;
        } else {
            it->second += m;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    SuperForm operator-() const {
        SuperForm r(n_, r0_, r1_);
        for (auto& [m, a] : terms_) r.terms_[m] = -a;
        return r;
    }

    SuperForm& operator+=(const SuperForm& o) {
        require_compatible(o);
        for (auto& [m, a] : o.terms_) add(m, a);
        return *this;
    }

    SuperForm& operator-=(const SuperForm& o) {
        require_compatible(o);
        for (auto& [m, a] : o.terms_) add(m, -a);
        return *this;
    }

    friend SuperForm operator+(SuperForm a, const SuperForm& b) { return a += b; }
    friend SuperForm operator-(SuperForm a, const SuperForm& b) { return a -= b; }

    friend SuperForm operator*(const Rational& c, const SuperForm& u) {
        SuperForm r(u.n_, u.r0_, u.r1_);
        if (c == 0) return r;
        for (auto& [m, a] : u.terms_) r.terms_[m] = c * a;
        return r;
    }

    friend SuperForm operator*(const Polynomial& c, const SuperForm& u) {
        SuperForm r(u.n_, u.r0_, u.r1_);
        for (auto& [m, a] : u.terms_) r.add(m, c * a);
        return r;
    }

    /// Form-degree k part.
    SuperForm degree_part(int k) const {
        SuperForm r(n_, r0_, r1_);
        for (auto& [m, a] : terms_)
            if (std::popcount(m) == k) r.add(m, a);
        return r;
    }

    int max_form_degree() const {
        int d = -1;
        for (auto& [m, a] : terms_) d = std::max(d, std::popcount(m));
        return d;
    }

    friend SuperForm super_mul(const SuperForm& u, const SuperForm& v) {
        if (u.n_ != v.n_) throw RingMismatchError("superforms over different rings");
        if (u.r0_ != v.r0_ || u.r1_ != v.r1_ || u.size() != v.size())
            throw ShapeMismatchError("superform block shapes differ");
        SuperForm r(u.n_, u.r0_, u.r1_);
        for (auto& [mu, a] : u.terms_) {
            ParitySplit sp = split_parity(a, u.r0_);
            for (auto& [mv, b] : v.terms_) {
                if (mu & mv) continue;
                int sgn = merge_sign(mu, mv);
                int deg_v = std::popcount(mv);
                // even part of a commutes past dx_mv, odd part picks up (-1)^{|mv|}
                if (!sp.even.is_zero()) r.add(mu | mv, Rational(sgn) * (sp.even * b));
                if (!sp.odd.is_zero()) {
                    int s2 = (deg_v % 2 == 0) ? sgn : -sgn;
                    r.add(mu | mv, Rational(s2) * (sp.odd * b));
                }
            }
        }
        return r;
    }

    /// str(w (x) A) = w * (tr A_00 - tr A_11).
    friend DifferentialForm supertrace(const SuperForm& u) {
        if (u.r0_ + u.r1_ == 0) return DifferentialForm(u.n_);
        DifferentialForm out(u.n_);
        for (auto& [m, a] : u.terms_) {
            if (a.rows() != a.cols()) throw ShapeMismatchError("supertrace of non-square");
            Polynomial tr(u.n_);
            for (int i = 0; i < u.r0_; ++i) tr += a.at(i, i);
            for (int i = u.r0_; i < u.size(); ++i) tr -= a.at(i, i);
            out.add(m, tr);
        }
        return out;
    }

    /// Splits into terms of pure total parity (form degree + matrix parity).
    std::vector<std::pair<int, SuperForm>> pure_parts() const {
        SuperForm even(n_, r0_, r1_), odd(n_, r0_, r1_);
        for (auto& [m, a] : terms_) {
            ParitySplit sp = split_parity(a, r0_);
            int fd = std::popcount(m) % 2;
            if (!sp.even.is_zero()) (fd == 0 ? even : odd).add(m, sp.even);
            if (!sp.odd.is_zero()) (fd == 0 ? odd : even).add(m, sp.odd);
        }
        std::vector<std::pair<int, SuperForm>> parts;
        if (!even.is_zero()) parts.emplace_back(0, even);
        if (!odd.is_zero()) parts.emplace_back(1, odd);
        return parts;
    }

    /// [u, v] = uv - (-1)^{|u||v|} vu, extended term-wise over mixed parities.
    friend SuperForm supercommutator(const SuperForm& u, const SuperForm& v) {
        SuperForm r(u.n_, u.r0_, u.r1_);
        for (auto& [pu, uu] : u.pure_parts())
            for (auto& [pv, vv] : v.pure_parts()) {
                SuperForm uv = super_mul(uu, vv);
                SuperForm vu = super_mul(vv, uu);
                r += (pu * pv) % 2 == 0 ? uv - vu : uv + vu;
            }
        return r;
    }

    bool operator==(const SuperForm& o) const {
        return n_ == o.n_ && r0_ == o.r0_ && r1_ == o.r1_ && terms_ == o.terms_;
    }

private:
    void require_compatible(const SuperForm& o) const {
        if (n_ != o.n_ || r0_ != o.r0_ || r1_ != o.r1_)
            throw ShapeMismatchError("superform shapes differ");
    }

    int n_, r0_, r1_;
    std::map<std::uint32_t, PolyMatrix> terms_;
};

/// Left multiplication by a scalar-matrix form: (form (x) I) * u.
inline SuperForm form_times(const DifferentialForm& w, const SuperForm& u) {
    SuperForm scal(u.n(), u.r0(), u.r1());
    for (auto& [m, p] : w.components())
        scal.add(m, PolyMatrix::scalar(u.size(), p));
    return super_mul(scal, u);
}

} // namespace mfcalc
