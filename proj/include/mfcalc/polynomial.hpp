#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

#include "mfcalc/error.hpp"
#include "mfcalc/rational.hpp"

namespace mfcalc {

/// Exponent vector; length is the variable count of the ring it lives in.
using Monomial = std::vector<int>;

inline long long total_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), 0ll);
}

/// Graded lexicographic, largest first. Canonical storage/printing order.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        long long da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        return a > b; // lex on exponent vectors
    }
};

inline bool divides(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Monomial mono_div(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

/// Positive integer weights for the variables plus the weighted degree h of the
/// potential. Encodes quasi-homogeneity: every monomial of the potential has
/// weighted degree h.
struct WeightSystem {
    std::vector<long long> weights;
    long long h = 1;

    WeightSystem() = default;
    WeightSystem(std::vector<long long> ws, long long h_) : weights(std::move(ws)), h(h_) {
        for (long long w : weights)
            if (w < 1) throw Error("weights must be >= 1");
        if (h < 1) throw Error("degree of the potential must be >= 1");
    }

    long long degree(const Monomial& m) const {
        long long d = 0;
        for (size_t i = 0; i < m.size(); ++i) d += weights[i] * m[i];
        return d;
    }

    bool operator==(const WeightSystem&) const = default;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Invariant: no zero coefficients stored; every key has length n().
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GrlexGreater>;

    Polynomial() : n_(0) {}
    explicit Polynomial(int n) : n_(n) {}

    static Polynomial zero(int n) { return Polynomial(n); }

    static Polynomial constant(int n, const Rational& c) {
        Polynomial p(n);
        if (c != 0) p.terms_[Monomial(n, 0)] = c;
        return p;
    }

    static Polynomial variable(int n, int i) {
        if (i < 0 || i >= n) throw IndexError("variable index out of range");
        Polynomial p(n);
        Monomial m(n, 0);
        m[i] = 1;
        p.terms_[m] = 1;
        return p;
    }

    static Polynomial monomial(int n, Monomial m, const Rational& c = 1) {
        Polynomial p(n);
        if ((int)m.size() != n) throw RingMismatchError("monomial length mismatch");
        if (c != 0) p.terms_[std::move(m)] = c;
        return p;
    }

    int n() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }

    Rational constant_value() const {
        if (terms_.empty()) return 0;
        auto it = terms_.find(Monomial(n_, 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    long long degree() const {
        if (terms_.empty()) return -1;
        return total_degree(terms_.begin()->first);
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial operator-() const {
        Polynomial r(n_);
        for (auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_ring(o);
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        check_ring(o);
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_ring(b);
        Polynomial r(a.n_);
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_)
                r.add_term(mono_mul(ma, mb), ca * cb);
        return r;
    }

    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator*(const Rational& c, const Polynomial& p) {
        Polynomial r(p.n_);
        if (c == 0) return r;
        for (auto& [m, pc] : p.terms_) r.terms_[m] = c * pc;
        return r;
    }

    friend Polynomial operator*(const Polynomial& p, const Rational& c) { return c * p; }

    Polynomial pow(int e) const {
        if (e < 0) throw Error("negative polynomial power");
        Polynomial r = constant(n_, 1);
        Polynomial base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            base = (e >>= 1) ? base * base : base;
        }
        return r;
    }

    /// Formal partial derivative in variable i (0-based).
    Polynomial derivative(int i) const {
        if (i < 0 || i >= n_) throw IndexError("derivative index out of range");
        Polynomial r(n_);
        for (auto& [m, c] : terms_) {
            if (m[i] == 0) continue;
            Monomial d = m;
            d[i] -= 1;
            r.add_term(d, c * m[i]);
        }
        return r;
    }

    /// Weighted degree if quasi-homogeneous, nullopt otherwise. Throws on zero.
    std::optional<long long> weighted_degree(const WeightSystem& ws) const {
        if ((int)ws.weights.size() != n_)
            throw RingMismatchError("weight system has wrong variable count");
        if (terms_.empty())
            throw DegreeUndefinedError("weighted degree of the zero polynomial");
        long long d = ws.degree(terms_.begin()->first);
        for (auto& [m, c] : terms_)
            if (ws.degree(m) != d) return std::nullopt;
        return d;
    }

    bool is_quasi_homogeneous(const WeightSystem& ws, long long d) const {
        if (terms_.empty()) return true;
        auto wd = weighted_degree(ws);
        return wd.has_value() && *wd == d;
    }

    /// Substitute assignment[i] for variable i; total on all variables.
    Polynomial substitute(const std::vector<Polynomial>& assignment) const {
        if ((int)assignment.size() != n_)
            throw RingMismatchError("substitution must cover every variable");
        int target_n = assignment.empty() ? n_ : assignment[0].n();
        Polynomial r(target_n);
        for (auto& [m, c] : terms_) {
            Polynomial t = Polynomial::constant(target_n, c);
            for (int i = 0; i < n_; ++i)
                if (m[i] > 0) t *= assignment[i].pow(m[i]);
            r += t;
        }
        return r;
    }

    bool operator==(const Polynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    /// Total order for use as a container key (grlex on terms, then coefficients).
    int compare(const Polynomial& o) const {
        if (n_ != o.n_) return n_ < o.n_ ? -1 : 1;
        auto a = terms_.begin(), b = o.terms_.begin();
        GrlexGreater gt;
        for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
            if (a->first != b->first) return gt(a->first, b->first) ? 1 : -1;
            if (a->second != b->second) return a->second < b->second ? -1 : 1;
        }
        if (a != terms_.end()) return 1;
        if (b != o.terms_.end()) return -1;
        return 0;
    }

    bool operator<(const Polynomial& o) const { return compare(o) < 0; }

    std::string str(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (auto& [m, c] : terms_) {
            Rational a = c;
            if (first) {
                if (a < 0) { out << "-"; a = -a; }
            } else {
                out << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            bool has_vars = total_degree(m) > 0;
            if (!has_vars || a != 1) out << a.str();
            bool star = (!has_vars || a != 1);
            for (int i = 0; i < n_; ++i) {
                if (m[i] == 0) continue;
                if (star) out << "*";
                star = true;
                out << var_name(i, names);
                if (m[i] > 1) out << "^" << m[i];
            }
        }
        return out.str();
    }

    static std::string var_name(int i, const std::vector<std::string>& names) {
        if (i < (int)names.size()) return names[i];
        static const char* defaults[] = {"x", "y", "z", "u", "v", "t"};
        if (i < 6) return defaults[i];
        return "x" + std::to_string(i + 1);
    }

private:
    void check_ring(const Polynomial& o) const {
        if (n_ != o.n_)
            throw RingMismatchError("polynomials over different variable counts");
    }

    int n_;
    TermMap terms_;
};

inline Polynomial operator*(long long c, const Polynomial& p) { return Rational(c) * p; }

} // namespace mfcalc
