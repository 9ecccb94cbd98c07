#pragma once

#include <cstdint>
#include <random>

#include "mfcalc/polynomial.hpp"

namespace mfcalc {

/// Seeded deterministic generator shared across checks and the CLI.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    long long integer(long long lo, long long hi) {
        return std::uniform_int_distribution<long long>(lo, hi)(gen_);
    }

    Rational rational(long long lo = -4, long long hi = 4) {
        long long num = integer(lo, hi);
        long long den = integer(1, 3);
        return rat(num, den);
    }

    Monomial monomial(int n, int max_degree) {
        Monomial m(n, 0);
        int budget = (int)integer(0, max_degree);
        for (int d = 0; d < budget; ++d) m[integer(0, n - 1)] += 1;
        return m;
    }

    Polynomial polynomial(int n, int max_degree, int terms, bool allow_zero = true) {
        Polynomial p(n);
        for (int t = 0; t < terms; ++t) p.add_term(monomial(n, max_degree), rational());
        if (!allow_zero && p.is_zero()) p.add_term(Monomial(n, 0), 1);
        return p;
    }

    /// Quasi-homogeneous polynomial of the given weighted degree (possibly zero
    /// when no monomial of that degree exists).
    Polynomial homogeneous(int n, const WeightSystem& ws, long long degree, int terms) {
        std::vector<Monomial> pool;
        Monomial cur(n, 0);
        collect(pool, cur, 0, ws, degree);
        Polynomial p(n);
        if (pool.empty()) return p;
        for (int t = 0; t < terms; ++t)
            p.add_term(pool[integer(0, (long long)pool.size() - 1)], rational());
        return p;
    }

    std::mt19937_64& raw() { return gen_; }

private:
    static void collect(std::vector<Monomial>& pool, Monomial& cur, int var,
                        const WeightSystem& ws, long long remaining) {
        if (var == (int)cur.size()) {
            if (remaining == 0) pool.push_back(cur);
            return;
        }
        for (int e = 0; e * ws.weights[var] <= remaining; ++e) {
            cur[var] = e;
            collect(pool, cur, var + 1, ws, remaining - e * ws.weights[var]);
        }
        cur[var] = 0;
    }

    std::mt19937_64 gen_;
};

} // namespace mfcalc
