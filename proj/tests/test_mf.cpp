#include <catch2/catch_amalgamated.hpp>

#include "mfcalc/mf.hpp"
#include "mfcalc/rng.hpp"

using namespace mfcalc;

namespace {

Polynomial var(int n, int i) { return Polynomial::variable(n, i); }

MatrixFactorization random_mf(Rng& rng, int n, int depth) {
    if (depth == 0 || rng.integer(0, 2) == 0) {
        int r = 1 + (int)rng.integer(0, 1);
        std::vector<Polynomial> a, b;
        for (int i = 0; i < r; ++i) {
            a.push_back(rng.polynomial(n, 2, 2, false));
            b.push_back(rng.polynomial(n, 2, 2, false));
        }
        return koszul(a, b);
    }
    switch (rng.integer(0, 3)) {
    case 0: {
        MatrixFactorization e = random_mf(rng, n, depth - 1);
        return tensor(e, random_mf(rng, n, depth - 1));
    }
    case 1: {
        MatrixFactorization e = random_mf(rng, n, depth - 1);
        return shift(e);
    }
    case 2: {
        MatrixFactorization e = random_mf(rng, n, depth - 1);
        return dual(e);
    }
    default: {
        MatrixFactorization e = random_mf(rng, n, depth - 1);
        return direct_sum(e, shift(shift(e)));
    }
    }
}

} // namespace

TEST_CASE("validate on rank-one factorizations") {
    int n = 2;
    Polynomial x = var(n, 0), y = var(n, 1);

    REQUIRE(validate(rank_one(x, y)).ok);
    REQUIRE(validate(rank_one(x, x)).ok);

    PolyMatrix d1(1, 1, n), d0(1, 1, n);
    d1.at(0, 0) = x;
    d0.at(0, 0) = y;
    // claim it factors x^2: the product is xy, not x^2
    MatrixFactorization bad(x * x, d1, d0);
    ValidationReport rep = validate(bad);
    REQUIRE(!rep.ok);
    REQUIRE(rep.message.find("x*y") != std::string::npos);
}

TEST_CASE("koszul factorizations") {
    int n = 2;
    Polynomial x = var(n, 0), y = var(n, 1);

    SECTION("rank one: d1 = (a), d0 = (b)") {
        MatrixFactorization E = koszul({x}, {y});
        REQUIRE(E.r0() == 1);
        REQUIRE(E.r1() == 1);
        REQUIRE(E.d1().at(0, 0) == x);
        REQUIRE(E.d0().at(0, 0) == y);
        REQUIRE(E.w() == x * y);
    }
    SECTION("two factors of x^2 + y^2") {
        MatrixFactorization E = koszul({x, y}, {x, y});
        REQUIRE(E.r0() == 2);
        REQUIRE(E.r1() == 2);
        REQUIRE(validate(E).ok);
        REQUIRE(E.w() == x * x + y * y);
    }
    SECTION("rank-one factorization of x^3 + y^3") {
        MatrixFactorization E = koszul({x + y}, {x * x - x * y + y * y});
        REQUIRE(validate(E).ok);
        REQUIRE(E.w() == x.pow(3) + y.pow(3));
    }
    SECTION("graded weights satisfy the homogeneity invariant") {
        WeightSystem ws({1, 1}, 2);
        MatrixFactorization E = koszul({x, y}, {x, y}, ws);
        REQUIRE(E.grading().has_value());
        REQUIRE(validate(E).ok);
    }
    SECTION("length mismatch") {
        REQUIRE_THROWS_AS(koszul({x}, {x, y}), ShapeMismatchError);
    }
}

TEST_CASE("tensor products") {
    int n = 4;
    Polynomial x = var(n, 0), y = var(n, 1), u = var(n, 2), v = var(n, 3);

    SECTION("Knoerrer double validates") {
        MatrixFactorization E = tensor(koszul({x}, {y}), koszul({u}, {v}));
        REQUIRE(E.r0() == 2);
        REQUIRE(E.r1() == 2);
        REQUIRE(validate(E).ok);
        REQUIRE(E.w() == x * y + u * v);
    }
    SECTION("tensor with a trivial rank-one factorization of 0") {
        MatrixFactorization E = koszul({x}, {y});
        MatrixFactorization T = rank_one(Polynomial(n), Polynomial(n));
        MatrixFactorization ET = tensor(E, T);
        REQUIRE(validate(ET).ok);
        REQUIRE(ET.w() == E.w());
        // ranks double: E (x) (R + R[1])
        REQUIRE(ET.r0() == 2);
        REQUIRE(ET.r1() == 2);
    }
    SECTION("graded tensor weights: u-parts add, v-parts add plus h") {
        WeightSystem ws({1, 1, 1, 1}, 2);
        MatrixFactorization E = koszul({x}, {y}, ws);
        MatrixFactorization F = koszul({u}, {v}, ws);
        MatrixFactorization EF = tensor(E, F);
        REQUIRE(EF.grading().has_value());
        const Grading& g = *EF.grading();
        std::vector<long long> expected_u = {
            E.grading()->u[0] + F.grading()->u[0],
            E.grading()->v[0] + F.grading()->v[0] + 2};
        REQUIRE(g.u == expected_u);
        REQUIRE(validate(EF).ok);
    }
    SECTION("koszul of two factors agrees with iterated tensor up to permutation") {
        WeightSystem ws({1, 1, 1, 1}, 2);
        MatrixFactorization A = koszul({x, u}, {y, v}, ws);
        MatrixFactorization B = tensor(koszul({x}, {y}, ws), koszul({u}, {v}, ws));
        REQUIRE(validate(A).ok);
        REQUIRE(validate(B).ok);
        auto wa = A.all_weights();
        auto wb = B.all_weights();
        std::sort(wa.begin(), wa.end());
        std::sort(wb.begin(), wb.end());
        REQUIRE(wa == wb);
    }
}

TEST_CASE("dual, shift, direct sum") {
    int n = 2;
    Polynomial x = var(n, 0), y = var(n, 1);
    MatrixFactorization E = koszul({x}, {y}, WeightSystem({1, 1}, 2));

    SECTION("dual factors -w") {
        MatrixFactorization D = dual(E);
        REQUIRE(validate(D).ok);
        REQUIRE(D.w() == -(x * y));
    }
    SECTION("dual is involutive up to the canonical sign") {
        MatrixFactorization DD = dual(dual(E));
        REQUIRE(DD.w() == E.w());
        REQUIRE(DD.d1() == Rational(-1) * E.d1());
        REQUIRE(DD.d0() == Rational(-1) * E.d0());
        REQUIRE(validate(DD).ok);
    }
    SECTION("shift swaps blocks, shift twice is the identity on matrices") {
        MatrixFactorization S = shift(E);
        REQUIRE(validate(S).ok);
        REQUIRE(S.r0() == E.r1());
        MatrixFactorization SS = shift(S);
        REQUIRE(SS.d1() == E.d1());
        REQUIRE(SS.d0() == E.d0());
        // graded: shift twice is the chi-twist by h
        REQUIRE(SS.grading()->u == twist(E, 2).grading()->u);
        REQUIRE(SS.grading()->v == twist(E, 2).grading()->v);
    }
    SECTION("direct sum doubles ranks") {
        MatrixFactorization S = direct_sum(E, E);
        REQUIRE(validate(S).ok);
        REQUIRE(S.r0() == 2);
        REQUIRE(S.r1() == 2);
    }
    SECTION("direct sum requires equal potentials") {
        REQUIRE_THROWS_AS(direct_sum(E, rank_one(x, x)), Error);
    }
}

TEST_CASE("tensor with a finite free complex") {
    int n = 2;
    Polynomial x = var(n, 0), y = var(n, 1);
    MatrixFactorization E = koszul({x}, {y});

    SECTION("zero differential gives E + shift(E)") {
        FreeComplex C{n, 0, {1, 1}, {PolyMatrix(1, 1, n)}};
        MatrixFactorization T = tensor_with_complex(E, C);
        REQUIRE(validate(T).ok);
        REQUIRE(T.r0() == 2);
        REQUIRE(T.w() == E.w());
    }
    SECTION("identity differential gives a contractible summand") {
        FreeComplex C{n, 0, {1, 1}, {PolyMatrix::scalar(1, Polynomial::constant(n, 1))}};
        MatrixFactorization T = tensor_with_complex(E, C);
        REQUIRE(validate(T).ok);
    }
    SECTION("multiplication by x complex") {
        FreeComplex C{n, 0, {1, 1}, {PolyMatrix::scalar(1, x)}};
        MatrixFactorization T = tensor_with_complex(E, C);
        REQUIRE(validate(T).ok);
        REQUIRE(T.r0() == 2);
        REQUIRE(T.r1() == 2);
        REQUIRE(T.w() == x * y);
    }
    SECTION("complexes must square to zero") {
        PolyMatrix one = PolyMatrix::scalar(1, Polynomial::constant(n, 1));
        FreeComplex C{n, 0, {1, 1, 1}, {one, one}};
        REQUIRE_THROWS_AS(tensor_with_complex(E, C), Error);
    }
}

TEST_CASE("constructor outputs validate on randomized inputs") {
    Rng rng(918273);
    int cases = 0;
    while (cases < 100) {
        int n = 1 + (int)rng.integer(0, 2);
        MatrixFactorization E = random_mf(rng, n, 2);
        REQUIRE(validate(E).ok);
        ++cases;
    }
}

TEST_CASE("graded constructors preserve homogeneity") {
    Rng rng(5150);
    WeightSystem ws({1, 1}, 3);
    int n = 2;
    Polynomial x = var(n, 0), y = var(n, 1);
    MatrixFactorization base = koszul({x}, {x * x}, ws);
    MatrixFactorization other = koszul({y}, {y * y}, ws);
    REQUIRE(validate(tensor(base, other)).ok);
    REQUIRE(validate(shift(base)).ok);
    REQUIRE(validate(dual(base)).ok);
    REQUIRE(validate(direct_sum(base, shift(shift(base)))).ok);
}
