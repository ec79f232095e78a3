#include "doctest.h"
#include "ncdg/prng.hpp"
#include "ncdg/scalars.hpp"

using namespace ncdg;

namespace {

// Small helpers to spell polynomials tersely in tests.
PolyZ P(std::initializer_list<std::pair<long, long>> deg_coeff) {
    PolyZ p;
    for (auto [d, c] : deg_coeff) p = p + PolyZ::monomial(d, c);
    return p;
}

ScalarQ random_scalar(SplitMix64& rng, bool nonzero = false) {
    auto random_poly = [&rng](bool force_nonzero) {
        PolyZ p;
        const int terms = static_cast<int>(rng.below(3)) + (force_nonzero ? 1 : 0);
        for (int i = 0; i < terms; ++i)
            p = p + PolyZ::monomial(rng.range(0, 3), rng.range(-9, 9));
        if (force_nonzero && p.is_zero()) p = PolyZ::constant(rng.range(1, 9));
        return p;
    };
    ScalarQ s(random_poly(false), random_poly(true));
    if (nonzero && s.is_zero()) s = ScalarQ(PolyZ::q_power(rng.range(0, 2)), random_poly(true));
    return s;
}

}  // namespace

TEST_CASE("polynomial gcd: frozen reference values") {
    struct Row {
        PolyZ a, b, expect;
    };
    const Row rows[] = {
        {P({{2, 1}, {0, -1}}), P({{1, 1}, {0, -1}}), P({{1, 1}, {0, -1}})},
        {P({{1, 2}, {0, 2}}), P({{1, 4}, {0, 4}}), P({{1, 1}, {0, 1}})},
        {PolyZ(), P({{2, 3}, {0, -6}}), P({{2, 1}, {0, -2}})},
        {P({{5, 1}, {3, -1}}), P({{4, 1}, {3, 2}, {2, 1}}), P({{3, 1}, {2, 1}})},
        {P({{4, 6}, {0, -6}}), P({{2, 4}, {1, -8}, {0, 4}}), P({{1, 1}, {0, -1}})},
        {P({{7, 1}, {0, -1}}), P({{5, 1}, {0, -1}}), P({{1, 1}, {0, -1}})},
        {P({{3, -1}, {1, 1}}), P({{2, 1}, {1, 2}, {0, 1}}), P({{1, 1}, {0, 1}})},
        {P({{0, 15}}), P({{0, 25}}), P({{0, 1}})},
        {P({{4, 1}, {2, -4}, {0, 4}}), P({{2, 1}, {0, -2}}), P({{2, 1}, {0, -2}})},
        {P({{6, 3}, {5, 6}, {4, 3}}), P({{3, 6}, {2, 6}}), P({{3, 1}, {2, 1}})},
    };
    for (const auto& row : rows) {
        CHECK(PolyZ::gcd(row.a, row.b) == row.expect);
        CHECK(PolyZ::gcd(row.b, row.a) == row.expect);
    }
    CHECK(PolyZ::gcd(PolyZ(), PolyZ()).is_zero());
}

TEST_CASE("fraction canonicalization: frozen reference values") {
    // (q^2-1)/(q-1) -> q+1
    CHECK(ScalarQ(P({{2, 1}, {0, -1}}), P({{1, 1}, {0, -1}})) ==
          ScalarQ::from_poly(P({{1, 1}, {0, 1}})));
    // (2q+2)/4 -> (q+1)/2
    CHECK(ScalarQ(P({{1, 2}, {0, 2}}), P({{0, 4}})) == ScalarQ(P({{1, 1}, {0, 1}}), P({{0, 2}})));
    // -q/q^2 -> -1/q
    CHECK(ScalarQ(P({{1, -1}}), P({{2, 1}})) == ScalarQ(P({{0, -1}}), P({{1, 1}})));
    // (q^3-q)/(2q^2+4q+2) -> (q^2-q)/(2q+2)
    CHECK(ScalarQ(P({{3, 1}, {1, -1}}), P({{2, 2}, {1, 4}, {0, 2}})) ==
          ScalarQ(P({{2, 1}, {1, -1}}), P({{1, 2}, {0, 2}})));
    // 6/(-4q) -> -3/(2q): denominator sign is normalized away
    CHECK(ScalarQ(P({{0, 6}}), P({{1, -4}})) == ScalarQ(P({{0, -3}}), P({{1, 2}})));
    // zero is always 0/1
    ScalarQ z(PolyZ(), P({{3, 7}, {0, -2}}));
    CHECK(z.is_zero());
    CHECK(z.den().is_one());
}

TEST_CASE("scalar arithmetic contract rows") {
    const ScalarQ q = ScalarQ::q_power(1);
    const ScalarQ one = ScalarQ::integer(1);
    CHECK(scalar_arith(ScalarOp::add, q, one) == ScalarQ::from_poly(P({{1, 1}, {0, 1}})));
    const ScalarQ q2m1 = ScalarQ::from_poly(P({{2, 1}, {0, -1}}));
    const ScalarQ inv = scalar_arith(ScalarOp::div, one, q2m1);
    CHECK(inv == ScalarQ(P({{0, 1}}), P({{2, 1}, {0, -1}})));
    CHECK(scalar_arith(ScalarOp::mul, inv, q2m1) == one);
    CHECK_THROWS_AS(scalar_arith(ScalarOp::div, one, ScalarQ()), std::domain_error);
}

TEST_CASE("q-power laws through the fraction field") {
    for (long a = -4; a <= 4; ++a)
        for (long b = -4; b <= 4; ++b)
            CHECK(ScalarQ::q_power(a) * ScalarQ::q_power(b) == ScalarQ::q_power(a + b));
    CHECK(ScalarQ::q_power(-3) * ScalarQ::q_power(3) == ScalarQ::integer(1));
    CHECK(ScalarQ::q_power(-2) == ScalarQ::integer(1) / (ScalarQ::q_power(1) * ScalarQ::q_power(1)));
}

TEST_CASE("field axioms on randomized triples") {
    SplitMix64 rng(2026);
    for (int i = 0; i < 1000; ++i) {
        const ScalarQ a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
    }
    for (int i = 0; i < 200; ++i) {
        const ScalarQ a = random_scalar(rng, /*nonzero=*/true);
        CHECK(a * a.inverse() == ScalarQ::integer(1));
        CHECK(a - a == ScalarQ());
    }
}

TEST_CASE("canonical form decides equality") {
    SplitMix64 rng(7);
    for (int i = 0; i < 300; ++i) {
        const ScalarQ a = random_scalar(rng), b = random_scalar(rng);
        const bool diff_zero = (a - b).is_zero();
        const bool identical = (a == b);
        CHECK(diff_zero == identical);
        // Multiplying num and den by a common junk factor must not change the value.
        const ScalarQ junk = random_scalar(rng, /*nonzero=*/true);
        CHECK(a * junk / junk == a);
    }
}

TEST_CASE("numeric evaluation") {
    // eval(q^2, 2) = 4
    CHECK(ScalarQ::q_power(2).eval(mpq_class(2)) == mpq_class(4));
    // eval((q^2-1)/(q-1), 3) = 4: simplification happens before substitution
    CHECK(ScalarQ(P({{2, 1}, {0, -1}}), P({{1, 1}, {0, -1}})).eval(mpq_class(3)) == mpq_class(4));
    // pole detection
    CHECK_THROWS_AS(ScalarQ(P({{0, 1}}), P({{1, 1}, {0, -1}})).eval(mpq_class(1)),
                    std::domain_error);
    // homomorphism on random samples away from poles
    SplitMix64 rng(11);
    const mpq_class q0(3, 2);
    int done = 0;
    while (done < 200) {
        const ScalarQ a = random_scalar(rng), b = random_scalar(rng);
        try {
            mpq_class ea = a.eval(q0), eb = b.eval(q0);
            CHECK((a + b).eval(q0) == ea + eb);
            CHECK((a * b).eval(q0) == mpq_class(ea * eb));
            ++done;
        } catch (const std::domain_error&) {
            // hit a pole of a or b at q0; resample
        }
    }
}

TEST_CASE("rendering formats") {
    CHECK(P({{2, 1}, {0, -1}}).render() == "q^2 - 1");
    CHECK(P({{3, 2}, {1, 1}, {0, -4}}).render() == "2 q^3 + q - 4");
    CHECK(PolyZ().render() == "0");
    CHECK(P({{1, -1}, {0, 1}}).render() == "-q + 1");
    CHECK(ScalarQ::integer(5).render() == "5");
    CHECK(ScalarQ(P({{0, 1}}), P({{2, 1}, {0, -1}})).render() == "1/(q^2 - 1)");
    CHECK(ScalarQ(P({{1, 1}, {0, 1}}), P({{0, 2}})).render() == "(q + 1)/2");
    CHECK(ScalarQ::q_power(-2).render() == "1/q^2");
    CHECK(ScalarQ(P({{0, -3}}), P({{1, 2}})).render() == "-3/(2 q)");
}
