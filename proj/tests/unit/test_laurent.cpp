#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "veerpoly/error.hpp"
#include "veerpoly/laurent.hpp"

using namespace veerpoly;

namespace {

LaurentPoly P(const char* s, int b = 1) { return parse_laurent(s, b); }

LaurentPoly random_poly(std::mt19937& rng, int b, int terms, int span = 3) {
    std::uniform_int_distribution<int> e(-span, span), c(-4, 4);
    LaurentPoly p(b);
    for (int i = 0; i < terms; ++i) {
        std::vector<long> ex(b);
        for (auto& x : ex) x = e(rng);
        p += LaurentPoly::monomial(b, ex, c(rng));
    }
    return p;
}

// Leibniz expansion, used as an independent determinant oracle.
LaurentPoly leibniz(const LaurentMatrix& m) {
    std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    LaurentPoly total(m.nvars());
    do {
        int inv = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        LaurentPoly term = LaurentPoly::constant(m.nvars(), inv % 2 ? -1 : 1);
        for (std::size_t i = 0; i < n; ++i) term *= m.at(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace

TEST_SUITE("laurent") {

TEST_CASE("rendering is graded-lex descending") {
    LaurentPoly p = LaurentPoly::monomial(2, std::vector<long>{1, -1}) + LaurentPoly::constant(2, 3);
    CHECK(p.str() == "a*b^-1 + 3");
    CHECK(P("a^2 - 3*a + 1").str() == "a^2 - 3*a + 1");
    CHECK(LaurentPoly(2).str() == "0");
    CHECK(P("-a^-2 + 2", 1).str() == "2 - a^-2");
}

TEST_CASE("parse and render round trip") {
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        LaurentPoly p = random_poly(rng, 3, 6);
        CHECK(parse_laurent(p.str(), 3) == p);
    }
}

TEST_CASE("normalize_unit examples") {
    // -t^-1 + 2 t^-2 -> t - 2
    CHECK(normalize_unit(P("-a^-1 + 2*a^-2")) == P("a - 2"));
    LaurentPoly one_minus_g = P("1 - b", 2);
    // the lex-leading coefficient fixes the sign, so 1 - g and g - 1 share the representative g - 1
    CHECK(normalize_unit(one_minus_g) == P("b - 1", 2));
    CHECK(normalize_unit(P("b - 1", 2)) == P("b - 1", 2));
    LaurentPoly g = LaurentPoly::monomial(2, std::vector<long>{3, -2}, -1);
    CHECK(normalize_unit(g * one_minus_g) == normalize_unit(one_minus_g));
    CHECK(normalize_unit(LaurentPoly(1)).is_zero());
}

TEST_CASE("canonical form: zero minimum exponent and positive lex-leading coefficient") {
    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
        LaurentPoly p = random_poly(rng, 2, 5);
        if (p.is_zero()) continue;
        LaurentPoly c = normalize_unit(p);
        auto mn = c.min_exponent();
        CHECK(mn[0] == 0);
        CHECK(mn[1] == 0);
        CHECK(c.lex_leading().coef > 0);
        CHECK(normalize_unit(c) == c);
        LaurentPoly unit = LaurentPoly::monomial(2, std::vector<long>{long(i % 5) - 2, long(i % 3) - 1}, i % 2 ? -1 : 1);
        CHECK(normalize_unit(unit * p) == c);
        CHECK(equal_up_to_unit(unit * p, p));
    }
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937 rng(3);
    for (int i = 0; i < 60; ++i) {
        LaurentPoly a = random_poly(rng, 2, 4), b = random_poly(rng, 2, 4), c = random_poly(rng, 2, 4);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a - a == LaurentPoly(2));
    }
}

TEST_CASE("determinant examples") {
    LaurentMatrix m1(1, 1, 1);
    m1.at(0, 0) = P("1 - a");
    CHECK(det_laurent(m1) == P("1 - a"));

    LaurentMatrix m2(2, 2, 4);
    m2.at(0, 0) = P("1 - a", 4);
    m2.at(0, 1) = P("-b", 4);
    m2.at(1, 0) = P("-c", 4);
    m2.at(1, 1) = P("1 - d", 4);
    CHECK(det_laurent(m2) == P("1 - a", 4) * P("1 - d", 4) - P("b*c", 4));
}

TEST_CASE("random 5x5 monomial matrices agree with the Leibniz oracle") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        LaurentMatrix m(5, 5, 2);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                if (rng() % 3) m.at(i, j) = random_poly(rng, 2, 1, 2);
                else m.at(i, j) = LaurentPoly(2);
        LaurentPoly ref = leibniz(m);
        CHECK(det_cofactor(m) == ref);
        CHECK(det_bareiss(m) == ref);
        CHECK(det_laurent(m) == ref);
    }
}

TEST_CASE("row shuffle multiplies the determinant by the permutation sign") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        LaurentMatrix m(4, 4, 2);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m.at(i, j) = random_poly(rng, 2, 2, 2);
        std::vector<int> perm{0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (perm[i] > perm[j]) ++inv;
        LaurentMatrix s(4, 4, 2);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) s.at(i, j) = m.at(perm[i], j);
        LaurentPoly d = det_laurent(m);
        CHECK(det_laurent(s) == (inv % 2 ? -d : d));
    }
}

TEST_CASE("bareiss handles a larger sparse matrix") {
    std::mt19937 rng(17);
    LaurentMatrix m(11, 11, 2);
    for (int i = 0; i < 11; ++i) {
        m.at(i, i) = LaurentPoly::constant(2, 1);
        for (int k = 0; k < 2; ++k) m.at(i, rng() % 11) -= random_poly(rng, 2, 1, 1);
    }
    CHECK(det_bareiss(m) == det_cofactor(m));
}

TEST_CASE("gcd examples") {
    CHECK(gcd_laurent(P("1 - a^2"), P("1 - a^3")) == P("a - 1"));
    LaurentPoly p = P("3*a^2 - 2*a^-1 + 1");
    CHECK(gcd_laurent(p, LaurentPoly(1)) == normalize_unit(p));
    CHECK(gcd_laurent(P("a*b", 2), P("a^2", 2)) == LaurentPoly::constant(2, 1));
}

TEST_CASE("gcd divides both inputs and is symmetric") {
    std::mt19937 rng(19);
    for (int i = 0; i < 40; ++i) {
        LaurentPoly common = random_poly(rng, 2, 3, 2);
        LaurentPoly p = common * random_poly(rng, 2, 3, 2), q = common * random_poly(rng, 2, 3, 2);
        if (p.is_zero() || q.is_zero()) continue;
        LaurentPoly g = gcd_laurent(p, q);
        CHECK(try_div_exact(p, g).has_value());
        CHECK(try_div_exact(q, g).has_value());
        CHECK(equal_up_to_unit(g, gcd_laurent(q, p)));
        if (!common.is_zero()) CHECK(try_div_exact(g, common).has_value());
    }
}

TEST_CASE("exact division") {
    CHECK(div_exact(P("1 - a^2"), P("1 + a")) == P("1 - a"));
    CHECK_FALSE(try_div_exact(P("1 - a^2"), P("1 - a + a^2")).has_value());
    try {
        div_exact(P("1 - a^2"), P("1 - a + a^2"));
        FAIL("expected Inexact");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Inexact);
    }
    try {
        div_exact(P("1 + a"), LaurentPoly(1));
        FAIL("expected DivisionByZero");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DivisionByZero);
    }
    LaurentPoly unit = LaurentPoly::monomial(1, std::vector<long>{3}, -1);
    LaurentPoly q = div_exact(P("1 - a^2"), unit * P("1 + a"));
    CHECK(unit * q == P("1 - a"));
}

TEST_CASE("specialization") {
    LaurentPoly p = P("a*b^-1 + 3", 2);
    CHECK(specialize(p, {2, 1}) == P("a + 3"));
    CHECK(specialize(p, {0, 0}) == LaurentPoly::constant(1, 4));
    std::mt19937 rng(23);
    for (int i = 0; i < 30; ++i) {
        LaurentPoly x = random_poly(rng, 3, 4), y = random_poly(rng, 3, 4);
        std::vector<long> alpha{long(rng() % 5) - 2, long(rng() % 5) - 2, long(rng() % 5) - 2};
        CHECK(specialize(x * y, alpha) == specialize(x, alpha) * specialize(y, alpha));
        CHECK(specialize(x + y, alpha) == specialize(x, alpha) + specialize(y, alpha));
    }
}

TEST_CASE("substitution by an integral matrix") {
    LaurentPoly p = P("a^2*b - 3", 2);
    // e -> M e with M = [[1,1],[0,1]]
    CHECK(substitute(p, {{1, 1}, {0, 1}}) == P("a^3*b - 3", 2));
    CHECK(substitute(p, {{1, 0}, {0, 1}}) == p);
}

}  // TEST_SUITE
