#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"

using namespace intdiff;
using testutil::Rng;
using testutil::op;

namespace {

HPoly H() { return hpoly_var(); }
HPoly hp(long c) { return H() - HPoly(rat(c)); }  // H - c

B1Element b1(std::initializer_list<std::pair<int, HPoly>> terms) {
    B1Element b;
    for (const auto& [k, p] : terms) b.add(k, p);
    return b;
}

}  // namespace

TEST_CASE("project fixed values") {
    CHECK(project(op("I*D")) == B1Element::scalar(HPoly(rat(1))));
    // x = (H-1)I projects to D^-1 H
    CHECK(project(Operator::x()) == b1({{-1, H()}}));
    CHECK(project(Operator::e(2, 3)) == B1Element());
    CHECK(project(Operator::d()) == B1Element::dpow(1));
}

TEST_CASE("project is a ring homomorphism with kernel F") {
    Rng rng(701);
    for (int i = 0; i < 200; ++i) {
        Operator a = rng.any_op(), b = rng.any_op();
        CHECK(project(a * b) == b1_mul(project(a), project(b)));
        CHECK(project(a + b) == b1_add(project(a), project(b)));
        CHECK((project(a) == B1Element()) == a.is_compact());
    }
}

TEST_CASE("b1_mul fixed values") {
    CHECK(b1_mul(B1Element::dpow(1), B1Element::dpow(-1)) == B1Element::scalar(HPoly(rat(1))));
    // D * H = (H+1) D, stored right: D^1 with coefficient H
    CHECK(b1_mul(B1Element::dpow(1), B1Element::scalar(H())) == b1({{1, H()}}));
    // H * D = D (H-1): the oracle project(mul(H, D)) pins the right coefficient
    B1Element hd = b1_mul(B1Element::scalar(H()), B1Element::dpow(1));
    CHECK(hd == b1({{1, hp(1)}}));
    CHECK(hd == project(Operator::h() * Operator::d()));
}

TEST_CASE("index through the quotient") {
    Rng rng(702);
    for (int i = 0; i < 200; ++i) {
        Operator a = rng.fredholm_op();
        CHECK(index(a) == -b1_deg_dinv(project(a)));
    }
    CHECK_THROWS_AS(b1_deg_dinv(B1Element()), DomainError);
}

TEST_CASE("irreducibility test") {
    CHECK(is_irreducible_q(hp(1)));
    CHECK(is_irreducible_q(H() * H() + HPoly(rat(1))));
    CHECK_FALSE(is_irreducible_q(H() * H() - HPoly(rat(3)) * H() + HPoly(rat(2))));
    CHECK_FALSE(is_irreducible_q(H() * H()));
    CHECK_FALSE(is_irreducible_q(HPoly(rat(3))));
    // x^4 + 4 = (x^2-2x+2)(x^2+2x+2), no rational roots
    HPoly p = H() * H() * H() * H() + HPoly(rat(4));
    CHECK_FALSE(is_irreducible_q(p));
    CHECK(is_irreducible_q(H() * H() * H() - HPoly(rat(2))));
}

TEST_CASE("orbit_shift") {
    CHECK(orbit_shift(hp(1), hp(3)) == -2);
    CHECK(orbit_shift(H() * H() + HPoly(rat(1)), H() * H() + HPoly(rat(1))) == 0);
    CHECK_FALSE(orbit_shift(H() * H() + HPoly(rat(1)), H() * H() + HPoly(rat(2))).has_value());
    CHECK_FALSE(orbit_shift(hp(0), H() * H() + HPoly(rat(1))).has_value());
    CHECK_THROWS_AS(orbit_shift(H() * H() - HPoly(rat(1)), hp(0)), DomainError);
    // antisymmetry
    Rng rng(703);
    for (int i = 0; i < 40; ++i) {
        long c1 = rng.uniform(-5, 5), c2 = rng.uniform(-5, 5);
        auto s = orbit_shift(hp(c1), hp(c2)), t = orbit_shift(hp(c2), hp(c1));
        REQUIRE(s.has_value());
        REQUIRE(t.has_value());
        CHECK(*s == -*t);
        CHECK(poly_shift(hp(c1), *s) == hp(c2));
    }
}

TEST_CASE("poly_less") {
    CHECK(poly_less(hp(3), hp(1)));
    CHECK_FALSE(poly_less(hp(1), hp(3)));
    CHECK(poly_less(hp(1), H() * H() + HPoly(rat(1))));  // no comparable pairs
    CHECK_FALSE(poly_less(hp(1), hp(1)));
    CHECK(poly_less(HPoly(rat(2)), hp(1)));  // vacuous against a constant
    // product factors: (H-3)(H-10) vs (H-1): both comparable gaps positive
    CHECK(poly_less(hp(3) * hp(10), hp(1)));
    CHECK_FALSE(poly_less(hp(3) * hp(0), hp(1)));
    CHECK_THROWS_AS(poly_less(HPoly(), hp(1)), DomainError);
}

TEST_CASE("poly_less matches the root-difference oracle on split polynomials") {
    // products of linear factors with known rational roots: alpha < beta
    // iff every pair of roots with integer difference has root(alpha) >
    // root(beta)
    Rng rng(705);
    for (int t = 0; t < 300; ++t) {
        std::vector<Rational> ra, rb;
        HPoly alpha(rat(1)), beta(rat(1));
        int na = rng.uniform(1, 3), nb = rng.uniform(1, 3);
        for (int i = 0; i < na; ++i) {
            Rational root = rng.rational(6);
            ra.push_back(root);
            alpha = alpha * (H() - HPoly(root));
        }
        for (int i = 0; i < nb; ++i) {
            Rational root = rng.rational(6);
            rb.push_back(root);
            beta = beta * (H() - HPoly(root));
        }
        bool expected = true;
        for (const Rational& x : ra)
            for (const Rational& y : rb)
                if (is_integer(Rational(x - y)) && x <= y) expected = false;
        CHECK(poly_less(alpha, beta) == expected);
    }
}

TEST_CASE("is_normal") {
    CHECK(is_normal(b1({{-1, hp(1)}, {0, hp(3)}})));
    CHECK_FALSE(is_normal(b1({{-1, hp(3)}, {0, hp(1)}})));
    CHECK(is_normal(b1({{-1, HPoly(rat(1))}, {0, H()}})));  // constant top coefficient, vacuous
    CHECK_THROWS_AS(is_normal(B1Element::scalar(H())), DomainError);
    CHECK_THROWS_AS(is_normal(b1({{1, H()}, {0, H()}})), DomainError);
    CHECK_THROWS_AS(is_normal(B1Element()), DomainError);
}

TEST_CASE("normalize fixed cases") {
    B1Element already = b1({{-1, hp(1)}, {0, hp(3)}});
    Normalization n1 = normalize(already);
    CHECK(n1.alpha == HPoly(rat(1)));
    CHECK(n1.beta == HPoly(rat(1)));
    CHECK(n1.normalized == already);

    B1Element vac = b1({{-1, HPoly(rat(1))}, {0, HPoly(rat(1))}});
    Normalization n2 = normalize(vac);
    CHECK(n2.normalized == vac);

    B1Element bad = b1({{-1, hp(3)}, {0, hp(1)}});
    Normalization n3 = normalize(bad);
    CHECK(is_normal(n3.normalized));
    CHECK(b1_mul(B1Element::scalar(n3.beta), bad) == b1_mul(n3.normalized, B1Element::scalar(n3.alpha)));
}

TEST_CASE("normalize on random candidates") {
    Rng rng(704);
    for (int i = 0; i < 20; ++i) {
        B1Element b = rng.b1_candidate();
        Normalization n = normalize(b);
        CHECK(is_normal(n.normalized));
        CHECK(b1_mul(B1Element::scalar(n.beta), b) == b1_mul(n.normalized, B1Element::scalar(n.alpha)));
    }
}
