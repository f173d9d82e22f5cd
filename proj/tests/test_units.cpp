#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"

using namespace intdiff;
using testutil::Rng;
using testutil::op;

namespace {
Operator D() { return Operator::d(); }
Operator I() { return Operator::integral(); }
Operator one() { return Operator::one(); }
}  // namespace

TEST_CASE("det on K+F") {
    CHECK(det_kf(one()) == 1);
    CHECK(det_kf(Operator::e(0, 0)) == 0);
    CHECK(det_kf(one() + Operator::e(0, 0)) == 2);
    CHECK(det_kf(Operator::scalar(rat(2))) == 2);
    CHECK_THROWS_WITH_AS(det_kf(D()), "determinant defined only on K+F", DomainError);
    CHECK_THROWS_AS(det_kf(Operator::h()), DomainError);
}

TEST_CASE("determinant agrees across the e and E bases") {
    Rng rng(501);
    for (int i = 0; i < 100; ++i) {
        Operator u = rng.k_plus_f(4);
        CHECK(det_kf(u) == det_kf_in_E_basis(u));
    }
}

TEST_CASE("determinant is multiplicative on units") {
    Rng rng(502);
    for (int i = 0; i < 60; ++i) {
        Operator u = rng.unit(), v = rng.unit();
        CHECK(det_kf(u * v) == det_kf(u) * det_kf(v));
    }
}

TEST_CASE("is_unit") {
    CHECK(is_unit(one() + Operator::e(0, 1)));
    CHECK_FALSE(is_unit(one() - Operator::e(0, 0)));  // I*D kills constants
    CHECK_FALSE(is_unit(D()));
    CHECK(is_unit(Operator::scalar(rat(-2, 3))));
    CHECK_FALSE(is_unit(Operator::zero()));
}

TEST_CASE("unit_inverse") {
    CHECK(unit_inverse(one() + Operator::e(0, 1)) == one() - Operator::e(0, 1));
    CHECK(unit_inverse(Operator::scalar(rat(2))) == Operator::scalar(rat(1, 2)));
    CHECK(unit_inverse(one() + Operator::e(0, 0)) == one() - Operator::e(0, 0, rat(1, 2)));
    CHECK_THROWS_AS(unit_inverse(one() - Operator::e(0, 0)), DomainError);
    Rng rng(503);
    for (int i = 0; i < 60; ++i) {
        Operator u = rng.unit();
        Operator v = unit_inverse(u);
        CHECK(u * v == one());
        CHECK(v * u == one());
        CHECK(v.in_k_plus_f());
    }
}

TEST_CASE("left_inverse fixed cases") {
    auto w = left_inverse(I());
    REQUIRE(w.has_value());
    CHECK(w->n == 1);
    CHECK(w->unit_factor == one());
    CHECK(w->inverse == D());

    CHECK_FALSE(left_inverse(D()).has_value());
    CHECK_FALSE(left_inverse(Operator::h()).has_value());      // coefficient not constant
    CHECK_FALSE(left_inverse(Operator::e(0, 0)).has_value());  // compact
    CHECK_FALSE(left_inverse(Operator::x()).has_value());

    // (1+e01)*I = I + e00: a genuine unit factor
    Operator a = (one() + Operator::e(0, 1)) * I();
    CHECK(a == I() + Operator::e(0, 0));
    auto w2 = left_inverse(a);
    REQUIRE(w2.has_value());
    CHECK(w2->n == 1);
    CHECK(w2->inverse * a == one());
    CHECK(w2->unit_factor * I() == a);
    CHECK(is_unit(w2->unit_factor));

    // column 0 of a' collides with a later column; the greedy completion must skip e_0
    Operator ap = one() + Operator::e(0, 1) - Operator::e(1, 1);
    Operator a3 = ap * I();
    auto w3 = left_inverse(a3);
    REQUIRE(w3.has_value());
    CHECK(w3->inverse * a3 == one());
    CHECK(w3->unit_factor * I() == a3);

    // right shape but not injective: (1 - e11)*I kills constants
    CHECK_FALSE(left_inverse((one() - Operator::e(1, 1)) * I()).has_value());
}

TEST_CASE("right_inverse via star duality") {
    auto w = right_inverse(D());
    REQUIRE(w.has_value());
    CHECK(w->n == 1);
    CHECK(w->inverse == I());
    CHECK_FALSE(right_inverse(I()).has_value());

    Operator b = D() + Operator::e(0, 0);  // star of I + e00
    auto w2 = right_inverse(b);
    REQUIRE(w2.has_value());
    CHECK(b * w2->inverse == one());
    CHECK(D().pow(w2->n) * w2->unit_factor == b);
}

TEST_CASE("one-sided membership duality and exclusivity") {
    Rng rng(504);
    for (int i = 0; i < 60; ++i) {
        Operator u = rng.unit();
        int n = rng.uniform(0, 3);
        Operator a = u * I().pow(n);
        auto wl = left_inverse(a);
        REQUIRE(wl.has_value());
        CHECK(wl->n == n);
        CHECK(wl->inverse * a == one());
        // duality through the involution, witnesses included
        auto wr = right_inverse(star(a));
        REQUIRE(wr.has_value());
        CHECK(wr->n == n);
        CHECK(star(a) * wr->inverse == one());
        CHECK(wr->unit_factor == star(wl->unit_factor));
        CHECK(wr->inverse == star(wl->inverse));
        // both-sided iff unit
        bool both = left_inverse(a).has_value() && right_inverse(a).has_value();
        CHECK(both == is_unit(a));
    }
}

TEST_CASE("left_inverse_set_sample") {
    auto sample = left_inverse_set_sample(I(), 2);
    REQUIRE(sample.size() == 2);
    CHECK(sample[0] == D());
    CHECK(sample[1] == D() + Operator::e(0, 0));
    for (const auto& v : sample) CHECK(v * I() == Operator::one());

    CHECK(left_inverse_set_sample(I(), 0).empty());
    auto unit_sample = left_inverse_set_sample(one(), 1);
    REQUIRE(unit_sample.size() == 1);
    CHECK(unit_sample[0] == one());
    // the inverse of a unit is unique
    CHECK(left_inverse_set_sample(one(), 3).size() == 1);

    Rng rng(505);
    Operator a = rng.unit() * I().pow(2);
    auto more = left_inverse_set_sample(a, 5);
    CHECK(more.size() == 5);
    for (size_t i = 0; i < more.size(); ++i) {
        CHECK(more[i] * a == one());
        for (size_t j = i + 1; j < more.size(); ++j) CHECK(more[i] != more[j]);
    }
    CHECK_THROWS_AS(left_inverse_set_sample(D(), 1), DomainError);
}

TEST_CASE("kappa fixed values") {
    Operator u = one() + Operator::e(0, 0);
    CHECK(kappa_shift(u, 0) == u);
    CHECK(kappa_shift(one(), 2) == one());
    CHECK(kappa_shift(u, 1) == one() + Operator::e(1, 1));
    CHECK(kappa_shift(u, 1) != u);  // I*u = kappa(u)*I moves the unit
    CHECK(I() * u == kappa_shift(u, 1) * I());
    CHECK_THROWS_AS(kappa_shift(D(), 1), DomainError);
}

TEST_CASE("kappa identities on random K+F elements") {
    Rng rng(506);
    for (int i = 0; i < 60; ++i) {
        Operator u = rng.k_plus_f();
        int n = rng.uniform(0, 5);
        Operator k = kappa_shift(u, n);
        CHECK(I().pow(n) * u == k * I().pow(n));
        CHECK(u * D().pow(n) == D().pow(n) * k);
        CHECK(det_kf(kappa_shift(u, 1)) == det_kf(u));
        // on 1+F the corner formula is literal
        Operator v = one() + Operator::from_fpart(u.fpart());
        Operator corner;
        for (int t = 0; t < n; ++t) corner = corner + Operator::e(t, t);
        CHECK(kappa_shift(v, n) == corner + I().pow(n) * v * D().pow(n));
    }
}

TEST_CASE("regularity") {
    RegularityFlags f1 = regularity(D() + I());
    CHECK(f1.left_regular);
    CHECK(f1.right_regular);
    CHECK(f1.regular);
    RegularityFlags f2 = regularity(D());
    CHECK(f2.left_regular);
    CHECK_FALSE(f2.right_regular);
    CHECK_FALSE(f2.regular);
    RegularityFlags f3 = regularity(Operator::e(0, 0));
    CHECK_FALSE(f3.left_regular);
    CHECK_FALSE(f3.right_regular);
    CHECK_FALSE(f3.regular);
}

TEST_CASE("regularity flags swap under star") {
    Rng rng(507);
    for (int i = 0; i < 60; ++i) {
        Operator a = rng.any_op();
        RegularityFlags f = regularity(a), g = regularity(star(a));
        CHECK(f.left_regular == g.right_regular);
        CHECK(f.right_regular == g.left_regular);
        CHECK(f.regular == g.regular);
    }
}
