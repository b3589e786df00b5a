#include <doctest.h>

#include "vinberg/algfield.hpp"
#include "vinberg/errors.hpp"
#include "vinberg/intpoly.hpp"

using namespace vinberg;

namespace {

FieldElement elem(const TowerPtr& t, std::vector<long> coords) {
    std::vector<mpq_class> c(t->dimension());
    for (std::size_t i = 0; i < coords.size() && i < c.size(); ++i) c[i] = coords[i];
    return FieldElement(t, std::move(c));
}

}  // namespace

TEST_CASE("min_poly_two_cos small cases") {
    CHECK(min_poly_two_cos(1) == IntPoly({-2, 1}));
    CHECK(min_poly_two_cos(2) == IntPoly({2, 1}));
    CHECK(min_poly_two_cos(3) == IntPoly({1, 1}));
    CHECK(min_poly_two_cos(4) == IntPoly({0, 1}));
    CHECK(min_poly_two_cos(5) == IntPoly({-1, 1, 1}));
    CHECK(min_poly_two_cos(12) == IntPoly({-3, 0, 1}));
    for (unsigned long n = 3; n <= 60; ++n)
        CHECK(min_poly_two_cos(n).degree() == static_cast<int>(euler_phi(n) / 2));
}

TEST_CASE("rationals tower") {
    auto q = FieldTower::rationals();
    CHECK(q->dimension() == 1);
    auto a = FieldElement::rational(q, mpq_class(2, 3));
    auto b = FieldElement::rational(q, mpq_class(3, 2));
    CHECK((a * b) == FieldElement::one(q));
    CHECK(sign(a - b) == -1);
}

TEST_CASE("Q(sqrt5) arithmetic and embeddings") {
    auto t = FieldTower::cyclotomic_real(5);  // Q(2cos(2pi/5)) = Q(sqrt5)
    CHECK(t->dimension() == 2);
    // theta = 2cos(2pi/5) satisfies x^2 + x - 1
    auto theta = elem(t, {0, 1});
    CHECK((theta * theta + theta - FieldElement::one(t)).is_zero());
    CHECK(sign(theta) == 1);
    // golden ratio phi = theta + 1... actually phi = (1+sqrt5)/2 = theta+1? 2cos36=phi.
    // 2cos(2pi/5) = phi - 1, so phi = theta + 1 and phi * (phi - 1) = 1
    auto phi = theta + FieldElement::one(t);
    CHECK((phi * (phi - FieldElement::one(t))) == FieldElement::one(t));
    auto lst = real_embeddings(t);
    CHECK(lst.totally_real);
    CHECK(lst.embeddings.size() == 2);
    CHECK(is_algebraic_integer(phi));
    // phi has min poly x^2 - x - 1
    auto mp = min_poly_over_q(phi);
    REQUIRE(mp.size() == 3);
    CHECK(mp[0] == -1);
    CHECK(mp[1] == -1);
    CHECK(mp[2] == 1);
}

TEST_CASE("make_tower absorbs squares") {
    // Q(2cos(2pi/24)) contains sqrt2 and sqrt3
    auto t = FieldTower::cyclotomic_real(24);
    CHECK(t->dimension() == 4);
    auto two = FieldElement::rational(t, 2);
    auto s = exact_sqrt(two);
    REQUIRE(s.has_value());
    CHECK((*s) * (*s) == two);
    CHECK(sign(*s) == 1);
    auto made = FieldTower::make(24, {two});
    CHECK(made->dimension() == 4);  // absorbed
}

TEST_CASE("K_12 tower has dimension 8 and 8 real embeddings") {
    auto base = FieldTower::cyclotomic_real(12);  // Q(sqrt3)
    CHECK(base->dimension() == 2);
    auto two = FieldElement::rational(base, 2);
    auto three_plus_sqrt3 = elem(base, {3, 1});  // 3 + theta, theta = sqrt3
    auto k12 = FieldTower::make(12, {two, three_plus_sqrt3});
    CHECK(k12->dimension() == 8);
    auto lst = real_embeddings(k12);
    CHECK(lst.totally_real);
    CHECK(lst.embeddings.size() == 8);
    // 4(3+sqrt3)/3 is not an algebraic integer
    auto w = three_plus_sqrt3.lift_to(k12) * FieldElement::rational(k12, mpq_class(4, 3));
    CHECK_FALSE(is_algebraic_integer(w));
    CHECK(is_algebraic_integer(three_plus_sqrt3));
    // sqrt(3+sqrt3) is in the tower
    auto r = exact_sqrt(three_plus_sqrt3.lift_to(k12));
    REQUIRE(r.has_value());
    CHECK((*r) * (*r) == three_plus_sqrt3.lift_to(k12));
}

TEST_CASE("negative radicand rejected") {
    auto t = FieldTower::cyclotomic_real(12);
    auto neg = elem(t, {-3, 1});  // theta - 3 = sqrt3 - 3 < 0
    CHECK(sign(neg) == -1);
    CHECK_THROWS_AS(FieldTower::make(12, {neg}), NonRealRadicand);
}

TEST_CASE("division and field axioms spot checks") {
    auto base = FieldTower::cyclotomic_real(12);
    auto two = FieldElement::rational(base, 2);
    auto k = FieldTower::make(12, {two});  // Q(sqrt3, sqrt2), dim 4
    CHECK(k->dimension() == 4);
    auto a = elem(k, {1, 2, 3, -1});
    auto b = elem(k, {-2, 1, 0, 5});
    auto c = elem(k, {7, 0, -4, 1});
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a / b * b == a);
    CHECK_THROWS_AS(a / FieldElement::zero(k), DivisionByZero);
}

TEST_CASE("embedding_fixes on K_12") {
    auto base = FieldTower::cyclotomic_real(12);
    auto two = FieldElement::rational(base, 2);
    auto three_plus_sqrt3 = elem(base, {3, 1});
    auto k12 = FieldTower::make(12, {two, three_plus_sqrt3});
    auto lst = real_embeddings(k12);
    REQUIRE(lst.embeddings.size() == 8);
    auto g = three_plus_sqrt3.lift_to(k12);  // lives in k_12 = Q(sqrt3)
    int fix_count = 0;
    for (const auto& e : lst.embeddings)
        if (embedding_fixes(e, g)) ++fix_count;
    CHECK(fix_count == 4);  // half of the embeddings fix sqrt3
    for (const auto& e : lst.embeddings) CHECK(embedding_fixes(e, FieldElement::rational(k12, 7)));
    // identity fixes everything
    auto id = identity_embedding(k12);
    auto s2 = exact_sqrt(FieldElement::rational(k12, 2));
    REQUIRE(s2.has_value());
    CHECK(embedding_fixes(id, *s2));
}

TEST_CASE("apply_embedding enumerates conjugate values") {
    auto t = FieldTower::cyclotomic_real(5);
    auto theta = elem(t, {0, 1});  // 2cos(2pi/5) = 0.618...
    auto lst = real_embeddings(t);
    REQUIRE(lst.embeddings.size() == 2);
    mpq_class tol(1, 1000000);
    bool saw_pos = false, saw_neg = false;
    for (const auto& e : lst.embeddings) {
        Interval iv = apply_embedding(e, theta, tol);
        double v = iv.lo_d();
        if (v > 0.6 && v < 0.62) saw_pos = true;    // 2cos(72deg)
        if (v < -1.6 && v > -1.62) saw_neg = true;  // 2cos(144deg)
    }
    CHECK(saw_pos);
    CHECK(saw_neg);
}

TEST_CASE("two_cos_frac matches chebyshev identities") {
    auto t = FieldTower::cyclotomic_real(24);
    auto th = two_cos_frac(t, 1);
    auto c2 = two_cos_frac(t, 2);
    // 2cos(2x) = (2cos x)^2 - 2
    CHECK(c2 == th * th - FieldElement::rational(t, 2));
    auto c12 = two_cos_frac(t, 12);  // 2cos(pi) = -2
    CHECK(c12 == FieldElement::rational(t, -2));
    auto c3 = two_cos_frac(t, 3);  // 2cos(pi/4) = sqrt2
    CHECK(c3 * c3 == FieldElement::rational(t, 2));
}

TEST_CASE("sign multiplicativity") {
    auto t = FieldTower::cyclotomic_real(12);
    auto a = elem(t, {-3, 1});
    auto b = elem(t, {1, 1});
    CHECK(sign(a * b) == sign(a) * sign(b));
    CHECK(sign(FieldElement::zero(t)) == 0);
}
