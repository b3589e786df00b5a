#include <doctest.h>

#include <cmath>
#include "vinberg/errors.hpp"
#include "vinberg/exactlin.hpp"
#include "vinberg/intpoly.hpp"
#include "vinberg/lobell.hpp"

using namespace vinberg;

TEST_CASE("face lattice counts and Euler characteristic") {
    for (unsigned long n : {5ul, 6ul, 9ul, 17ul, 50ul}) {
        auto fl = lobell_faces(n);
        CHECK(fl.face_count() == 2 * n + 2);
        CHECK(fl.edge_count() == 6 * n);
        CHECK(fl.vertex_count() == 4 * n);
        long euler = static_cast<long>(fl.face_count()) - static_cast<long>(fl.edge_count()) +
                     static_cast<long>(fl.vertex_count());
        CHECK(euler == 2);
        // simple polyhedron: every vertex on exactly 3 faces (by construction),
        // every face a polygon with as many vertices as adjacent faces
        std::vector<std::size_t> valence(fl.face_count(), 0);
        for (const auto& v : fl.vertices)
            for (auto f : v) ++valence[f];
        for (std::size_t f = 0; f < fl.face_count(); ++f) {
            std::size_t deg = 0;
            for (std::size_t g = 0; g < fl.face_count(); ++g)
                if (fl.adjacent[f][g]) ++deg;
            CHECK(deg == valence[f]);
            if (fl.faces[f].role == FaceLattice::Role::Lateral)
                CHECK(valence[f] == 5);
            else
                CHECK(valence[f] == n);
        }
    }
    CHECK_THROWS_AS(lobell_faces(4), DomainError);
}

TEST_CASE("delta values against the closed form") {
    // cosh(delta_6) = cos(pi/6)/cos(pi/3) = sqrt3, delta_6 = 1.1462158...
    Interval d6 = delta_n(6, 30);
    CHECK(d6.lo_d() == doctest::Approx(1.14621583503).epsilon(1e-9));
    // cosh(delta_5) = golden ratio squared, delta_5 = 1.61692...
    Interval d5 = delta_n(5, 30);
    CHECK(d5.lo_d() == doctest::Approx(1.61691909728).epsilon(1e-9));
    CHECK_THROWS_AS(delta_n(4, 10), DomainError);

    // decreasing toward 0
    Interval d10 = delta_n(10, 30), d100 = delta_n(100, 30), d1000 = delta_n(1000, 30);
    CHECK(d100.strictly_less(d10));
    CHECK(d1000.strictly_less(d100));
    CHECK(d1000.hi_d() < 0.02);
}

TEST_CASE("delta strictly decreasing on 5..200") {
    Interval prev = delta_n(5, 25);
    for (unsigned long n = 6; n <= 200; ++n) {
        Interval cur = delta_n(n, 25);
        CHECK(cur.strictly_less(prev));
        prev = cur;
    }
}

TEST_CASE("antiprism ratio values and monotone limit") {
    Interval r5 = antiprism_ratio(5, 20);
    CHECK(r5.lo_d() == doctest::Approx(1.96261050).epsilon(1e-7));
    Interval r12 = antiprism_ratio(12, 20);
    CHECK(r12.lo_d() == doctest::Approx(1.30322540).epsilon(1e-7));
    Interval prev = antiprism_ratio(3, 20);
    for (unsigned long n = 4; n <= 1000; n = (n < 20 ? n + 1 : n * 3 / 2)) {
        Interval cur = antiprism_ratio(n, 20);
        CHECK(cur.strictly_less(prev));
        CHECK(cur.lo_d() > 1.0);
        prev = cur;
    }
    CHECK(antiprism_ratio(1000, 20).hi_d() < 1.01);
    CHECK_THROWS_AS(antiprism_ratio(2, 10), DomainError);
}

TEST_CASE("exact distance identity d^2 = (2a^2-1)(a^2-1)") {
    for (unsigned long n : {5ul, 6ul, 7ul, 12ul, 18ul, 23ul}) {
        auto q = lobell_quantities(n, 20);
        auto tower = q.a.tower();
        FieldElement one = FieldElement::one(tower);
        FieldElement a2 = q.a * q.a;
        FieldElement lhs = q.d * q.d;
        FieldElement rhs = (a2 + a2 - one) * (a2 - one);
        CHECK(lhs == rhs);
        CHECK(q.field_degree == euler_phi(n) / 2);
        // systole candidate = 2 delta certified
        CHECK(q.systole_candidate.lo_d() == doctest::Approx(2 * q.delta.lo_d()).epsilon(1e-12));
        // cosh(delta) should match d at the identity embedding
        Interval dv = apply_embedding(identity_embedding(tower), q.d, mpq_class(1, 1000000000));
        double cosh_delta = std::cosh(q.delta.lo_d());
        CHECK(dv.lo_d() == doctest::Approx(cosh_delta).epsilon(1e-8));
    }
}

TEST_CASE("gram signature for a range of slices") {
    for (unsigned long n = 5; n <= 14; ++n) {
        auto [tower, m] = assemble_gram(tn_diagram(n));
        CHECK(signature(*m) == Signature{3, 1, 2});
        CHECK(lorentz_check(*m, 3));
        // charpoly: exactly the two lowest coefficients vanish
        const auto& cp = m->charpoly();
        CHECK(cp[0].is_zero());
        CHECK(cp[1].is_zero());
        CHECK_FALSE(cp[2].is_zero());
    }
}

TEST_CASE("trace field facts") {
    CHECK(trace_field_facts(7).field_degree == 3);
    CHECK(trace_field_facts(12).field_degree == 2);
    CHECK(incommensurability_note(5, 7).substr(0, 16) == "incommensurable:");
    CHECK(incommensurability_note(9, 9) == "same polyhedron");
}
