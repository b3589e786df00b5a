#include <doctest.h>

#include <functional>

#include "vinberg/covers.hpp"
#include "vinberg/errors.hpp"

using namespace vinberg;

namespace {

// test oracle: plain DFS over all 4^F palette colorings, no symmetry pruning
bool brute_force_exists(const FaceLattice& fl, bool require_top_eq_bottom) {
    const std::size_t F = fl.face_count();
    std::vector<unsigned> col(F, 0);
    std::function<bool(std::size_t)> rec = [&](std::size_t f) -> bool {
        if (f == F) {
            Coloring c;
            for (std::size_t i = 0; i < F; ++i) c.assignment[i] = col[i];
            auto rep = verify_coloring(fl, c, 10);
            return rep.valid && (!require_top_eq_bottom || rep.top_equals_bottom);
        }
        for (unsigned color : kOrientablePalette) {
            col[f] = color;
            // prune: check already-complete vertex triples
            bool ok = true;
            for (const auto& v : fl.vertices) {
                if (v[0] > f || v[1] > f || v[2] > f) continue;
                unsigned a = col[v[0]], b = col[v[1]], c = col[v[2]];
                if (a == b || a == c || b == c || (a ^ b ^ c) == 0) {
                    ok = false;
                    break;
                }
            }
            if (ok && rec(f + 1)) return true;
        }
        col[f] = 0;
        return false;
    };
    return rec(0);
}

}  // namespace

TEST_CASE("search finds valid orientable colorings for n divisible by 3") {
    for (unsigned long n : {6ul, 9ul, 12ul}) {
        auto fl = lobell_faces(n);
        auto c = find_coloring(fl, true);
        REQUIRE(c.has_value());
        auto rep = verify_coloring(fl, *c, 25);
        CHECK(rep.valid);
        CHECK(rep.orientable);
        CHECK(rep.top_equals_bottom);
        REQUIRE(rep.geodesic_candidate_length.has_value());
        Interval twice = iadd(delta_n(n, 25), delta_n(n, 25), 128);
        CHECK(rep.geodesic_candidate_length->overlaps(twice));
    }
}

TEST_CASE("dodecahedron is 4-colorable") {
    auto fl = lobell_faces(5);
    auto c = find_coloring(fl, false);
    REQUIRE(c.has_value());
    auto rep = verify_coloring(fl, *c, 10);
    CHECK(rep.valid);
    CHECK(rep.orientable);
}

TEST_CASE("search agrees with brute force on small lattices") {
    for (unsigned long n : {5ul, 6ul}) {
        auto fl = lobell_faces(n);
        for (bool constrained : {false, true}) {
            bool found = find_coloring(fl, constrained).has_value();
            CHECK(found == brute_force_exists(fl, constrained));
        }
    }
}

TEST_CASE("invalid colorings are reported, not thrown") {
    auto fl = lobell_faces(6);
    Coloring all_e1;
    for (std::size_t f = 0; f < fl.face_count(); ++f) all_e1.assignment[f] = 4;
    auto rep = verify_coloring(fl, all_e1, 10);
    CHECK_FALSE(rep.valid);
    CHECK(rep.orientable);
    CHECK(rep.top_equals_bottom);
    CHECK_FALSE(rep.geodesic_candidate_length.has_value());
}

TEST_CASE("incomplete colorings throw") {
    auto fl = lobell_faces(6);
    Coloring partial;
    partial.assignment[0] = 4;
    CHECK_THROWS_AS(verify_coloring(fl, partial, 10), IncompleteColoring);
}

TEST_CASE("non-palette colors can be valid but not orientable") {
    auto fl = lobell_faces(6);
    auto c = find_coloring(fl, false);
    REQUIRE(c.has_value());
    // recolor via a linear map sending the palette off itself: swap bit roles
    // e1 -> e1+e2 (6), e2 -> 2, e3 -> 1, e1+e2+e3 -> 6^2^1 = 5
    Coloring warped;
    for (auto [f, v] : c->assignment) {
        unsigned image = 0;
        if (v & 4) image ^= 6;
        if (v & 2) image ^= 2;
        if (v & 1) image ^= 1;
        warped.assignment[f] = image;
    }
    auto rep = verify_coloring(fl, warped, 10);
    CHECK(rep.valid);  // linear maps preserve independence
    CHECK_FALSE(rep.orientable);
}

TEST_CASE("palette permutation equivariance") {
    auto fl = lobell_faces(9);
    auto c = find_coloring(fl, true);
    REQUIRE(c.has_value());
    // swap e2 <-> e3 (a linear map permuting the palette)
    Coloring permuted;
    for (auto [f, v] : c->assignment) {
        unsigned image = (v & 4) | ((v & 2) >> 1 ? 1u : 0u) | ((v & 1) ? 2u : 0u);
        permuted.assignment[f] = image;
    }
    auto r1 = verify_coloring(fl, *c, 10);
    auto r2 = verify_coloring(fl, permuted, 10);
    CHECK(r1.valid == r2.valid);
    CHECK(r1.orientable == r2.orientable);
    CHECK(r1.top_equals_bottom == r2.top_equals_bottom);
}

TEST_CASE("coloring serialization round trip") {
    auto fl = lobell_faces(6);
    auto c = find_coloring(fl, true);
    REQUIRE(c.has_value());
    Coloring parsed = parse_coloring(serialize(*c));
    CHECK(parsed.assignment == c->assignment);
    CHECK_THROWS_AS(parse_coloring("face 0 000\n"), ParseError);
    CHECK_THROWS_AS(parse_coloring("blah\n"), ParseError);
    CHECK_THROWS_AS(parse_coloring("face 0 100\nface 0 010\n"), ParseError);
}
