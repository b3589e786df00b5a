#include <doctest.h>

#include <algorithm>
#include <random>

#include "vinberg/classifier.hpp"
#include "vinberg/errors.hpp"
#include "vinberg/lobell.hpp"

using namespace vinberg;

namespace {

// verdict must be re-derivable from the report fields alone
void check_consistency(const ClassificationReport& rep) {
    bool v2 = rep.v2_holds();
    Verdict expect;
    if (!rep.v1.totally_real || !v2)
        expect = Verdict::NotQuasiArithmetic;
    else if (rep.v3.all_integral)
        expect = Verdict::Arithmetic;
    else
        expect = Verdict::ProperlyQuasiArithmetic;
    CHECK(rep.verdict == expect);
}

}  // namespace

TEST_CASE("slice classifications for the landmark cases") {
    auto r5 = classify(tn_diagram(5));
    check_consistency(r5);
    CHECK(r5.verdict == Verdict::Arithmetic);
    CHECK(r5.ground_field.degree == 2);

    auto r12 = classify(tn_diagram(12));
    check_consistency(r12);
    CHECK(r12.verdict == Verdict::ProperlyQuasiArithmetic);
    CHECK(r12.embeddings.size() == 8);
    for (const auto& e : r12.embeddings) {
        if (e.fixes_ground_field) continue;
        CHECK(e.signature == Signature{4, 0, 2});
    }
    REQUIRE(!r12.v3.witnesses.empty());

    auto r7 = classify(tn_diagram(7));
    check_consistency(r7);
    CHECK(r7.verdict == Verdict::NotQuasiArithmetic);
    CHECK(r7.ground_field.degree == 3);
    bool negative_conjugate = false;
    for (const auto& e : r7.embeddings)
        if (!e.fixes_ground_field && e.signature == Signature{3, 1, 2}) negative_conjugate = true;
    CHECK(negative_conjugate);
}

TEST_CASE("T_6: every embedding fixes the rational ground field") {
    auto rep = classify(tn_diagram(6));
    check_consistency(rep);
    CHECK(rep.verdict == Verdict::Arithmetic);
    CHECK(rep.ground_field.degree == 1);
    CHECK(rep.embeddings.size() == 4);
    for (const auto& e : rep.embeddings) CHECK(e.fixes_ground_field);
}

TEST_CASE("identity matrix diagram is rejected as non-Lorentzian") {
    CHECK_THROWS_AS(classify(parse_diagram("nodes 3\n")), NotLorentzian);
}

TEST_CASE("classify_range over a small window") {
    auto rows = classify_range(Family::SliceTn, 5, 8);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].verdict == Verdict::Arithmetic);       // 5
    CHECK(rows[1].verdict == Verdict::Arithmetic);       // 6
    CHECK(rows[2].verdict == Verdict::NotQuasiArithmetic);  // 7
    CHECK(rows[3].verdict == Verdict::Arithmetic);       // 8
    CHECK(rows[2].ground_degree == 3);
    auto empty = classify_range(Family::SliceTn, 9, 8);
    CHECK(empty.empty());
}

TEST_CASE("P_{n,2} equals T_n") {
    CHECK(pnk_diagram(6, 2) == tn_diagram(6));
    CHECK_THROWS_AS(pnk_diagram(5, 1), DomainError);
    CHECK_THROWS_AS(pnk_diagram(4, 2), DomainError);
    // P_{6,3} carries order-6 angles on the contracted edges
    auto d = pnk_diagram(6, 3);
    int count6 = 0;
    for (const auto& e : d.edges)
        if (e.kind == CoxeterDiagram::EdgeKind::Angle && e.m == 6) ++count6;
    CHECK(count6 == 2);
}

TEST_CASE("classification is invariant under node relabeling") {
    std::mt19937 rng(99);
    auto base = classify(tn_diagram(10));
    std::vector<std::size_t> perm{0, 1, 2, 3, 4, 5};
    for (int iter = 0; iter < 3; ++iter) {
        std::shuffle(perm.begin(), perm.end(), rng);
        CoxeterDiagram d = tn_diagram(10);
        for (auto& e : d.edges) {
            e.i = perm[e.i];
            e.j = perm[e.j];
            if (e.i > e.j) std::swap(e.i, e.j);
        }
        std::sort(d.edges.begin(), d.edges.end(), [](const auto& a, const auto& b) {
            return std::tie(a.i, a.j) < std::tie(b.i, b.j);
        });
        auto rep = classify(d);
        check_consistency(rep);
        CHECK(rep.verdict == base.verdict);
        CHECK(rep.ground_field.degree == base.ground_field.degree);
        auto sigs = [](const ClassificationReport& r) {
            std::vector<std::array<std::size_t, 3>> v;
            for (const auto& e : r.embeddings)
                v.push_back({e.signature.p, e.signature.q, e.signature.r});
            std::sort(v.begin(), v.end());
            return v;
        };
        CHECK(sigs(rep) == sigs(base));
    }
}
