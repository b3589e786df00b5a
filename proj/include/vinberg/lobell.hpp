#pragma once

#include <array>
#include <string>
#include <vector>

#include "vinberg/algfield.hpp"
#include "vinberg/diagram.hpp"
#include "vinberg/interval.hpp"

namespace vinberg {

// Canonical diagram text of the slice T_n (six walls; one n-gonal dihedral
// angle, two order-4 angles, and three diverging-wall weights a_n, a_n, d_n).
std::string tn_text(unsigned long n);
CoxeterDiagram tn_diagram(unsigned long n);  // n >= 5

// The pi/2k-contraction P_{n,k}: T_n with the two order-4 edges relabeled 2k.
std::string pnk_text(unsigned long n, unsigned long k);
CoxeterDiagram pnk_diagram(unsigned long n, unsigned long k);  // n >= 5, k >= 2

// Combinatorial face lattice of the n-th polyhedron in the family: two
// n-gons and 2n pentagons in two staggered rings. Face indices: 0 top,
// 1 bottom, 2..n+1 upper ring, n+2..2n+1 lower ring.
struct FaceLattice {
    enum class Role { Top, Bottom, Lateral };
    struct Face {
        Role role;
        int row = -1;               // 0 upper ring, 1 lower ring
        std::size_t ring_index = 0;
    };
    unsigned long n = 0;
    std::vector<Face> faces;
    std::vector<std::vector<bool>> adjacent;
    std::vector<std::array<std::size_t, 3>> vertices;  // triples of faces

    std::size_t face_count() const { return faces.size(); }
    std::size_t edge_count() const;
    std::size_t vertex_count() const { return vertices.size(); }
};

FaceLattice lobell_faces(unsigned long n);  // n >= 5

// Distance between the top and bottom faces: cosh(delta) = cos(pi/n)/cos(2pi/n),
// certified to 10^-digits. The doubled value is the systole candidate.
Interval delta_n(unsigned long n, int digits);
Interval antiprism_ratio(unsigned long n, int digits);  // (1+sin(pi/n))/cos(pi/n), n >= 3

struct LobellQuantities {
    unsigned long n = 0;
    FieldElement a, d;  // exact, over the T_n Gram tower
    Interval delta{64}, systole_candidate{64};
    std::size_t field_degree = 0;
};
LobellQuantities lobell_quantities(unsigned long n, int digits = 30);

struct TraceFieldFacts {
    std::size_t field_degree = 0;
    std::string note;
};
TraceFieldFacts trace_field_facts(unsigned long n);
// commensurability obstruction for a pair via field degrees
std::string incommensurability_note(unsigned long p, unsigned long q);

}  // namespace vinberg
