#pragma once

#include <map>
#include <optional>
#include <string>

#include "vinberg/interval.hpp"
#include "vinberg/lobell.hpp"

namespace vinberg {

// Assignment of nonzero vectors of F_2^3 to faces; bit 2 is e1, bit 1 is e2,
// bit 0 is e3, so the orientable palette {e1, e2, e3, e1+e2+e3} is {4,2,1,7}.
struct Coloring {
    std::map<std::size_t, unsigned> assignment;
};

inline constexpr unsigned kOrientablePalette[4] = {4, 2, 1, 7};

struct CoverReport {
    bool valid = false;       // colors at every vertex linearly independent
    bool orientable = false;  // all colors within the orientable palette
    bool top_equals_bottom = false;
    // 2*delta_n, present exactly when valid and top_equals_bottom
    std::optional<Interval> geodesic_candidate_length;
};

// Throws IncompleteColoring when the assignment does not cover exactly the
// lattice's faces with nonzero vectors.
CoverReport verify_coloring(const FaceLattice& fl, const Coloring& c, int digits = 30);

// Backtracking search over the orientable palette, most-constrained face
// first; deterministic. The top face's color is pinned to e1, which loses no
// colorings because every permutation of the palette is realized by a linear
// map of F_2^3. Absence is a definite result.
std::optional<Coloring> find_coloring(const FaceLattice& fl, bool require_top_eq_bottom);

// one line per face: "face <index> <c1><c2><c3>"
std::string serialize(const Coloring& c);
Coloring parse_coloring(const std::string& text);

}  // namespace vinberg
