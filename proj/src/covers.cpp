#include "vinberg/covers.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "vinberg/errors.hpp"

namespace vinberg {

namespace {

bool independent(unsigned a, unsigned b, unsigned c) {
    // three nonzero vectors of F_2^3 are independent iff pairwise distinct
    // and not summing to zero
    return a != b && a != c && b != c && (a ^ b ^ c) != 0;
}

}  // namespace

CoverReport verify_coloring(const FaceLattice& fl, const Coloring& c, int digits) {
    const std::size_t F = fl.face_count();
    if (c.assignment.size() != F)
        throw IncompleteColoring("expected " + std::to_string(F) + " colored faces, got " +
                                 std::to_string(c.assignment.size()));
    std::vector<unsigned> col(F, 0);
    for (const auto& [face, v] : c.assignment) {
        if (face >= F)
            throw IncompleteColoring("face index " + std::to_string(face) + " out of range");
        if (v == 0 || v > 7) throw IncompleteColoring("face colors must be nonzero F_2^3 vectors");
        col[face] = v;
    }
    CoverReport rep;
    rep.valid = true;
    for (const auto& v : fl.vertices)
        if (!independent(col[v[0]], col[v[1]], col[v[2]])) {
            rep.valid = false;
            break;
        }
    rep.orientable = true;
    for (unsigned v : col)
        if (v != 4 && v != 2 && v != 1 && v != 7) {
            rep.orientable = false;
            break;
        }
    rep.top_equals_bottom = col[0] == col[1];
    if (rep.valid && rep.top_equals_bottom) {
        Interval d = delta_n(fl.n, digits);
        rep.geodesic_candidate_length = iadd(d, d, d.prec());
    }
    return rep;
}

std::optional<Coloring> find_coloring(const FaceLattice& fl, bool require_top_eq_bottom) {
    const std::size_t F = fl.face_count();
    // vertex triples incident to each face, for incremental checking
    std::vector<std::vector<std::array<std::size_t, 3>>> incident(F);
    for (const auto& v : fl.vertices)
        for (std::size_t k = 0; k < 3; ++k) incident[v[k]].push_back(v);
    std::vector<unsigned> col(F, 0);

    auto consistent = [&](std::size_t face) {
        for (const auto& v : incident[face]) {
            unsigned a = col[v[0]], b = col[v[1]], c = col[v[2]];
            int colored = (a != 0) + (b != 0) + (c != 0);
            if (colored == 3 && !independent(a, b, c)) return false;
            if (colored == 2) {
                // partially colored triple: the two assigned colors must at
                // least be distinct for an extension to exist
                unsigned x = a ? a : b;
                unsigned y = c ? c : b;
                if (x == y) return false;
            }
        }
        return true;
    };

    std::vector<bool> placed(F, false);

    std::function<bool()> dfs = [&]() {
        // most-constrained: uncolored face with the most colored neighbors
        std::size_t best = F, best_score = 0;
        for (std::size_t f = 0; f < F; ++f) {
            if (placed[f]) continue;
            std::size_t score = 0;
            for (std::size_t g = 0; g < F; ++g)
                if (fl.adjacent[f][g] && placed[g]) ++score;
            if (best == F || score > best_score) {
                best = f;
                best_score = score;
            }
        }
        if (best == F) return true;  // everything colored
        for (unsigned color : kOrientablePalette) {
            col[best] = color;
            placed[best] = true;
            if (require_top_eq_bottom && (best == 0 || best == 1)) {
                std::size_t other = best == 0 ? 1 : 0;
                if (placed[other] && col[other] != color) {
                    placed[best] = false;
                    col[best] = 0;
                    continue;
                }
            }
            if (consistent(best) && dfs()) return true;
            placed[best] = false;
            col[best] = 0;
        }
        return false;
    };

    // pin the top face's color (palette permutations act linearly)
    col[0] = 4;
    placed[0] = true;
    if (require_top_eq_bottom) {
        col[1] = 4;
        placed[1] = true;
        if (!consistent(0) || !consistent(1)) return std::nullopt;
    }
    if (!dfs()) return std::nullopt;
    Coloring out;
    for (std::size_t f = 0; f < F; ++f) out.assignment[f] = col[f];
    return out;
}

std::string serialize(const Coloring& c) {
    std::ostringstream os;
    for (const auto& [face, v] : c.assignment)
        os << "face " << face << " " << ((v >> 2) & 1) << ((v >> 1) & 1) << (v & 1) << "\n";
    return os.str();
}

Coloring parse_coloring(const std::string& text) {
    Coloring c;
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        std::string line = raw.substr(0, raw.find('#'));
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw != "face") throw ParseError(line_no, 1, "expected 'face <index> <bits>'");
        long idx;
        std::string bits;
        if (!(ls >> idx >> bits) || idx < 0 || bits.size() != 3 ||
            bits.find_first_not_of("01") != std::string::npos)
            throw ParseError(line_no, 1, "expected 'face <index> <bits>' with 3 bits");
        unsigned v = static_cast<unsigned>((bits[0] - '0') << 2 | (bits[1] - '0') << 1 |
                                           (bits[2] - '0'));
        if (v == 0) throw ParseError(line_no, 1, "face color must be a nonzero vector");
        if (c.assignment.count(static_cast<std::size_t>(idx)))
            throw ParseError(line_no, 1, "face colored twice");
        c.assignment[static_cast<std::size_t>(idx)] = v;
    }
    return c;
}

}  // namespace vinberg
