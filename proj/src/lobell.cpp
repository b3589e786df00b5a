#include "vinberg/lobell.hpp"

#include <functional>
#include <sstream>

#include "vinberg/config.hpp"
#include "vinberg/errors.hpp"
#include "vinberg/exactlin.hpp"
#include "vinberg/intpoly.hpp"

namespace vinberg {

std::string tn_text(unsigned long n) { return pnk_text(n, 2); }

std::string pnk_text(unsigned long n, unsigned long k) {
    std::ostringstream os;
    os << "nodes 6\n";
    os << "angle 1 2 " << n << "\n";
    os << "angle 1 6 " << 2 * k << "\n";
    os << "angle 2 5 " << 2 * k << "\n";
    os << "dashed 3 4 cos(pi*1/" << n << ")/cos(pi*2/" << n << ")\n";
    os << "dashed 3 6 sqrt(1+1/(2*cos(pi*2/" << n << ")))\n";
    os << "dashed 4 5 sqrt(1+1/(2*cos(pi*2/" << n << ")))\n";
    return os.str();
}

CoxeterDiagram tn_diagram(unsigned long n) { return pnk_diagram(n, 2); }

CoxeterDiagram pnk_diagram(unsigned long n, unsigned long k) {
    if (n < 5)
        throw DomainError("the family is defined for n >= 5 (cos(2pi/n) must be positive)");
    if (k < 2) throw DomainError("contraction order k must be at least 2");
    return parse_diagram(pnk_text(n, k));
}

std::size_t FaceLattice::edge_count() const {
    std::size_t e = 0;
    for (std::size_t i = 0; i < adjacent.size(); ++i)
        for (std::size_t j = i + 1; j < adjacent.size(); ++j)
            if (adjacent[i][j]) ++e;
    return e;
}

FaceLattice lobell_faces(unsigned long n) {
    if (n < 5) throw DomainError("Lobell polyhedra need n >= 5");
    FaceLattice fl;
    fl.n = n;
    const std::size_t N = static_cast<std::size_t>(n);
    const std::size_t F = 2 * N + 2;
    fl.faces.resize(F);
    fl.faces[0] = {FaceLattice::Role::Top, -1, 0};
    fl.faces[1] = {FaceLattice::Role::Bottom, -1, 0};
    auto up = [&](std::size_t i) { return 2 + (i % N); };
    auto low = [&](std::size_t i) { return 2 + N + (i % N); };
    for (std::size_t i = 0; i < N; ++i) {
        fl.faces[up(i)] = {FaceLattice::Role::Lateral, 0, i};
        fl.faces[low(i)] = {FaceLattice::Role::Lateral, 1, i};
    }
    fl.adjacent.assign(F, std::vector<bool>(F, false));
    auto link = [&](std::size_t a, std::size_t b) {
        fl.adjacent[a][b] = fl.adjacent[b][a] = true;
    };
    for (std::size_t i = 0; i < N; ++i) {
        link(0, up(i));
        link(1, low(i));
        link(up(i), up(i + 1));
        link(low(i), low(i + 1));
        // staggered rings: each upper pentagon leans on two lower ones
        link(up(i), low(i));
        link(up(i), low(i + 1));
    }
    for (std::size_t i = 0; i < N; ++i) {
        fl.vertices.push_back({0, up(i), up(i + 1)});
        fl.vertices.push_back({1, low(i), low(i + 1)});
        fl.vertices.push_back({up(i), up(i + 1), low(i + 1)});
        fl.vertices.push_back({up(i), low(i), low(i + 1)});
    }
    // simple-polyhedron sanity: triples mutually adjacent, counts match
    for (const auto& v : fl.vertices)
        if (!fl.adjacent[v[0]][v[1]] || !fl.adjacent[v[0]][v[2]] || !fl.adjacent[v[1]][v[2]])
            throw InternalError("lobell_faces: vertex triple not mutually adjacent");
    if (fl.edge_count() != 6 * N || fl.vertices.size() != 4 * N)
        throw InternalError("lobell_faces: count invariants violated");
    return fl;
}

namespace {

Interval refine_to_digits(int digits, const std::function<Interval(mpfr_prec_t)>& f) {
    mpq_class tol(1);
    for (int i = 0; i < digits; ++i) tol /= 10;
    for (mpfr_prec_t prec = std::max<mpfr_prec_t>(start_precision_bits(),
                                                  static_cast<mpfr_prec_t>(4 * digits));
         ; prec *= 2) {
        Interval iv = f(prec);
        if (iv.narrower_than(tol)) return iv;
        if (prec > kMaxPrecisionBits)
            throw InternalError("interval quantity did not reach the requested width");
    }
}

}  // namespace

Interval delta_n(unsigned long n, int digits) {
    if (n < 5) throw DomainError("delta_n needs n >= 5");
    return refine_to_digits(digits, [&](mpfr_prec_t prec) {
        Interval c1 = icos_pi_frac(mpq_class(1, n), prec);
        Interval c2 = icos_pi_frac(mpq_class(2, n), prec);
        return iacosh(idiv(c1, c2, prec), prec);
    });
}

Interval antiprism_ratio(unsigned long n, int digits) {
    if (n < 3) throw DomainError("antiprism_ratio needs n >= 3");
    return refine_to_digits(digits, [&](mpfr_prec_t prec) {
        Interval s = isin_pi_frac(mpq_class(1, n), prec);
        Interval c = icos_pi_frac(mpq_class(1, n), prec);
        return idiv(iadd(s, Interval::point_si(1, prec), prec), c, prec);
    });
}

LobellQuantities lobell_quantities(unsigned long n, int digits) {
    if (n < 5) throw DomainError("Lobell quantities need n >= 5");
    auto assembly = assemble_gram(tn_diagram(n));
    LobellQuantities out;
    out.n = n;
    out.a = -assembly.matrix->at(2, 5);
    out.d = -assembly.matrix->at(2, 3);
    out.delta = delta_n(n, digits);
    out.systole_candidate = iadd(out.delta, out.delta, out.delta.prec());
    out.field_degree = euler_phi(n) / 2;
    return out;
}

namespace {

bool is_prime(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

}  // namespace

TraceFieldFacts trace_field_facts(unsigned long n) {
    if (n < 5) throw DomainError("trace_field_facts needs n >= 5");
    TraceFieldFacts out;
    out.field_degree = euler_phi(n) / 2;
    std::ostringstream os;
    os << "adjoint trace field Q(cos(2pi/" << n << ")) of degree " << out.field_degree;
    out.note = os.str();
    return out;
}

std::string incommensurability_note(unsigned long p, unsigned long q) {
    if (p == q) return "same polyhedron";
    if (p >= 5 && q >= 5 && is_prime(p) && is_prime(q)) {
        std::ostringstream os;
        os << "incommensurable: field degrees differ (" << euler_phi(p) / 2 << " vs "
           << euler_phi(q) / 2 << ")";
        return os.str();
    }
    if (euler_phi(p) != euler_phi(q)) {
        std::ostringstream os;
        os << "field degrees differ (" << euler_phi(p) / 2 << " vs " << euler_phi(q) / 2
           << "): incommensurable";
        return os.str();
    }
    return "no field-degree obstruction";
}

}  // namespace vinberg
