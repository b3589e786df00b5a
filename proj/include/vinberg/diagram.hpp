#pragma once

#include <memory>
#include <string>
#include <vector>

#include "vinberg/algfield.hpp"
#include "vinberg/exactlin.hpp"

namespace vinberg {

// Edge-weight expression tree. The grammar is deliberately small: rational
// arithmetic, cos/sin of rational multiples of pi, and square roots; exactly
// what is needed to write Coxeter-Vinberg diagram weights exactly.
struct WeightExpr {
    enum class Kind { Integer, Rational, CosPi, SinPi, Sqrt, Add, Sub, Mul, Div };
    Kind kind = Kind::Integer;
    mpq_class value;  // Integer / Rational
    long a = 0;       // CosPi/SinPi: cos(pi*a/b), sin(pi*a/b)
    long b = 1;
    std::shared_ptr<const WeightExpr> lhs, rhs;  // binary ops; Sqrt uses lhs only

    bool operator==(const WeightExpr& o) const;
};
using WeightExprPtr = std::shared_ptr<const WeightExpr>;

WeightExprPtr parse_weight_expr(const std::string& text);
std::string to_string(const WeightExpr& e);

struct CoxeterDiagram {
    enum class EdgeKind { Angle, Parallel, Dashed };
    struct Edge {
        std::size_t i = 0, j = 0;  // 0-based, i < j
        EdgeKind kind = EdgeKind::Angle;
        unsigned long m = 0;  // Angle: dihedral angle pi/m, m >= 3
        WeightExprPtr weight;  // Dashed: entry is -weight, weight > 1

        bool operator==(const Edge& o) const;
    };
    std::size_t node_count = 0;
    std::vector<Edge> edges;  // sorted by (i, j), no duplicate pairs

    bool operator==(const CoxeterDiagram& o) const = default;
};

// Line-oriented diagram text (see README / the canonical generator):
//   nodes <N>
//   angle <i> <j> <m>
//   parallel <i> <j>
//   dashed <i> <j> <expr>
// '#' starts a comment. Node indices are 1-based in the text. Dashed weights
// are validated exactly (> 1), which requires assembling the Gram field.
CoxeterDiagram parse_diagram(const std::string& text);
std::string serialize(const CoxeterDiagram& d);

struct GramAssembly {
    TowerPtr tower;
    std::shared_ptr<const SymMatrix> matrix;
};

// Gram matrix conventions: unit diagonal, -cos(pi/m) for Angle(m), -1 for
// Parallel, -w for Dashed(w), 0 for absent pairs. The tower conductor is
// 2*lcm of all angle orders and trig denominators so that every entry lives
// over one base field. Results are memoized per canonical serialization.
GramAssembly assemble_gram(const CoxeterDiagram& d);

// signature == (d, 1, dim - d - 1)
bool lorentz_check(const SymMatrix& m, std::size_t d);

}  // namespace vinberg
