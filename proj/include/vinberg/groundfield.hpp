#pragma once

#include <string>
#include <vector>

#include "vinberg/algfield.hpp"
#include "vinberg/exactlin.hpp"

namespace vinberg {

// Fundamental cycles of the nonzero off-diagonal support graph, plus the
// support edges themselves. Cycle products together with squared edge
// entries multiplicatively generate all cyclic products of the matrix.
struct CycleSet {
    std::vector<std::pair<std::size_t, std::size_t>> edge_pairs;  // i < j
    std::vector<std::vector<std::size_t>> fundamental_cycles;     // vertex lists
};

CycleSet cycle_set(const SymMatrix& m);

struct CycleGenerator {
    FieldElement value;
    std::string description;  // e.g. "g(3,6)^2" or "g(1,2)g(2,5)...g(6,1)"
    std::size_t cycle_length = 0;  // 2 for edge squares, cycle length otherwise
};

// {g_ij^2 for support edges} + {product around each fundamental cycle}
std::vector<CycleGenerator> cycle_generators(const SymMatrix& m);

// The ground field as a rational subspace of the ambient tower: the smallest
// unital Q-subspace containing the generators and closed under products.
struct SubfieldDesc {
    std::vector<FieldElement> generators;
    std::vector<std::vector<mpq_class>> basis;  // reduced echelon rows
    std::size_t degree = 0;

    bool contains(const FieldElement& x) const;
};

SubfieldDesc subfield_closure(const TowerPtr& tower, const std::vector<FieldElement>& gens);
// convenience; gens must be nonempty so the tower is known
SubfieldDesc subfield_closure(const std::vector<FieldElement>& gens);

bool embedding_restricts_to_identity(const RealEmbedding& sigma, const SubfieldDesc& k);

struct IntegralityWitness {
    std::string cycle;    // description of the failing product of Cyc(2G)
    std::string decimal;  // 30-digit preview
    FieldElement value;
};

struct IntegralityResult {
    bool all_integral = true;
    std::vector<IntegralityWitness> witnesses;
};

// Tests every generator of Cyc(2M) for algebraic integrality: (2g_ij)^2 for
// support edges and 2^len * (cycle product) for fundamental cycles.
IntegralityResult cyc2_integrality(const SymMatrix& m);

}  // namespace vinberg
