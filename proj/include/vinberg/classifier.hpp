#pragma once

#include <string>
#include <vector>

#include "vinberg/diagram.hpp"
#include "vinberg/exactlin.hpp"
#include "vinberg/groundfield.hpp"

namespace vinberg {

enum class Verdict { Arithmetic, ProperlyQuasiArithmetic, NotQuasiArithmetic };
std::string to_string(Verdict v);  // "arithmetic" etc., the CLI vocabulary

struct ClassificationReport {
    struct V1 {
        bool totally_real = false;
        std::string witness;  // dropped embedding branch, when not totally real
    };
    struct GroundFieldInfo {
        std::size_t degree = 0;
        std::size_t generator_count = 0;
    };
    struct EmbeddingRow {
        std::size_t index = 0;
        bool fixes_ground_field = false;
        Signature signature;
    };
    struct V3 {
        bool all_integral = false;
        std::vector<IntegralityWitness> witnesses;
    };

    V1 v1;
    GroundFieldInfo ground_field;
    std::vector<EmbeddingRow> embeddings;  // canonical embedding order
    V3 v3;
    Verdict verdict = Verdict::NotQuasiArithmetic;

    bool v2_holds() const;  // every non-fixing embedding is psd
};

// Vinberg's criterion end to end. Throws NotLorentzian unless the assembled
// Gram matrix has signature (d, 1, *). All embeddings are evaluated even
// after the verdict is determined.
ClassificationReport classify(const CoxeterDiagram& d);

enum class Family { SliceTn, ContractionPnk };

struct RangeRow {
    unsigned long n = 0;
    Verdict verdict = Verdict::NotQuasiArithmetic;
    std::size_t ground_degree = 0;
    std::vector<Signature> signatures;  // per embedding, canonical order
};

// One row per n in [lo, hi]; rows may be computed concurrently but the
// output is ordered by n. k applies to the P_{n,k} family only.
std::vector<RangeRow> classify_range(Family family, unsigned long lo, unsigned long hi,
                                     unsigned long k = 2);

}  // namespace vinberg
