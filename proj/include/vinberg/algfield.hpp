#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vinberg/intpoly.hpp"
#include "vinberg/interval.hpp"

namespace vinberg {

class FieldTower;
class FieldElement;
using TowerPtr = std::shared_ptr<const FieldTower>;

struct TowerCache;  // internal numeric memoization, defined in the .cpp

// Real algebraic number field K = Q(2cos(2pi/N))(sqrt(r_1), ..., sqrt(r_t)).
// Elements are exact rational coordinate vectors over the tensor basis
// {theta^i} x {subsets of adjoined square roots}; coordinate index is
// subset * base_degree + i. Towers are immutable; extension produces a new
// tower sharing the base. Every radicand r_k is expressed over the
// preceding level, is positive at the designated embedding, and is not a
// square there, so each level is a genuine quadratic field extension.
class FieldTower : public std::enable_shared_from_this<FieldTower> {
public:
    struct Radicand {
        std::vector<mpq_class> coords;  // over the preceding level
        std::string expr;               // weight-grammar rendering
    };
    struct RootBox {
        mpq_class lo, hi;    // lo <= root <= hi, exactly one root inside
        unsigned long ell;   // the root is 2cos(2*pi*ell/N)
    };

    static TowerPtr rationals() { return cyclotomic_real(1); }
    static TowerPtr cyclotomic_real(unsigned long N);
    TowerPtr extend(const FieldElement& radicand, std::string expr) const;
    // Builds the tower over Q(2cos(2pi/N)), absorbing radicands that are
    // already squares and throwing NonRealRadicand on nonpositive ones.
    static TowerPtr make(unsigned long N, const std::vector<FieldElement>& radicands);

    unsigned long conductor() const { return conductor_; }
    const IntPoly& base_poly() const { return base_poly_; }
    std::size_t base_degree() const { return static_cast<std::size_t>(base_poly_.degree()); }
    std::size_t levels() const { return radicands_.size(); }
    std::size_t dimension() const { return base_degree() << levels(); }
    const std::vector<Radicand>& radicands() const { return radicands_; }
    const std::vector<RootBox>& roots() const { return roots_; }
    std::size_t designated_root() const { return designated_root_; }
    const TowerPtr& parent() const { return parent_; }  // null at t = 0

    bool same_structure(const FieldTower& o) const;
    bool is_prefix_of(const FieldTower& o) const;

    // theta^(base_degree + j) as integer combination of lower powers
    const std::vector<std::vector<mpz_class>>& reduction_table() const { return red_table_; }
    TowerCache& cache() const { return *cache_; }

    ~FieldTower();

private:
    FieldTower() = default;
    unsigned long conductor_ = 1;
    IntPoly base_poly_;
    std::vector<RootBox> roots_;
    std::size_t designated_root_ = 0;
    std::vector<Radicand> radicands_;
    TowerPtr parent_;
    std::vector<std::vector<mpz_class>> red_table_;
    mutable std::unique_ptr<TowerCache> cache_;
};

class FieldElement {
public:
    FieldElement() = default;  // detached; assign before use
    FieldElement(TowerPtr tower, std::vector<mpq_class> coords);
    static FieldElement zero(const TowerPtr& t);
    static FieldElement one(const TowerPtr& t);
    static FieldElement rational(const TowerPtr& t, const mpq_class& v);

    const TowerPtr& tower() const { return tower_; }
    const std::vector<mpq_class>& coords() const { return coords_; }
    bool is_zero() const;
    std::optional<mpq_class> as_rational() const;
    // true when the element lies in the cyclotomic-real base field
    bool base_level_only() const;
    FieldElement lift_to(const TowerPtr& bigger) const;

    FieldElement operator-() const;
    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;  // DivisionByZero
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    FieldElement inverse() const;

    std::string to_expr() const;          // weight-grammar rendering
    std::string decimal(int digits) const;  // preview at the designated embedding

private:
    TowerPtr tower_;
    std::vector<mpq_class> coords_;
};

// Real embedding of a tower: a choice of base root plus a sign per
// square-root level. The identity embedding is the designated root with
// all signs +1.
struct RealEmbedding {
    TowerPtr tower;
    std::size_t root_index = 0;
    std::vector<int> signs;
    bool is_identity() const;
};

struct EmbeddingList {
    std::vector<RealEmbedding> embeddings;  // root ascending, then signs lexicographic
    bool totally_real = true;
    std::string failure_note;  // why a branch was dropped, when not totally real
};

EmbeddingList real_embeddings(const TowerPtr& tower);
RealEmbedding identity_embedding(const TowerPtr& tower);

// Sign at the designated embedding: exact 0 test on coordinates, otherwise
// certified interval refinement.
int sign(const FieldElement& a);

// Certified enclosure of sigma(a) with width at most tol.
Interval apply_embedding(const RealEmbedding& sigma, const FieldElement& a,
                         const mpq_class& tol);
// Single evaluation pass at a fixed working precision (enclosure of any width).
Interval eval_embedding(const RealEmbedding& sigma, const FieldElement& a,
                        mpfr_prec_t prec);
// Sign of sigma(a), using that sigma is injective: zero iff coords are zero.
int sign_under(const RealEmbedding& sigma, const FieldElement& a);

// Exact decision of sigma(a) = a.
bool embedding_fixes(const RealEmbedding& sigma, const FieldElement& a);

bool is_algebraic_integer(const FieldElement& a);

// The positive square root of a within its tower, if a is a square there.
std::optional<FieldElement> exact_sqrt(const FieldElement& a);

// 2cos(2*pi*k/N) as an element of the tower's base level.
FieldElement two_cos_frac(const TowerPtr& tower, long k);

// Minimal polynomial of a over Q, monic, exact (coefficients lowest first).
// Computed by linear algebra over the base field followed by a resultant;
// degree divides the tower dimension.
std::vector<mpq_class> min_poly_over_q(const FieldElement& a);

}  // namespace vinberg
