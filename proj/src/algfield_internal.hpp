#pragma once

// Internals shared between algfield.cpp and embedding.cpp.

#include <mutex>
#include <optional>
#include <vector>

#include "vinberg/algfield.hpp"
#include "vinberg/interval.hpp"

namespace vinberg {

struct TowerCache {
    std::mutex mu;
    struct RootState {
        Interval iv{64};
        int sign_lo = 0;  // sign of base_poly at iv.lo when rational-certified
        bool init = false;
        mpq_class lo, hi;  // current rational restatement while bisecting
        bool rational_phase = true;
    };
    std::vector<RootState> roots;
    bool fpmin_set = false;
    long fpmin_exp = 0;  // min_j |f'(theta_j)| >= 2^fpmin_exp
};

namespace detail {

using QV = std::vector<mpq_class>;

bool span_zero(const mpq_class* a, std::size_t n);

// multiplication of level-k blocks (length base_degree << k) of the tower
void mul_level(const FieldTower& T, std::size_t k, const mpq_class* a, const mpq_class* b,
               mpq_class* out);
void inv_level(const FieldTower& T, std::size_t k, const mpq_class* a, mpq_class* out);

QV mul_vec(const FieldTower& T, const QV& a, const QV& b);

// the level-0 ancestor of a tower
const FieldTower& base_of(const FieldTower& T);

// certified isolating interval of root j of the base polynomial, width <= 2^-bits
Interval refine_root(const FieldTower& base, std::size_t j, long bits);

// enclosure of the value of a k-level coordinate block under (root, signs)
Interval eval_coords(const FieldTower& T, std::size_t root_idx, const std::vector<int>& signs,
                     const mpq_class* coords, std::size_t k, mpfr_prec_t prec);

// minimal polynomial of a over the base field: monic, coefficients returned
// as base-level coordinate vectors (lowest degree first, last entry = 1)
std::vector<QV> minpoly_over_base(const FieldElement& a);

// integer polynomial whose roots include every Q-conjugate of a (a power of
// the minimal polynomial times a constant); via a Sylvester resultant
IntPoly conjugate_poly(const FieldElement& a);

mpz_class resultant(const IntPoly& A, const IntPoly& B);
IntPoly intpoly_gcd(IntPoly a, IntPoly b);

// exact test: does the base-field automorphism theta -> 2cos(2*pi*ell/N) fix
// the base-level element with integer coordinates A (length base_degree)?
bool base_automorphism_fixes(const FieldTower& base, unsigned long ell,
                             const std::vector<mpz_class>& A);

std::optional<QV> sqrt_level(const FieldTower& T, std::size_t k, const mpq_class* a);

}  // namespace detail
}  // namespace vinberg
