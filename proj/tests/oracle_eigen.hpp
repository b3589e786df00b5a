#pragma once

// Test oracle: cyclic Jacobi eigenvalue iteration at high mpfr precision.
// Used to cross-check exact signatures against 100-digit numerics.

#include <mpfr.h>

#include <cstddef>
#include <vector>

#include "vinberg/algfield.hpp"
#include "vinberg/exactlin.hpp"

namespace testutil {

class BigMat {
public:
    BigMat(std::size_t n, mpfr_prec_t prec) : n_(n), prec_(prec), v_(n * n) {
        for (auto& x : v_) {
            mpfr_init2(x, prec);
            mpfr_set_zero(x, 1);
        }
    }
    ~BigMat() {
        for (auto& x : v_) mpfr_clear(x);
    }
    BigMat(const BigMat&) = delete;
    mpfr_t& at(std::size_t i, std::size_t j) { return v_[i * n_ + j]; }
    std::size_t n() const { return n_; }
    mpfr_prec_t prec() const { return prec_; }

private:
    std::size_t n_;
    mpfr_prec_t prec_;
    std::vector<mpfr_t> v_;
};

// eigenvalues of a symmetric matrix by Jacobi sweeps; exponents of the
// results are reliable far below the 1e-25 sign threshold
inline std::vector<double> jacobi_eigenvalues(const vinberg::SymMatrix& m,
                                              mpfr_prec_t prec = 400) {
    const std::size_t n = m.dim();
    BigMat a(n, prec);
    auto id = vinberg::identity_embedding(m.tower());
    mpq_class tol(1);
    for (int i = 0; i < 120; ++i) tol /= 10;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            vinberg::Interval iv = vinberg::apply_embedding(id, m.at(i, j), tol);
            mpfr_add(a.at(i, j), iv.lo(), iv.hi(), MPFR_RNDN);
            mpfr_div_2si(a.at(i, j), a.at(i, j), 1, MPFR_RNDN);
            mpfr_set(a.at(j, i), a.at(i, j), MPFR_RNDN);
        }
    mpfr_t off, t, theta, c, s, one, aij, tmp1, tmp2;
    mpfr_inits2(prec, off, t, theta, c, s, one, aij, tmp1, tmp2, (mpfr_ptr) nullptr);
    mpfr_set_ui(one, 1, MPFR_RNDN);
    for (int sweep = 0; sweep < 200; ++sweep) {
        mpfr_set_zero(off, 1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                mpfr_abs(t, a.at(i, j), MPFR_RNDN);
                if (mpfr_cmp(t, off) > 0) mpfr_set(off, t, MPFR_RNDN);
            }
        if (mpfr_zero_p(off) || mpfr_get_exp(off) < -360) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (mpfr_zero_p(a.at(p, q))) continue;
                // theta = (a_qq - a_pp) / (2 a_pq); t = sign/(|theta|+sqrt(theta^2+1))
                mpfr_sub(theta, a.at(q, q), a.at(p, p), MPFR_RNDN);
                mpfr_mul_2si(tmp1, a.at(p, q), 1, MPFR_RNDN);
                mpfr_div(theta, theta, tmp1, MPFR_RNDN);
                mpfr_sqr(tmp1, theta, MPFR_RNDN);
                mpfr_add_ui(tmp1, tmp1, 1, MPFR_RNDN);
                mpfr_sqrt(tmp1, tmp1, MPFR_RNDN);
                mpfr_abs(tmp2, theta, MPFR_RNDN);
                mpfr_add(tmp1, tmp1, tmp2, MPFR_RNDN);
                mpfr_ui_div(t, 1, tmp1, MPFR_RNDN);
                if (mpfr_sgn(theta) < 0) mpfr_neg(t, t, MPFR_RNDN);
                mpfr_sqr(tmp1, t, MPFR_RNDN);
                mpfr_add_ui(tmp1, tmp1, 1, MPFR_RNDN);
                mpfr_sqrt(tmp1, tmp1, MPFR_RNDN);
                mpfr_ui_div(c, 1, tmp1, MPFR_RNDN);
                mpfr_mul(s, t, c, MPFR_RNDN);
                // rotate rows/cols p and q
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    mpfr_set(tmp1, a.at(k, p), MPFR_RNDN);
                    mpfr_set(tmp2, a.at(k, q), MPFR_RNDN);
                    mpfr_mul(a.at(k, p), tmp1, c, MPFR_RNDN);
                    mpfr_mul(aij, tmp2, s, MPFR_RNDN);
                    mpfr_sub(a.at(k, p), a.at(k, p), aij, MPFR_RNDN);
                    mpfr_mul(a.at(k, q), tmp2, c, MPFR_RNDN);
                    mpfr_mul(aij, tmp1, s, MPFR_RNDN);
                    mpfr_add(a.at(k, q), a.at(k, q), aij, MPFR_RNDN);
                    mpfr_set(a.at(p, k), a.at(k, p), MPFR_RNDN);
                    mpfr_set(a.at(q, k), a.at(k, q), MPFR_RNDN);
                }
                mpfr_mul(tmp1, t, a.at(p, q), MPFR_RNDN);
                mpfr_sub(a.at(p, p), a.at(p, p), tmp1, MPFR_RNDN);
                mpfr_add(a.at(q, q), a.at(q, q), tmp1, MPFR_RNDN);
                mpfr_set_zero(a.at(p, q), 1);
                mpfr_set_zero(a.at(q, p), 1);
            }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = mpfr_get_d(a.at(i, i), MPFR_RNDN);
    mpfr_clears(off, t, theta, c, s, one, aij, tmp1, tmp2, (mpfr_ptr) nullptr);
    return eig;
}

inline vinberg::Signature signature_from_eigenvalues(const std::vector<double>& eig,
                                                     double threshold = 1e-25) {
    vinberg::Signature s;
    for (double v : eig) {
        if (v > threshold)
            ++s.p;
        else if (v < -threshold)
            ++s.q;
        else
            ++s.r;
    }
    return s;
}

}  // namespace testutil
