#include "vinberg/interval.hpp"

#include <array>
#include <cstdio>
#include <vector>

#include "vinberg/errors.hpp"

namespace vinberg {

Interval::Interval(mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
    mpfr_init2(lo_, 2);
    mpfr_init2(hi_, 2);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
    if (this != &o) {
        mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
        mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
    if (this != &o) {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::point_si(long v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

Interval Interval::from_mpq(const mpq_class& v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

bool Interval::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

int Interval::sign() const {
    if (mpfr_sgn(lo_) > 0) return 1;
    if (mpfr_sgn(hi_) < 0) return -1;
    return 0;
}

bool Interval::narrower_than_2exp(long bits) const {
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    bool ok = mpfr_sgn(w) <= 0 || mpfr_get_exp(w) <= -bits;
    mpfr_clear(w);
    return ok;
}

bool Interval::narrower_than(const mpq_class& tol) const {
    mpfr_t w, t;
    mpfr_init2(w, prec());
    mpfr_init2(t, prec());
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    mpfr_set_q(t, tol.get_mpq_t(), MPFR_RNDD);
    bool ok = mpfr_lessequal_p(w, t);
    mpfr_clear(w);
    mpfr_clear(t);
    return ok;
}

std::string Interval::midpoint_string(int digits) const {
    mpfr_t mid;
    mpfr_init2(mid, prec());
    mpfr_add(mid, lo_, hi_, MPFR_RNDN);
    mpfr_div_2si(mid, mid, 1, MPFR_RNDN);
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%dRg", digits);
    char* s = nullptr;
    mpfr_asprintf(&s, fmt, mid);
    std::string out(s);
    mpfr_free_str(s);
    mpfr_clear(mid);
    return out;
}

bool Interval::overlaps(const Interval& o) const {
    return !(mpfr_less_p(hi_, o.lo_) || mpfr_less_p(o.hi_, lo_));
}

bool Interval::strictly_less(const Interval& o) const {
    return mpfr_less_p(hi_, o.lo_);
}

Interval iadd(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_add(r.lo_mut(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_add(r.hi_mut(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

Interval isub(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_sub(r.lo_mut(), a.lo(), b.hi(), MPFR_RNDD);
    mpfr_sub(r.hi_mut(), a.hi(), b.lo(), MPFR_RNDU);
    return r;
}

Interval imul(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    // lo: min of the four products rounded down
    bool first = true;
    const mpfr_t* as[2] = {&a.lo(), &a.hi()};
    const mpfr_t* bs[2] = {&b.lo(), &b.hi()};
    for (auto* x : as)
        for (auto* y : bs) {
            mpfr_mul(t, *x, *y, MPFR_RNDD);
            if (first || mpfr_less_p(t, r.lo())) mpfr_set(r.lo_mut(), t, MPFR_RNDD);
            first = false;
        }
    first = true;
    for (auto* x : as)
        for (auto* y : bs) {
            mpfr_mul(t, *x, *y, MPFR_RNDU);
            if (first || mpfr_greater_p(t, r.hi())) mpfr_set(r.hi_mut(), t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

Interval idiv(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    if (b.contains_zero()) throw InternalError("interval division by interval containing 0");
    Interval r(prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    const mpfr_t* as[2] = {&a.lo(), &a.hi()};
    const mpfr_t* bs[2] = {&b.lo(), &b.hi()};
    bool first = true;
    for (auto* x : as)
        for (auto* y : bs) {
            mpfr_div(t, *x, *y, MPFR_RNDD);
            if (first || mpfr_less_p(t, r.lo())) mpfr_set(r.lo_mut(), t, MPFR_RNDD);
            first = false;
        }
    first = true;
    for (auto* x : as)
        for (auto* y : bs) {
            mpfr_div(t, *x, *y, MPFR_RNDU);
            if (first || mpfr_greater_p(t, r.hi())) mpfr_set(r.hi_mut(), t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

Interval ineg(const Interval& a) {
    Interval r(a.prec());
    mpfr_neg(r.lo_mut(), a.hi(), MPFR_RNDD);
    mpfr_neg(r.hi_mut(), a.lo(), MPFR_RNDU);
    return r;
}

Interval isqrt(const Interval& a, mpfr_prec_t prec) {
    if (mpfr_sgn(a.lo()) < 0) throw InternalError("interval sqrt of possibly-negative value");
    Interval r(prec);
    mpfr_sqrt(r.lo_mut(), a.lo(), MPFR_RNDD);
    mpfr_sqrt(r.hi_mut(), a.hi(), MPFR_RNDU);
    return r;
}

Interval iscale_mpq(const Interval& a, const mpq_class& s, mpfr_prec_t prec) {
    return imul(a, Interval::from_mpq(s, prec), prec);
}

Interval icos_pi_frac(const mpq_class& frac, mpfr_prec_t prec) {
    if (frac < 0 || frac > 1) throw InternalError("icos_pi_frac: argument outside [0,1]");
    Interval t = iscale_mpq(Interval::pi(prec + 8), frac, prec + 8);
    // cos decreasing on [0, pi]
    Interval r(prec);
    mpfr_cos(r.lo_mut(), t.hi(), MPFR_RNDD);
    mpfr_cos(r.hi_mut(), t.lo(), MPFR_RNDU);
    return r;
}

Interval isin_pi_frac(const mpq_class& frac, mpfr_prec_t prec) {
    if (frac < 0 || frac * 2 > 1) throw InternalError("isin_pi_frac: argument outside [0,1/2]");
    Interval t = iscale_mpq(Interval::pi(prec + 8), frac, prec + 8);
    // sin increasing on [0, pi/2]
    Interval r(prec);
    mpfr_sin(r.lo_mut(), t.lo(), MPFR_RNDD);
    mpfr_sin(r.hi_mut(), t.hi(), MPFR_RNDU);
    return r;
}

Interval iacosh(const Interval& a, mpfr_prec_t prec) {
    if (mpfr_cmp_si(a.lo(), 1) < 0) throw InternalError("iacosh: argument below 1");
    Interval r(prec);
    mpfr_acosh(r.lo_mut(), a.lo(), MPFR_RNDD);
    mpfr_acosh(r.hi_mut(), a.hi(), MPFR_RNDU);
    return r;
}

}  // namespace vinberg
