#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace vinberg {

// Closed real interval [lo, hi] with mpfr endpoints, always rounded
// outward. Every operation takes the working precision of the result;
// enclosure is maintained regardless of precision.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 64);
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(const Interval& o);
    Interval& operator=(Interval&& o) noexcept;
    ~Interval();

    static Interval point_si(long v, mpfr_prec_t prec);
    static Interval from_mpq(const mpq_class& v, mpfr_prec_t prec);
    static Interval pi(mpfr_prec_t prec);

    mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }
    const mpfr_t& lo() const { return lo_; }
    const mpfr_t& hi() const { return hi_; }
    mpfr_t& lo_mut() { return lo_; }
    mpfr_t& hi_mut() { return hi_; }

    bool contains_zero() const;
    // -1 / +1 when the interval is strictly on one side of zero, 0 otherwise
    int sign() const;
    bool is_point() const { return mpfr_equal_p(lo_, hi_); }

    // true when hi - lo <= 2^-bits
    bool narrower_than_2exp(long bits) const;
    // true when hi - lo <= tol (tol a decimal string like "1e-30")
    bool narrower_than(const mpq_class& tol) const;

    double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

    // Decimal rendering of the midpoint with the given significant digits.
    std::string midpoint_string(int digits) const;

    bool overlaps(const Interval& o) const;
    bool strictly_less(const Interval& o) const;  // hi < o.lo

private:
    mpfr_t lo_, hi_;
};

Interval iadd(const Interval& a, const Interval& b, mpfr_prec_t prec);
Interval isub(const Interval& a, const Interval& b, mpfr_prec_t prec);
Interval imul(const Interval& a, const Interval& b, mpfr_prec_t prec);
Interval idiv(const Interval& a, const Interval& b, mpfr_prec_t prec);  // 0 not in b
Interval ineg(const Interval& a);
Interval isqrt(const Interval& a, mpfr_prec_t prec);  // a.lo >= 0
Interval iscale_mpq(const Interval& a, const mpq_class& s, mpfr_prec_t prec);

// cos(pi * a / b) for 0 <= a/b <= 1 (argument within [0, pi], where cos is
// monotone decreasing).
Interval icos_pi_frac(const mpq_class& frac, mpfr_prec_t prec);
// sin(pi * a / b) for 0 <= a/b <= 1/2
Interval isin_pi_frac(const mpq_class& frac, mpfr_prec_t prec);
// acosh on [1, inf)
Interval iacosh(const Interval& a, mpfr_prec_t prec);

}  // namespace vinberg
