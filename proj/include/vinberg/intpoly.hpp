#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace vinberg {

// Dense univariate polynomial over Z, coefficients lowest degree first.
// The zero polynomial has an empty coefficient vector; otherwise the
// leading coefficient is nonzero.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }
    static IntPoly constant(const mpz_class& v);
    static IntPoly x();

    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    const mpz_class& coeff(std::size_t i) const;
    const mpz_class& leading() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator*(const mpz_class& s) const;

    // Exact division; throws InternalError if the remainder is nonzero.
    IntPoly divide_exact(const IntPoly& divisor) const;

    IntPoly derivative() const;

    // Sign of the value at a rational point, computed exactly.
    int sign_at(const mpq_class& x) const;
    mpq_class value_at(const mpq_class& x) const;

    mpz_class content() const;
    IntPoly primitive_part() const;

private:
    void trim();
    std::vector<mpz_class> c_;
};

unsigned long euler_phi(unsigned long n);

// n-th cyclotomic polynomial, computed by exact division of x^n - 1.
IntPoly cyclotomic(unsigned long n);

// Monic minimal polynomial of 2cos(2*pi/n) over Q. Degree phi(n)/2 for
// n >= 3, degree 1 for n in {1,2}.
IntPoly min_poly_two_cos(unsigned long n);

}  // namespace vinberg
