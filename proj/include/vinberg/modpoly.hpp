#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

// Polynomial arithmetic mod small primes p (p < 2^31) and mod p^k, plus the
// factorization / square-root building blocks needed for exact squareness
// detection in the cyclotomic-real base field: distinct-degree and
// equal-degree factorization, Legendre tests in F_q, Tonelli-Shanks square
// roots, and coupled Newton lifting of a square root mod p^k.
namespace vinberg::modp {

using FpPoly = std::vector<std::uint64_t>;  // coefficients mod p, lowest first, trimmed
using ZPoly = std::vector<mpz_class>;       // coefficients mod m (mpz), trimmed

inline std::uint64_t mulmod_u(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
std::uint64_t powmod_u(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod_u(std::uint64_t a, std::uint64_t p);

void fp_trim(FpPoly& a);
int fp_deg(const FpPoly& a);
bool fp_is_one(const FpPoly& a);
FpPoly fp_from_mpz(const std::vector<mpz_class>& coeffs, std::uint64_t p);
FpPoly fp_add(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly fp_rem(FpPoly a, const FpPoly& f, std::uint64_t p);  // f monic or unit-led
FpPoly fp_divexact(const FpPoly& a, const FpPoly& f, std::uint64_t p);
FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, std::uint64_t p);
FpPoly fp_powmod(FpPoly a, mpz_class e, const FpPoly& f, std::uint64_t p);
FpPoly fp_make_monic(FpPoly a, std::uint64_t p);
FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p);  // monic gcd
// a^{-1} mod f; empty result when gcd(a, f) != 1
FpPoly fp_invmod(const FpPoly& a, const FpPoly& f, std::uint64_t p);

// Distinct-degree factorization of a monic squarefree f: list of
// (k, product of all monic irreducible factors of degree k).
std::vector<std::pair<unsigned long, FpPoly>> fp_ddf(const FpPoly& f, std::uint64_t p);
// Cantor-Zassenhaus split of a product of degree-k irreducibles (p odd).
std::vector<FpPoly> fp_edf(const FpPoly& g, unsigned long k, std::uint64_t p,
                           std::mt19937_64& rng);

// Quadratic character of r in the product ring F_p[x]/(g), g a product of
// degree-k irreducibles: +1 if a residue in every component, -1 if a
// non-residue in some component, 0 if r is a zero divisor.
int fq_block_character(const FpPoly& r, const FpPoly& g, unsigned long k, std::uint64_t p);

// Square root of r in the field F_p[x]/(fi), fi irreducible of degree k,
// p odd; r must be a nonzero residue.
std::optional<FpPoly> fq_sqrt(const FpPoly& r, const FpPoly& fi, unsigned long k,
                              std::uint64_t p, std::mt19937_64& rng);

// Chinese remainder combination across pairwise coprime monic factors of f.
FpPoly fp_crt(const std::vector<FpPoly>& residues, const std::vector<FpPoly>& factors,
              const FpPoly& f, std::uint64_t p);

// ---- arithmetic mod m = p^k ----
void z_normalize(ZPoly& a, const mpz_class& m);
ZPoly z_mulmod(const ZPoly& a, const ZPoly& b, const ZPoly& f, const mpz_class& m);
ZPoly z_submod(const ZPoly& a, const ZPoly& b, const mpz_class& m);

// Coupled Newton iteration maintaining y^2 ≡ target and w ≈ (2y)^{-1}
// mod (f, modulus); advance() squares the modulus.
class SqrtLift {
public:
    SqrtLift(ZPoly y0, const ZPoly& f, const ZPoly& target, std::uint64_t p);
    void advance();
    const ZPoly& value() const { return y_; }
    const mpz_class& modulus() const { return modulus_; }
    // coefficients lifted to the symmetric range (-m/2, m/2]
    std::vector<mpz_class> symmetric_value() const;

private:
    ZPoly y_, w_, f_, target_;
    mpz_class modulus_;
};

}  // namespace vinberg::modp
