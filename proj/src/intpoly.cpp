#include "vinberg/intpoly.hpp"

#include <map>
#include <mutex>

#include "vinberg/errors.hpp"

namespace vinberg {

namespace {
const mpz_class kZero = 0;
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::constant(const mpz_class& v) {
    if (v == 0) return IntPoly{};
    return IntPoly{{v}};
}

IntPoly IntPoly::x() { return IntPoly{{0, 1}}; }

const mpz_class& IntPoly::coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : kZero;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return IntPoly{std::move(r)};
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
    return IntPoly{std::move(r)};
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly{};
    std::vector<mpz_class> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            r[i + j] += c_[i] * o.c_[j];
        }
    }
    return IntPoly{std::move(r)};
}

IntPoly IntPoly::operator*(const mpz_class& s) const {
    if (s == 0) return IntPoly{};
    std::vector<mpz_class> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * s;
    return IntPoly{std::move(r)};
}

IntPoly IntPoly::divide_exact(const IntPoly& divisor) const {
    if (divisor.is_zero()) throw InternalError("IntPoly division by zero");
    std::vector<mpz_class> rem = c_;
    int dq = degree() - divisor.degree();
    if (dq < 0) {
        if (!is_zero()) throw InternalError("IntPoly::divide_exact: inexact");
        return IntPoly{};
    }
    std::vector<mpz_class> q(static_cast<std::size_t>(dq) + 1);
    const auto& d = divisor.c_;
    for (int k = dq; k >= 0; --k) {
        mpz_class top = rem[k + divisor.degree()];
        if (top == 0) continue;
        mpz_class qk;
        mpz_tdiv_qr(qk.get_mpz_t(), top.get_mpz_t(), top.get_mpz_t(),
                    divisor.leading().get_mpz_t());
        if (top != 0) throw InternalError("IntPoly::divide_exact: inexact leading step");
        q[k] = qk;
        for (std::size_t i = 0; i < d.size(); ++i)
            rem[k + i] -= qk * d[i];
    }
    for (const auto& r : rem)
        if (r != 0) throw InternalError("IntPoly::divide_exact: nonzero remainder");
    return IntPoly{std::move(q)};
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly{};
    std::vector<mpz_class> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return IntPoly{std::move(r)};
}

int IntPoly::sign_at(const mpq_class& x) const {
    if (is_zero()) return 0;
    // sum c_i p^i q^(d-i); same sign as f(p/q) since q > 0 after canonicalization
    const mpz_class& p = x.get_num();
    const mpz_class& q = x.get_den();
    mpz_class acc = 0, qpow = 1;
    // Horner from the top: acc = acc*p + c_i*q^(d-i)
    for (int i = degree(); i >= 0; --i) {
        acc = acc * p + c_[static_cast<std::size_t>(i)] * qpow;
        if (i > 0) qpow *= q;
    }
    return sgn(acc);
}

mpq_class IntPoly::value_at(const mpq_class& x) const {
    mpq_class acc = 0;
    for (int i = degree(); i >= 0; --i) acc = acc * x + mpq_class(c_[static_cast<std::size_t>(i)]);
    return acc;
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& v : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    mpz_class g = content();
    if (g == 0 || g == 1) return *this;
    std::vector<mpz_class> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        mpz_divexact(r[i].get_mpz_t(), c_[i].get_mpz_t(), g.get_mpz_t());
    return IntPoly{std::move(r)};
}

unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

// Phi_m for m = 1..n as needed, bottom-up: Phi_m = (x^m - 1) / prod of
// proper cyclotomic divisors, all divisions exact over Z.
IntPoly cyclotomic_uncached(unsigned long m, std::map<unsigned long, IntPoly>& cache) {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    std::vector<mpz_class> xm(m + 1);
    xm[0] = -1;
    xm[m] = 1;
    IntPoly result{std::move(xm)};
    for (unsigned long d = 1; d < m; ++d)
        if (m % d == 0) result = result.divide_exact(cyclotomic_uncached(d, cache));
    cache.emplace(m, result);
    return result;
}

}  // namespace

IntPoly cyclotomic(unsigned long n) {
    if (n == 0) throw DomainError("cyclotomic: n must be positive");
    static std::mutex mu;
    static std::map<unsigned long, IntPoly> cache;
    std::lock_guard<std::mutex> lock(mu);
    return cyclotomic_uncached(n, cache);
}

IntPoly min_poly_two_cos(unsigned long n) {
    if (n == 0) throw DomainError("min_poly_two_cos: n must be positive");
    if (n == 1) return IntPoly{{-2, 1}};  // 2cos(0) = 2
    if (n == 2) return IntPoly{{2, 1}};   // 2cos(pi) = -2
    IntPoly phi = cyclotomic(n);
    std::size_t m = static_cast<std::size_t>(phi.degree()) / 2;
    // Phi_n is palindromic for n >= 3, so Phi_n(x)/x^m rewrites as a
    // polynomial in y = x + 1/x via x^k + x^-k = C_k(y), with
    // C_0 = 2, C_1 = y, C_{k+1} = y*C_k - C_{k-1}.
    IntPoly ck_prev = IntPoly::constant(2);  // C_0
    IntPoly ck = IntPoly::x();               // C_1
    IntPoly acc = IntPoly::constant(phi.coeff(m));
    for (std::size_t k = 1; k <= m; ++k) {
        if (k > 1) {
            IntPoly next = IntPoly::x() * ck - ck_prev;
            ck_prev = ck;
            ck = next;
        }
        acc = acc + ck * phi.coeff(m + k);
    }
    if (!acc.is_monic())
        throw InternalError("min_poly_two_cos: folding did not produce a monic result");
    return acc;
}

}  // namespace vinberg
