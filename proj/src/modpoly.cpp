#include "vinberg/modpoly.hpp"

#include "vinberg/errors.hpp"

namespace vinberg::modp {

std::uint64_t powmod_u(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_u(r, a, p);
        a = mulmod_u(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod_u(std::uint64_t a, std::uint64_t p) {
    return powmod_u(a % p, p - 2, p);  // p prime
}

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int fp_deg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

bool fp_is_one(const FpPoly& a) { return a.size() == 1 && a[0] == 1; }

FpPoly fp_from_mpz(const std::vector<mpz_class>& coeffs, std::uint64_t p) {
    FpPoly r(coeffs.size());
    mpz_class t;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        mpz_mod_ui(t.get_mpz_t(), coeffs[i].get_mpz_t(), p);
        r[i] = t.get_ui();
    }
    fp_trim(r);
    return r;
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = v >= p ? v - p : v;
    }
    fp_trim(r);
    return r;
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0;
        std::uint64_t y = i < b.size() ? b[i] : 0;
        r[i] = x >= y ? x - y : x + p - y;
    }
    fp_trim(r);
    return r;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    // accumulate 128-bit to avoid per-term reductions
    std::vector<unsigned __int128> acc(r.size(), 0);
    const unsigned __int128 cap = ~static_cast<unsigned __int128>(0) -
                                  static_cast<unsigned __int128>(p - 1) * (p - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
            if (acc[i + j] >= cap) acc[i + j] %= p;
        }
    }
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<std::uint64_t>(acc[i] % p);
    fp_trim(r);
    return r;
}

FpPoly fp_rem(FpPoly a, const FpPoly& f, std::uint64_t p) {
    if (f.empty()) throw InternalError("fp_rem by zero");
    std::uint64_t inv_lc = invmod_u(f.back(), p);
    while (fp_deg(a) >= fp_deg(f)) {
        std::uint64_t c = mulmod_u(a.back(), inv_lc, p);
        std::size_t shift = a.size() - f.size();
        for (std::size_t i = 0; i < f.size(); ++i) {
            std::uint64_t t = mulmod_u(c, f[i], p);
            std::uint64_t& dst = a[shift + i];
            dst = dst >= t ? dst - t : dst + p - t;
        }
        fp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

FpPoly fp_divexact(const FpPoly& a, const FpPoly& f, std::uint64_t p) {
    // returns a / f, asserting zero remainder
    FpPoly rem = a, q(a.size() >= f.size() ? a.size() - f.size() + 1 : 0, 0);
    std::uint64_t inv_lc = invmod_u(f.back(), p);
    while (fp_deg(rem) >= fp_deg(f)) {
        std::uint64_t c = mulmod_u(rem.back(), inv_lc, p);
        std::size_t shift = rem.size() - f.size();
        q[shift] = c;
        for (std::size_t i = 0; i < f.size(); ++i) {
            std::uint64_t t = mulmod_u(c, f[i], p);
            std::uint64_t& dst = rem[shift + i];
            dst = dst >= t ? dst - t : dst + p - t;
        }
        fp_trim(rem);
    }
    if (!rem.empty()) throw InternalError("fp_divexact: nonzero remainder");
    fp_trim(q);
    return q;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, std::uint64_t p) {
    return fp_rem(fp_mul(a, b, p), f, p);
}

FpPoly fp_powmod(FpPoly a, mpz_class e, const FpPoly& f, std::uint64_t p) {
    FpPoly r{1};
    a = fp_rem(std::move(a), f, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fp_mulmod(r, a, f, p);
        a = fp_mulmod(a, a, f, p);
        e >>= 1;
    }
    return r;
}

FpPoly fp_make_monic(FpPoly a, std::uint64_t p) {
    if (a.empty() || a.back() == 1) return a;
    std::uint64_t inv = invmod_u(a.back(), p);
    for (auto& c : a) c = mulmod_u(c, inv, p);
    return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
    while (!b.empty()) {
        FpPoly r = fp_rem(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return fp_make_monic(std::move(a), p);
}

FpPoly fp_invmod(const FpPoly& a, const FpPoly& f, std::uint64_t p) {
    // extended Euclid keeping only the cofactor of a
    FpPoly r0 = f, r1 = fp_rem(a, f, p);
    FpPoly u0{}, u1{1};
    while (!r1.empty()) {
        // r0 = q*r1 + r2
        FpPoly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, 0);
        FpPoly rem = r0;
        std::uint64_t inv_lc = invmod_u(r1.back(), p);
        while (fp_deg(rem) >= fp_deg(r1)) {
            std::uint64_t c = mulmod_u(rem.back(), inv_lc, p);
            std::size_t shift = rem.size() - r1.size();
            q[shift] = c;
            for (std::size_t i = 0; i < r1.size(); ++i) {
                std::uint64_t t = mulmod_u(c, r1[i], p);
                std::uint64_t& dst = rem[shift + i];
                dst = dst >= t ? dst - t : dst + p - t;
            }
            fp_trim(rem);
        }
        FpPoly u2 = fp_sub(u0, fp_rem(fp_mul(q, u1, p), f, p), p);
        r0 = std::move(r1);
        r1 = std::move(rem);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (fp_deg(r0) != 0) return {};  // not invertible
    std::uint64_t inv = invmod_u(r0[0], p);
    for (auto& c : u0) c = mulmod_u(c, inv, p);
    fp_trim(u0);
    return u0;
}

std::vector<std::pair<unsigned long, FpPoly>> fp_ddf(const FpPoly& f, std::uint64_t p) {
    std::vector<std::pair<unsigned long, FpPoly>> blocks;
    FpPoly v = f;
    FpPoly h{0, 1};  // x
    unsigned long k = 0;
    while (fp_deg(v) >= static_cast<int>(2 * (k + 1))) {
        ++k;
        h = fp_powmod(std::move(h), mpz_class(static_cast<unsigned long>(p)), v, p);
        FpPoly g = fp_gcd(fp_sub(h, FpPoly{0, 1}, p), v, p);
        if (fp_deg(g) > 0) {
            blocks.emplace_back(k, g);
            v = fp_divexact(v, g, p);
            h = fp_rem(std::move(h), v, p);
        }
    }
    if (fp_deg(v) > 0) blocks.emplace_back(static_cast<unsigned long>(fp_deg(v)), v);
    return blocks;
}

std::vector<FpPoly> fp_edf(const FpPoly& g, unsigned long k, std::uint64_t p,
                           std::mt19937_64& rng) {
    std::vector<FpPoly> out;
    if (fp_deg(g) == static_cast<int>(k)) {
        out.push_back(fp_make_monic(g, p));
        return out;
    }
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, k);
    e = (e - 1) / 2;
    for (;;) {
        FpPoly a(static_cast<std::size_t>(fp_deg(g)), 0);
        for (auto& c : a) c = rng() % p;
        fp_trim(a);
        if (a.empty()) continue;
        FpPoly b = fp_sub(fp_powmod(a, e, g, p), FpPoly{1}, p);
        FpPoly d = fp_gcd(b, g, p);
        if (fp_deg(d) > 0 && fp_deg(d) < fp_deg(g)) {
            auto left = fp_edf(d, k, p, rng);
            auto right = fp_edf(fp_divexact(g, d, p), k, p, rng);
            out.insert(out.end(), left.begin(), left.end());
            out.insert(out.end(), right.begin(), right.end());
            return out;
        }
    }
}

int fq_block_character(const FpPoly& r, const FpPoly& g, unsigned long k, std::uint64_t p) {
    FpPoly rr = fp_rem(r, g, p);
    if (!fp_is_one(fp_gcd(rr, g, p))) return 0;
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, k);
    e = (e - 1) / 2;
    FpPoly u = fp_powmod(rr, e, g, p);
    return fp_is_one(u) ? 1 : -1;
}

std::optional<FpPoly> fq_sqrt(const FpPoly& r, const FpPoly& fi, unsigned long k,
                              std::uint64_t p, std::mt19937_64& rng) {
    FpPoly rr = fp_rem(r, fi, p);
    if (rr.empty()) return FpPoly{};
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), p, k);
    mpz_class qm1 = q - 1;
    if (fp_powmod(rr, qm1 / 2, fi, p) != FpPoly{1}) return std::nullopt;
    if (mpz_fdiv_ui(q.get_mpz_t(), 4) == 3) {
        return fp_powmod(rr, (q + 1) / 4, fi, p);
    }
    // Tonelli-Shanks in F_q
    mpz_class t = qm1;
    unsigned long s = 0;
    while (mpz_even_p(t.get_mpz_t())) {
        t >>= 1;
        ++s;
    }
    FpPoly z;
    for (;;) {
        FpPoly a(static_cast<std::size_t>(fp_deg(fi)), 0);
        for (auto& c : a) c = rng() % p;
        fp_trim(a);
        if (a.empty()) continue;
        FpPoly chi = fp_powmod(a, qm1 / 2, fi, p);
        if (!chi.empty() && !fp_is_one(chi)) {  // non-residue
            z = std::move(a);
            break;
        }
    }
    FpPoly c = fp_powmod(z, t, fi, p);
    FpPoly u = fp_powmod(rr, t, fi, p);
    FpPoly res = fp_powmod(rr, (t + 1) / 2, fi, p);
    unsigned long m = s;
    while (!fp_is_one(u)) {
        FpPoly u2 = u;
        unsigned long i = 0;
        while (!fp_is_one(u2)) {
            u2 = fp_mulmod(u2, u2, fi, p);
            ++i;
            if (i >= m) return std::nullopt;  // not a residue after all
        }
        FpPoly b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = fp_mulmod(b, b, fi, p);
        m = i;
        c = fp_mulmod(b, b, fi, p);
        u = fp_mulmod(u, c, fi, p);
        res = fp_mulmod(res, b, fi, p);
    }
    return res;
}

FpPoly fp_crt(const std::vector<FpPoly>& residues, const std::vector<FpPoly>& factors,
              const FpPoly& f, std::uint64_t p) {
    FpPoly acc{};
    for (std::size_t i = 0; i < factors.size(); ++i) {
        FpPoly mi = fp_divexact(f, factors[i], p);
        FpPoly hi = fp_invmod(mi, factors[i], p);
        if (hi.empty() && !fp_is_one(fp_gcd(mi, factors[i], p)))
            throw InternalError("fp_crt: factors not coprime");
        FpPoly term = fp_mulmod(fp_mulmod(residues[i], hi, f, p), mi, f, p);
        acc = fp_add(acc, term, p);
    }
    return fp_rem(std::move(acc), f, p);
}

void z_normalize(ZPoly& a, const mpz_class& m) {
    for (auto& c : a) {
        mpz_mod(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly z_mulmod(const ZPoly& a, const ZPoly& b, const ZPoly& f, const mpz_class& m) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    // reduce by monic f
    while (r.size() >= f.size() && !r.empty()) {
        mpz_class c = r.back();
        mpz_mod(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        std::size_t shift = r.size() - f.size();
        if (c != 0)
            for (std::size_t i = 0; i + 1 < f.size(); ++i) r[shift + i] -= c * f[i];
        r.pop_back();
        if (r.size() < f.size()) break;
    }
    z_normalize(r, m);
    return r;
}

ZPoly z_submod(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
    ZPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] -= b[i];
    }
    z_normalize(r, m);
    return r;
}

SqrtLift::SqrtLift(ZPoly y0, const ZPoly& f, const ZPoly& target, std::uint64_t p)
    : y_(std::move(y0)), f_(f), target_(target), modulus_(static_cast<unsigned long>(p)) {
    z_normalize(y_, modulus_);
    // w = (2y)^{-1} mod (f, p), computed in F_p
    FpPoly yf(y_.size());
    for (std::size_t i = 0; i < y_.size(); ++i) yf[i] = mpz_fdiv_ui(y_[i].get_mpz_t(), p);
    fp_trim(yf);
    for (auto& c : yf) c = mulmod_u(c, 2 % p, p);
    FpPoly ff(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) ff[i] = mpz_fdiv_ui(f[i].get_mpz_t(), p);
    fp_trim(ff);
    FpPoly wf = fp_invmod(yf, ff, p);
    if (wf.empty()) throw InternalError("SqrtLift: 2*y0 not invertible mod p");
    w_.assign(wf.begin(), wf.end());
}

void SqrtLift::advance() {
    mpz_class m2 = modulus_ * modulus_;
    // y' = y - (y^2 - target) * w  (mod f, m2)
    ZPoly y2 = z_mulmod(y_, y_, f_, m2);
    ZPoly err = z_submod(y2, target_, m2);
    ZPoly corr = z_mulmod(err, w_, f_, m2);
    y_ = z_submod(y_, corr, m2);
    // w' = w * (2 - 2*y'*w)  (mod f, m2)
    ZPoly two_y(y_);
    for (auto& c : two_y) c *= 2;
    z_normalize(two_y, m2);
    ZPoly t = z_mulmod(two_y, w_, f_, m2);
    ZPoly two{mpz_class(2)};
    ZPoly corr2 = z_submod(two, t, m2);
    w_ = z_mulmod(w_, corr2, f_, m2);
    modulus_ = m2;
}

std::vector<mpz_class> SqrtLift::symmetric_value() const {
    std::vector<mpz_class> out(y_.begin(), y_.end());
    mpz_class half = modulus_ / 2;
    for (auto& c : out)
        if (c > half) c -= modulus_;
    return out;
}

}  // namespace vinberg::modp
