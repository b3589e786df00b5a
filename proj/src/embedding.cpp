#include <algorithm>
#include <atomic>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "algfield_internal.hpp"
#include "vinberg/config.hpp"
#include "vinberg/errors.hpp"
#include "vinberg/modpoly.hpp"

namespace vinberg {

mpfr_prec_t start_precision_bits() {
    static std::atomic<long> cached{-1};
    long v = cached.load();
    if (v < 0) {
        v = 64;
        if (const char* env = std::getenv("LOBELL_PRECISION_BITS")) {
            long parsed = std::strtol(env, nullptr, 10);
            if (parsed >= 16 && parsed <= (1 << 20)) v = parsed;
        }
        cached.store(v);
    }
    return static_cast<mpfr_prec_t>(v);
}

namespace detail {

namespace {

Interval interval_from_mpz(const mpz_class& v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_z(r.lo_mut(), v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_mut(), v.get_mpz_t(), MPFR_RNDU);
    return r;
}

// enclosure of f evaluated over the enclosure of x
Interval ipoly_eval(const IntPoly& f, const Interval& x, mpfr_prec_t prec) {
    if (f.is_zero()) return Interval(prec);
    Interval acc = interval_from_mpz(f.leading(), prec);
    for (int i = f.degree() - 1; i >= 0; --i) {
        acc = imul(acc, x, prec);
        acc = iadd(acc, interval_from_mpz(f.coeff(static_cast<std::size_t>(i)), prec), prec);
    }
    return acc;
}

Interval interval_from_mpq_pair(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_mut(), lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_mut(), hi.get_mpq_t(), MPFR_RNDU);
    return r;
}

// width(hi - lo) <= 2^-bits, exactly
bool mpq_box_narrow(const mpq_class& lo, const mpq_class& hi, long bits) {
    mpq_class w = hi - lo;
    if (w <= 0) return true;
    // w <= 2^-bits  <=>  num * 2^bits <= den
    mpz_class scaled = w.get_num();
    if (bits > 0)
        mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
    return scaled <= w.get_den();
}

}  // namespace

Interval refine_root(const FieldTower& base, std::size_t j, long bits) {
    TowerCache& C = base.cache();
    std::lock_guard<std::mutex> lock(C.mu);
    if (C.roots.empty()) C.roots.resize(base.roots().size());
    auto& st = C.roots[j];
    const auto& box = base.roots()[j];
    const IntPoly& f = base.base_poly();
    if (!st.init) {
        st.lo = box.lo;
        st.hi = box.hi;
        st.sign_lo = (box.lo == box.hi) ? 0 : f.sign_at(box.lo);
        st.init = true;
    }
    if (box.lo == box.hi)  // rational root (degree-1 base)
        return interval_from_mpq_pair(box.lo, box.hi, std::max<long>(bits, 64));

    // bisection with exact endpoints; midpoint signs are exact integer
    // arithmetic while the box is wide, certified mpfr enclosures afterwards
    static const int kNum[] = {1, 5, 7, 3};
    static const int kDen[] = {2, 11, 13, 8};
    int cut = 0;
    mpfr_prec_t w = static_cast<mpfr_prec_t>(std::max<long>(2 * bits + 64, 128));
    while (!mpq_box_narrow(st.lo, st.hi, bits)) {
        mpq_class mid = st.lo + (st.hi - st.lo) * kNum[cut] / kDen[cut];
        int s;
        if (!mpq_box_narrow(st.lo, st.hi, 48)) {
            s = f.sign_at(mid);
        } else {
            Interval J = ipoly_eval(f, interval_from_mpq_pair(mid, mid, w), w);
            s = J.sign();
            if (s == 0) {
                // midpoint too close to the root at this precision
                cut = (cut + 1) % 4;
                w *= 2;
                if (w > kMaxPrecisionBits)
                    throw InternalError("refine_root: cannot separate midpoint from root");
                continue;
            }
        }
        if (s == 0) throw InternalError("refine_root: rational point is a root");
        if (s == st.sign_lo)
            st.lo = mid;
        else
            st.hi = mid;
    }
    return interval_from_mpq_pair(st.lo, st.hi, std::max<long>(bits + 32, 64));
}

Interval eval_coords(const FieldTower& T, std::size_t root_idx, const std::vector<int>& signs,
                     const mpq_class* coords, std::size_t k, mpfr_prec_t prec) {
    const FieldTower& B = base_of(T);
    const std::size_t d0 = B.base_degree();
    if (k == 0) {
        if (d0 == 1) return Interval::from_mpq(coords[0], prec);
        long root_bits = static_cast<long>(prec) + static_cast<long>(d0) + 16;
        Interval th = refine_root(B, root_idx, root_bits);
        Interval acc = Interval::from_mpq(coords[d0 - 1], prec);
        for (std::size_t i = d0 - 1; i-- > 0;)
            acc = iadd(imul(acc, th, prec), Interval::from_mpq(coords[i], prec), prec);
        return acc;
    }
    const std::size_t h = d0 << (k - 1);
    Interval v0 = eval_coords(T, root_idx, signs, coords, k - 1, prec);
    if (span_zero(coords + h, h)) return v0;
    // sqrt of the level radicand under this branch
    mpfr_prec_t rp = prec;
    Interval rv(prec);
    for (;;) {
        rv = eval_coords(T, root_idx, signs, T.radicands()[k - 1].coords.data(), k - 1, rp);
        if (rv.sign() > 0) break;
        if (rv.sign() < 0)
            throw InternalError("eval_coords: radicand negative under this embedding");
        rp *= 2;
        if (rp > kMaxPrecisionBits)
            throw InternalError("eval_coords: radicand sign did not resolve");
    }
    Interval s = isqrt(rv, prec);
    if (signs.at(k - 1) < 0) s = ineg(s);
    Interval v1 = eval_coords(T, root_idx, signs, coords + h, k - 1, prec);
    return iadd(v0, imul(s, v1, prec), prec);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// embeddings
// ---------------------------------------------------------------------------

bool RealEmbedding::is_identity() const {
    if (root_index != tower->designated_root()) return false;
    for (int s : signs)
        if (s < 0) return false;
    return true;
}

RealEmbedding identity_embedding(const TowerPtr& tower) {
    return RealEmbedding{tower, tower->designated_root(),
                         std::vector<int>(tower->levels(), 1)};
}

namespace {

void embedding_dfs(const TowerPtr& tower, std::size_t root, std::vector<int>& signs,
                   EmbeddingList& out) {
    const std::size_t t = tower->levels();
    if (signs.size() == t) {
        out.embeddings.push_back(RealEmbedding{tower, root, signs});
        return;
    }
    const std::size_t level = signs.size() + 1;
    mpfr_prec_t prec = start_precision_bits();
    int s = 0;
    for (;;) {
        Interval v = detail::eval_coords(*tower, root, signs,
                                         tower->radicands()[level - 1].coords.data(),
                                         level - 1, prec);
        s = v.sign();
        if (s != 0) break;
        prec *= 2;
        if (prec > kMaxPrecisionBits)
            throw InternalError("real_embeddings: radicand sign did not resolve");
    }
    if (s < 0) {
        if (out.totally_real) {
            std::ostringstream note;
            note << "radicand #" << level << " = " << tower->radicands()[level - 1].expr
                 << " is negative under base root #" << root;
            if (!signs.empty()) {
                note << " with signs (";
                for (std::size_t i = 0; i < signs.size(); ++i)
                    note << (signs[i] > 0 ? '+' : '-');
                note << ")";
            }
            out.failure_note = note.str();
        }
        out.totally_real = false;
        return;
    }
    for (int branch : {1, -1}) {
        signs.push_back(branch);
        embedding_dfs(tower, root, signs, out);
        signs.pop_back();
    }
}

}  // namespace

EmbeddingList real_embeddings(const TowerPtr& tower) {
    EmbeddingList out;
    for (std::size_t j = 0; j < tower->roots().size(); ++j) {
        std::vector<int> signs;
        embedding_dfs(tower, j, signs, out);
    }
    return out;
}

// ---------------------------------------------------------------------------
// signs and evaluation
// ---------------------------------------------------------------------------

Interval eval_embedding(const RealEmbedding& sigma, const FieldElement& a, mpfr_prec_t prec) {
    FieldElement lifted = a.tower()->same_structure(*sigma.tower) ? a : a.lift_to(sigma.tower);
    return detail::eval_coords(*sigma.tower, sigma.root_index, sigma.signs,
                               lifted.coords().data(), sigma.tower->levels(), prec);
}

Interval apply_embedding(const RealEmbedding& sigma, const FieldElement& a,
                         const mpq_class& tol) {
    for (mpfr_prec_t prec = start_precision_bits();; prec *= 2) {
        Interval iv = eval_embedding(sigma, a, prec);
        if (iv.narrower_than(tol)) return iv;
        if (prec > kMaxPrecisionBits)
            throw InternalError("apply_embedding: requested tolerance not reached");
    }
}

int sign_under(const RealEmbedding& sigma, const FieldElement& a) {
    if (a.is_zero()) return 0;  // sigma injective: zero iff coordinates vanish
    for (mpfr_prec_t prec = start_precision_bits();; prec *= 2) {
        Interval iv = eval_embedding(sigma, a, prec);
        int s = iv.sign();
        if (s != 0) return s;
        if (prec > kMaxPrecisionBits)
            throw InternalError("sign_under: interval refinement did not separate from 0");
    }
}

int sign(const FieldElement& a) {
    if (!a.tower()) throw InternalError("sign of detached element");
    if (a.is_zero()) return 0;
    return sign_under(identity_embedding(a.tower()), a);
}

// ---------------------------------------------------------------------------
// minimal polynomials and integrality
// ---------------------------------------------------------------------------

namespace detail {

namespace {

// blocks of a coordinate vector as level-0 components
std::vector<QV> split_blocks(const FieldTower& T, const QV& coords) {
    const std::size_t d0 = base_of(T).base_degree();
    const std::size_t m = coords.size() / d0;
    std::vector<QV> blocks(m, QV(d0));
    for (std::size_t s = 0; s < m; ++s)
        for (std::size_t i = 0; i < d0; ++i) blocks[s][i] = coords[s * d0 + i];
    return blocks;
}

}  // namespace

std::vector<QV> minpoly_over_base(const FieldElement& a) {
    const FieldTower& T = *a.tower();
    const std::size_t d0 = base_of(T).base_degree();
    const std::size_t m = std::size_t{1} << T.levels();
    if (a.base_level_only()) {
        QV c0(d0);
        for (std::size_t i = 0; i < d0; ++i) c0[i] = -a.coords()[i];
        QV one(d0);
        one[0] = 1;
        return {c0, one};
    }
    struct Row {
        std::vector<QV> comps;
        std::vector<QV> rep;  // coefficients over powers of a
        std::size_t col = 0;
    };
    std::vector<Row> pivots;
    QV power(T.dimension());
    power[0] = 1;
    QV zero_l0(d0), one_l0(d0);
    one_l0[0] = 1;
    for (std::size_t s = 0; s <= m; ++s) {
        Row row;
        row.comps = split_blocks(T, power);
        row.rep.assign(s + 1, zero_l0);
        row.rep[s] = one_l0;
        for (const Row& piv : pivots) {
            if (span_zero(row.comps[piv.col].data(), d0)) continue;
            // factor = comp / pivot value
            QV pinv(d0), factor(d0), t(d0);
            inv_level(T, 0, piv.comps[piv.col].data(), pinv.data());
            mul_level(T, 0, row.comps[piv.col].data(), pinv.data(), factor.data());
            for (std::size_t b = 0; b < m; ++b) {
                if (span_zero(piv.comps[b].data(), d0)) continue;
                mul_level(T, 0, factor.data(), piv.comps[b].data(), t.data());
                for (std::size_t i = 0; i < d0; ++i) row.comps[b][i] -= t[i];
            }
            for (std::size_t j = 0; j < piv.rep.size(); ++j) {
                if (span_zero(piv.rep[j].data(), d0)) continue;
                mul_level(T, 0, factor.data(), piv.rep[j].data(), t.data());
                for (std::size_t i = 0; i < d0; ++i) row.rep[j][i] -= t[i];
            }
        }
        bool dependent = true;
        std::size_t col = 0;
        for (std::size_t b = 0; b < m && dependent; ++b)
            if (!span_zero(row.comps[b].data(), d0)) {
                dependent = false;
                col = b;
            }
        if (dependent) {
            // power s is a base-combination of lower powers: monic minpoly
            std::vector<QV> out(s + 1, QV(d0));
            for (std::size_t j = 0; j < s; ++j)
                for (std::size_t i = 0; i < d0; ++i) out[j][i] = -row.rep[j][i];
            out[s] = one_l0;
            return out;
        }
        row.col = col;
        pivots.push_back(std::move(row));
        if (s < m) {
            QV next(T.dimension());
            mul_level(T, T.levels(), power.data(), a.coords().data(), next.data());
            power = std::move(next);
        }
    }
    throw InternalError("minpoly_over_base: no dependency within 2^t powers");
}

mpz_class resultant(const IntPoly& A, const IntPoly& B) {
    if (A.is_zero() || B.is_zero()) return 0;
    const int m = A.degree(), n = B.degree();
    if (n == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), B.leading().get_mpz_t(), static_cast<unsigned long>(m));
        return r;
    }
    if (m == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), A.leading().get_mpz_t(), static_cast<unsigned long>(n));
        return r;
    }
    const int N = m + n;
    std::vector<std::vector<mpz_class>> M(static_cast<std::size_t>(N),
                                          std::vector<mpz_class>(static_cast<std::size_t>(N)));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c <= m; ++c) M[r][r + c] = A.coeff(static_cast<std::size_t>(m - c));
    for (int r = 0; r < m; ++r)
        for (int c = 0; c <= n; ++c) M[n + r][r + c] = B.coeff(static_cast<std::size_t>(n - c));
    // Bareiss fraction-free elimination
    mpz_class prev = 1;
    int sign_flips = 0;
    for (int k = 0; k < N - 1; ++k) {
        if (M[k][k] == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < N; ++r)
                if (M[r][k] != 0) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0) return 0;
            std::swap(M[k], M[swap_row]);
            ++sign_flips;
        }
        for (int r = k + 1; r < N; ++r) {
            for (int c = k + 1; c < N; ++c) {
                M[r][c] = M[r][c] * M[k][k] - M[r][k] * M[k][c];
                mpz_divexact(M[r][c].get_mpz_t(), M[r][c].get_mpz_t(), prev.get_mpz_t());
            }
            M[r][k] = 0;
        }
        prev = M[k][k];
    }
    mpz_class det = M[N - 1][N - 1];
    return (sign_flips % 2) ? mpz_class(-det) : det;
}

IntPoly intpoly_gcd(IntPoly a, IntPoly b) {
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        // pseudo-remainder of a by b, made primitive
        int delta = a.degree() - b.degree();
        mpz_class scale;
        mpz_pow_ui(scale.get_mpz_t(), b.leading().get_mpz_t(),
                   static_cast<unsigned long>(delta + 1));
        std::vector<mpz_class> rem((a * scale).coeffs());
        for (int k = delta; k >= 0; --k) {
            if (rem.size() < b.coeffs().size() + static_cast<std::size_t>(k)) continue;
            mpz_class top = rem[static_cast<std::size_t>(k) + b.coeffs().size() - 1];
            if (top == 0) continue;
            mpz_class q;
            mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), b.leading().get_mpz_t());
            for (std::size_t i = 0; i < b.coeffs().size(); ++i)
                rem[static_cast<std::size_t>(k) + i] -= q * b.coeff(i);
        }
        IntPoly r{std::move(rem)};
        if (r.degree() >= b.degree()) throw InternalError("intpoly_gcd: pseudo-division failed");
        a = std::move(b);
        b = r.primitive_part();
    }
    IntPoly g = a.primitive_part();
    if (!g.is_zero() && g.leading() < 0) g = g * mpz_class(-1);
    return g;
}

IntPoly conjugate_poly(const FieldElement& a) {
    const FieldTower& T = *a.tower();
    const FieldTower& B = base_of(T);
    const std::size_t d0 = B.base_degree();
    std::vector<QV> m = minpoly_over_base(a);
    const std::size_t s = m.size() - 1;
    // clear denominators across all coefficients
    mpz_class D = 1;
    for (const auto& mj : m)
        for (const auto& c : mj) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.get_den_mpz_t());
    std::vector<std::vector<mpz_class>> g(m.size(), std::vector<mpz_class>(d0));
    for (std::size_t j = 0; j < m.size(); ++j)
        for (std::size_t i = 0; i < d0; ++i) {
            mpq_class scaled = m[j][i] * D;
            g[j][i] = scaled.get_num();
        }
    const std::size_t deg = d0 * s;
    // evaluate Res_x(f, sum_j g_j(x) y^j) at integer points and interpolate
    std::vector<mpq_class> xs(deg + 1), ys(deg + 1);
    for (std::size_t pt = 0; pt <= deg; ++pt) {
        long v = static_cast<long>(pt) - static_cast<long>(deg / 2);
        xs[pt] = v;
        std::vector<mpz_class> gv(d0);
        mpz_class vp = 1;
        for (std::size_t j = 0; j < m.size(); ++j) {
            for (std::size_t i = 0; i < d0; ++i) gv[i] += g[j][i] * vp;
            vp *= v;
        }
        ys[pt] = resultant(B.base_poly(), IntPoly{std::move(gv)});
    }
    // Newton divided differences, expanded to coefficients
    std::vector<mpq_class> dd = ys;
    for (std::size_t lvl = 1; lvl <= deg; ++lvl)
        for (std::size_t i = deg; i >= lvl; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - lvl]);
    std::vector<mpq_class> poly(deg + 1);
    std::vector<mpq_class> basis{1};  // prod_{j<i} (y - xs[j])
    for (std::size_t i = 0; i <= deg; ++i) {
        if (dd[i] != 0)
            for (std::size_t j = 0; j < basis.size(); ++j) poly[j] += dd[i] * basis[j];
        if (i < deg) {
            std::vector<mpq_class> nb(basis.size() + 1);
            for (std::size_t j = 0; j < basis.size(); ++j) {
                nb[j + 1] += basis[j];
                nb[j] -= xs[i] * basis[j];
            }
            basis = std::move(nb);
        }
    }
    std::vector<mpz_class> zc(deg + 1);
    for (std::size_t i = 0; i <= deg; ++i) {
        if (poly[i].get_den() != 1)
            throw InternalError("conjugate_poly: interpolation not integral");
        zc[i] = poly[i].get_num();
    }
    IntPoly F{std::move(zc)};
    if (F.is_zero()) throw InternalError("conjugate_poly: zero result");
    if (F.leading() < 0) F = F * mpz_class(-1);
    return F;
}

bool base_automorphism_fixes(const FieldTower& base, unsigned long ell,
                             const std::vector<mpz_class>& A) {
    if (ell == 1) return true;
    const std::size_t d0 = base.base_degree();
    if (d0 == 1) return true;
    const IntPoly& f = base.base_poly();

    auto good_prime = [&](std::uint64_t p) -> std::optional<modp::FpPoly> {
        modp::FpPoly fp = modp::fp_from_mpz(f.coeffs(), p);
        if (modp::fp_deg(fp) != static_cast<int>(d0)) return std::nullopt;
        modp::FpPoly der(fp.size() - 1);
        for (std::size_t i = 1; i < fp.size(); ++i)
            der[i - 1] = modp::mulmod_u(fp[i], i % p, p);
        modp::fp_trim(der);
        if (!modp::fp_is_one(modp::fp_gcd(fp, der, p))) return std::nullopt;
        return fp;
    };
    auto compose = [&](std::uint64_t p, const modp::FpPoly& fp) -> modp::FpPoly {
        // psi = 2*T_ell(x/2) mod (f, p) by the Chebyshev-style recurrence
        modp::FpPoly prev{2 % p}, cur{0, 1};
        for (unsigned long j = 1; j < ell; ++j) {
            modp::FpPoly next = modp::fp_mulmod(cur, modp::FpPoly{0, 1}, fp, p);
            next = modp::fp_sub(next, prev, p);
            prev = std::move(cur);
            cur = std::move(next);
        }
        // Horner composition of A over psi
        modp::FpPoly res{};
        for (std::size_t i = d0; i-- > 0;) {
            res = modp::fp_mulmod(res, cur, fp, p);
            mpz_class c;
            mpz_mod_ui(c.get_mpz_t(), A[i].get_mpz_t(), p);
            res = modp::fp_add(res, modp::FpPoly{c.get_ui()}, p);
        }
        return res;
    };
    auto reduce_A = [&](std::uint64_t p) {
        modp::FpPoly r(d0);
        mpz_class c;
        for (std::size_t i = 0; i < d0; ++i) {
            mpz_mod_ui(c.get_mpz_t(), A[i].get_mpz_t(), p);
            r[i] = c.get_ui();
        }
        modp::fp_trim(r);
        return r;
    };

    std::uint64_t p = (1ULL << 30);
    auto next_prime = [&]() {
        mpz_class t(static_cast<unsigned long>(p));
        mpz_nextprime(t.get_mpz_t(), t.get_mpz_t());
        p = t.get_ui();
        return p;
    };

    // quick filter at one prime
    for (;;) {
        next_prime();
        auto fp = good_prime(p);
        if (!fp) continue;
        if (compose(p, *fp) != reduce_A(p)) return false;
        break;
    }

    // exact confirmation: CRT the composed coordinates up to a proven bound
    mpz_class S = 0, pow2 = 1;
    for (std::size_t i = 0; i < d0; ++i) {
        S += abs(A[i]) * pow2;
        pow2 *= 2;
    }
    // |coords(sigma(b))| <= d0 * 3^(d0-1) * S / min_j |f'(theta_j)|
    TowerCache& C = base.cache();
    long fpmin_exp;
    {
        std::lock_guard<std::mutex> lock(C.mu);
        fpmin_exp = C.fpmin_set ? C.fpmin_exp : LONG_MIN;
    }
    if (fpmin_exp == LONG_MIN) {
        IntPoly fd = f.derivative();
        long min_exp = LONG_MAX;
        for (std::size_t j = 0; j < base.roots().size(); ++j) {
            for (mpfr_prec_t prec = 128;; prec *= 2) {
                Interval rt = refine_root(base, j, static_cast<long>(prec));
                Interval v = ipoly_eval(fd, rt, prec);
                if (!v.contains_zero()) {
                    mpfr_t amin;
                    mpfr_init2(amin, 64);
                    if (v.sign() > 0)
                        mpfr_set(amin, v.lo(), MPFR_RNDD);
                    else {
                        mpfr_neg(amin, v.hi(), MPFR_RNDD);
                    }
                    long e = static_cast<long>(mpfr_get_exp(amin)) - 1;
                    mpfr_clear(amin);
                    min_exp = std::min(min_exp, e);
                    break;
                }
                if (prec > kMaxPrecisionBits)
                    throw InternalError("derivative bound refinement failed");
            }
        }
        fpmin_exp = min_exp;
        std::lock_guard<std::mutex> lock(C.mu);
        C.fpmin_set = true;
        C.fpmin_exp = fpmin_exp;
    }
    mpz_class M = S * static_cast<unsigned long>(d0);
    mpz_class three_pow;
    mpz_ui_pow_ui(three_pow.get_mpz_t(), 3, static_cast<unsigned long>(d0 - 1));
    M *= three_pow;
    if (fpmin_exp > 0)
        mpz_fdiv_q_2exp(M.get_mpz_t(), M.get_mpz_t(), static_cast<mp_bitcnt_t>(fpmin_exp));
    else
        mpz_mul_2exp(M.get_mpz_t(), M.get_mpz_t(), static_cast<mp_bitcnt_t>(-fpmin_exp));
    M += 1;

    mpz_class target = 2 * M + 1;
    std::vector<mpz_class> X(d0);  // CRT accumulator
    mpz_class Mod = 1;
    while (Mod <= target) {
        next_prime();
        auto fp = good_prime(p);
        if (!fp) continue;
        modp::FpPoly comp = compose(p, *fp);
        comp.resize(d0, 0);
        mpz_class pz(static_cast<unsigned long>(p));
        if (Mod == 1) {
            for (std::size_t i = 0; i < d0; ++i) X[i] = comp[i];
            Mod = pz;
            continue;
        }
        mpz_class minv;
        if (mpz_invert(minv.get_mpz_t(), Mod.get_mpz_t(), pz.get_mpz_t()) == 0)
            throw InternalError("CRT inverse failed");
        for (std::size_t i = 0; i < d0; ++i) {
            mpz_class delta = (mpz_class(comp[i]) - X[i]) % pz;
            if (delta < 0) delta += pz;
            delta = (delta * minv) % pz;
            X[i] += Mod * delta;
        }
        Mod *= pz;
    }
    mpz_class half = Mod / 2;
    for (std::size_t i = 0; i < d0; ++i) {
        mpz_class v = X[i] % Mod;
        if (v < 0) v += Mod;
        if (v > half) v -= Mod;
        if (v != A[i]) return false;
    }
    return true;
}

}  // namespace detail

bool is_algebraic_integer(const FieldElement& a) {
    if (!a.tower()) throw InternalError("is_algebraic_integer on detached element");
    if (a.is_zero()) return true;
    // minimal polynomial over the base field; integral iff all coefficients
    // lie in Z[theta], i.e. have integer coordinates (the base is a
    // cyclotomic-real field, whose maximal order is exactly Z[theta])
    auto coeffs = detail::minpoly_over_base(a);
    for (const auto& c : coeffs)
        for (const auto& q : c)
            if (q.get_den() != 1) return false;
    return true;
}

namespace {

long mahler_sep_exponent(const IntPoly& W) {
    const int d = W.degree();
    if (d < 2) return 0;
    mpz_class s = 0;
    for (const auto& c : W.coeffs()) s += c * c;
    double norm_bits = static_cast<double>(mpz_sizeinbase(s.get_mpz_t(), 2)) / 2.0 + 1.0;
    double e = 0.5 * std::log2(3.0) - (d + 2) / 2.0 * std::log2(static_cast<double>(d)) -
               (d - 1) * norm_bits;
    return static_cast<long>(std::floor(e)) - 4;
}

mpq_class tol_2exp(long bits) {
    mpq_class t(1);
    mpz_mul_2exp(t.get_den_mpz_t(), t.get_den_mpz_t(), static_cast<mp_bitcnt_t>(bits));
    return t;
}

}  // namespace

bool embedding_fixes(const RealEmbedding& sigma, const FieldElement& a) {
    if (!a.tower()) throw InternalError("embedding_fixes on detached element");
    FieldElement x = a.tower()->same_structure(*sigma.tower) ? a : a.lift_to(sigma.tower);
    if (x.is_zero() || x.as_rational()) return true;
    if (sigma.is_identity()) return true;
    const FieldTower& T = *sigma.tower;
    const std::size_t d0 = T.base_degree();
    if (sigma.root_index == T.designated_root()) {
        // base field fixed pointwise; sigma flips exactly the basis products
        // whose subset meets a negative level, so equality is a support check
        std::size_t flip_mask = 0;
        for (std::size_t i = 0; i < sigma.signs.size(); ++i)
            if (sigma.signs[i] < 0) flip_mask |= (std::size_t{1} << i);
        const std::size_t blocks = x.coords().size() / d0;
        for (std::size_t s = 0; s < blocks; ++s) {
            if ((s & flip_mask) == 0) continue;
            if (!detail::span_zero(x.coords().data() + s * d0, d0)) return false;
        }
        return true;
    }
    if (x.base_level_only()) {
        mpz_class den = 1;
        for (std::size_t i = 0; i < d0; ++i)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.coords()[i].get_den_mpz_t());
        std::vector<mpz_class> A(d0);
        for (std::size_t i = 0; i < d0; ++i) {
            mpq_class scaled = x.coords()[i] * den;
            A[i] = scaled.get_num();
        }
        return detail::base_automorphism_fixes(detail::base_of(T),
                                               T.roots()[sigma.root_index].ell, A);
    }
    // generic: interval separation, falling back to a certified root gap
    RealEmbedding id = identity_embedding(sigma.tower);
    for (mpfr_prec_t prec = start_precision_bits(); prec <= 1024; prec *= 2) {
        Interval ia = eval_embedding(id, x, prec);
        Interval is = eval_embedding(sigma, x, prec);
        if (!ia.overlaps(is)) return false;
    }
    IntPoly F = detail::conjugate_poly(x);
    IntPoly W = F.divide_exact(detail::intpoly_gcd(F, F.derivative())).primitive_part();
    long sep_exp = mahler_sep_exponent(W);
    mpq_class tol = tol_2exp(-sep_exp + 3);
    Interval ia = apply_embedding(id, x, tol);
    Interval is = apply_embedding(sigma, x, tol);
    // both values are roots of the squarefree W; distinct roots are at least
    // 2^sep_exp apart while each enclosure is far narrower
    return ia.overlaps(is);
}

std::vector<mpq_class> min_poly_over_q(const FieldElement& a) {
    if (!a.tower()) throw InternalError("min_poly_over_q on detached element");
    if (auto r = a.as_rational()) return {-*r, 1};
    IntPoly F = detail::conjugate_poly(a);
    IntPoly W = F.divide_exact(detail::intpoly_gcd(F, F.derivative())).primitive_part();
    std::vector<mpq_class> out(W.coeffs().size());
    mpq_class lead(W.leading());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = mpq_class(W.coeff(i)) / lead;
    }
    return out;
}

}  // namespace vinberg
