#include "vinberg/algfield.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "algfield_internal.hpp"
#include "vinberg/config.hpp"
#include "vinberg/errors.hpp"
#include "vinberg/modpoly.hpp"

namespace vinberg {

using detail::QV;

// ---------------------------------------------------------------------------
// kernels
// ---------------------------------------------------------------------------

namespace detail {

bool span_zero(const mpq_class* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != 0) return false;
    return true;
}

const FieldTower& base_of(const FieldTower& T) {
    const FieldTower* t = &T;
    while (t->parent()) t = t->parent().get();
    return *t;
}

namespace {

// level-0 product: integer-normalized convolution reduced by the table of
// theta powers, one rational canonicalization per output coordinate
void mul_l0(const FieldTower& T, const mpq_class* a, const mpq_class* b, mpq_class* out) {
    const std::size_t d = base_of(T).base_degree();
    if (d == 1) {
        out[0] = a[0] * b[0];
        return;
    }
    mpz_class den_a = 1, den_b = 1;
    for (std::size_t i = 0; i < d; ++i) {
        mpz_lcm(den_a.get_mpz_t(), den_a.get_mpz_t(), a[i].get_den_mpz_t());
        mpz_lcm(den_b.get_mpz_t(), den_b.get_mpz_t(), b[i].get_den_mpz_t());
    }
    std::vector<mpz_class> A(d), B(d);
    mpz_class t;
    for (std::size_t i = 0; i < d; ++i) {
        mpz_divexact(t.get_mpz_t(), den_a.get_mpz_t(), a[i].get_den_mpz_t());
        A[i] = a[i].get_num() * t;
        mpz_divexact(t.get_mpz_t(), den_b.get_mpz_t(), b[i].get_den_mpz_t());
        B[i] = b[i].get_num() * t;
    }
    std::vector<mpz_class> conv(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
        if (A[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (B[j] == 0) continue;
            conv[i + j] += A[i] * B[j];
        }
    }
    const auto& red = base_of(T).reduction_table();
    for (std::size_t j = d - 1; j-- > 0;) {
        // fold conv[d + j] onto lower coefficients
        mpz_class& top = conv[d + j];
        if (top == 0) continue;
        const auto& row = red[j];
        for (std::size_t i = 0; i < d; ++i)
            if (row[i] != 0) conv[i] += top * row[i];
        top = 0;
    }
    mpz_class den = den_a * den_b;
    for (std::size_t i = 0; i < d; ++i) {
        out[i] = mpq_class(conv[i], den);
        out[i].canonicalize();
    }
}

}  // namespace

void mul_level(const FieldTower& T, std::size_t k, const mpq_class* a, const mpq_class* b,
               mpq_class* out) {
    if (k == 0) {
        mul_l0(T, a, b, out);
        return;
    }
    const std::size_t h = base_of(T).base_degree() << (k - 1);
    const mpq_class *a0 = a, *a1 = a + h, *b0 = b, *b1 = b + h;
    const bool a1z = span_zero(a1, h), b1z = span_zero(b1, h);
    const bool a0z = span_zero(a0, h), b0z = span_zero(b0, h);
    QV p(h), q(h);
    // low half: a0*b0 + (a1*b1)*r_k
    if (a0z || b0z) {
        std::fill(out, out + h, mpq_class(0));
    } else {
        mul_level(T, k - 1, a0, b0, out);
    }
    if (!a1z && !b1z) {
        mul_level(T, k - 1, a1, b1, p.data());
        mul_level(T, k - 1, p.data(), T.radicands()[k - 1].coords.data(), q.data());
        for (std::size_t i = 0; i < h; ++i) out[i] += q[i];
    }
    // high half: a0*b1 + a1*b0
    if (a0z || b1z) {
        std::fill(out + h, out + 2 * h, mpq_class(0));
    } else {
        mul_level(T, k - 1, a0, b1, out + h);
    }
    if (!a1z && !b0z) {
        mul_level(T, k - 1, a1, b0, p.data());
        for (std::size_t i = 0; i < h; ++i) out[h + i] += p[i];
    }
}

QV mul_vec(const FieldTower& T, const QV& a, const QV& b) {
    QV out(T.dimension());
    mul_level(T, T.levels(), a.data(), b.data(), out.data());
    return out;
}

namespace {

// rational-coefficient polynomial helpers for the level-0 inverse
using QP = std::vector<mpq_class>;  // trimmed, lowest first

void qp_trim(QP& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// divide r2 and u2 by the content of r2 to keep growth down
void qp_normalize_pair(QP& r, QP& u) {
    if (r.empty()) return;
    mpz_class g = 0, l = 1;
    for (const auto& c : r) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    if (g == 0) return;
    mpq_class scale(l, g);
    scale.canonicalize();
    for (auto& c : r) c *= scale;
    for (auto& c : u) c *= scale;
}

void l0_inv(const FieldTower& T, const mpq_class* a, mpq_class* out) {
    const std::size_t d = base_of(T).base_degree();
    if (d == 1) {
        if (a[0] == 0) throw InternalError("l0_inv of zero");
        out[0] = 1 / a[0];
        return;
    }
    const IntPoly& f = base_of(T).base_poly();
    QP r0(f.coeffs().begin(), f.coeffs().end());
    QP r1(a, a + d);
    qp_trim(r1);
    if (r1.empty()) throw InternalError("l0_inv of zero");
    QP u0, u1{1};
    while (r1.size() > 1) {
        // r0 = q*r1 + r2
        QP rem = r0;
        QP q(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0);
        while (rem.size() >= r1.size() && !rem.empty()) {
            mpq_class c = rem.back() / r1.back();
            std::size_t shift = rem.size() - r1.size();
            q[shift] = c;
            for (std::size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
            qp_trim(rem);
        }
        QP u2 = u0;
        u2.resize(std::max(u2.size(), q.size() + u1.size() - (q.empty() ? 0 : 1)));
        if (!q.empty() && !u1.empty()) {
            for (std::size_t i = 0; i < q.size(); ++i) {
                if (q[i] == 0) continue;
                for (std::size_t j = 0; j < u1.size(); ++j) u2[i + j] -= q[i] * u1[j];
            }
        }
        qp_trim(u2);
        qp_normalize_pair(rem, u2);
        r0 = std::move(r1);
        u0 = std::move(u1);
        r1 = std::move(rem);
        u1 = std::move(u2);
        if (r1.empty()) throw InternalError("l0_inv: gcd with base polynomial nontrivial");
    }
    // r1 is a nonzero constant: inverse = u1 / r1[0]
    mpq_class inv_c = 1 / r1[0];
    std::fill(out, out + d, mpq_class(0));
    for (std::size_t i = 0; i < u1.size() && i < d; ++i) out[i] = u1[i] * inv_c;
    if (u1.size() > d) throw InternalError("l0_inv: cofactor degree too large");
}

}  // namespace

void inv_level(const FieldTower& T, std::size_t k, const mpq_class* a, mpq_class* out) {
    if (k == 0) {
        l0_inv(T, a, out);
        return;
    }
    const std::size_t h = base_of(T).base_degree() << (k - 1);
    const mpq_class *a0 = a, *a1 = a + h;
    if (span_zero(a1, h)) {
        inv_level(T, k - 1, a0, out);
        std::fill(out + h, out + 2 * h, mpq_class(0));
        return;
    }
    // (a0 + a1 s)^-1 = (a0 - a1 s) / (a0^2 - a1^2 r)
    QV sq0(h), sq1(h), t(h), n(h);
    if (span_zero(a0, h)) {
        std::fill(sq0.begin(), sq0.end(), mpq_class(0));
    } else {
        mul_level(T, k - 1, a0, a0, sq0.data());
    }
    mul_level(T, k - 1, a1, a1, sq1.data());
    mul_level(T, k - 1, sq1.data(), T.radicands()[k - 1].coords.data(), t.data());
    for (std::size_t i = 0; i < h; ++i) n[i] = sq0[i] - t[i];
    if (span_zero(n.data(), h))
        throw InternalError("inv_level: radicand turned out to be a square");
    QV ninv(h);
    inv_level(T, k - 1, n.data(), ninv.data());
    mul_level(T, k - 1, a0, ninv.data(), out);
    QV hi(h);
    mul_level(T, k - 1, a1, ninv.data(), hi.data());
    for (std::size_t i = 0; i < h; ++i) out[h + i] = -hi[i];
}

}  // namespace detail

// ---------------------------------------------------------------------------
// tower construction
// ---------------------------------------------------------------------------

namespace {

mpq_class mpq_from_mpfr(const mpfr_t x) {
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    mpq_class q(m);
    if (e > 0)
        mpz_mul_2exp(q.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    else if (e < 0)
        mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    q.canonicalize();
    return q;
}

std::vector<std::vector<mpz_class>> build_reduction_table(const IntPoly& f) {
    const std::size_t d = static_cast<std::size_t>(f.degree());
    std::vector<std::vector<mpz_class>> table;
    if (d <= 1) return table;
    table.resize(d - 1, std::vector<mpz_class>(d));
    for (std::size_t i = 0; i < d; ++i) table[0][i] = -f.coeff(i);
    for (std::size_t j = 1; j + 1 < d; ++j) {
        const auto& prev = table[j - 1];
        auto& row = table[j];
        // theta * prev, folding the overflow onto row 0
        const mpz_class& top = prev[d - 1];
        for (std::size_t i = d; i-- > 1;) row[i] = prev[i - 1];
        row[0] = 0;
        if (top != 0)
            for (std::size_t i = 0; i < d; ++i) row[i] += top * table[0][i];
    }
    return table;
}

}  // namespace

FieldTower::~FieldTower() = default;

TowerPtr FieldTower::cyclotomic_real(unsigned long N) {
    if (N == 0) throw DomainError("tower conductor must be positive");
    auto t = std::shared_ptr<FieldTower>(new FieldTower());
    t->conductor_ = N;
    t->base_poly_ = min_poly_two_cos(N);
    t->red_table_ = build_reduction_table(t->base_poly_);
    t->cache_ = std::make_unique<TowerCache>();
    const std::size_t d = t->base_degree();
    if (d == 1) {
        mpq_class root(-t->base_poly_.coeff(0));
        t->roots_.push_back({root, root, 1});
        t->designated_root_ = 0;
        return t;
    }
    std::vector<unsigned long> ells;
    for (unsigned long l = 1; 2 * l < N; ++l)
        if (std::gcd(l, N) == 1) ells.push_back(l);
    if (ells.size() != d)
        throw InternalError("cyclotomic_real: root count mismatch");
    // ascending roots correspond to descending ell (cos decreasing on (0, pi))
    std::vector<unsigned long> by_root(ells.rbegin(), ells.rend());
    for (mpfr_prec_t prec = 96;; prec *= 2) {
        if (prec > kMaxPrecisionBits) throw InternalError("root isolation did not converge");
        std::vector<Interval> vals;
        vals.reserve(d);
        bool disjoint = true;
        for (std::size_t i = 0; i < d; ++i) {
            mpq_class frac(2 * by_root[i], N);
            frac.canonicalize();
            Interval c = icos_pi_frac(frac, prec);
            vals.push_back(iadd(c, c, prec));  // 2cos
            if (i > 0 && !(mpfr_less_p(vals[i - 1].hi(), vals[i].lo()))) {
                disjoint = false;
                break;
            }
        }
        if (!disjoint) continue;
        std::vector<mpq_class> seps(d + 1);
        seps[0] = -2;
        seps[d] = 2;
        for (std::size_t i = 1; i < d; ++i) {
            mpfr_t mid;
            mpfr_init2(mid, prec);
            mpfr_add(mid, vals[i - 1].hi(), vals[i].lo(), MPFR_RNDN);
            mpfr_div_2si(mid, mid, 1, MPFR_RNDN);
            seps[i] = mpq_from_mpfr(mid);
            mpfr_clear(mid);
        }
        bool ok = true;
        int prev_sign = t->base_poly_.sign_at(seps[0]);
        if (prev_sign == 0) ok = false;
        for (std::size_t i = 1; ok && i <= d; ++i) {
            int s = t->base_poly_.sign_at(seps[i]);
            if (s == 0 || s == prev_sign) ok = false;
            prev_sign = s;
        }
        if (!ok) continue;
        // sign alternation at d+1 points certifies exactly one root per gap,
        // hence all roots real and box i holds the i-th smallest root
        for (std::size_t i = 0; i < d; ++i)
            t->roots_.push_back({seps[i], seps[i + 1], by_root[i]});
        break;
    }
    t->designated_root_ = d - 1;
    if (t->roots_[t->designated_root_].ell != 1)
        throw InternalError("cyclotomic_real: designated root is not ell = 1");
    return t;
}

TowerPtr FieldTower::extend(const FieldElement& radicand, std::string expr) const {
    if (!radicand.tower() || !radicand.tower()->same_structure(*this))
        throw InternalError("extend: radicand not expressed over this tower");
    if (vinberg::sign(radicand) <= 0)
        throw NonRealRadicand("radicand must be positive at the designated embedding");
    auto t = std::shared_ptr<FieldTower>(new FieldTower());
    t->conductor_ = conductor_;
    t->base_poly_ = base_poly_;
    t->roots_ = roots_;
    t->designated_root_ = designated_root_;
    t->radicands_ = radicands_;
    t->radicands_.push_back(Radicand{radicand.coords(), std::move(expr)});
    t->parent_ = shared_from_this();
    t->red_table_ = red_table_;
    t->cache_ = std::make_unique<TowerCache>();
    return t;
}

TowerPtr FieldTower::make(unsigned long N, const std::vector<FieldElement>& radicands) {
    TowerPtr cur = cyclotomic_real(N);
    for (const auto& r : radicands) {
        if (!r.tower()) throw InternalError("make: detached radicand");
        FieldElement lifted = r.lift_to(cur);
        if (vinberg::sign(lifted) <= 0)
            throw NonRealRadicand("make_tower: radicand " + lifted.to_expr() +
                                  " is not positive");
        if (exact_sqrt(lifted)) continue;  // already a square: absorb
        cur = cur->extend(lifted, "(" + lifted.to_expr() + ")");
    }
    return cur;
}

bool FieldTower::same_structure(const FieldTower& o) const {
    if (this == &o) return true;
    if (conductor_ != o.conductor_ || radicands_.size() != o.radicands_.size()) return false;
    for (std::size_t i = 0; i < radicands_.size(); ++i)
        if (radicands_[i].coords != o.radicands_[i].coords) return false;
    return true;
}

bool FieldTower::is_prefix_of(const FieldTower& o) const {
    if (conductor_ != o.conductor_ || radicands_.size() > o.radicands_.size()) return false;
    for (std::size_t i = 0; i < radicands_.size(); ++i)
        if (radicands_[i].coords != o.radicands_[i].coords) return false;
    return true;
}

// ---------------------------------------------------------------------------
// elements
// ---------------------------------------------------------------------------

FieldElement::FieldElement(TowerPtr tower, std::vector<mpq_class> coords)
    : tower_(std::move(tower)), coords_(std::move(coords)) {
    if (coords_.size() != tower_->dimension())
        throw InternalError("FieldElement: coordinate length mismatch");
}

FieldElement FieldElement::zero(const TowerPtr& t) {
    return FieldElement(t, std::vector<mpq_class>(t->dimension()));
}

FieldElement FieldElement::one(const TowerPtr& t) { return rational(t, 1); }

FieldElement FieldElement::rational(const TowerPtr& t, const mpq_class& v) {
    std::vector<mpq_class> c(t->dimension());
    c[0] = v;
    return FieldElement(t, std::move(c));
}

bool FieldElement::is_zero() const {
    return detail::span_zero(coords_.data(), coords_.size());
}

std::optional<mpq_class> FieldElement::as_rational() const {
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return std::nullopt;
    return coords_.empty() ? mpq_class(0) : coords_[0];
}

bool FieldElement::base_level_only() const {
    const std::size_t d = tower_->base_degree();
    for (std::size_t i = d; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

FieldElement FieldElement::lift_to(const TowerPtr& bigger) const {
    if (tower_->same_structure(*bigger)) return FieldElement(bigger, coords_);
    if (!tower_->is_prefix_of(*bigger))
        throw InternalError("lift_to: towers are not nested");
    std::vector<mpq_class> c(bigger->dimension());
    std::copy(coords_.begin(), coords_.end(), c.begin());
    return FieldElement(bigger, std::move(c));
}

namespace {

std::pair<FieldElement, FieldElement> align(const FieldElement& a, const FieldElement& b) {
    if (!a.tower() || !b.tower()) throw InternalError("arithmetic on detached element");
    if (a.tower()->same_structure(*b.tower())) return {a, b};
    if (a.tower()->is_prefix_of(*b.tower())) return {a.lift_to(b.tower()), b};
    if (b.tower()->is_prefix_of(*a.tower())) return {a, b.lift_to(a.tower())};
    throw InternalError("arithmetic across unrelated towers");
}

}  // namespace

FieldElement FieldElement::operator-() const {
    std::vector<mpq_class> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
    return FieldElement(tower_, std::move(c));
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    if (tower_ && o.tower_ && tower_->same_structure(*o.tower_)) {
        std::vector<mpq_class> c(coords_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
        return FieldElement(tower_, std::move(c));
    }
    auto [a, b] = align(*this, o);
    return a + b;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    if (tower_ && o.tower_ && tower_->same_structure(*o.tower_)) {
        std::vector<mpq_class> c(coords_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
        return FieldElement(tower_, std::move(c));
    }
    auto [a, b] = align(*this, o);
    return a - b;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    if (tower_ && o.tower_ && tower_->same_structure(*o.tower_)) {
        if (auto r = o.as_rational()) {
            if (*r == 0) return zero(tower_);
            std::vector<mpq_class> c(coords_);
            for (auto& x : c) x *= *r;
            return FieldElement(tower_, std::move(c));
        }
        if (auto r = as_rational()) {
            if (*r == 0) return zero(tower_);
            std::vector<mpq_class> c(o.coords_);
            for (auto& x : c) x *= *r;
            return FieldElement(tower_, std::move(c));
        }
        return FieldElement(tower_, detail::mul_vec(*tower_, coords_, o.coords_));
    }
    auto [a, b] = align(*this, o);
    return a * b;
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    auto [a, b] = align(*this, o);
    return a * b.inverse();
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (auto r = as_rational()) return rational(tower_, 1 / *r);
    std::vector<mpq_class> out(coords_.size());
    detail::inv_level(*tower_, tower_->levels(), coords_.data(), out.data());
    return FieldElement(tower_, std::move(out));
}

bool FieldElement::operator==(const FieldElement& o) const {
    if (!tower_ || !o.tower_) return !tower_ && !o.tower_;
    auto [a, b] = align(*this, o);
    return a.coords() == b.coords();
}

// ---------------------------------------------------------------------------
// expression rendering
// ---------------------------------------------------------------------------

namespace {

std::string rational_expr(const mpq_class& q) {
    std::ostringstream os;
    if (q.get_den() == 1)
        os << q.get_num();
    else
        os << q.get_num() << "/" << q.get_den();
    return os.str();
}

}  // namespace

std::string FieldElement::to_expr() const {
    const std::size_t d = tower_->base_degree();
    const std::size_t blocks = coords_.size() / d;
    std::ostringstream theta;
    theta << "2*cos(pi*2/" << tower_->conductor() << ")";
    std::string theta_s = "(" + theta.str() + ")";
    std::string out;
    for (std::size_t s = 0; s < blocks; ++s) {
        for (std::size_t i = 0; i < d; ++i) {
            const mpq_class& q = coords_[s * d + i];
            if (q == 0) continue;
            mpq_class aq = abs(q);
            std::string term = rational_expr(aq);
            for (std::size_t k = 0; k < i; ++k) term += "*" + theta_s;
            for (std::size_t bit = 0; bit < tower_->levels(); ++bit)
                if (s & (std::size_t{1} << bit))
                    term += "*sqrt(" + tower_->radicands()[bit].expr + ")";
            if (out.empty())
                out = (q < 0 ? "0-" : "") + term;
            else
                out += (q < 0 ? "-" : "+") + term;
        }
    }
    return out.empty() ? "0" : out;
}

std::string FieldElement::decimal(int digits) const {
    if (is_zero()) return "0";
    mpq_class tol(1);
    for (int i = 0; i < digits + 2; ++i) tol /= 10;
    Interval iv = apply_embedding(identity_embedding(tower_), *this, tol);
    return iv.midpoint_string(digits);
}

// ---------------------------------------------------------------------------
// exact square roots
// ---------------------------------------------------------------------------

namespace detail {

namespace {

// rational square root when num and den are both perfect squares
std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
    if (q < 0) return std::nullopt;
    if (mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t())) {
        mpq_class r;
        mpz_sqrt(r.get_num_mpz_t(), q.get_num_mpz_t());
        mpz_sqrt(r.get_den_mpz_t(), q.get_den_mpz_t());
        return r;
    }
    return std::nullopt;
}

// square root of a base-level value by the modular method: residue
// characters certify non-squares, Hensel-lifted Tonelli-Shanks roots with
// exact verification certify squares
std::optional<QV> sqrt_base_modular(const FieldTower& T, const mpq_class* a) {
    const FieldTower& B = base_of(T);
    const std::size_t d = B.base_degree();
    const IntPoly& f = B.base_poly();
    // clear denominators: z^2 = dr^2 * a has integral coordinates and any
    // root z lies in Z[theta] because Z[theta] is the full ring of integers
    mpz_class dr = 1;
    for (std::size_t i = 0; i < d; ++i)
        mpz_lcm(dr.get_mpz_t(), dr.get_mpz_t(), a[i].get_den_mpz_t());
    std::vector<mpz_class> R(d);
    for (std::size_t i = 0; i < d; ++i) {
        mpq_class scaled = a[i] * dr * dr;
        if (scaled.get_den() != 1) throw InternalError("sqrt_base_modular: scaling failed");
        R[i] = scaled.get_num();
    }
    std::vector<mpz_class> fz(f.coeffs());

    std::mt19937_64 rng(0x5eedf00dULL);
    struct Construction {
        std::uint64_t p = 0;
        std::vector<modp::FpPoly> factors;
        std::vector<unsigned long> degrees;
        std::vector<modp::FpPoly> roots;
        std::vector<modp::SqrtLift> lifts;  // one per sign combination
    };
    std::optional<Construction> best;

    std::uint64_t p = 1;
    auto next_prime = [&]() {
        mpz_class t(static_cast<unsigned long>(p));
        mpz_nextprime(t.get_mpz_t(), t.get_mpz_t());
        p = t.get_ui();
        return p;
    };

    modp::ZPoly fzp(fz.begin(), fz.end());
    int primes_scanned = 0;
    for (int round = 0; round < 220; ++round) {
        for (int tries = 0; tries < 2 && primes_scanned < 2000; ++tries) {
            next_prime();
            ++primes_scanned;
            if (p == 2) continue;
            modp::FpPoly fp = modp::fp_from_mpz(fz, p);
            if (modp::fp_deg(fp) != static_cast<int>(d)) continue;
            if (!modp::fp_is_one(modp::fp_gcd(fp, [&] {
                    // derivative mod p
                    modp::FpPoly der(fp.size() - 1);
                    for (std::size_t i = 1; i < fp.size(); ++i)
                        der[i - 1] = modp::mulmod_u(fp[i], i % p, p);
                    modp::fp_trim(der);
                    return der;
                }(), p)))
                continue;  // ramified
            modp::FpPoly Rp = modp::fp_from_mpz(R, p);
            if (!modp::fp_is_one(modp::fp_gcd(Rp, fp, p))) continue;  // zero divisor
            bool residue_everywhere = true;
            auto blocks = modp::fp_ddf(fp, p);
            for (auto& [k, g] : blocks) {
                int chi = modp::fq_block_character(Rp, g, k, p);
                if (chi == 0) {
                    residue_everywhere = false;  // shouldn't happen after gcd
                    break;
                }
                if (chi < 0) return std::nullopt;  // certified non-square
            }
            if (!residue_everywhere) continue;
            // candidate construction prime: count factors
            std::size_t g_count = 0;
            for (auto& [k, g] : blocks) g_count += static_cast<std::size_t>(modp::fp_deg(g)) / k;
            if (!best || g_count < best->factors.size()) {
                Construction c;
                c.p = p;
                for (auto& [k, g] : blocks)
                    for (auto& fi : modp::fp_edf(g, k, p, rng)) {
                        auto s = modp::fq_sqrt(Rp, fi, k, p, rng);
                        if (!s) throw InternalError("sqrt_base_modular: sqrt vanished");
                        c.factors.push_back(fi);
                        c.degrees.push_back(k);
                        c.roots.push_back(*s);
                    }
                best = std::move(c);
            }
        }
        if (best && best->factors.size() <= 16) {
            // lazily create one lift per sign combination (first fixed +)
            modp::FpPoly fp = modp::fp_from_mpz(fz, best->p);
            if (best->lifts.empty()) {
                std::size_t combos = std::size_t{1} << (best->factors.size() - 1);
                for (std::size_t mask = 0; mask < combos; ++mask) {
                    std::vector<modp::FpPoly> residues = best->roots;
                    for (std::size_t i = 1; i < residues.size(); ++i)
                        if (mask & (std::size_t{1} << (i - 1)))
                            for (auto& coef : residues[i])
                                coef = coef ? best->p - coef : 0;
                    modp::FpPoly y0 =
                        modp::fp_crt(residues, best->factors, fp, best->p);
                    modp::ZPoly y0z(y0.begin(), y0.end());
                    best->lifts.emplace_back(std::move(y0z), fzp,
                                             modp::ZPoly(R.begin(), R.end()), best->p);
                }
            }
            for (auto& lift : best->lifts) {
                lift.advance();
                std::vector<mpz_class> z = lift.symmetric_value();
                z.resize(d);
                QV y(d);
                bool ok = true;
                for (std::size_t i = 0; i < d; ++i) {
                    y[i] = mpq_class(z[i], dr);
                    y[i].canonicalize();
                }
                QV square(d);
                mul_l0(T, y.data(), y.data(), square.data());
                for (std::size_t i = 0; i < d && ok; ++i) ok = (square[i] == a[i]);
                if (ok) return y;
            }
        }
    }
    throw InternalError("sqrt_base_modular: no decision after extensive search");
}

}  // namespace

std::optional<QV> sqrt_level(const FieldTower& T, std::size_t k, const mpq_class* a) {
    const std::size_t n = base_of(T).base_degree() << k;
    if (span_zero(a, n)) return QV(n);
    if (k == 0) {
        const std::size_t d = base_of(T).base_degree();
        // rational fast path
        bool rational = true;
        for (std::size_t i = 1; i < d; ++i)
            if (a[i] != 0) rational = false;
        if (rational) {
            if (auto r = rational_sqrt(a[0])) {
                QV out(d);
                out[0] = *r;
                return out;
            }
            if (d == 1) return std::nullopt;
        }
        if (d == 1) return std::nullopt;
        return sqrt_base_modular(T, a);
    }
    const std::size_t h = n / 2;
    const mpq_class *A = a, *B = a + h;
    const mpq_class* rk = T.radicands()[k - 1].coords.data();
    if (span_zero(B, h)) {
        // y in the lower level, or y = v*sqrt(r_k)
        if (auto y0 = sqrt_level(T, k - 1, A)) {
            QV out(n);
            std::copy(y0->begin(), y0->end(), out.begin());
            return out;
        }
        QV rinv(h), q(h);
        inv_level(T, k - 1, rk, rinv.data());
        mul_level(T, k - 1, A, rinv.data(), q.data());
        if (auto y1 = sqrt_level(T, k - 1, q.data())) {
            QV out(n);
            std::copy(y1->begin(), y1->end(), out.begin() + h);
            return out;
        }
        return std::nullopt;
    }
    // y = u + v*sqrt(r_k) with 2uv = B and u^2 + v^2 r_k = A:
    // u^2 = (A ± w)/2 where w^2 = A^2 - B^2 r_k
    QV A2(h), B2(h), t(h), disc(h);
    mul_level(T, k - 1, A, A, A2.data());
    mul_level(T, k - 1, B, B, B2.data());
    mul_level(T, k - 1, B2.data(), rk, t.data());
    for (std::size_t i = 0; i < h; ++i) disc[i] = A2[i] - t[i];
    auto w = sqrt_level(T, k - 1, disc.data());
    if (!w) return std::nullopt;
    for (int sign_w : {1, -1}) {
        QV u2(h);
        for (std::size_t i = 0; i < h; ++i) {
            u2[i] = (A[i] + (sign_w > 0 ? (*w)[i] : -(*w)[i])) / 2;
        }
        if (span_zero(u2.data(), h)) continue;
        auto u = sqrt_level(T, k - 1, u2.data());
        if (!u || span_zero(u->data(), h)) continue;
        // v = B / (2u)
        QV uinv(h), v(h);
        inv_level(T, k - 1, u->data(), uinv.data());
        mul_level(T, k - 1, B, uinv.data(), v.data());
        for (auto& c : v) c /= 2;
        QV cand(n);
        std::copy(u->begin(), u->end(), cand.begin());
        std::copy(v.begin(), v.end(), cand.begin() + h);
        // verify
        QV sq(n);
        mul_level(T, k, cand.data(), cand.data(), sq.data());
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = (sq[i] == a[i]);
        if (ok) return cand;
    }
    return std::nullopt;
}

}  // namespace detail

std::optional<FieldElement> exact_sqrt(const FieldElement& a) {
    if (!a.tower()) throw InternalError("exact_sqrt on detached element");
    if (a.is_zero()) return FieldElement::zero(a.tower());
    if (sign(a) < 0) return std::nullopt;
    auto coords = detail::sqrt_level(*a.tower(), a.tower()->levels(), a.coords().data());
    if (!coords) return std::nullopt;
    FieldElement y(a.tower(), std::move(*coords));
    if (sign(y) < 0) y = -y;
    return y;
}

// ---------------------------------------------------------------------------
// 2cos(2*pi*k/N) in the base level
// ---------------------------------------------------------------------------

FieldElement two_cos_frac(const TowerPtr& tower, long k) {
    const unsigned long N = tower->conductor();
    long kk = k % static_cast<long>(N);
    if (kk < 0) kk += static_cast<long>(N);
    unsigned long u = static_cast<unsigned long>(kk);
    if (2 * u > N) u = N - u;
    const std::size_t d = tower->base_degree();
    if (d == 1) {
        // rational theta (N in {1,2,3,4,6}): run the recurrence on values
        mpq_class root(-tower->base_poly().coeff(0));
        mpq_class prev = 2, cur = root;
        if (u == 0) return FieldElement::rational(tower, 2);
        for (unsigned long j = 1; j < u; ++j) {
            mpq_class next = root * cur - prev;
            prev = cur;
            cur = next;
        }
        return FieldElement::rational(tower, cur);
    }
    // Chebyshev recurrence C_0 = 2, C_1 = theta, C_{j+1} = theta*C_j - C_{j-1}
    const auto& red0 = tower->reduction_table()[0];
    std::vector<mpz_class> prev(d), cur(d);
    prev[0] = 2;
    if (u == 0) {
        std::vector<mpq_class> c(tower->dimension());
        c[0] = 2;
        return FieldElement(tower, std::move(c));
    }
    cur[1 % d] = 1;
    for (unsigned long j = 1; j < u; ++j) {
        std::vector<mpz_class> next(d);
        const mpz_class& top = cur[d - 1];
        for (std::size_t i = d; i-- > 1;) next[i] = cur[i - 1];
        next[0] = 0;
        if (top != 0)
            for (std::size_t i = 0; i < d; ++i) next[i] += top * red0[i];
        for (std::size_t i = 0; i < d; ++i) next[i] -= prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    std::vector<mpq_class> c(tower->dimension());
    for (std::size_t i = 0; i < d; ++i) c[i] = cur[i];
    return FieldElement(tower, std::move(c));
}

}  // namespace vinberg
