#include "vinberg/exactlin.hpp"

#include "vinberg/errors.hpp"

namespace vinberg {

SymMatrix::SymMatrix(TowerPtr tower, std::size_t dim)
    : tower_(std::move(tower)), dim_(dim),
      upper_(dim * (dim + 1) / 2, FieldElement::zero(tower_)) {}

SymMatrix::SymMatrix(const SymMatrix& o) : tower_(o.tower_), dim_(o.dim_), upper_(o.upper_) {
    std::lock_guard<std::mutex> lock(o.mu_);
    charpoly_ = o.charpoly_;
}

SymMatrix::SymMatrix(SymMatrix&& o) noexcept
    : tower_(std::move(o.tower_)), dim_(o.dim_), upper_(std::move(o.upper_)),
      charpoly_(std::move(o.charpoly_)) {}

SymMatrix& SymMatrix::operator=(const SymMatrix& o) {
    if (this != &o) {
        std::scoped_lock lock(mu_, o.mu_);
        tower_ = o.tower_;
        dim_ = o.dim_;
        upper_ = o.upper_;
        charpoly_ = o.charpoly_;
    }
    return *this;
}

SymMatrix& SymMatrix::operator=(SymMatrix&& o) noexcept {
    if (this != &o) {
        tower_ = std::move(o.tower_);
        dim_ = o.dim_;
        upper_ = std::move(o.upper_);
        charpoly_ = std::move(o.charpoly_);
    }
    return *this;
}

std::size_t SymMatrix::idx(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    // row-major upper triangle
    return i * dim_ - i * (i + 1) / 2 + j;
}

const FieldElement& SymMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= dim_ || j >= dim_) throw InternalError("SymMatrix::at out of range");
    return upper_[idx(i, j)];
}

void SymMatrix::set(std::size_t i, std::size_t j, FieldElement v) {
    if (i >= dim_ || j >= dim_) throw InternalError("SymMatrix::set out of range");
    {
        std::lock_guard<std::mutex> lock(mu_);
        charpoly_.reset();
    }
    upper_[idx(i, j)] = v.tower()->same_structure(*tower_) ? std::move(v) : v.lift_to(tower_);
}

const std::vector<FieldElement>& SymMatrix::charpoly() const {
    std::lock_guard<std::mutex> lock(mu_);
    if (!charpoly_) charpoly_ = vinberg::charpoly(*this);
    return *charpoly_;
}

// det(lambda I - M) by dynamic programming over column subsets: the minor on
// the first |S| rows and columns S expands along its last row. Entries are
// degree <= 1 in lambda, with the diagonal contributing shift-and-subtract
// only, so the work stays proportional to the nonzero off-diagonal support.
std::vector<FieldElement> charpoly(const SymMatrix& m) {
    const std::size_t n = m.dim();
    const TowerPtr& T = m.tower();
    using Poly = std::vector<FieldElement>;  // lambda coefficients, lowest first
    const FieldElement zero = FieldElement::zero(T);
    if (n == 0) return {FieldElement::one(T)};

    std::vector<Poly> minor(std::size_t{1} << n);
    minor[0] = {FieldElement::one(T)};
    std::vector<std::vector<std::size_t>> by_popcount(n + 1);
    for (std::size_t s = 1; s < minor.size(); ++s)
        by_popcount[static_cast<std::size_t>(__builtin_popcountll(s))].push_back(s);

    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t row = k - 1;
        for (std::size_t s : by_popcount[k]) {
            Poly acc;
            int col_pos = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (!(s & (std::size_t{1} << j))) continue;
                const std::size_t sub = s & ~(std::size_t{1} << j);
                const Poly& base = minor[sub];
                const bool negate = ((k - 1 - static_cast<std::size_t>(col_pos)) % 2) != 0;
                ++col_pos;
                if (base.empty()) continue;
                Poly term;
                if (j == row) {
                    // (lambda - m_jj) * base
                    term.assign(base.size() + 1, zero);
                    const FieldElement& d = m.at(row, row);
                    for (std::size_t t = 0; t < base.size(); ++t) {
                        term[t + 1] = term[t + 1] + base[t];
                        if (!d.is_zero()) term[t] = term[t] - d * base[t];
                    }
                } else {
                    const FieldElement& e = m.at(row, j);
                    if (e.is_zero()) continue;
                    term.assign(base.size(), zero);
                    FieldElement ne = -e;
                    for (std::size_t t = 0; t < base.size(); ++t) {
                        if (base[t].is_zero()) continue;
                        term[t] = ne * base[t];
                    }
                }
                if (negate)
                    for (auto& c : term) c = -c;
                if (acc.size() < term.size()) acc.resize(term.size(), zero);
                for (std::size_t t = 0; t < term.size(); ++t) acc[t] = acc[t] + term[t];
            }
            if (acc.empty()) acc.assign(1, zero);
            minor[s] = std::move(acc);
        }
        // free the previous layer
        if (k >= 2)
            for (std::size_t s : by_popcount[k - 1]) minor[s].clear();
    }
    Poly out = std::move(minor[(std::size_t{1} << n) - 1]);
    out.resize(n + 1, zero);
    return out;
}

namespace {

Signature signature_from_signs(const std::vector<int>& signs, std::size_t dim) {
    // signs: per-coefficient signs of the monic charpoly, lowest first
    std::size_t r = 0;
    while (r < dim && signs[r] == 0) ++r;
    // Descartes on p(lambda)/lambda^r: positive roots = sign changes
    std::size_t pos = 0;
    int last = 0;
    for (std::size_t i = r; i < signs.size(); ++i) {
        if (signs[i] == 0) continue;
        if (last != 0 && signs[i] != last) ++pos;
        last = signs[i];
    }
    return Signature{pos, dim - r - pos, r};
}

}  // namespace

Signature signature(const SymMatrix& m) {
    const auto& cp = m.charpoly();
    std::vector<int> signs(cp.size());
    for (std::size_t i = 0; i < cp.size(); ++i) signs[i] = sign(cp[i]);
    return signature_from_signs(signs, m.dim());
}

Signature signature_under(const SymMatrix& m, const RealEmbedding& sigma) {
    const auto& cp = m.charpoly();
    std::vector<int> signs(cp.size());
    for (std::size_t i = 0; i < cp.size(); ++i) signs[i] = sign_under(sigma, cp[i]);
    return signature_from_signs(signs, m.dim());
}

PsdResult is_psd(const SymMatrix& m, const RealEmbedding& sigma) {
    Signature s = signature_under(m, sigma);
    return PsdResult{s.q == 0, s};
}

}  // namespace vinberg
