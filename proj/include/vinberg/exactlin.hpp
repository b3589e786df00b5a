#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "vinberg/algfield.hpp"

namespace vinberg {

struct Signature {
    std::size_t p = 0, q = 0, r = 0;  // positive, negative, zero eigenvalues
    bool operator==(const Signature&) const = default;
};

// Symmetric matrix over a field tower; all entries exact.
class SymMatrix {
public:
    SymMatrix(TowerPtr tower, std::size_t dim);
    SymMatrix(const SymMatrix& o);
    SymMatrix(SymMatrix&& o) noexcept;
    SymMatrix& operator=(const SymMatrix& o);
    SymMatrix& operator=(SymMatrix&& o) noexcept;
    std::size_t dim() const { return dim_; }
    const TowerPtr& tower() const { return tower_; }
    const FieldElement& at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, FieldElement v);

    // coefficients of det(lambda I - M), lowest degree first, monic; cached
    const std::vector<FieldElement>& charpoly() const;

private:
    std::size_t idx(std::size_t i, std::size_t j) const;
    TowerPtr tower_;
    std::size_t dim_;
    std::vector<FieldElement> upper_;  // row-major upper triangle incl. diagonal
    mutable std::mutex mu_;
    mutable std::optional<std::vector<FieldElement>> charpoly_;
};

std::vector<FieldElement> charpoly(const SymMatrix& m);

// Exact signature: the zero count is the number of vanishing trailing
// coefficients (exact zero tests), the positive count comes from Descartes'
// rule on the remaining coefficients, exact because the eigenvalues of a
// symmetric matrix are all real.
Signature signature(const SymMatrix& m);

// Signature of M^sigma: the same coefficients with signs taken under sigma.
Signature signature_under(const SymMatrix& m, const RealEmbedding& sigma);

struct PsdResult {
    bool psd;
    Signature witness;
};
PsdResult is_psd(const SymMatrix& m, const RealEmbedding& sigma);

}  // namespace vinberg
