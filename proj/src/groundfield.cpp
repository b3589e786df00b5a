#include "vinberg/groundfield.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "vinberg/errors.hpp"

namespace vinberg {

CycleSet cycle_set(const SymMatrix& m) {
    const std::size_t n = m.dim();
    CycleSet out;
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!m.at(i, j).is_zero()) {
                out.edge_pairs.emplace_back(i, j);
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    // BFS spanning forest
    std::vector<std::size_t> parent(n, SIZE_MAX);
    std::vector<std::size_t> depth(n, 0);
    std::vector<bool> seen(n, false);
    std::vector<std::pair<std::size_t, std::size_t>> tree_edges;
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = true;
        std::queue<std::size_t> q;
        q.push(root);
        while (!q.empty()) {
            std::size_t u = q.front();
            q.pop();
            for (std::size_t v : adj[u]) {
                if (seen[v]) continue;
                seen[v] = true;
                parent[v] = u;
                depth[v] = depth[u] + 1;
                tree_edges.emplace_back(std::min(u, v), std::max(u, v));
                q.push(v);
            }
        }
    }
    std::sort(tree_edges.begin(), tree_edges.end());
    for (auto [i, j] : out.edge_pairs) {
        if (std::binary_search(tree_edges.begin(), tree_edges.end(), std::make_pair(i, j)))
            continue;
        // fundamental cycle: tree path i..j plus the chord
        std::vector<std::size_t> pi{i}, pj{j};
        std::size_t a = i, b = j;
        while (depth[a] > depth[b]) pi.push_back(a = parent[a]);
        while (depth[b] > depth[a]) pj.push_back(b = parent[b]);
        while (a != b) {
            pi.push_back(a = parent[a]);
            pj.push_back(b = parent[b]);
        }
        // pi ends at the meeting vertex; append the j-side path reversed
        std::vector<std::size_t> cyc(pi.begin(), pi.end());
        for (auto it = pj.rbegin(); it != pj.rend(); ++it)
            if (*it != cyc.back()) cyc.push_back(*it);
        if (!cyc.empty() && cyc.back() == cyc.front()) cyc.pop_back();
        // canonical form: minimal vertex first, then toward its smaller neighbor
        auto mn = std::min_element(cyc.begin(), cyc.end());
        std::rotate(cyc.begin(), mn, cyc.end());
        if (cyc.size() > 2 && cyc[1] > cyc.back()) {
            std::reverse(cyc.begin() + 1, cyc.end());
        }
        out.fundamental_cycles.push_back(std::move(cyc));
    }
    return out;
}

namespace {

std::string edge_name(std::size_t i, std::size_t j) {
    std::ostringstream os;
    os << "g(" << i + 1 << "," << j + 1 << ")";
    return os.str();
}

}  // namespace

std::vector<CycleGenerator> cycle_generators(const SymMatrix& m) {
    CycleSet cs = cycle_set(m);
    std::vector<CycleGenerator> out;
    for (auto [i, j] : cs.edge_pairs) {
        const FieldElement& g = m.at(i, j);
        out.push_back({g * g, edge_name(i, j) + "^2", 2});
    }
    for (const auto& cyc : cs.fundamental_cycles) {
        FieldElement prod = FieldElement::one(m.tower());
        std::ostringstream os;
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            std::size_t a = cyc[k], b = cyc[(k + 1) % cyc.size()];
            prod = prod * m.at(a, b);
            os << edge_name(a, b);
        }
        out.push_back({std::move(prod), os.str(), cyc.size()});
    }
    return out;
}

// ---------------------------------------------------------------------------
// rational subspaces
// ---------------------------------------------------------------------------

namespace {

struct Rref {
    std::vector<std::vector<mpq_class>> rows;
    std::vector<std::size_t> pivots;

    void reduce(std::vector<mpq_class>& v) const {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const mpq_class& c = v[pivots[r]];
            if (c == 0) continue;
            mpq_class f = c;  // rows are normalized to pivot 1
            for (std::size_t k = 0; k < v.size(); ++k)
                if (rows[r][k] != 0) v[k] -= f * rows[r][k];
        }
    }

    bool add(std::vector<mpq_class> v) {
        reduce(v);
        std::size_t piv = v.size();
        for (std::size_t k = 0; k < v.size(); ++k)
            if (v[k] != 0) {
                piv = k;
                break;
            }
        if (piv == v.size()) return false;
        mpq_class inv = 1 / v[piv];
        for (auto& c : v) c *= inv;
        // back-substitute into existing rows
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const mpq_class& c = rows[r][piv];
            if (c == 0) continue;
            mpq_class f = c;
            for (std::size_t k = 0; k < v.size(); ++k)
                if (v[k] != 0) rows[r][k] -= f * v[k];
        }
        rows.push_back(std::move(v));
        pivots.push_back(piv);
        return true;
    }
};

}  // namespace

bool SubfieldDesc::contains(const FieldElement& x) const {
    if (generators.empty() && basis.empty()) return false;
    Rref r;
    for (const auto& row : basis) {
        std::vector<mpq_class> v = row;
        std::size_t piv = v.size();
        for (std::size_t k = 0; k < v.size(); ++k)
            if (v[k] != 0) {
                piv = k;
                break;
            }
        r.rows.push_back(std::move(v));
        r.pivots.push_back(piv);
    }
    std::vector<mpq_class> v = x.coords();
    r.reduce(v);
    for (const auto& c : v)
        if (c != 0) return false;
    return true;
}

SubfieldDesc subfield_closure(const std::vector<FieldElement>& gens) {
    if (gens.empty())
        throw InternalError("subfield_closure without a tower; use the two-argument form");
    return subfield_closure(gens.front().tower(), gens);
}

SubfieldDesc subfield_closure(const TowerPtr& T, const std::vector<FieldElement>& gens) {
    const std::size_t D = T->dimension();
    Rref r;
    std::vector<FieldElement> basis_elems;
    auto push = [&](const FieldElement& e) {
        if (r.add(e.coords())) {
            basis_elems.push_back(e);
            return true;
        }
        return false;
    };
    push(FieldElement::one(T));
    for (const auto& g : gens) push(g.tower()->same_structure(*T) ? g : g.lift_to(T));
    // close under products; the subspace dimension is bounded by D
    std::size_t frontier = 0;
    while (frontier < basis_elems.size()) {
        std::size_t upto = basis_elems.size();
        for (std::size_t i = frontier; i < upto; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                if (basis_elems.size() >= D && r.rows.size() >= D) break;
                push(basis_elems[i] * basis_elems[j]);
            }
        frontier = upto;
    }
    SubfieldDesc out;
    out.generators = gens;
    out.basis = r.rows;
    out.degree = r.rows.size();
    return out;
}

bool embedding_restricts_to_identity(const RealEmbedding& sigma, const SubfieldDesc& k) {
    for (const auto& g : k.generators)
        if (!embedding_fixes(sigma, g)) return false;
    return true;
}

IntegralityResult cyc2_integrality(const SymMatrix& m) {
    IntegralityResult out;
    for (const auto& gen : cycle_generators(m)) {
        // the corresponding generator of Cyc(2M) scales by 2^len
        mpz_class scale = 1;
        mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(),
                     static_cast<mp_bitcnt_t>(gen.cycle_length));
        FieldElement v = gen.value * FieldElement::rational(m.tower(), mpq_class(scale));
        if (is_algebraic_integer(v)) continue;
        out.all_integral = false;
        std::string desc = gen.cycle_length == 2 ? "(2*" + gen.description.substr(0, gen.description.size() - 2) + ")^2"
                                                 : "2^" + std::to_string(gen.cycle_length) +
                                                       "*" + gen.description;
        out.witnesses.push_back({desc, v.decimal(30), v});
    }
    return out;
}

}  // namespace vinberg
