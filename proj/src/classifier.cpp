#include "vinberg/classifier.hpp"

#include <future>
#include <sstream>
#include <thread>

#include "vinberg/errors.hpp"
#include "vinberg/lobell.hpp"

namespace vinberg {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Arithmetic:
            return "arithmetic";
        case Verdict::ProperlyQuasiArithmetic:
            return "properly-quasi-arithmetic";
        case Verdict::NotQuasiArithmetic:
            return "not-quasi-arithmetic";
    }
    return "?";
}

bool ClassificationReport::v2_holds() const {
    for (const auto& row : embeddings)
        if (!row.fixes_ground_field && row.signature.q != 0) return false;
    return true;
}

ClassificationReport classify(const CoxeterDiagram& d) {
    auto assembly = assemble_gram(d);
    const TowerPtr& tower = assembly.tower;
    const SymMatrix& m = *assembly.matrix;

    Signature main_sig = signature(m);
    if (main_sig.q != 1) {
        std::ostringstream os;
        os << "Gram matrix has signature (" << main_sig.p << "," << main_sig.q << ","
           << main_sig.r << "), expected exactly one negative eigenvalue";
        throw NotLorentzian(os.str());
    }

    ClassificationReport rep;
    EmbeddingList emb = real_embeddings(tower);
    rep.v1.totally_real = emb.totally_real;
    rep.v1.witness = emb.failure_note;

    auto gens = cycle_generators(m);
    std::vector<FieldElement> gen_elems;
    gen_elems.reserve(gens.size());
    for (const auto& g : gens) gen_elems.push_back(g.value);
    SubfieldDesc k = subfield_closure(tower, gen_elems);
    rep.ground_field = {k.degree, gens.size()};

    bool v2 = true;
    for (std::size_t i = 0; i < emb.embeddings.size(); ++i) {
        const RealEmbedding& e = emb.embeddings[i];
        bool fixes = embedding_restricts_to_identity(e, k);
        Signature s = signature_under(m, e);
        if (!fixes && s.q != 0) v2 = false;
        rep.embeddings.push_back({i, fixes, s});
    }

    IntegralityResult v3 = cyc2_integrality(m);
    rep.v3.all_integral = v3.all_integral;
    rep.v3.witnesses = std::move(v3.witnesses);

    if (!rep.v1.totally_real || !v2)
        rep.verdict = Verdict::NotQuasiArithmetic;
    else if (rep.v3.all_integral)
        rep.verdict = Verdict::Arithmetic;
    else
        rep.verdict = Verdict::ProperlyQuasiArithmetic;
    return rep;
}

std::vector<RangeRow> classify_range(Family family, unsigned long lo, unsigned long hi,
                                     unsigned long k) {
    std::vector<RangeRow> rows;
    if (hi < lo) return rows;
    auto one = [family, k](unsigned long n) {
        CoxeterDiagram d =
            family == Family::SliceTn ? tn_diagram(n) : pnk_diagram(n, k);
        ClassificationReport rep = classify(d);
        RangeRow row;
        row.n = n;
        row.verdict = rep.verdict;
        row.ground_degree = rep.ground_field.degree;
        for (const auto& e : rep.embeddings) row.signatures.push_back(e.signature);
        return row;
    };
    const unsigned long count = hi - lo + 1;
    const unsigned long workers =
        std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(count)));
    rows.resize(count);
    if (workers <= 1) {
        for (unsigned long n = lo; n <= hi; ++n) rows[n - lo] = one(n);
        return rows;
    }
    std::vector<std::future<RangeRow>> futs(count);
    std::size_t next = 0, running = 0;
    std::vector<std::size_t> inflight;
    // bounded fan-out: rows are independent, output stays ordered by n
    while (next < count || running > 0) {
        while (next < count && running < workers) {
            futs[next] = std::async(std::launch::async, one, lo + next);
            inflight.push_back(next);
            ++next;
            ++running;
        }
        std::size_t idx = inflight.front();
        inflight.erase(inflight.begin());
        rows[idx] = futs[idx].get();
        --running;
    }
    return rows;
}

}  // namespace vinberg
