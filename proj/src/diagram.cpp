#include "vinberg/diagram.hpp"
#include <cstring>

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "vinberg/errors.hpp"

namespace vinberg {

bool WeightExpr::operator==(const WeightExpr& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Integer:
        case Kind::Rational:
            return value == o.value;
        case Kind::CosPi:
        case Kind::SinPi:
            return a == o.a && b == o.b;
        case Kind::Sqrt:
            return *lhs == *o.lhs;
        default:
            return *lhs == *o.lhs && *rhs == *o.rhs;
    }
}

bool CoxeterDiagram::Edge::operator==(const Edge& o) const {
    if (i != o.i || j != o.j || kind != o.kind) return false;
    if (kind == EdgeKind::Angle) return m == o.m;
    if (kind == EdgeKind::Dashed) return *weight == *o.weight;
    return true;
}

// ---------------------------------------------------------------------------
// expression parsing
// ---------------------------------------------------------------------------

namespace {

struct ExprLexer {
    const std::string& s;
    std::size_t pos = 0;
    int line;
    int col_base;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw ParseError(line, col_base + static_cast<int>(at) + 1, msg);
    }
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'", pos);
    }
    bool accept_word(const char* w) {
        skip_ws();
        std::size_t n = std::strlen(w);
        if (s.compare(pos, n, w) == 0) {
            pos += n;
            return true;
        }
        return false;
    }
    long integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected integer", start);
        return std::stol(s.substr(start, pos - start));
    }
};

WeightExprPtr make_expr(WeightExpr e) { return std::make_shared<const WeightExpr>(std::move(e)); }

WeightExprPtr parse_expr(ExprLexer& lx);

WeightExprPtr parse_factor(ExprLexer& lx) {
    lx.skip_ws();
    std::size_t start = lx.pos;
    if (lx.accept('(')) {
        WeightExprPtr inner = parse_expr(lx);
        lx.expect(')');
        return inner;
    }
    if (lx.accept_word("cos") || lx.accept_word("sin")) {
        bool is_cos = lx.s.compare(start, 3, "cos") == 0;
        WeightExpr e;
        e.kind = is_cos ? WeightExpr::Kind::CosPi : WeightExpr::Kind::SinPi;
        lx.expect('(');
        if (!lx.accept_word("pi")) lx.fail("expected 'pi'", lx.pos);
        if (lx.accept('*'))
            e.a = lx.integer();
        else
            e.a = 1;
        lx.expect('/');
        e.b = lx.integer();
        if (e.b == 0) lx.fail("zero denominator", lx.pos);
        lx.expect(')');
        return make_expr(std::move(e));
    }
    if (lx.accept_word("sqrt")) {
        lx.expect('(');
        WeightExprPtr inner = parse_expr(lx);
        lx.expect(')');
        WeightExpr e;
        e.kind = WeightExpr::Kind::Sqrt;
        e.lhs = inner;
        return make_expr(std::move(e));
    }
    if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
        WeightExpr e;
        e.kind = WeightExpr::Kind::Integer;
        e.value = lx.integer();
        return make_expr(std::move(e));
    }
    lx.fail("expected factor", lx.pos);
}

WeightExprPtr parse_term(ExprLexer& lx) {
    WeightExprPtr lhs = parse_factor(lx);
    for (;;) {
        if (lx.accept('*')) {
            WeightExpr e;
            e.kind = WeightExpr::Kind::Mul;
            e.lhs = lhs;
            e.rhs = parse_factor(lx);
            lhs = make_expr(std::move(e));
        } else if (lx.accept('/')) {
            WeightExpr e;
            e.kind = WeightExpr::Kind::Div;
            e.lhs = lhs;
            e.rhs = parse_factor(lx);
            lhs = make_expr(std::move(e));
        } else {
            return lhs;
        }
    }
}

WeightExprPtr parse_expr(ExprLexer& lx) {
    WeightExprPtr lhs = parse_term(lx);
    for (;;) {
        if (lx.accept('+')) {
            WeightExpr e;
            e.kind = WeightExpr::Kind::Add;
            e.lhs = lhs;
            e.rhs = parse_term(lx);
            lhs = make_expr(std::move(e));
        } else if (lx.accept('-')) {
            WeightExpr e;
            e.kind = WeightExpr::Kind::Sub;
            e.lhs = lhs;
            e.rhs = parse_term(lx);
            lhs = make_expr(std::move(e));
        } else {
            return lhs;
        }
    }
}

}  // namespace

WeightExprPtr parse_weight_expr(const std::string& text) {
    ExprLexer lx{text, 0, 1, 0};
    WeightExprPtr e = parse_expr(lx);
    if (!lx.eof()) lx.fail("trailing characters in expression", lx.pos);
    return e;
}

std::string to_string(const WeightExpr& e) {
    using K = WeightExpr::Kind;
    std::ostringstream os;
    switch (e.kind) {
        case K::Integer:
        case K::Rational:
            if (e.value.get_den() == 1)
                os << e.value.get_num();
            else
                os << e.value.get_num() << "/" << e.value.get_den();
            break;
        case K::CosPi:
            os << "cos(pi*" << e.a << "/" << e.b << ")";
            break;
        case K::SinPi:
            os << "sin(pi*" << e.a << "/" << e.b << ")";
            break;
        case K::Sqrt:
            os << "sqrt(" << to_string(*e.lhs) << ")";
            break;
        case K::Add:
            os << "(" << to_string(*e.lhs) << "+" << to_string(*e.rhs) << ")";
            break;
        case K::Sub:
            os << "(" << to_string(*e.lhs) << "-" << to_string(*e.rhs) << ")";
            break;
        case K::Mul:
            os << "(" << to_string(*e.lhs) << "*" << to_string(*e.rhs) << ")";
            break;
        case K::Div:
            os << "(" << to_string(*e.lhs) << "/" << to_string(*e.rhs) << ")";
            break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// diagram parsing
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> tokenize_line(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

void validate_structure(const CoxeterDiagram& d) {
    std::map<std::pair<std::size_t, std::size_t>, int> seen;
    for (const auto& e : d.edges) {
        if (e.i >= d.node_count || e.j >= d.node_count)
            throw ValidationError("edge node index out of range");
        if (e.i == e.j) throw ValidationError("self-loop edge");
        if (++seen[{e.i, e.j}] > 1)
            throw ValidationError("duplicate edge between nodes " + std::to_string(e.i + 1) +
                                  " and " + std::to_string(e.j + 1));
        if (e.kind == CoxeterDiagram::EdgeKind::Angle && e.m < 3)
            throw ValidationError("angle label m must be at least 3");
    }
}

}  // namespace

CoxeterDiagram parse_diagram(const std::string& text) {
    CoxeterDiagram d;
    bool have_nodes = false;
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        std::string line = raw.substr(0, raw.find('#'));
        auto toks = tokenize_line(line);
        if (toks.empty()) continue;
        if (toks[0] == "nodes") {
            if (have_nodes) throw ParseError(line_no, 1, "repeated nodes line");
            if (toks.size() != 2) throw ParseError(line_no, 1, "expected: nodes <N>");
            long n = 0;
            try {
                n = std::stol(toks[1]);
            } catch (...) {
                throw ParseError(line_no, 7, "node count is not an integer");
            }
            if (n <= 0) throw ParseError(line_no, 7, "node count must be positive");
            d.node_count = static_cast<std::size_t>(n);
            have_nodes = true;
            continue;
        }
        if (!have_nodes) throw ParseError(line_no, 1, "nodes line must come first");
        auto parse_index = [&](const std::string& s) -> std::size_t {
            long v = 0;
            try {
                v = std::stol(s);
            } catch (...) {
                throw ParseError(line_no, 1, "node index is not an integer");
            }
            if (v < 1) throw ParseError(line_no, 1, "node indices are 1-based");
            return static_cast<std::size_t>(v - 1);
        };
        CoxeterDiagram::Edge e;
        if (toks[0] == "angle") {
            if (toks.size() != 4) throw ParseError(line_no, 1, "expected: angle <i> <j> <m>");
            e.kind = CoxeterDiagram::EdgeKind::Angle;
            e.i = parse_index(toks[1]);
            e.j = parse_index(toks[2]);
            try {
                long m = std::stol(toks[3]);
                if (m < 0) throw std::invalid_argument("negative");
                e.m = static_cast<unsigned long>(m);
            } catch (const ParseError&) {
                throw;
            } catch (...) {
                throw ParseError(line_no, 1, "angle label is not an integer");
            }
        } else if (toks[0] == "parallel") {
            if (toks.size() != 3) throw ParseError(line_no, 1, "expected: parallel <i> <j>");
            e.kind = CoxeterDiagram::EdgeKind::Parallel;
            e.i = parse_index(toks[1]);
            e.j = parse_index(toks[2]);
        } else if (toks[0] == "dashed") {
            if (toks.size() < 4) throw ParseError(line_no, 1, "expected: dashed <i> <j> <expr>");
            e.kind = CoxeterDiagram::EdgeKind::Dashed;
            e.i = parse_index(toks[1]);
            e.j = parse_index(toks[2]);
            // the weight expression is the remainder of the line
            std::size_t at = line.find(toks[2], line.find(toks[1]) + toks[1].size());
            std::string expr_text = line.substr(at + toks[2].size());
            ExprLexer lx{expr_text, 0, line_no,
                         static_cast<int>(at + toks[2].size())};
            e.weight = parse_expr(lx);
            if (!lx.eof()) lx.fail("trailing characters in weight expression", lx.pos);
        } else {
            throw ParseError(line_no, 1, "unknown directive '" + toks[0] + "'");
        }
        if (e.i > e.j) std::swap(e.i, e.j);
        d.edges.push_back(std::move(e));
    }
    if (!have_nodes) throw ParseError(line_no, 1, "missing nodes line");
    std::stable_sort(d.edges.begin(), d.edges.end(),
                     [](const auto& a, const auto& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
    validate_structure(d);
    // exact weight validation (> 1) happens during assembly
    assemble_gram(d);
    return d;
}

std::string serialize(const CoxeterDiagram& d) {
    std::ostringstream os;
    os << "nodes " << d.node_count << "\n";
    for (const auto& e : d.edges) {
        switch (e.kind) {
            case CoxeterDiagram::EdgeKind::Angle:
                os << "angle " << e.i + 1 << " " << e.j + 1 << " " << e.m << "\n";
                break;
            case CoxeterDiagram::EdgeKind::Parallel:
                os << "parallel " << e.i + 1 << " " << e.j + 1 << "\n";
                break;
            case CoxeterDiagram::EdgeKind::Dashed:
                os << "dashed " << e.i + 1 << " " << e.j + 1 << " " << to_string(*e.weight)
                   << "\n";
                break;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// assembly
// ---------------------------------------------------------------------------

namespace {

void collect_conductor(const WeightExpr& e, unsigned long& l) {
    using K = WeightExpr::Kind;
    switch (e.kind) {
        case K::CosPi:
            l = std::lcm(l, static_cast<unsigned long>(std::abs(e.b)));
            break;
        case K::SinPi:
            // sin(pi a/b) = cos(pi (b-2a)/(2b)) needs the doubled denominator
            l = std::lcm(l, 2 * static_cast<unsigned long>(std::abs(e.b)));
            break;
        case K::Sqrt:
            collect_conductor(*e.lhs, l);
            break;
        case K::Add:
        case K::Sub:
        case K::Mul:
        case K::Div:
            collect_conductor(*e.lhs, l);
            collect_conductor(*e.rhs, l);
            break;
        default:
            break;
    }
}

struct EvalState {
    TowerPtr cur;
    // sqrt results seen so far, keyed by the serialized argument expression;
    // coordinates are over the tower at the time of evaluation and lift by
    // zero padding because later towers extend earlier ones
    std::map<std::string, FieldElement> sqrt_cache;
};

FieldElement lift_cur(const EvalState& st, const FieldElement& e) {
    return e.tower()->same_structure(*st.cur) ? e : e.lift_to(st.cur);
}

FieldElement cos_pi_frac_elem(const TowerPtr& t, long a, long b) {
    // cos(pi a/b) = (1/2) * 2cos(2*pi*k/N) with k = a*N/(2b)
    const long N = static_cast<long>(t->conductor());
    if ((N % (2 * b)) != 0) throw InternalError("conductor does not cover cos(pi*a/b)");
    long k = a * (N / (2 * b));
    return two_cos_frac(t, k) * FieldElement::rational(t, mpq_class(1, 2));
}

FieldElement eval_weight(const WeightExpr& e, EvalState& st) {
    using K = WeightExpr::Kind;
    switch (e.kind) {
        case K::Integer:
        case K::Rational:
            return FieldElement::rational(st.cur, e.value);
        case K::CosPi:
            return cos_pi_frac_elem(st.cur, e.a, e.b);
        case K::SinPi:
            return cos_pi_frac_elem(st.cur, e.b - 2 * e.a, 2 * e.b);
        case K::Add:
            return lift_cur(st, eval_weight(*e.lhs, st)) + lift_cur(st, eval_weight(*e.rhs, st));
        case K::Sub:
            return lift_cur(st, eval_weight(*e.lhs, st)) - lift_cur(st, eval_weight(*e.rhs, st));
        case K::Mul:
            return lift_cur(st, eval_weight(*e.lhs, st)) * lift_cur(st, eval_weight(*e.rhs, st));
        case K::Div: {
            FieldElement num = lift_cur(st, eval_weight(*e.lhs, st));
            FieldElement den = lift_cur(st, eval_weight(*e.rhs, st));
            if (den.is_zero()) throw ValidationError("division by zero in weight expression");
            return num / den;
        }
        case K::Sqrt: {
            std::string key = to_string(*e.lhs);
            auto it = st.sqrt_cache.find(key);
            if (it != st.sqrt_cache.end()) return lift_cur(st, it->second);
            FieldElement arg = lift_cur(st, eval_weight(*e.lhs, st));
            int s = sign(arg);
            if (s <= 0)
                throw NonRealRadicand("sqrt argument " + key + " is not positive");
            if (auto w = exact_sqrt(arg)) {
                st.sqrt_cache.emplace(key, *w);
                return *w;
            }
            st.cur = st.cur->extend(arg, key);
            std::vector<mpq_class> coords(st.cur->dimension());
            coords[(std::size_t{1} << (st.cur->levels() - 1)) * st.cur->base_degree()] = 1;
            FieldElement gen(st.cur, std::move(coords));
            st.sqrt_cache.emplace(key, gen);
            return gen;
        }
    }
    throw InternalError("eval_weight: unhandled node");
}

}  // namespace

GramAssembly assemble_gram(const CoxeterDiagram& d) {
    static std::mutex memo_mu;
    static std::map<std::string, GramAssembly> memo;
    const std::string key = serialize(d);
    {
        std::lock_guard<std::mutex> lock(memo_mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    validate_structure(d);
    unsigned long l = 1;
    for (const auto& e : d.edges) {
        if (e.kind == CoxeterDiagram::EdgeKind::Angle) l = std::lcm(l, e.m);
        if (e.kind == CoxeterDiagram::EdgeKind::Dashed) collect_conductor(*e.weight, l);
    }
    EvalState st{FieldTower::cyclotomic_real(2 * l), {}};
    // evaluate weights in canonical edge order so sqrt radicands are adjoined
    // in order of appearance
    std::vector<FieldElement> weights(d.edges.size());
    for (std::size_t idx = 0; idx < d.edges.size(); ++idx) {
        const auto& e = d.edges[idx];
        switch (e.kind) {
            case CoxeterDiagram::EdgeKind::Angle:
                weights[idx] = cos_pi_frac_elem(st.cur, 1, static_cast<long>(e.m));
                break;
            case CoxeterDiagram::EdgeKind::Parallel:
                weights[idx] = FieldElement::one(st.cur);
                break;
            case CoxeterDiagram::EdgeKind::Dashed: {
                weights[idx] = eval_weight(*e.weight, st);
                break;
            }
        }
    }
    TowerPtr tower = st.cur;
    auto matrix = std::make_shared<SymMatrix>(tower, d.node_count);
    for (std::size_t i = 0; i < d.node_count; ++i)
        matrix->set(i, i, FieldElement::one(tower));
    for (std::size_t idx = 0; idx < d.edges.size(); ++idx) {
        const auto& e = d.edges[idx];
        FieldElement w = weights[idx].lift_to(tower);
        if (e.kind == CoxeterDiagram::EdgeKind::Dashed) {
            if (sign(w - FieldElement::one(tower)) <= 0)
                throw ValidationError("dashed weight " + to_string(*e.weight) +
                                      " must exceed 1");
        }
        matrix->set(e.i, e.j, -w);
    }
    GramAssembly out{tower, matrix};
    {
        std::lock_guard<std::mutex> lock(memo_mu);
        if (memo.size() > 256) memo.clear();
        memo.emplace(key, out);
    }
    return out;
}

bool lorentz_check(const SymMatrix& m, std::size_t d) {
    Signature s = signature(m);
    return s.p == d && s.q == 1 && s.r == m.dim() - d - 1;
}

}  // namespace vinberg
