#include "formring/graded.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace formring {

bool is_graded(const Ring &r) {
    switch (r.kind()) {
    case Ring::Kind::Poly:
    case Ring::Kind::Truncated:
        return true;
    case Ring::Kind::Localized: {
        const Ring &b = *r.base();
        return is_graded(b) && is_degree_zero(b, localized_denominator(r));
    }
    default:
        return false;
    }
}

std::vector<Value> graded_components(const Ring &r, const Value &b) {
    switch (r.kind()) {
    case Ring::Kind::Poly:
    case Ring::Kind::Truncated: {
        std::vector<Value> out;
        Value zero = r.base()->zero();
        for (std::size_t i = 0; i < b.parts.size(); ++i) {
            Value c;
            c.parts.assign(i, zero);
            c.parts.push_back(b.parts[i]);
            out.push_back(r.normalize(c));
        }
        return out;
    }
    case Ring::Kind::Localized: {
        const Ring &base = *r.base();
        if (!is_graded(base) || !is_degree_zero(base, localized_denominator(r)))
            throw DomainError("ring " + r.describe() + " is not graded");
        std::vector<Value> out;
        for (auto &c : graded_components(base, b.parts.at(0)))
            out.push_back(r.normalize(Value{b.num, {c}}));
        return out;
    }
    default:
        throw DomainError("ring " + r.describe() + " is not graded");
    }
}

bool is_degree_zero(const Ring &r, const Value &b) { return graded_components(r, b).size() <= 1; }

Value degree_zero_part(const Ring &r, const Value &b) {
    auto c = graded_components(r, b);
    return c.empty() ? r.zero() : c[0];
}

Value plus_eval(const Ring &r, const Value &b, const Value &a) {
    if (!is_degree_zero(r, a))
        throw DomainError("plus-evaluation point " + r.format(a) + " is not of degree 0");
    auto comps = graded_components(r, b);
    Value out = r.zero();
    Value p = r.one();
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i)
            p = r.mul(p, a);
        if (!r.is_zero(comps[i]))
            out = r.add(out, r.mul(comps[i], p));
    }
    return out;
}

Matrix matrix_plus_eval(const Matrix &m, const Value &a) {
    const Ring &r = *m.ring();
    if (!is_degree_zero(r, a))
        throw DomainError("plus-evaluation point " + r.format(a) + " is not of degree 0");
    return m.map([&](const Value &v) { return plus_eval(r, v, a); });
}

namespace {

/// Copy of `w` with each argument (and block entry) sent through f.
template <class F> GeneratorWord map_word(const GeneratorWord &w, const FormContext &ctx, F &&f) {
    GeneratorWord out(ctx, w.n());
    for (GeneratorSymbol s : w.symbols()) {
        if (s.block)
            s.block = s.block->map_to(ctx.ring, f);
        else
            s.arg = f(s.arg);
        out.push(std::move(s));
    }
    return out;
}

Matrix invert(const FormContext &ctx, const Matrix &m) {
    if (is_gq(ctx, m))
        return gq_inverse(ctx, m);
    if (auto u = unipotent_inverse(m))
        return *u;
    if (auto i = inverse(m))
        return *i;
    throw DomainError("matrix is not invertible: " + m.str());
}

} // namespace

GeneratorWord word_plus_eval(const GeneratorWord &w, const Value &a) {
    const Ring &r = *w.context().ring;
    return map_word(w, w.context(), [&](const Value &v) { return plus_eval(r, v, a); });
}

Certificate elementary_plus(const GeneratorWord &w, const Value &a) {
    return make_equals_certificate(word_plus_eval(w, a), matrix_plus_eval(w.eval(), a));
}

DilationResult dilate(const GeneratorWord &w, std::optional<std::int64_t> l, std::int64_t max_l) {
    const FormContext &ctx = w.context();
    const Ring &rs = *ctx.ring;
    if (rs.kind() != Ring::Kind::Localized || !is_graded(rs))
        throw DomainError("dilation needs a localization R_s of a graded ring at a degree-0 s");
    RingPtr base = rs.base();
    Matrix alpha = w.eval();
    if (!matrix_plus_eval(alpha, rs.zero()).is_identity())
        throw DomainError("dilation needs eval(word)+(0) = I; the degree-0 residue is nontrivial");
    Value s = rs.lift(localized_denominator(rs));

    auto integral = [](const Value &v) { return v.num == 0; };
    auto try_l = [&](std::int64_t k) -> std::optional<DilationResult> {
        Value sl = rs.pow(s, static_cast<std::uint64_t>(k));
        Matrix m = matrix_plus_eval(alpha, sl);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!integral(m(i, j)))
                    return std::nullopt;
        GeneratorWord dw = word_plus_eval(w, sl);
        for (const auto &sym : dw.symbols()) {
            if (sym.block) {
                for (std::size_t i = 0; i < sym.block->rows(); ++i)
                    for (std::size_t j = 0; j < sym.block->cols(); ++j)
                        if (!integral((*sym.block)(i, j)))
                            return std::nullopt;
            } else if (!integral(sym.arg)) {
                return std::nullopt;
            }
        }
        auto pull = [](const Value &v) {
            if (v.num != 0)
                throw DomainError("value has a denominator");
            return v.parts.at(0);
        };
        FormContext bctx = ctx.rebase(base, pull);
        Matrix pb = m.map_to(base, pull);
        GeneratorWord bw = map_word(dw, bctx, pull);
        return DilationResult{k, pb, make_equals_certificate(std::move(bw), pb)};
    };

    if (l) {
        if (*l < 0)
            throw DomainError("dilation exponent must be nonnegative");
        if (auto r = try_l(*l))
            return *r;
        throw DomainError("dilation with l=" + std::to_string(*l) + " leaves denominators");
    }
    for (std::int64_t k = 0; k <= max_l; ++k)
        if (auto r = try_l(k))
            return *r;
    throw DomainError("no dilation exponent l <= " + std::to_string(max_l) +
                      " clears the denominators (a degree-0 argument may carry one)");
}

Value Cover::term(std::size_t i) const {
    const auto &t = terms.at(i);
    return ring->mul(t.c, ring->pow(t.s, static_cast<std::uint64_t>(t.l)));
}

bool Cover::certified() const {
    if (!ring || terms.empty())
        return false;
    Value sum = ring->zero();
    for (std::size_t i = 0; i < terms.size(); ++i)
        sum = ring->add(sum, term(i));
    return ring->is_one(sum);
}

std::string Cover::str() const {
    std::string out;
    for (const auto &t : terms) {
        if (!out.empty())
            out += ",";
        if (!ring->is_one(t.c))
            out += ring->format(t.c) + "*";
        out += ring->format(t.s) + "^" + std::to_string(t.l);
    }
    return out;
}

Cover parse_cover(RingPtr ring, std::string_view text) {
    Cover cover{ring, {}};
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string item(text.substr(start, end - start));
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty())
            throw ParseError("empty cover term", start);
        CoverTerm t;
        auto caret = item.rfind('^');
        if (caret != std::string::npos) {
            try {
                t.l = std::stoll(item.substr(caret + 1));
            } catch (const std::exception &) {
                throw ParseError("bad cover exponent in '" + item + "'", start);
            }
            if (t.l < 0)
                throw ParseError("negative cover exponent in '" + item + "'", start);
            item.resize(caret);
        }
        auto star = item.rfind('*');
        if (star != std::string::npos) {
            t.c = parse_element(*ring, item.substr(0, star));
            t.s = parse_element(*ring, item.substr(star + 1));
        } else {
            t.c = ring->one();
            t.s = parse_element(*ring, item);
        }
        if (is_graded(*ring) && (!is_degree_zero(*ring, t.s) || !is_degree_zero(*ring, t.c)))
            throw ParseError("cover elements must have degree 0: '" + item + "'", start);
        cover.terms.push_back(std::move(t));
        start = end + 1;
    }
    return cover;
}

TelescopeResult telescope_patch(const FormContext &ctx, const Matrix &alpha, const Cover &cover) {
    if (!cover.certified())
        throw DomainError("cover combination does not sum to 1: " + cover.str());
    const Ring &r = *ctx.ring;
    if (!matrix_plus_eval(alpha, r.zero()).is_identity())
        throw DomainError("telescoping needs alpha+(0) = I");
    std::size_t k = cover.terms.size();
    // tails[i] = b_i + ... + b_k, tails[k] = 0
    std::vector<Value> tails(k + 1, r.zero());
    for (std::size_t i = k; i-- > 0;)
        tails[i] = r.add(tails[i + 1], cover.term(i));
    TelescopeResult out;
    Matrix prod = Matrix::identity(ctx.ring, alpha.rows());
    for (std::size_t i = 0; i < k; ++i) {
        Matrix f = matrix_plus_eval(alpha, tails[i]) *
                   invert(ctx, matrix_plus_eval(alpha, tails[i + 1]));
        prod = prod * f;
        out.factors.push_back(std::move(f));
    }
    out.product_matches = prod == alpha;
    return out;
}

namespace {

std::size_t atom_count(const Ring &r, const Value &v) {
    if (r.kind() == Ring::Kind::Poly || r.kind() == Ring::Kind::Truncated) {
        std::size_t c = 0;
        for (const auto &p : v.parts)
            c += atom_count(*r.base(), p);
        return c;
    }
    return r.is_zero(v) ? 0 : 1;
}

std::size_t distance_to_identity(const Matrix &m) {
    const Ring &r = *m.ring();
    std::size_t d = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            d += atom_count(r, i == j ? r.sub(m(i, j), r.one()) : m(i, j));
    return d;
}

std::vector<Value> matrix_key(const Matrix &m) {
    std::vector<Value> k;
    k.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            k.push_back(m(i, j));
    return k;
}

/// Candidate arguments that do not depend on the current matrix.
std::vector<Value> generic_arguments(const Ring &r, const Value &scale, int max_degree) {
    std::set<Value> out;
    if (r.kind() != Ring::Kind::Poly && r.kind() != Ring::Kind::Truncated)
        return {};
    const Ring &b = *r.base();
    std::vector<Value> coeffs;
    if (auto el = b.elements(); el && el->size() <= 64) {
        coeffs = *el;
    } else {
        for (int c : {1, -1, 2, -2})
            coeffs.push_back(b.from_int(c));
    }
    Value x = r.zero();
    x.parts = {b.zero(), b.one()};
    x = r.normalize(x);
    Value xp = r.one();
    for (int d = 1; d <= max_degree; ++d) {
        xp = r.mul(xp, x);
        for (const auto &c : coeffs) {
            Value v = r.mul(scale, r.mul(r.lift(c), xp));
            if (!r.is_zero(v))
                out.insert(v);
        }
    }
    return {out.begin(), out.end()};
}

} // namespace

std::optional<GeneratorWord> search_elementary(const FormContext &ctx, const Matrix &target,
                                               const Value &scale, const SearchOptions &opt) {
    if (!target.square() || target.rows() % 2)
        throw DomainError("search target must be 2n x 2n");
    const Ring &r = *ctx.ring;
    std::size_t n = target.rows() / 2;

    struct State {
        Matrix m;
        std::size_t score;
        std::vector<GeneratorSymbol> path;
    };
    std::vector<State> beam{{target, distance_to_identity(target), {}}};
    std::set<std::vector<Value>> seen{matrix_key(target)};
    std::vector<Value> generic = generic_arguments(r, scale, opt.max_degree);

    auto finish = [&](const std::vector<GeneratorSymbol> &path) {
        // target * s_1 * ... * s_k = I, so target = s_k^{-1} ... s_1^{-1}
        return GeneratorWord(ctx, n, path).inverse();
    };
    if (beam[0].score == 0)
        return finish({});

    for (int depth = 0; depth < opt.depth; ++depth) {
        std::vector<State> next;
        for (const auto &st : beam) {
            for (GenKind kind : {GenKind::QE, GenKind::QR, GenKind::QL}) {
                for (std::size_t i = 1; i <= n; ++i)
                    for (std::size_t j = 1; j <= n; ++j) {
                        if (kind == GenKind::QE && i == j)
                            continue;
                        std::size_t row = kind == GenKind::QL ? n + i - 1 : i - 1;
                        std::size_t col = kind == GenKind::QR ? n + j - 1 : j - 1;
                        Value entry = st.m(row, col);
                        if (row == col)
                            entry = r.sub(entry, r.one());
                        std::set<Value> args;
                        if (!r.is_zero(entry)) {
                            args.insert(r.neg(entry));
                            if (is_graded(r))
                                for (auto &c : graded_components(r, entry))
                                    if (!r.is_zero(c))
                                        args.insert(r.neg(c));
                        }
                        args.insert(generic.begin(), generic.end());
                        for (const auto &a : args) {
                            GeneratorSymbol sym;
                            try {
                                sym = make_symbol(ctx, n, kind, i, j, a);
                            } catch (const DomainError &) {
                                continue;
                            }
                            Matrix m = st.m;
                            apply_right(m, symbol_entries(ctx, n, sym));
                            if (!seen.insert(matrix_key(m)).second)
                                continue;
                            auto path = st.path;
                            path.push_back(sym);
                            std::size_t score = distance_to_identity(m);
                            if (score == 0)
                                return finish(path);
                            next.push_back({std::move(m), score, std::move(path)});
                        }
                    }
            }
        }
        if (next.empty())
            break;
        std::stable_sort(next.begin(), next.end(),
                         [](const State &a, const State &b) { return a.score < b.score; });
        if (next.size() > static_cast<std::size_t>(opt.beam))
            next.erase(next.begin() + opt.beam, next.end());
        beam = std::move(next);
    }
    return std::nullopt;
}

std::vector<Value> primitive_idempotents(const Ring &r0) {
    if (!r0.commutative())
        throw DomainError("idempotent decomposition needs a commutative ring");
    auto el = r0.elements();
    if (!el)
        throw DomainError("ring " + r0.describe() + " is not finite");
    std::vector<Value> idem;
    for (const auto &e : *el)
        if (!r0.is_zero(e) && r0.mul(e, e) == e)
            idem.push_back(e);
    std::vector<Value> out;
    for (const auto &e : idem) {
        bool primitive = true;
        for (const auto &f : idem)
            if (f != e && r0.mul(e, f) == f) {
                primitive = false;
                break;
            }
        if (primitive)
            out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::string ideal_name(const Ring &r0, const Value &e) {
    if (r0.kind() == Ring::Kind::IntegersMod) {
        auto m = static_cast<std::int64_t>(r0.elements_count());
        for (std::int64_t p = 2; p <= m; ++p) {
            bool prime = true;
            for (std::int64_t q = 2; q * q <= p; ++q)
                if (p % q == 0)
                    prime = false;
            if (prime && m % p == 0 && e.num % p == 1 % p)
                return "(" + std::to_string(p) + ")";
        }
    }
    return "corner e=" + r0.format(e);
}

} // namespace

LocalGlobalResult local_global_drive(const FormContext &ctx, const Matrix &alpha,
                                     const SearchOptions &opt) {
    const Ring &r = *ctx.ring;
    if (r.kind() != Ring::Kind::Poly && r.kind() != Ring::Kind::Truncated)
        throw DomainError("local-global drive needs a graded ring R_0[Y] or a truncation");
    const Ring &r0 = *r.base();
    if (!r0.finite() || !r0.commutative())
        throw DomainError("local-global drive needs a finite commutative R_0");
    if (!alpha.square() || alpha.rows() % 2 || alpha.rows() < 6)
        throw DomainError("local-global drive needs a 2n x 2n matrix with n >= 3");
    if (!matrix_plus_eval(alpha, r.zero()).is_identity())
        throw DomainError("alpha is not congruent to I modulo R_+");

    LocalGlobalResult out;
    out.cover.ring = ctx.ring;
    auto idem = primitive_idempotents(r0);
    for (const auto &e : idem)
        out.cover.terms.push_back({r.lift(e), 1, r.one()});
    TelescopeResult tel = telescope_patch(ctx, alpha, out.cover);
    if (!tel.product_matches)
        throw DomainError("telescoping identity failed; alpha is not invertible as given");

    GeneratorWord total(ctx, alpha.rows() / 2);
    bool all = true;
    for (std::size_t i = 0; i < idem.size(); ++i) {
        LocalPiece piece{ideal_name(r0, idem[i]), idem[i], tel.factors[i], std::nullopt};
        piece.word = search_elementary(ctx, tel.factors[i], r.lift(idem[i]), opt);
        if (piece.word)
            total.append(*piece.word);
        else
            all = false;
        out.pieces.push_back(std::move(piece));
    }
    if (!all) {
        out.verdict = Verdict::Unknown;
        out.note = "search bound exhausted in at least one localization";
        return out;
    }
    Certificate cert = make_equals_certificate(std::move(total), alpha);
    if (!cert.verify())
        throw DomainError("patched certificate failed to verify");
    out.certificate = std::move(cert);
    out.verdict = Verdict::True;
    return out;
}

} // namespace formring
