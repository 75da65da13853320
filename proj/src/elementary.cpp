#include "formring/elementary.hpp"

#include "formring/graded.hpp"

namespace formring {

Generated gen(const FormContext &ctx, GenKind kind, std::size_t i, std::size_t j, const Value &a,
              std::size_t n) {
    GeneratorSymbol s = make_symbol(ctx, n, kind, i, j, a);
    Matrix m = symbol_matrix(ctx, n, s);
    return {std::move(s), std::move(m)};
}

GradedSplit graded_normalize(const GeneratorWord &w) {
    const FormContext &ctx = w.context();
    const Ring &r = *ctx.ring;
    if (!is_graded(r))
        throw DomainError("graded normalization needs a graded ring, got " + r.describe());
    GradedSplit out{GeneratorWord(ctx, w.n()), GeneratorWord(ctx, w.n())};
    GeneratorWord &eps = out.residual;
    for (const auto &s : w.symbols()) {
        GeneratorSymbol pos = s, zero = s;
        bool positive = false;
        if (s.block) {
            zero.block = s.block->map([&](const Value &v) { return degree_zero_part(r, v); });
            pos.block = *s.block - *zero.block;
            positive = !pos.block->is_zero();
        } else {
            zero.arg = degree_zero_part(r, s.arg);
            pos.arg = r.sub(s.arg, zero.arg);
            positive = !r.is_zero(pos.arg);
        }
        if (positive) {
            out.conjugate.append(eps);
            out.conjugate.push(pos);
            out.conjugate.append(eps.inverse());
        }
        eps.push(zero);
    }
    return out;
}

Certificate factor_transvection(const GeneratorWord &eps, const Matrix &w) {
    const FormContext &ctx = eps.context();
    const Ring &r = *ctx.ring;
    std::size_t n = eps.n();
    if (n < 3)
        throw DomainError("transvection factorization needs n >= 3");
    if (w.rows() != 2 * n || w.cols() != 1)
        throw DomainError("w must be a column of length 2n = " + std::to_string(2 * n));
    Matrix e = eps.eval();
    Matrix v = e * Matrix::unit_vector(ctx.ring, 2 * n, 0);
    Value vw = inner(ctx, v, w);
    if (!r.is_zero(vw))
        throw DomainError("<v, w> = " + r.format(vw) + " is not 0");
    Value ww = inner(ctx, w, w);
    if (!r.is_zero(ww))
        throw DomainError("<w, w> = " + r.format(ww) + " is not 0; I + M(v, w) is not in GQ");
    Matrix target = Matrix::identity(ctx.ring, 2 * n) + m_form(ctx, v, w);

    // Conjugate back to v = e_1: I + M(v, w) = eps (I + M(e_1, u)) eps^{-1}.
    Matrix u = gq_inverse(ctx, e) * w;
    GeneratorWord inner_word(ctx, n);
    for (std::size_t j = 2; j <= n; ++j) {
        Value a = r.involve(u(j - 1, 0));
        if (!r.is_zero(a))
            inner_word.push(make_symbol(ctx, n, GenKind::QR, 1, j, a));
        Value b = r.mul(ctx.lambda, r.involve(u(n + j - 1, 0)));
        if (!r.is_zero(b))
            inner_word.push(make_symbol(ctx, n, GenKind::QE, 1, j, b));
    }
    // What is left is I + c e_{1, n+1}; solve for c and append qr_11(c).
    Matrix local = Matrix::identity(ctx.ring, 2 * n) +
                   m_form(ctx, Matrix::unit_vector(ctx.ring, 2 * n, 0), u);
    Matrix rest = inner_word.inverse().eval() * local;
    Value c = rest(0, n);
    rest.set(0, n, r.zero());
    if (!rest.is_identity())
        throw DomainError("transvection residual has unexpected entries: " + rest.str());
    if (!r.is_zero(c)) {
        try {
            inner_word.push(make_symbol(ctx, n, GenKind::QR, 1, 1, c));
        } catch (const DomainError &err) {
            throw DomainError(std::string("insolvable diagonal argument: ") + err.what());
        }
    }
    GeneratorWord word = eps;
    word.append(inner_word);
    word.append(eps.inverse());
    Certificate cert = make_equals_certificate(std::move(word), target);
    if (!cert.verify())
        throw DomainError("transvection certificate failed to verify");
    return cert;
}

namespace {

Matrix block_inverse(const Matrix &m, const char *what) {
    if (auto u = unipotent_inverse(m))
        return *u;
    if (m.ring()->commutative())
        if (auto i = inverse(m))
            return *i;
    throw DomainError(std::string(what) + " is not invertible: " + m.str());
}

} // namespace

TriangularReduction reduce_triangular(const FormContext &ctx, const Matrix &A) {
    if (!A.square() || A.rows() % 2)
        throw DomainError("expected a 2n x 2n matrix");
    std::size_t n = A.rows() / 2;
    GeneratorWord word(ctx, n);
    Matrix cur = A;
    Matrix b = cur.block(0, n, n, n);
    if (!b.is_zero()) {
        Matrix a = cur.block(0, 0, n, n);
        Matrix x = -(block_inverse(a, "upper-left block") * b);
        GeneratorSymbol s;
        try {
            s = make_block_symbol(ctx, GenKind::T12, x);
        } catch (const DomainError &err) {
            throw DomainError(std::string("not Lambda-quadratic: ") + err.what());
        }
        apply_right(cur, symbol_entries(ctx, n, s));
        word.push(std::move(s));
    }
    Matrix c = cur.block(n, 0, n, n);
    if (!c.is_zero()) {
        Matrix d = cur.block(n, n, n, n);
        Matrix y = -(block_inverse(d, "lower-right block") * c);
        GeneratorSymbol s;
        try {
            s = make_block_symbol(ctx, GenKind::T21, y);
        } catch (const DomainError &err) {
            throw DomainError(std::string("not Lambda-quadratic: ") + err.what());
        }
        apply_right(cur, symbol_entries(ctx, n, s));
        word.push(std::move(s));
    }
    Matrix alpha = cur.block(0, 0, n, n);
    Matrix h = hyperbolic_H(ctx, alpha);
    if (!(cur == h))
        throw DomainError("reduced matrix is not H(alpha); input is not in GQ: " + cur.str());
    return {make_reduction_certificate(A, std::move(word), h), alpha};
}

std::optional<GeneratorWord> linear_reduce(const FormContext &ctx, const Matrix &alpha) {
    if (!alpha.square())
        throw DomainError("linear reduction needs a square matrix");
    const Ring &r = *ctx.ring;
    std::size_t n = alpha.rows();
    GeneratorWord word(ctx, n);
    Matrix cur = alpha;
    // column j += column i * a, recorded as HYP_E(i, j, a)
    auto colop = [&](std::size_t i, std::size_t j, const Value &a) {
        if (r.is_zero(a))
            return;
        for (std::size_t k = 0; k < n; ++k)
            cur.set(k, j, r.add(cur(k, j), r.mul(cur(k, i), a)));
        GeneratorSymbol s;
        s.kind = GenKind::HYP_E;
        s.i = i + 1;
        s.j = j + 1;
        s.arg = a;
        word.push(std::move(s));
    };
    for (std::size_t k = 0; k < n; ++k) {
        if (!r.unit_inverse(cur(k, k))) {
            for (std::size_t j = k + 1; j < n; ++j)
                if (r.unit_inverse(r.add(cur(k, k), cur(k, j)))) {
                    colop(j, k, r.one());
                    break;
                }
        }
        auto inv = r.unit_inverse(cur(k, k));
        if (!inv)
            return std::nullopt;
        for (std::size_t j = 0; j < n; ++j)
            if (j != k)
                colop(k, j, r.neg(r.mul(*inv, cur(k, j))));
    }
    // cur is diagonal; move each unit to the next slot with
    // diag(v, v^{-1}) = w(v) w(-1), w(v) = e12(v) e21(-v^{-1}) e12(v).
    auto whitehead = [&](std::size_t i, std::size_t j, const Value &v, const Value &vinv) {
        colop(i, j, v);
        colop(j, i, r.neg(vinv));
        colop(i, j, v);
        colop(i, j, r.neg(r.one()));
        colop(j, i, r.one());
        colop(i, j, r.neg(r.one()));
    };
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (r.is_one(cur(k, k)))
            continue;
        Value d = cur(k, k);
        auto vinv = r.unit_inverse(d);
        if (!vinv)
            return std::nullopt;
        whitehead(k, k + 1, *vinv, d);
    }
    if (!cur.is_identity())
        return std::nullopt;
    Matrix check = hyperbolic_H(ctx, alpha) * word.eval();
    if (!check.is_identity())
        return std::nullopt;
    return word;
}

} // namespace formring
