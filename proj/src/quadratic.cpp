#include "formring/quadratic.hpp"

namespace formring {

FormContext FormContext::make(RingPtr r, Value l, FormParameter::Mode mode,
                              std::vector<Value> generators) {
    FormParameter f(r, l, mode, std::move(generators));
    return FormContext(std::move(r), std::move(l), std::move(f));
}

FormContext FormContext::parse(std::string_view ring, std::string_view lambda,
                               std::string_view form) {
    RingPtr r = parse_ring(ring);
    Value l = parse_element(*r, lambda);
    return FormContext(r, l, parse_form_parameter(r, l, form));
}

FormContext FormContext::polynomial_extension(const std::string &var) const {
    RingPtr px = make_poly(ring, var);
    return rebase(px, [&](const Value &v) { return px->lift(v); });
}

std::string FormContext::header(std::size_t n) const {
    return "ring=" + ring->describe() + "; lambda=" + ring->format(lambda) +
           "; form=" + form.describe() + "; n=" + std::to_string(n);
}

Matrix psi(const FormContext &ctx, std::size_t n) {
    if (n < 1)
        throw DomainError("psi_n needs n >= 1");
    Matrix m(ctx.ring, 2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, n + i, ctx.ring->one());
        m.set(n + i, i, ctx.lambda);
    }
    return m;
}

namespace {

std::size_t half_size(const Matrix &m) {
    if (!m.square() || m.rows() % 2)
        throw DomainError("expected a square matrix of even size, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    return m.rows() / 2;
}

Verdict diagonal_in_form(const FormContext &ctx, const Matrix &m, bool conjugated) {
    Verdict v = Verdict::True;
    for (std::size_t i = 0; i < m.rows() && v != Verdict::False; ++i)
        v = verdict_and(v, ctx.form.contains(m(i, i), conjugated));
    return v;
}

} // namespace

bool is_gq(const FormContext &ctx, const Matrix &sigma) {
    std::size_t n = half_size(sigma);
    Matrix p = psi(ctx, n);
    return sigma.conj_transpose() * p * sigma == p;
}

Matrix gq_inverse(const FormContext &ctx, const Matrix &sigma) {
    std::size_t n = half_size(sigma);
    // psi^{-1} = (0 bar(lambda) I; I 0)
    Matrix pinv(ctx.ring, 2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        pinv.set(i, n + i, ctx.lambda_bar());
        pinv.set(n + i, i, ctx.ring->one());
    }
    return pinv * sigma.conj_transpose() * psi(ctx, n);
}

Verdict is_hermitian(const FormContext &ctx, const Matrix &beta, HermitianKind kind) {
    if (!beta.square())
        throw DomainError("Hermitian test needs a square matrix");
    bool bar = kind == HermitianKind::LambdaBar;
    Value l = bar ? ctx.lambda_bar() : ctx.lambda;
    Matrix rhs = beta.conj_transpose().scaled_left(ctx.ring->neg(l));
    if (!(beta == rhs))
        return Verdict::False;
    return diagonal_in_form(ctx, beta, bar);
}

QuadraticReport is_lambda_quadratic(const FormContext &ctx, const Matrix &alpha, int condition) {
    std::size_t n = half_size(alpha);
    Matrix a = alpha.block(0, 0, n, n), b = alpha.block(0, n, n, n);
    Matrix c = alpha.block(n, 0, n, n), d = alpha.block(n, n, n, n);
    Matrix id = Matrix::identity(ctx.ring, n);
    Matrix as = a.conj_transpose(), bs = b.conj_transpose();
    Matrix cs = c.conj_transpose(), ds = d.conj_transpose();
    const auto herm = HermitianKind::Lambda;

    QuadraticReport rep;
    auto run = [&](int k) {
        switch (k) {
        case 1:
            if (!is_gq(ctx, alpha))
                return Verdict::False;
            return verdict_and(diagonal_in_form(ctx, as * c, false),
                               diagonal_in_form(ctx, bs * d, false));
        case 2:
            if (!(as * d + (cs * b).scaled_left(ctx.lambda) == id))
                return Verdict::False;
            return verdict_and(is_hermitian(ctx, as * c, herm), is_hermitian(ctx, bs * d, herm));
        case 3:
            if (!is_gq(ctx, alpha))
                return Verdict::False;
            return verdict_and(diagonal_in_form(ctx, a * bs, false),
                               diagonal_in_form(ctx, c * ds, false));
        case 4:
            if (!(a * ds + (b * cs).scaled_left(ctx.lambda) == id))
                return Verdict::False;
            return verdict_and(is_hermitian(ctx, a * bs, herm), is_hermitian(ctx, c * ds, herm));
        default:
            throw DomainError("quadratic condition must be 1..4 or all");
        }
    };
    if (condition != 0) {
        rep.conditions.fill(Verdict::Unknown);
        rep.conditions[static_cast<std::size_t>(condition - 1)] = run(condition);
        rep.verdict = rep.conditions[static_cast<std::size_t>(condition - 1)];
        return rep;
    }
    for (int k = 1; k <= 4; ++k)
        rep.conditions[static_cast<std::size_t>(k - 1)] = run(k);
    if (!(as * d + (cs * d).scaled_left(ctx.lambda) == id))
        rep.condition2_literal = Verdict::False;
    else
        rep.condition2_literal =
            verdict_and(is_hermitian(ctx, as * c, herm), is_hermitian(ctx, bs * d, herm));
    rep.agree = true;
    for (std::size_t k = 1; k < 4; ++k)
        rep.agree = rep.agree && rep.conditions[k] == rep.conditions[0];
    if (rep.agree) {
        rep.verdict = rep.conditions[0];
    } else {
        rep.verdict = Verdict::Unknown;
        rep.diagnostic = "conditions disagree:";
        for (std::size_t k = 0; k < 4; ++k)
            rep.diagnostic += " (" + std::to_string(k + 1) + ")=" +
                              std::string(to_string(rep.conditions[k]));
        rep.diagnostic += "; printed reading a*d+lambda*c*d=I gives " +
                          std::string(to_string(rep.condition2_literal));
    }
    return rep;
}

Matrix tilde(const FormContext &ctx, const Matrix &v) {
    if (v.cols() != 1 || v.rows() % 2)
        throw DomainError("tilde expects a column vector of even length");
    return v.conj_transpose() * psi(ctx, v.rows() / 2);
}

Value inner(const FormContext &ctx, const Matrix &v, const Matrix &w) {
    if (v.rows() != w.rows())
        throw DomainError("inner product of vectors of different lengths");
    return (tilde(ctx, v) * w)(0, 0);
}

Matrix m_form(const FormContext &ctx, const Matrix &v, const Matrix &w) {
    if (v.rows() != w.rows())
        throw DomainError("M(v, w) of vectors of different lengths");
    return v * tilde(ctx, w) - (w * tilde(ctx, v)).scaled_left(ctx.lambda_bar());
}

Matrix hyperbolic_H(const FormContext &ctx, const Matrix &alpha) {
    if (!alpha.square())
        throw DomainError("H(alpha) needs a square alpha");
    (void)ctx;
    auto inv = inverse(alpha.conj_transpose());
    if (!inv)
        inv = unipotent_inverse(alpha.conj_transpose());
    if (!inv)
        throw DomainError("H(alpha): alpha is not invertible");
    Matrix z = Matrix::zero(alpha.ring(), alpha.rows(), alpha.rows());
    return Matrix::from_blocks(alpha, z, z, *inv);
}

Matrix t12(const FormContext &ctx, const Matrix &beta, bool validate) {
    if (validate && is_hermitian(ctx, beta, HermitianKind::LambdaBar) == Verdict::False)
        throw DomainError("T12: argument is not bar-Lambda-Hermitian: " + beta.str());
    std::size_t n = beta.rows();
    Matrix id = Matrix::identity(ctx.ring, n);
    return Matrix::from_blocks(id, beta, Matrix::zero(ctx.ring, n, n), id);
}

Matrix t21(const FormContext &ctx, const Matrix &gamma, bool validate) {
    if (validate && is_hermitian(ctx, gamma, HermitianKind::Lambda) == Verdict::False)
        throw DomainError("T21: argument is not Lambda-Hermitian: " + gamma.str());
    std::size_t n = gamma.rows();
    Matrix id = Matrix::identity(ctx.ring, n);
    return Matrix::from_blocks(id, Matrix::zero(ctx.ring, n, n), gamma, id);
}

Matrix stabilize(const Matrix &alpha) {
    std::size_t n = half_size(alpha);
    std::size_t m = n + 1;
    Matrix out = Matrix::identity(alpha.ring(), 2 * m);
    for (std::size_t i = 0; i < 2 * n; ++i)
        for (std::size_t j = 0; j < 2 * n; ++j) {
            std::size_t ri = i < n ? i : i + 1;
            std::size_t cj = j < n ? j : j + 1;
            out.set(ri, cj, alpha(i, j));
        }
    return out;
}

Matrix perp(const Matrix &alpha, const Matrix &beta) {
    if (!alpha.square() || !beta.square() || alpha.rows() % 2 || beta.rows() % 2)
        throw DomainError("perp needs square matrices of even size");
    std::size_t r = alpha.rows(), s = beta.rows();
    Matrix out(alpha.ring(), r + s, r + s);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            out.set(i, j, alpha(i, j));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j)
            out.set(r + i, r + j, beta(i, j));
    return out;
}

HyperbolicEmbedding hyperbolic_embed_linear(const Matrix &alpha) {
    if (!alpha.square())
        throw DomainError("hyperbolic embedding needs a square matrix");
    auto inv = inverse(alpha);
    if (!inv)
        throw DomainError("hyperbolic embedding: alpha is not invertible");
    RingPtr h = make_hyperbolic(alpha.ring());
    Value one = h->one();
    FormContext ctx(h, one, FormParameter::max(h, one));
    std::size_t n = alpha.rows();
    Matrix lifted(h, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            lifted.set(i, j, Value{0, {alpha(i, j), (*inv)(j, i)}});
    Matrix m = hyperbolic_H(ctx, lifted);
    return {std::move(ctx), std::move(m)};
}

} // namespace formring
