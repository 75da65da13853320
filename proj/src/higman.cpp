#include "formring/higman.hpp"

#include "formring/elementary.hpp"

namespace formring {

std::string_view to_string(HermitianMode m) { return m == HermitianMode::A ? "A" : "B"; }

HermitianMode parse_hermitian_mode(std::string_view s) {
    if (s == "A" || s == "a")
        return HermitianMode::A;
    if (s == "B" || s == "b")
        return HermitianMode::B;
    throw ParseError("unknown Hermitian mode '" + std::string(s) + "' (expected A or B)");
}

namespace {

std::string fresh_variable(const Ring &r) {
    for (std::string v : {"X", "T", "Z0"})
        if (!r.variable(v))
            return v;
    throw DomainError("no free variable name for the polynomial extension of " + r.describe());
}

} // namespace

HigmanRep higman_make(const FormContext &ctx, const Matrix &a, const Matrix &b, const Matrix &c,
                      std::int64_t n) {
    if (n < 1)
        throw DomainError("Higman representative needs n >= 1");
    if (!a.square() || !b.square() || !c.square() || b.rows() != a.rows() || c.rows() != a.rows())
        throw DomainError("a, b, c must be square blocks of the same size");
    if (a.rows() == 0)
        throw DomainError("blocks must be nonempty");
    std::string var = fresh_variable(*ctx.ring);
    FormContext poly = ctx.polynomial_extension(var);
    const Ring &px = *poly.ring;
    Value x = *px.variable(var);
    auto lift = [&](const Matrix &m) { return m.map_to(poly.ring, [&](const Value &v) { return px.lift(v); }); };
    std::size_t r = a.rows();
    Matrix id = Matrix::identity(poly.ring, r);
    Matrix pa = lift(a), pas = lift(a.conj_transpose());
    Matrix d = id, term = id;
    for (std::int64_t i = 1; i <= n; ++i) {
        term = (term * pas).scaled_left(x);
        d = d + term;
    }
    Matrix assembled = Matrix::from_blocks(id - pa.scaled_left(x), lift(b).scaled_left(x),
                                           -lift(c).scaled_left(px.pow(x, static_cast<std::uint64_t>(n))), d);
    return {ctx, poly, n, a, b, c, assembled};
}

HigmanValidation higman_validate(const HigmanRep &rep, HermitianMode mode) {
    HigmanValidation out;
    const FormContext &ctx = rep.base;
    HermitianKind bk = mode == HermitianMode::A ? HermitianKind::LambdaBar : HermitianKind::Lambda;
    HermitianKind ck = HermitianKind::Lambda;
    Matrix as = rep.a.conj_transpose();
    Matrix ab = rep.a * rep.b, ca = rep.c * rep.a;
    Verdict v = Verdict::True;
    auto require = [&](Verdict ok, const std::string &clause) {
        if (ok != Verdict::True)
            out.violations.push_back(clause);
        v = verdict_and(v, ok);
    };
    require(is_hermitian(ctx, rep.b, bk), "(1) b is not Hermitian");
    require(is_hermitian(ctx, ab, bk), "(1) ab is not Hermitian");
    require(to_verdict(ab == rep.b * as), "(1) ab != ba*");
    require(is_hermitian(ctx, rep.c, ck), "(2) c is not Hermitian");
    require(is_hermitian(ctx, ca, ck), "(2) ca is not Hermitian");
    require(to_verdict(ca == as * rep.c), "(2) ca != a*c");
    auto e = static_cast<std::uint64_t>(rep.n + 1);
    require(to_verdict(rep.b * rep.c == power(rep.a, e)), "(3) bc != a^(n+1)");
    require(to_verdict(rep.c * rep.b == power(as, e)), "(3) cb != (a*)^(n+1)");
    out.quadratic = is_lambda_quadratic(rep.poly, rep.assembled);
    require(out.quadratic.verdict, "assembled matrix is not Lambda-quadratic over R[X]");
    out.verdict = v;
    return out;
}

Certificate hyperbolic_reduce(const HigmanRep &rep) {
    if (!nilpotency_index(rep.a))
        throw DomainError("a is not nilpotent within the size bound; I - aX is not invertible");
    TriangularReduction red = reduce_triangular(rep.poly, rep.assembled);
    Matrix corner = rep.assembled.block(0, 0, rep.r(), rep.r());
    if (!(red.alpha == corner))
        throw DomainError("reduction altered the upper-left block");
    if (!red.certificate.verify())
        throw DomainError("hyperbolic reduction certificate failed to verify");
    return red.certificate;
}

UnipotentReport unipotent_reduce_graded(const FormContext &ctx, const Matrix &N, std::int64_t k,
                                        const SearchOptions &opt) {
    const Ring &r = *ctx.ring;
    if (!is_graded(r))
        throw DomainError("unipotent reduction needs a graded ring, got " + r.describe());
    if (!N.square() || N.rows() % 2)
        throw DomainError("N must be 2n x 2n");
    if (k < 1 || !r.unit_inverse(r.from_int(k)))
        throw DomainError("k = " + std::to_string(k) + " is not invertible in " + r.describe());
    auto nil = nilpotency_index(N);
    if (!nil)
        throw DomainError("N is not nilpotent within the size bound");
    UnipotentReport rep;
    Matrix start = Matrix::identity(ctx.ring, N.rows()) + N;
    if (!is_gq(ctx, start))
        throw DomainError("I + N is not in GQ");
    rep.steps.push_back("N nilpotent of index " + std::to_string(*nil) + "; k = " + std::to_string(k) + " is a unit");

    // (i) homogenize: the component of degree d becomes the coefficient of X^d
    std::size_t top = 0;
    for (std::size_t i = 0; i < N.rows(); ++i)
        for (std::size_t j = 0; j < N.cols(); ++j)
            top = std::max(top, graded_components(r, N(i, j)).size());
    rep.steps.push_back("homogenize: components in degrees 0.." + std::to_string(top ? top - 1 : 0));

    Matrix N0 = N.map([&](const Value &v) { return degree_zero_part(r, v); });
    Matrix goal = Matrix::identity(ctx.ring, N.rows()) + N0;
    if (!is_gq(ctx, goal))
        throw DomainError("I + N_0 is not in GQ");

    // (ii) coefficient analysis: (I + N)^{-1} (I + N_0) is congruent to I mod R_+
    Matrix target = gq_inverse(ctx, start) * goal;
    if (!matrix_plus_eval(target, r.zero()).is_identity())
        throw DomainError("degree-0 part of (I + N)^{-1}(I + N_0) is not I");
    rep.steps.push_back("coefficient analysis: (I + N)^{-1}(I + N_0) = I modulo R_+");

    std::size_t n = N.rows() / 2;
    if (target.is_identity()) {
        rep.steps.push_back("already of the form I + N_0; empty word");
        rep.certificate = make_reduction_certificate(start, GeneratorWord(ctx, n), goal);
        rep.verdict = to_verdict(rep.certificate->verify());
        return rep;
    }
    if (n < 3)
        throw DomainError("the local-global leg needs n >= 3; stabilize first");

    // (iii) local-global search and patching
    LocalGlobalResult lg = local_global_drive(ctx, target, opt);
    rep.steps.push_back("local-global: " + std::string(to_string(lg.verdict)) +
                        (lg.note.empty() ? "" : " (" + lg.note + ")"));
    if (lg.verdict != Verdict::True || !lg.certificate)
        return rep;
    rep.certificate = make_reduction_certificate(start, lg.certificate->word, goal);
    rep.verdict = rep.certificate->verify() ? Verdict::True : Verdict::Unknown;
    if (rep.verdict != Verdict::True)
        rep.steps.push_back("assembled certificate failed to verify");
    return rep;
}

} // namespace formring
