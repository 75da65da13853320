#pragma once

#include "formring/form_parameter.hpp"
#include "formring/matrix.hpp"

#include <array>
#include <string>

namespace formring {

/// The data (R, lambda, Lambda) every group-level operation needs.
struct FormContext {
    RingPtr ring;
    Value lambda;
    FormParameter form;

    FormContext(RingPtr r, Value l, FormParameter f)
        : ring(std::move(r)), lambda(ring->normalize(l)), form(std::move(f)) {}

    /// (R, lambda, Lambda) with Lambda built from `mode` over R.
    static FormContext make(RingPtr r, Value l, FormParameter::Mode mode,
                            std::vector<Value> generators = {});
    /// Parses "Z/6", "-1", "max" style header fields.
    static FormContext parse(std::string_view ring, std::string_view lambda, std::string_view form);

    Value lambda_bar() const { return ring->involve(lambda); }

    /// (R[X], lambda, Lambda[X]) with the involution fixing X.
    FormContext polynomial_extension(const std::string &var = "X") const;

    /// The same form data over `target`, reached from this ring through `map`.
    template <class Map> FormContext rebase(RingPtr target, Map &&map) const {
        return FormContext(target, map(lambda), form.rebase(target, map));
    }

    std::string header(std::size_t n) const;
};

/// psi_n = (0 I_n; lambda I_n 0).
Matrix psi(const FormContext &ctx, std::size_t n);

/// sigma* psi_n sigma == psi_n.
bool is_gq(const FormContext &ctx, const Matrix &sigma);
/// sigma^{-1} = psi_n^{-1} sigma* psi_n, valid for members of GQ.
Matrix gq_inverse(const FormContext &ctx, const Matrix &sigma);

enum class HermitianKind { Lambda, LambdaBar };

/// beta = -lambda beta* with diagonal in Lambda (or the barred versions).
Verdict is_hermitian(const FormContext &ctx, const Matrix &beta, HermitianKind kind);

/// Per-condition verdicts for the four equivalent Lambda-quadratic conditions.
/// `condition2_literal` evaluates the printed reading a*d + lambda c*d = I
/// (which is not an identity of the group); `condition2` uses a*d + lambda c*b.
struct QuadraticReport {
    std::array<Verdict, 4> conditions{};
    Verdict condition2_literal = Verdict::Unknown;
    bool agree = true;
    Verdict verdict = Verdict::Unknown;
    std::string diagnostic;
};

/// condition in {1,2,3,4}; 0 means all four (with an agreement check).
QuadraticReport is_lambda_quadratic(const FormContext &ctx, const Matrix &alpha, int condition = 0);

/// v~ = bar(v)^t psi_n as a 1 x 2n row.
Matrix tilde(const FormContext &ctx, const Matrix &v);
/// <v, w> = v~ w.
Value inner(const FormContext &ctx, const Matrix &v, const Matrix &w);
/// M(v, w) = v w~ - bar(lambda) w v~.
Matrix m_form(const FormContext &ctx, const Matrix &v, const Matrix &w);

/// H(alpha) = (alpha 0; 0 (alpha*)^{-1}); throws if alpha is not invertible.
Matrix hyperbolic_H(const FormContext &ctx, const Matrix &alpha);
/// T12(beta) = (I beta; 0 I), beta bar-Lambda-Hermitian unless validate=false.
Matrix t12(const FormContext &ctx, const Matrix &beta, bool validate = true);
/// T21(gamma) = (I 0; gamma I), gamma Lambda-Hermitian unless validate=false.
Matrix t21(const FormContext &ctx, const Matrix &gamma, bool validate = true);

/// (a b; c d) -> (a 0 b 0; 0 1 0 0; c 0 d 0; 0 0 0 1).
Matrix stabilize(const Matrix &alpha);
/// Block-diagonal alpha (+) beta.
Matrix perp(const Matrix &alpha, const Matrix &beta);

/// Image of alpha in GL_n(R) inside GQ^1(2n, H(R), Lambda_max):
/// H(a~) with a~ = (alpha, (alpha^{-1})^t). Returns the context over H(R) too.
struct HyperbolicEmbedding {
    FormContext ctx;
    Matrix matrix;
};
HyperbolicEmbedding hyperbolic_embed_linear(const Matrix &alpha);

} // namespace formring
