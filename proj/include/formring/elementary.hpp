#pragma once

// Constructive factorizations into elementary generators. Every result comes
// with a word whose evaluation can be checked exactly.

#include "formring/word.hpp"

namespace formring {

struct Generated {
    GeneratorSymbol symbol;
    Matrix matrix;
};
Generated gen(const FormContext &ctx, GenKind kind, std::size_t i, std::size_t j, const Value &a,
              std::size_t n);

/// Splits a word over a graded ring into conjugates of positive-degree
/// generators followed by the degree-0 generators:
///   word = (prod eps_{k-1} eta_k(a_k+) eps_{k-1}^{-1}) * (prod eta_k(a_k0))
struct GradedSplit {
    GeneratorWord conjugate;
    GeneratorWord residual;
};
GradedSplit graded_normalize(const GeneratorWord &w);

/// A word for I + M(v, w) with v = eval(eps) e_1 and <v, w> = 0 (n >= 3).
Certificate factor_transvection(const GeneratorWord &eps, const Matrix &w);

/// Right-multiplies A by T12/T21 symbols until it is H(alpha).
struct TriangularReduction {
    Certificate certificate; // Reduces: A * eval(word) == H(alpha)
    Matrix alpha;
};
TriangularReduction reduce_triangular(const FormContext &ctx, const Matrix &A);

/// For alpha in E_n(R): HYP_E symbols U with H(alpha) * eval(U) = I, found by
/// unit-pivot column elimination. nullopt if a pivot is not a unit.
std::optional<GeneratorWord> linear_reduce(const FormContext &ctx, const Matrix &alpha);

} // namespace formring
