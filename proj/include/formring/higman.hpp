#pragma once

// Higman-linearisation representatives [a; b, c]_n over R[X], their reduction
// to H(I - aX), and the unipotent reduction driver over graded rings.

#include "formring/graded.hpp"

namespace formring {

/// A: b is bar-Lambda-Hermitian and c is Lambda-Hermitian (the T12/T21
/// placement). B: both are Lambda-Hermitian.
enum class HermitianMode { A, B };
std::string_view to_string(HermitianMode m);
HermitianMode parse_hermitian_mode(std::string_view s);

struct HigmanRep {
    FormContext base;  // (R, lambda, Lambda)
    FormContext poly;  // (R[X], lambda, Lambda[X])
    std::int64_t n = 1;
    Matrix a, b, c;    // r x r over R
    Matrix assembled;  // (I - aX, bX; -cX^n, I + a*X + ... + (a*)^n X^n) over R[X]

    std::size_t r() const { return a.rows(); }
};

HigmanRep higman_make(const FormContext &ctx, const Matrix &a, const Matrix &b, const Matrix &c,
                      std::int64_t n);

struct HigmanValidation {
    Verdict verdict = Verdict::Unknown;
    std::vector<std::string> violations;
    QuadraticReport quadratic;
};
HigmanValidation higman_validate(const HigmanRep &rep, HermitianMode mode);

/// Certificate rep * eval(U) = H(I - aX); a must be nilpotent.
Certificate hyperbolic_reduce(const HigmanRep &rep);

struct UnipotentReport {
    Verdict verdict = Verdict::Unknown;
    std::vector<std::string> steps;
    std::optional<Certificate> certificate;  // (I + N) * eval(word) = I + N_0
};
/// I + N over a graded ring with N nilpotent; k must be a unit.
UnipotentReport unipotent_reduce_graded(const FormContext &ctx, const Matrix &N, std::int64_t k,
                                        const SearchOptions &opt = {});

} // namespace formring
