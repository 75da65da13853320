#pragma once

// Graded homotopy operator, dilation and local-global patching over
// graded rings R = R_0 + R_+ (polynomial or truncated rings, optionally
// localized at a degree-0 element).

#include "formring/word.hpp"

namespace formring {

/// Homogeneous components b_0, b_1, ... of b as elements of `r`. Throws if r
/// is not graded.
std::vector<Value> graded_components(const Ring &r, const Value &b);
bool is_graded(const Ring &r);
bool is_degree_zero(const Ring &r, const Value &b);
Value degree_zero_part(const Ring &r, const Value &b);

/// b+(a) = sum b_i a^i for a of degree 0.
Value plus_eval(const Ring &r, const Value &b, const Value &a);
/// Entrywise plus_eval.
Matrix matrix_plus_eval(const Matrix &m, const Value &a);
/// The word with every generator argument replaced by its plus-evaluation.
GeneratorWord word_plus_eval(const GeneratorWord &w, const Value &a);

/// Certificate that word_plus_eval(w, a) evaluates to eval(w)+(a).
Certificate elementary_plus(const GeneratorWord &w, const Value &a);

/// Graded dilation over R_s: returns l, the pullback of eval(w)+(s^l) to R
/// and a word over R whose evaluation equals the pullback.
struct DilationResult {
    std::int64_t l = 0;
    Matrix pullback;
    Certificate certificate;
};
DilationResult dilate(const GeneratorWord &w, std::optional<std::int64_t> l = std::nullopt,
                      std::int64_t max_l = 64);

/// A certified combination sum c_i s_i^{l_i} = 1 of degree-0 elements.
struct CoverTerm {
    Value s;
    std::int64_t l = 1;
    Value c;
};
struct Cover {
    RingPtr ring;
    std::vector<CoverTerm> terms;

    Value term(std::size_t i) const;
    bool certified() const;
    std::string str() const;
};
/// "3^1,4^1" or "2*3^1,5"; elements are read in `ring`.
Cover parse_cover(RingPtr ring, std::string_view text);

/// F_i = alpha+(b_i + ... + b_r) * alpha+(b_{i+1} + ... + b_r)^{-1}.
struct TelescopeResult {
    std::vector<Matrix> factors;
    bool product_matches = false;
};
TelescopeResult telescope_patch(const FormContext &ctx, const Matrix &alpha, const Cover &cover);

struct SearchOptions {
    int depth = 6;
    int beam = 16;
    int max_degree = 3;
};

/// Bounded beam search for a word w with eval(w) == target, arguments drawn
/// from multiples of `scale`. Returns nullopt when the bound is exhausted.
std::optional<GeneratorWord> search_elementary(const FormContext &ctx, const Matrix &target,
                                               const Value &scale, const SearchOptions &opt);

struct LocalPiece {
    std::string ideal;
    Value idempotent;
    Matrix factor;
    std::optional<GeneratorWord> word;
};
struct LocalGlobalResult {
    Verdict verdict = Verdict::Unknown;
    Cover cover;
    std::vector<LocalPiece> pieces;
    std::optional<Certificate> certificate;
    std::string note;
};
/// For graded R over a finite commutative R_0: searches an elementary word in
/// each maximal-ideal localization of R_0 (realized as idempotent corners),
/// patches the pieces and certifies the result.
LocalGlobalResult local_global_drive(const FormContext &ctx, const Matrix &alpha,
                                     const SearchOptions &opt = {});

/// Primitive idempotents of a finite commutative ring, one per maximal ideal.
std::vector<Value> primitive_idempotents(const Ring &r0);

} // namespace formring
