#pragma once

#include "formring/quadratic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace formring {

/// Elementary generator families. QE/QR/QL generate EQ(2n, R, Lambda);
/// HYP_E, T12, T21 generate the Lambda-elementary group EQ^lambda.
enum class GenKind { QE, QR, QL, HYP_E, T12, T21 };

std::string_view to_string(GenKind k);
std::optional<GenKind> parse_gen_kind(std::string_view s);

/// One generator. Indices are 1-based, as in the usual notation
/// q-epsilon_ij(a), with rho(i) = n + i. T12/T21 carry an n x n block instead
/// of a scalar argument. An inverted symbol evaluates to the generator at the
/// negated argument (splitting law).
struct GeneratorSymbol {
    GenKind kind = GenKind::QE;
    std::size_t i = 0, j = 0;
    Value arg;
    std::optional<Matrix> block;
    bool inverted = false;

    GeneratorSymbol inverse() const {
        GeneratorSymbol s = *this;
        s.inverted = !s.inverted;
        return s;
    }
};

/// Validates indices and the diagonal-argument constraints, then builds the
/// symbol:
///   QR_ii(a): a = -bar(lambda) bar(a), a in bar(Lambda)
///   QL_ii(a): a = -lambda bar(a),      a in Lambda
GeneratorSymbol make_symbol(const FormContext &ctx, std::size_t n, GenKind kind, std::size_t i,
                            std::size_t j, Value a);
GeneratorSymbol make_block_symbol(const FormContext &ctx, GenKind kind, Matrix block);

/// Nonzero entries of G - I (0-based) for the symbol's matrix G.
struct SparseEntry {
    std::size_t row, col;
    Value value;
};
std::vector<SparseEntry> symbol_entries(const FormContext &ctx, std::size_t n,
                                        const GeneratorSymbol &s);
Matrix symbol_matrix(const FormContext &ctx, std::size_t n, const GeneratorSymbol &s);

/// m <- m * G and m <- G * m without forming G.
void apply_right(Matrix &m, const std::vector<SparseEntry> &g);
void apply_left(const std::vector<SparseEntry> &g, Matrix &m);

/// The symbol's argument with the inversion folded in.
Value effective_arg(const FormContext &ctx, const GeneratorSymbol &s);
Matrix effective_block(const GeneratorSymbol &s);

class GeneratorWord {
  public:
    GeneratorWord(FormContext ctx, std::size_t n, std::vector<GeneratorSymbol> symbols = {})
        : ctx_(std::move(ctx)), n_(n), symbols_(std::move(symbols)) {}

    const FormContext &context() const { return ctx_; }
    std::size_t n() const { return n_; }
    const std::vector<GeneratorSymbol> &symbols() const { return symbols_; }
    std::vector<GeneratorSymbol> &symbols() { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }

    void push(GeneratorSymbol s) { symbols_.push_back(std::move(s)); }
    void append(const GeneratorWord &w);

    /// Ordered product of the symbol matrices.
    Matrix eval() const;
    /// Reverse order, each symbol inverted.
    GeneratorWord inverse() const;

    /// One symbol per line: "QE 1 2 <elem>", "QL 3 3 <elem> INV", "T12 [[...]]".
    std::string serialize() const;
    static GeneratorWord parse(const FormContext &ctx, std::size_t n, std::string_view text);

  private:
    FormContext ctx_;
    std::size_t n_;
    std::vector<GeneratorSymbol> symbols_;
};

inline Matrix eval_word(const GeneratorWord &w) { return w.eval(); }

/// A claim backed by a word. Verification is exact re-evaluation:
///   WordEquals: eval(word) == target
///   Reduces:    subject * eval(word) == target
struct Certificate {
    enum class Claim { WordEquals, Reduces };
    Claim claim = Claim::WordEquals;
    std::optional<Matrix> subject;
    Matrix target;
    GeneratorWord word;

    bool verify() const;
    const FormContext &context() const { return word.context(); }
};

Certificate make_equals_certificate(GeneratorWord w, Matrix target);
Certificate make_reduction_certificate(Matrix subject, GeneratorWord w, Matrix target);

} // namespace formring
