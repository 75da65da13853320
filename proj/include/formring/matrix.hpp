#pragma once

#include "formring/ring.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace formring {

/// Dense matrix over a ring of the tower. Indices are 0-based; the usual
/// 1-based generator indices are translated at the word layer.
class Matrix {
  public:
    Matrix(RingPtr ring, std::size_t rows, std::size_t cols);

    static Matrix identity(RingPtr ring, std::size_t n);
    static Matrix zero(RingPtr ring, std::size_t rows, std::size_t cols) {
        return Matrix(std::move(ring), rows, cols);
    }
    /// Builds from element strings, row-major.
    static Matrix from_strings(RingPtr ring, const std::vector<std::vector<std::string>> &grid);
    /// Column vector e_k (0-based) of length n.
    static Matrix unit_vector(RingPtr ring, std::size_t n, std::size_t k);

    const RingPtr &ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    const Value &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, Value v) { data_[i * cols_ + j] = std::move(v); }

    Matrix operator*(const Matrix &o) const;
    Matrix operator+(const Matrix &o) const;
    Matrix operator-(const Matrix &o) const;
    Matrix operator-() const;
    bool operator==(const Matrix &o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    /// s * M and M * s.
    Matrix scaled_left(const Value &s) const;
    Matrix scaled_right(const Value &s) const;

    Matrix transpose() const;
    /// (a_ij)* = (bar(a_ji)).
    Matrix conj_transpose() const;

    Matrix block(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const;
    /// (a b; c d) from four equally sized square blocks.
    static Matrix from_blocks(const Matrix &a, const Matrix &b, const Matrix &c, const Matrix &d);

    Matrix map(const std::function<Value(const Value &)> &f) const;
    /// Same entries reinterpreted in another ring via `f`.
    Matrix map_to(RingPtr target, const std::function<Value(const Value &)> &f) const;

    bool is_identity() const;
    bool is_zero() const;

    std::vector<std::vector<std::string>> to_strings() const;
    std::string str() const;

  private:
    RingPtr ring_;
    std::size_t rows_, cols_;
    std::vector<Value> data_;
};

/// Division-free determinant over a commutative ring (subset recursion,
/// exponential in the size; intended for sizes up to about 16).
Value determinant(const Matrix &m);
/// Inverse through the adjugate when the determinant is a unit.
std::optional<Matrix> inverse(const Matrix &m);
/// Inverse by the finite geometric series when m = I - N with N nilpotent of
/// index at most the size of m.
std::optional<Matrix> unipotent_inverse(const Matrix &m);
/// Smallest k <= size with N^k = 0, found by powers of N.
std::optional<std::size_t> nilpotency_index(const Matrix &n);

Matrix power(const Matrix &m, std::uint64_t e);

} // namespace formring
