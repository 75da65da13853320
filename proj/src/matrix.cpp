#include "formring/matrix.hpp"

#include <bit>
#include <sstream>

namespace formring {

Matrix::Matrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, ring_->zero()) {}

Matrix Matrix::identity(RingPtr ring, std::size_t n) {
    Matrix m(std::move(ring), n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, m.ring_->one());
    return m;
}

Matrix Matrix::from_strings(RingPtr ring, const std::vector<std::vector<std::string>> &grid) {
    std::size_t rows = grid.size();
    std::size_t cols = rows ? grid[0].size() : 0;
    Matrix m(std::move(ring), rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (grid[i].size() != cols)
            throw ParseError("matrix row " + std::to_string(i + 1) + " has " +
                             std::to_string(grid[i].size()) + " entries, expected " +
                             std::to_string(cols));
        for (std::size_t j = 0; j < cols; ++j)
            m.set(i, j, parse_element(*m.ring_, grid[i][j]));
    }
    return m;
}

Matrix Matrix::unit_vector(RingPtr ring, std::size_t n, std::size_t k) {
    Matrix v(std::move(ring), n, 1);
    v.set(k, 0, v.ring_->one());
    return v;
}

Matrix Matrix::operator*(const Matrix &o) const {
    if (cols_ != o.rows_)
        throw DomainError("matrix product shape mismatch");
    const Ring &r = *ring_;
    Matrix out(ring_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Value &a = (*this)(i, k);
            if (r.is_zero(a))
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Value &b = o(k, j);
                if (r.is_zero(b))
                    continue;
                out.data_[i * o.cols_ + j] = r.add(out(i, j), r.mul(a, b));
            }
        }
    return out;
}

Matrix Matrix::operator+(const Matrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DomainError("matrix sum shape mismatch");
    Matrix out(ring_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = ring_->add(data_[i], o.data_[i]);
    return out;
}

Matrix Matrix::operator-(const Matrix &o) const { return *this + (-o); }

Matrix Matrix::operator-() const {
    return map([this](const Value &v) { return ring_->neg(v); });
}

Matrix Matrix::scaled_left(const Value &s) const {
    return map([&](const Value &v) { return ring_->mul(s, v); });
}

Matrix Matrix::scaled_right(const Value &s) const {
    return map([&](const Value &v) { return ring_->mul(v, s); });
}

Matrix Matrix::transpose() const {
    Matrix out(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out.set(j, i, (*this)(i, j));
    return out;
}

Matrix Matrix::conj_transpose() const {
    Matrix out(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out.set(j, i, ring_->involve((*this)(i, j)));
    return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const {
    if (r0 + h > rows_ || c0 + w > cols_)
        throw DomainError("block out of range");
    Matrix out(ring_, h, w);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < w; ++j)
            out.set(i, j, (*this)(r0 + i, c0 + j));
    return out;
}

Matrix Matrix::from_blocks(const Matrix &a, const Matrix &b, const Matrix &c, const Matrix &d) {
    std::size_t n = a.rows();
    for (const Matrix *m : {&a, &b, &c, &d})
        if (m->rows() != n || m->cols() != n)
            throw DomainError("blocks must be square of equal size");
    Matrix out(a.ring(), 2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            out.set(i, j, a(i, j));
            out.set(i, n + j, b(i, j));
            out.set(n + i, j, c(i, j));
            out.set(n + i, n + j, d(i, j));
        }
    return out;
}

Matrix Matrix::map(const std::function<Value(const Value &)> &f) const {
    return map_to(ring_, f);
}

Matrix Matrix::map_to(RingPtr target, const std::function<Value(const Value &)> &f) const {
    Matrix out(std::move(target), rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = f(data_[i]);
    return out;
}

bool Matrix::is_identity() const {
    if (!square())
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const Value &v = (*this)(i, j);
            if (i == j ? !ring_->is_one(v) : !ring_->is_zero(v))
                return false;
        }
    return true;
}

bool Matrix::is_zero() const {
    for (const auto &v : data_)
        if (!ring_->is_zero(v))
            return false;
    return true;
}

std::vector<std::vector<std::string>> Matrix::to_strings() const {
    std::vector<std::vector<std::string>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out[i].push_back(ring_->format((*this)(i, j)));
    return out;
}

std::string Matrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? ", " : "") << ring_->format((*this)(i, j));
    }
    os << "]";
    return os.str();
}

Value determinant(const Matrix &m) {
    if (!m.square())
        throw DomainError("determinant of a non-square matrix");
    const Ring &r = *m.ring();
    if (!r.commutative())
        throw DomainError("determinant needs a commutative ring");
    std::size_t n = m.rows();
    if (n == 0)
        return r.one();
    if (n > 20)
        throw DomainError("determinant size limit exceeded");
    // f[mask]: signed sum over bijections rows 0..|mask|-1 -> columns in mask
    std::vector<Value> f(std::size_t{1} << n, r.zero());
    f[0] = r.one();
    for (std::size_t mask = 0; mask < f.size(); ++mask) {
        if (r.is_zero(f[mask]))
            continue;
        std::size_t row = static_cast<std::size_t>(std::popcount(mask));
        if (row >= n)
            continue;
        for (std::size_t c = 0; c < n; ++c) {
            if (mask & (std::size_t{1} << c))
                continue;
            const Value &entry = m(row, c);
            if (r.is_zero(entry))
                continue;
            // sign from the columns already used to the right of c
            int inversions = std::popcount(mask >> (c + 1));
            Value term = r.mul(f[mask], entry);
            if (inversions % 2)
                term = r.neg(term);
            std::size_t next = mask | (std::size_t{1} << c);
            f[next] = r.add(f[next], term);
        }
    }
    return f.back();
}

std::optional<Matrix> inverse(const Matrix &m) {
    if (!m.square())
        throw DomainError("inverse of a non-square matrix");
    const Ring &r = *m.ring();
    std::size_t n = m.rows();
    auto det_inv = r.unit_inverse(determinant(m));
    if (!det_inv)
        return std::nullopt;
    Matrix adj(m.ring(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // cofactor C_ij goes to adj(j, i)
            Matrix minor(m.ring(), n - 1, n - 1);
            for (std::size_t a = 0, ra = 0; a < n; ++a) {
                if (a == i)
                    continue;
                for (std::size_t b = 0, cb = 0; b < n; ++b) {
                    if (b == j)
                        continue;
                    minor.set(ra, cb++, m(a, b));
                }
                ++ra;
            }
            Value c = determinant(minor);
            if ((i + j) % 2)
                c = r.neg(c);
            adj.set(j, i, r.mul(c, *det_inv));
        }
    if (!(adj * m).is_identity())
        return std::nullopt;
    return adj;
}

std::optional<std::size_t> nilpotency_index(const Matrix &nmat) {
    if (!nmat.square())
        throw DomainError("nilpotency of a non-square matrix");
    Matrix p = Matrix::identity(nmat.ring(), nmat.rows());
    for (std::size_t k = 0; k <= nmat.rows(); ++k) {
        if (p.is_zero())
            return k;
        p = p * nmat;
    }
    return std::nullopt;
}

std::optional<Matrix> unipotent_inverse(const Matrix &m) {
    Matrix id = Matrix::identity(m.ring(), m.rows());
    Matrix nil = id - m; // m = I - nil
    if (!nilpotency_index(nil))
        return std::nullopt;
    Matrix sum = id;
    Matrix p = id;
    for (std::size_t k = 0; k < m.rows(); ++k) {
        p = p * nil;
        if (p.is_zero())
            break;
        sum = sum + p;
    }
    return sum;
}

Matrix power(const Matrix &m, std::uint64_t e) {
    Matrix result = Matrix::identity(m.ring(), m.rows());
    Matrix b = m;
    while (e) {
        if (e & 1u)
            result = result * b;
        e >>= 1u;
        if (e)
            b = b * b;
    }
    return result;
}

} // namespace formring
