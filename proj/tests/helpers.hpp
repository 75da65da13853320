#pragma once

#include "formring/quadratic.hpp"

#include <string>
#include <vector>

namespace testing_helpers {

using namespace formring;

inline Matrix mat(const RingPtr &r, const std::vector<std::vector<std::string>> &grid) {
    return Matrix::from_strings(r, grid);
}

inline Value el(const RingPtr &r, const std::string &s) { return parse_element(*r, s); }

inline FormContext ctx(const std::string &ring, const std::string &lambda, const std::string &form) {
    return FormContext::parse(ring, lambda, form);
}

inline FormContext symplectic_z() { return ctx("Z", "-1", "max"); }

/// Column vector e_k (0-based) of length len.
inline Matrix e(const RingPtr &r, std::size_t len, std::size_t k) {
    return Matrix::unit_vector(r, len, k);
}

/// I + sum of (row, col, value) entries, 1-based positions.
inline Matrix id_plus(const RingPtr &r, std::size_t size,
                      const std::vector<std::tuple<std::size_t, std::size_t, std::string>> &es) {
    Matrix m = Matrix::identity(r, size);
    for (auto &[i, j, v] : es)
        m.set(i - 1, j - 1, r->add(m(i - 1, j - 1), parse_element(*r, v)));
    return m;
}

} // namespace testing_helpers
