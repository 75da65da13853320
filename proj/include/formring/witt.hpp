#pragma once

// Truncated power series 1 + X P(X) in R_t = R[X]/(X^{t+1}): the factor step
// (1 + X^r P) = (1 + X^r P(0)) (1 + X^{r+1} Q), Witt coordinates, ghost
// components and the k-torsion step check.

#include "formring/ring.hpp"

#include <vector>

namespace formring {

/// Coefficients c_0, c_1, ... over a base ring; index is the degree.
using Coeffs = std::vector<Value>;

/// Reads a polynomial string over `ring` (poly or trunc) into base-ring
/// coefficients. A base-ring string is accepted as a constant.
Coeffs coefficients_of(const Ring &ring, const Value &v);
/// The inverse of coefficients_of for a poly or trunc ring.
Value from_coefficients(const Ring &ring, const Coeffs &c);

/// Multiplication in R_t.
Coeffs series_mul(const Ring &r, const Coeffs &a, const Coeffs &b, std::int64_t t);
/// Inverse of a series with unit constant term in R_t.
Coeffs series_inverse(const Ring &r, const Coeffs &a, std::int64_t t);
Coeffs series_pow(const Ring &r, const Coeffs &a, std::uint64_t e, std::int64_t t);
/// Drops coefficients above degree t and trailing zeros.
Coeffs truncate(const Ring &r, Coeffs a, std::int64_t t);

struct FactorStep {
    Value head;  // P(0); the head factor is 1 + X^r P(0)
    Coeffs q;    // deg q < t - r
};
/// Requires r >= 1, t >= 0.
FactorStep witt_factor_step(const Ring &r, const Coeffs &p, std::int64_t rr, std::int64_t t);

struct WittCoordinates {
    RingPtr base;
    std::int64_t t = 0;
    std::vector<Value> a;  // a_1 ... a_t

    std::string str() const;
};
/// f must have constant term 1; f = prod_{i=1..t} (1 + a_i X^i) in R_t.
WittCoordinates witt_decompose(RingPtr base, const Coeffs &f, std::int64_t t);
Coeffs witt_recompose(const WittCoordinates &w);

/// g_n = coefficient of X^n in X f'/f, n = 1..t. Commutative base only.
std::vector<Value> ghost_vector(RingPtr base, const Coeffs &f, std::int64_t t);
/// g_n = sum_{d | n} (-1)^{n/d - 1} d a_d^{n/d}.
std::vector<Value> ghost_from_coordinates(const WittCoordinates &w);

struct TorsionCheck {
    bool hypothesis = false;  // (1 + X^r P)^{k^r} = 1 in R_t
    bool conclusion = false;  // P(0) = 0
    Coeffs q;                 // from the factor step when the hypothesis holds

    /// False only for a counterexample.
    Verdict verdict() const { return to_verdict(!hypothesis || conclusion); }
};
TorsionCheck torsion_step_check(const Ring &r, const Coeffs &p, std::int64_t rr, std::int64_t t,
                                std::int64_t k);

struct TorsionScan {
    std::uint64_t cases = 0;
    std::uint64_t hypothesis_holds = 0;
    std::vector<std::pair<std::int64_t, Coeffs>> counterexamples;  // (r, P)
};
/// Every P of degree <= t - r over a finite ring, for r = 1..t.
TorsionScan torsion_scan(const Ring &r, std::int64_t k, std::int64_t t);

} // namespace formring
