#include "formring/witt.hpp"

namespace formring {

Coeffs coefficients_of(const Ring &ring, const Value &v) {
    if (ring.kind() == Ring::Kind::Poly || ring.kind() == Ring::Kind::Truncated)
        return v.parts;
    return ring.is_zero(v) ? Coeffs{} : Coeffs{v};
}

Value from_coefficients(const Ring &ring, const Coeffs &c) {
    if (ring.kind() != Ring::Kind::Poly && ring.kind() != Ring::Kind::Truncated)
        throw DomainError("ring " + ring.describe() + " is not a polynomial ring");
    Value v;
    v.parts = c;
    return ring.normalize(v);
}

Coeffs truncate(const Ring &r, Coeffs a, std::int64_t t) {
    if (static_cast<std::int64_t>(a.size()) > t + 1)
        a.resize(static_cast<std::size_t>(t + 1));
    while (!a.empty() && r.is_zero(a.back()))
        a.pop_back();
    return a;
}

Coeffs series_mul(const Ring &r, const Coeffs &a, const Coeffs &b, std::int64_t t) {
    if (a.empty() || b.empty())
        return {};
    std::size_t len = std::min<std::size_t>(a.size() + b.size() - 1, static_cast<std::size_t>(t + 1));
    Coeffs out(len, r.zero());
    for (std::size_t i = 0; i < a.size() && i < len; ++i)
        for (std::size_t j = 0; i + j < len && j < b.size(); ++j)
            out[i + j] = r.add(out[i + j], r.mul(a[i], b[j]));
    return truncate(r, std::move(out), t);
}

Coeffs series_inverse(const Ring &r, const Coeffs &a, std::int64_t t) {
    if (a.empty())
        throw DomainError("the zero series is not invertible");
    auto u = r.unit_inverse(a[0]);
    if (!u)
        throw DomainError("series constant term " + r.format(a[0]) + " is not a unit");
    // b_n = -u * sum_{i>=1} a_i b_{n-i}
    Coeffs b(static_cast<std::size_t>(t + 1), r.zero());
    b[0] = *u;
    for (std::size_t n = 1; n < b.size(); ++n) {
        Value s = r.zero();
        for (std::size_t i = 1; i <= n && i < a.size(); ++i)
            s = r.add(s, r.mul(a[i], b[n - i]));
        b[n] = r.neg(r.mul(*u, s));
    }
    return truncate(r, std::move(b), t);
}

Coeffs series_pow(const Ring &r, const Coeffs &a, std::uint64_t e, std::int64_t t) {
    Coeffs result = truncate(r, {r.one()}, t), base = truncate(r, a, t);
    while (e) {
        if (e & 1)
            result = series_mul(r, result, base, t);
        e >>= 1;
        if (e)
            base = series_mul(r, base, base, t);
    }
    return result;
}

namespace {

Value coeff(const Ring &r, const Coeffs &c, std::size_t i) { return i < c.size() ? c[i] : r.zero(); }

Coeffs monomial_plus_one(const Ring &r, const Value &a, std::int64_t deg, std::int64_t t) {
    Coeffs c(static_cast<std::size_t>(deg + 1), r.zero());
    c[0] = r.one();
    c[static_cast<std::size_t>(deg)] = r.add(c[static_cast<std::size_t>(deg)], a);
    return truncate(r, std::move(c), t);
}

} // namespace

FactorStep witt_factor_step(const Ring &r, const Coeffs &p, std::int64_t rr, std::int64_t t) {
    if (rr < 1)
        throw DomainError("factor step needs r >= 1");
    if (t < 0)
        throw DomainError("truncation t must be nonnegative");
    FactorStep out;
    out.head = coeff(r, p, 0);
    if (t - rr - 1 < 0) // X^{r+1} Q vanishes in R_t
        return out;
    std::int64_t bound = t - rr - 1; // deg Q <= bound
    // (1 + X^r a)^{-1} = sum_k (-a)^k X^{rk}, and (P - P(0)) / X
    Coeffs geo(static_cast<std::size_t>(bound + 1), r.zero());
    Value pw = r.one(), na = r.neg(out.head);
    for (std::int64_t k = 0; k * rr <= bound; ++k) {
        geo[static_cast<std::size_t>(k * rr)] = pw;
        pw = r.mul(pw, na);
    }
    Coeffs shifted;
    for (std::size_t i = 1; i < p.size(); ++i)
        shifted.push_back(p[i]);
    out.q = series_mul(r, truncate(r, geo, bound), truncate(r, shifted, bound), bound);
    return out;
}

std::string WittCoordinates::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i)
        s += (i ? "," : "") + base->format(a[i]);
    return s + ")";
}

WittCoordinates witt_decompose(RingPtr base, const Coeffs &f, std::int64_t t) {
    const Ring &r = *base;
    if (t < 0)
        throw DomainError("truncation t must be nonnegative");
    if (!r.is_one(coeff(r, f, 0)))
        throw DomainError("series must have constant term 1");
    WittCoordinates w{base, t, {}};
    Coeffs p;
    for (std::size_t i = 1; i < f.size(); ++i)
        p.push_back(f[i]);
    for (std::int64_t i = 1; i <= t; ++i) {
        FactorStep s = witt_factor_step(r, p, i, t);
        w.a.push_back(s.head);
        p = s.q;
    }
    return w;
}

Coeffs witt_recompose(const WittCoordinates &w) {
    const Ring &r = *w.base;
    Coeffs f = truncate(r, {r.one()}, w.t);
    for (std::size_t i = 0; i < w.a.size(); ++i)
        f = series_mul(r, f, monomial_plus_one(r, w.a[i], static_cast<std::int64_t>(i + 1), w.t), w.t);
    return f;
}

std::vector<Value> ghost_vector(RingPtr base, const Coeffs &f, std::int64_t t) {
    const Ring &r = *base;
    if (!r.commutative())
        throw DomainError("ghost components need a commutative base ring");
    Coeffs xdf;
    for (std::size_t i = 0; i < f.size(); ++i)
        xdf.push_back(i == 0 ? r.zero() : r.mul(r.from_int(static_cast<std::int64_t>(i)), f[i]));
    Coeffs g = series_mul(r, truncate(r, xdf, t), series_inverse(r, f, t), t);
    std::vector<Value> out;
    for (std::int64_t n = 1; n <= t; ++n)
        out.push_back(coeff(r, g, static_cast<std::size_t>(n)));
    return out;
}

std::vector<Value> ghost_from_coordinates(const WittCoordinates &w) {
    const Ring &r = *w.base;
    std::vector<Value> out;
    for (std::int64_t n = 1; n <= w.t; ++n) {
        Value g = r.zero();
        for (std::int64_t d = 1; d <= n; ++d) {
            if (n % d)
                continue;
            std::int64_t m = n / d;
            Value term = r.mul(r.from_int(d), r.pow(w.a[static_cast<std::size_t>(d - 1)], m));
            g = (m % 2) ? r.add(g, term) : r.sub(g, term);
        }
        out.push_back(g);
    }
    return out;
}

TorsionCheck torsion_step_check(const Ring &r, const Coeffs &p, std::int64_t rr, std::int64_t t,
                                std::int64_t k) {
    if (rr < 1)
        throw DomainError("torsion step needs r >= 1");
    if (k < 1)
        throw DomainError("k must be positive");
    if (!r.unit_inverse(r.from_int(k)))
        throw DomainError("k = " + std::to_string(k) + " is not invertible in " + r.describe());
    Value p0 = coeff(r, p, 0);
    if (!r.commutative()) {
        auto elems = r.elements();
        if (!elems)
            throw DomainError("cannot decide whether P(0) is central in " + r.describe());
        for (const auto &x : *elems)
            if (r.mul(p0, x) != r.mul(x, p0))
                throw DomainError("P(0) = " + r.format(p0) + " is not central");
    }
    std::uint64_t e = 1;
    for (std::int64_t i = 0; i < rr; ++i)
        e = static_cast<std::uint64_t>(checked_mul(static_cast<std::int64_t>(e), k));
    Coeffs f(static_cast<std::size_t>(rr), r.zero());
    f[0] = r.one();
    f.insert(f.end(), p.begin(), p.end());
    TorsionCheck out;
    out.hypothesis = series_pow(r, truncate(r, f, t), e, t) == truncate(r, {r.one()}, t);
    if (out.hypothesis) {
        out.conclusion = r.is_zero(p0) || rr > t;
        out.q = witt_factor_step(r, p, rr, t).q;
    }
    return out;
}

TorsionScan torsion_scan(const Ring &r, std::int64_t k, std::int64_t t) {
    auto elems = r.elements();
    if (!elems)
        throw DomainError("torsion scan needs a finite ring");
    TorsionScan scan;
    for (std::int64_t rr = 1; rr <= t; ++rr) {
        std::size_t len = static_cast<std::size_t>(t - rr + 1);
        std::vector<std::size_t> idx(len, 0);
        while (true) {
            Coeffs p;
            for (auto i : idx)
                p.push_back((*elems)[i]);
            p = truncate(r, p, t);
            TorsionCheck c = torsion_step_check(r, p, rr, t, k);
            ++scan.cases;
            if (c.hypothesis)
                ++scan.hypothesis_holds;
            if (c.verdict() == Verdict::False)
                scan.counterexamples.emplace_back(rr, p);
            std::size_t pos = 0;
            while (pos < len && ++idx[pos] == elems->size())
                idx[pos++] = 0;
            if (pos == len)
                break;
        }
    }
    return scan;
}

} // namespace formring
