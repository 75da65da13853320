#include "formring/ring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace formring {

Verdict verdict_and(Verdict a, Verdict b) {
    if (a == Verdict::False || b == Verdict::False)
        return Verdict::False;
    if (a == Verdict::Unknown || b == Verdict::Unknown)
        return Verdict::Unknown;
    return Verdict::True;
}

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::True:
        return "true";
    case Verdict::False:
        return "false";
    default:
        return "unknown";
    }
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in Z arithmetic");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in Z arithmetic");
    return r;
}

Value Ring::pow(const Value &a, std::uint64_t e) const {
    Value result = one();
    Value base = a;
    while (e > 0) {
        if (e & 1u)
            result = mul(result, base);
        e >>= 1u;
        if (e > 0)
            base = mul(base, base);
    }
    return result;
}

namespace {

bool is_simple_token(const std::string &s) {
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i >= s.size())
        return false;
    bool digits = std::all_of(s.begin() + static_cast<long>(i), s.end(),
                              [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (digits)
        return true;
    // Parenthesized pairs and single identifiers bind tightly.
    if (s.front() == '(' && s.back() == ')')
        return true;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }) && !std::isdigit(static_cast<unsigned char>(s[i]));
}

// Nilpotency of a value in its ring; every ring in the tower is commutative
// with decidable nilpotency, which keeps unit inversion exact.
bool is_nilpotent(const Ring &r, const Value &a);

class IntegersRing final : public Ring {
  public:
    Kind kind() const override { return Kind::Integers; }
    std::string describe() const override { return "Z"; }
    Value zero() const override { return Value{0, {}}; }
    Value from_int(std::int64_t k) const override { return Value{k, {}}; }
    Value add(const Value &a, const Value &b) const override {
        return Value{checked_add(a.num, b.num), {}};
    }
    Value neg(const Value &a) const override { return Value{checked_mul(a.num, -1), {}}; }
    Value mul(const Value &a, const Value &b) const override {
        return Value{checked_mul(a.num, b.num), {}};
    }
    Value involve(const Value &a) const override { return a; }
    std::optional<Value> unit_inverse(const Value &a) const override {
        if (a.num == 1 || a.num == -1)
            return a;
        return std::nullopt;
    }
    std::optional<Value> divide_exact(const Value &a, const Value &b) const override {
        if (b.num == 0)
            return a.num == 0 ? std::optional<Value>(zero()) : std::nullopt;
        if (a.num % b.num != 0)
            return std::nullopt;
        return Value{a.num / b.num, {}};
    }
    Verdict is_non_zero_divisor(const Value &a) const override { return to_verdict(a.num != 0); }
    bool trivial_involution() const override { return true; }
    std::optional<Value> variable(std::string_view) const override { return std::nullopt; }
    std::string format(const Value &a) const override { return std::to_string(a.num); }
    Value random_element(std::mt19937_64 &rng, int size) const override {
        std::uniform_int_distribution<std::int64_t> d(-size, size);
        return Value{d(rng), {}};
    }
    Value normalize(const Value &a) const override { return Value{a.num, {}}; }
};

class ModRing final : public Ring {
  public:
    explicit ModRing(std::int64_t m) : m_(m) {
        if (m < 2)
            throw DomainError("modulus must be at least 2");
    }
    Kind kind() const override { return Kind::IntegersMod; }
    std::string describe() const override { return "Z/" + std::to_string(m_); }
    std::int64_t modulus() const { return m_; }
    Value zero() const override { return Value{0, {}}; }
    Value from_int(std::int64_t k) const override { return Value{reduce(k), {}}; }
    Value add(const Value &a, const Value &b) const override {
        return Value{reduce(static_cast<__int128>(a.num) + b.num), {}};
    }
    Value neg(const Value &a) const override { return Value{reduce(-static_cast<__int128>(a.num)), {}}; }
    Value mul(const Value &a, const Value &b) const override {
        return Value{reduce(static_cast<__int128>(a.num) * b.num), {}};
    }
    Value involve(const Value &a) const override { return a; }
    std::optional<Value> unit_inverse(const Value &a) const override {
        // extended Euclid on (a, m)
        std::int64_t r0 = m_, r1 = a.num, s0 = 0, s1 = 1;
        while (r1 != 0) {
            std::int64_t q = r0 / r1;
            std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
            std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
        }
        if (r0 != 1)
            return std::nullopt;
        return Value{reduce(s0), {}};
    }
    std::optional<Value> divide_exact(const Value &a, const Value &b) const override {
        if (auto inv = unit_inverse(b))
            return mul(a, *inv);
        for (std::int64_t x = 0; x < m_; ++x)
            if (mul(Value{x, {}}, b) == a)
                return Value{x, {}};
        return std::nullopt;
    }
    Verdict is_non_zero_divisor(const Value &a) const override {
        return to_verdict(std::gcd(a.num, m_) == 1);
    }
    std::optional<std::vector<Value>> elements() const override {
        std::vector<Value> out;
        out.reserve(static_cast<std::size_t>(m_));
        for (std::int64_t x = 0; x < m_; ++x)
            out.push_back(Value{x, {}});
        return out;
    }
    std::uint64_t elements_count() const override { return static_cast<std::uint64_t>(m_); }
    bool trivial_involution() const override { return true; }
    std::optional<Value> variable(std::string_view) const override { return std::nullopt; }
    std::string format(const Value &a) const override { return std::to_string(a.num); }
    Value random_element(std::mt19937_64 &rng, int) const override {
        std::uniform_int_distribution<std::int64_t> d(0, m_ - 1);
        return Value{d(rng), {}};
    }
    Value normalize(const Value &a) const override { return Value{reduce(a.num), {}}; }

  private:
    std::int64_t reduce(__int128 x) const {
        __int128 r = x % m_;
        if (r < 0)
            r += m_;
        return static_cast<std::int64_t>(r);
    }
    std::int64_t m_;
};

// Polynomial ring base[X], or the truncated ring base[X]/(X^{t+1}) when a
// truncation is set. Coefficients are stored low degree first.
class PolyRing final : public Ring {
  public:
    PolyRing(RingPtr base, std::string var, bool fixes, std::optional<std::int64_t> trunc)
        : var_(std::move(var)), fixes_(fixes), trunc_(trunc) {
        base_ = std::move(base);
        if (trunc_ && *trunc_ < 0)
            throw DomainError("truncation t must be nonnegative");
        if (var_.empty())
            throw DomainError("polynomial variable name must be nonempty");
    }
    Kind kind() const override { return trunc_ ? Kind::Truncated : Kind::Poly; }
    std::string describe() const override {
        if (trunc_) {
            std::string s = "trunc(" + base_->describe() + "," + std::to_string(*trunc_);
            if (var_ != "X")
                s += "," + var_;
            return s + ")";
        }
        return "poly(" + base_->describe() + "," + var_ + (fixes_ ? "" : ",flip") + ")";
    }
    const std::string &var() const { return var_; }
    std::optional<std::int64_t> truncation() const { return trunc_; }

    Value zero() const override { return Value{0, {}}; }
    Value from_int(std::int64_t k) const override { return lift(base_->from_int(k)); }
    Value lift(const Value &b) const override {
        Value v;
        v.parts.push_back(b);
        return trim(std::move(v));
    }
    Value add(const Value &a, const Value &b) const override {
        Value r;
        std::size_t n = std::max(a.parts.size(), b.parts.size());
        r.parts.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i >= a.parts.size())
                r.parts.push_back(b.parts[i]);
            else if (i >= b.parts.size())
                r.parts.push_back(a.parts[i]);
            else
                r.parts.push_back(base_->add(a.parts[i], b.parts[i]));
        }
        return trim(std::move(r));
    }
    Value neg(const Value &a) const override {
        Value r;
        r.parts.reserve(a.parts.size());
        for (const auto &c : a.parts)
            r.parts.push_back(base_->neg(c));
        return r;
    }
    Value mul(const Value &a, const Value &b) const override {
        if (a.parts.empty() || b.parts.empty())
            return zero();
        std::size_t n = a.parts.size() + b.parts.size() - 1;
        if (trunc_)
            n = std::min<std::size_t>(n, static_cast<std::size_t>(*trunc_) + 1);
        Value r;
        r.parts.assign(n, base_->zero());
        for (std::size_t i = 0; i < a.parts.size() && i < n; ++i) {
            if (base_->is_zero(a.parts[i]))
                continue;
            for (std::size_t j = 0; j < b.parts.size() && i + j < n; ++j)
                r.parts[i + j] = base_->add(r.parts[i + j], base_->mul(a.parts[i], b.parts[j]));
        }
        return trim(std::move(r));
    }
    Value involve(const Value &a) const override {
        Value r;
        r.parts.reserve(a.parts.size());
        for (std::size_t i = 0; i < a.parts.size(); ++i) {
            Value c = base_->involve(a.parts[i]);
            if (!fixes_ && (i % 2 == 1))
                c = base_->neg(c);
            r.parts.push_back(std::move(c));
        }
        return r;
    }
    std::optional<Value> unit_inverse(const Value &a) const override {
        if (a.parts.empty())
            return std::nullopt;
        auto u0 = base_->unit_inverse(a.parts[0]);
        if (!u0)
            return std::nullopt;
        if (a.parts.size() == 1)
            return lift(*u0);
        if (!trunc_) {
            for (std::size_t i = 1; i < a.parts.size(); ++i)
                if (!is_nilpotent(*base_, a.parts[i]))
                    return std::nullopt;
        }
        // a = a0 (1 - N) with N = -a0^{-1} (a - a0); N is nilpotent.
        Value inv0 = lift(*u0);
        Value tail = a;
        tail.parts[0] = base_->zero();
        tail = trim(std::move(tail));
        Value nil = neg(mul(inv0, tail));
        Value sum = one();
        Value power = one();
        for (int k = 0; k < 4096; ++k) {
            power = mul(power, nil);
            if (is_zero(power))
                break;
            sum = add(sum, power);
        }
        Value inv = mul(sum, inv0);
        if (!is_one(mul(inv, a)))
            return std::nullopt;
        return inv;
    }
    std::optional<Value> divide_exact(const Value &a, const Value &b) const override {
        if (b.parts.empty())
            return a.parts.empty() ? std::optional<Value>(zero()) : std::nullopt;
        if (b.parts.size() == 1) {
            Value q;
            for (const auto &c : a.parts) {
                auto qc = base_->divide_exact(c, b.parts[0]);
                if (!qc)
                    return std::nullopt;
                q.parts.push_back(*qc);
            }
            q = trim(std::move(q));
            if (mul(q, b) != a)
                return std::nullopt;
            return q;
        }
        if (auto inv = unit_inverse(b))
            return mul(a, *inv);
        if (trunc_)
            return std::nullopt;
        auto lead_inv = base_->unit_inverse(b.parts.back());
        if (!lead_inv)
            return std::nullopt;
        // long division by a polynomial with unit leading coefficient
        Value rem = a;
        std::vector<Value> q(a.parts.size() >= b.parts.size()
                                 ? a.parts.size() - b.parts.size() + 1
                                 : 0,
                             base_->zero());
        while (!rem.parts.empty() && rem.parts.size() >= b.parts.size()) {
            std::size_t shift = rem.parts.size() - b.parts.size();
            Value c = base_->mul(rem.parts.back(), *lead_inv);
            q[shift] = c;
            Value term;
            term.parts.assign(shift, base_->zero());
            term.parts.push_back(c);
            rem = sub(rem, mul(trim(std::move(term)), b));
        }
        if (!rem.parts.empty())
            return std::nullopt;
        return trim(Value{0, std::move(q)});
    }
    Verdict is_non_zero_divisor(const Value &a) const override {
        if (a.parts.empty())
            return Verdict::False;
        if (trunc_ || a.parts.size() == 1)
            return base_->is_non_zero_divisor(a.parts[0]);
        if (base_->is_non_zero_divisor(a.parts.back()) == Verdict::True)
            return Verdict::True;
        return Verdict::Unknown;
    }
    std::optional<std::vector<Value>> elements() const override {
        if (!trunc_ || elements_count() == 0 || elements_count() > 2000000)
            return std::nullopt;
        auto coeffs = base_->elements();
        std::vector<Value> out{zero()};
        std::vector<Value> current(1, Value{});
        // enumerate coefficient tuples of length t+1
        std::size_t len = static_cast<std::size_t>(*trunc_) + 1;
        std::vector<std::vector<Value>> tuples{{}};
        for (std::size_t i = 0; i < len; ++i) {
            std::vector<std::vector<Value>> next;
            next.reserve(tuples.size() * coeffs->size());
            for (const auto &t : tuples)
                for (const auto &c : *coeffs) {
                    next.push_back(t);
                    next.back().push_back(c);
                }
            tuples = std::move(next);
        }
        out.clear();
        for (auto &t : tuples)
            out.push_back(trim(Value{0, std::move(t)}));
        return out;
    }
    std::uint64_t elements_count() const override {
        if (!trunc_)
            return 0;
        std::uint64_t b = base_->elements_count();
        if (b == 0)
            return 0;
        std::uint64_t n = 1;
        for (std::int64_t i = 0; i <= *trunc_; ++i) {
            if (n > (1ull << 40) / b)
                return 0;
            n *= b;
        }
        return n;
    }
    bool commutative() const override { return base_->commutative(); }
    bool trivial_involution() const override { return fixes_ && base_->trivial_involution(); }
    std::optional<Value> variable(std::string_view name) const override {
        if (name == var_) {
            Value v;
            v.parts = {base_->zero(), base_->one()};
            return trim(std::move(v));
        }
        if (auto b = base_->variable(name))
            return lift(*b);
        return std::nullopt;
    }
    std::string format(const Value &a) const override {
        if (a.parts.empty())
            return "0";
        std::string out;
        for (std::size_t i = 0; i < a.parts.size(); ++i) {
            if (base_->is_zero(a.parts[i]))
                continue;
            std::string c = base_->format(a.parts[i]);
            std::string term;
            if (i == 0) {
                term = is_simple_token(c) ? c : "(" + c + ")";
            } else {
                std::string mono = var_ + (i > 1 ? "^" + std::to_string(i) : "");
                if (c == "1")
                    term = mono;
                else if (c == "-1")
                    term = "-" + mono;
                else if (is_simple_token(c))
                    term = c + "*" + mono;
                else
                    term = "(" + c + ")*" + mono;
            }
            if (!out.empty() && term[0] != '-')
                out += "+";
            out += term;
        }
        return out;
    }
    Value random_element(std::mt19937_64 &rng, int size) const override {
        std::size_t len;
        if (trunc_) {
            len = static_cast<std::size_t>(*trunc_) + 1;
        } else {
            std::uniform_int_distribution<int> d(0, std::max(0, size));
            len = static_cast<std::size_t>(d(rng)) + 1;
        }
        Value v;
        for (std::size_t i = 0; i < len; ++i)
            v.parts.push_back(base_->random_element(rng, size));
        return trim(std::move(v));
    }
    Value normalize(const Value &a) const override {
        Value v;
        for (const auto &c : a.parts)
            v.parts.push_back(base_->normalize(c));
        return trim(std::move(v));
    }

  private:
    Value trim(Value v) const {
        if (trunc_ && v.parts.size() > static_cast<std::size_t>(*trunc_) + 1)
            v.parts.resize(static_cast<std::size_t>(*trunc_) + 1);
        while (!v.parts.empty() && base_->is_zero(v.parts.back()))
            v.parts.pop_back();
        v.num = 0;
        return v;
    }
    std::string var_;
    bool fixes_;
    std::optional<std::int64_t> trunc_;
};

class LocalizedRing final : public Ring {
  public:
    LocalizedRing(RingPtr base, Value s) : s_(base->normalize(s)) {
        base_ = std::move(base);
        if (base_->involve(s_) != s_)
            throw DomainError("localization element must be fixed by the involution");
        Verdict nzd = base_->is_non_zero_divisor(s_);
        if (auto elems = base_->elements()) {
            nzd = Verdict::True;
            for (const auto &x : *elems) {
                if (base_->is_zero(x))
                    continue;
                if (base_->is_zero(base_->mul(s_, x)) || base_->is_zero(base_->mul(x, s_))) {
                    nzd = Verdict::False;
                    break;
                }
            }
        }
        if (nzd == Verdict::False)
            throw DomainError("localization element " + base_->format(s_) +
                              " is a zero-divisor in " + base_->describe());
    }
    Kind kind() const override { return Kind::Localized; }
    std::string describe() const override {
        return "loc(" + base_->describe() + "," + base_->format(s_) + ")";
    }
    const Value &denominator() const { return s_; }

    Value zero() const override { return make(base_->zero(), 0); }
    Value from_int(std::int64_t k) const override { return make(base_->from_int(k), 0); }
    Value lift(const Value &b) const override { return make(b, 0); }
    Value add(const Value &a, const Value &b) const override {
        std::int64_t m = std::max(a.num, b.num);
        Value x = base_->mul(a.parts[0], spow(m - a.num));
        Value y = base_->mul(b.parts[0], spow(m - b.num));
        return canon(base_->add(x, y), m);
    }
    Value neg(const Value &a) const override { return make(base_->neg(a.parts[0]), a.num); }
    Value mul(const Value &a, const Value &b) const override {
        return canon(base_->mul(a.parts[0], b.parts[0]), checked_add(a.num, b.num));
    }
    Value involve(const Value &a) const override { return make(base_->involve(a.parts[0]), a.num); }
    std::optional<Value> unit_inverse(const Value &a) const override {
        Value w = a.parts[0];
        std::int64_t j = 0;
        for (; j < 64; ++j) {
            if (auto inv = base_->unit_inverse(w))
                return canon(base_->mul(spow(a.num), *inv), j);
            auto q = base_->divide_exact(w, s_);
            if (!q)
                break;
            w = *q;
        }
        return std::nullopt;
    }
    std::optional<Value> divide_exact(const Value &a, const Value &b) const override {
        if (auto inv = unit_inverse(b))
            return mul(a, *inv);
        for (std::int64_t m = 0; m <= 8; ++m) {
            auto q = base_->divide_exact(base_->mul(a.parts[0], spow(m)), b.parts[0]);
            if (!q)
                continue;
            std::int64_t k = a.num + m - b.num;
            Value r = k >= 0 ? canon(*q, k) : canon(base_->mul(*q, spow(-k)), 0);
            if (mul(r, b) == a)
                return r;
        }
        return std::nullopt;
    }
    Verdict is_non_zero_divisor(const Value &a) const override {
        return base_->is_non_zero_divisor(a.parts[0]);
    }
    std::optional<std::vector<Value>> elements() const override {
        auto b = base_->elements();
        if (!b)
            return std::nullopt;
        std::vector<Value> out;
        for (const auto &x : *b)
            out.push_back(make(x, 0));
        return out;
    }
    std::uint64_t elements_count() const override { return base_->elements_count(); }
    bool commutative() const override { return base_->commutative(); }
    bool trivial_involution() const override { return base_->trivial_involution(); }
    std::optional<Value> variable(std::string_view name) const override {
        if (auto b = base_->variable(name))
            return lift(*b);
        return std::nullopt;
    }
    std::string format(const Value &a) const override {
        std::string num = base_->format(a.parts[0]);
        if (a.num == 0)
            return num;
        std::string den = "(" + base_->format(s_) + ")";
        if (a.num > 1)
            den += "^" + std::to_string(a.num);
        return "(" + num + ")/" + den;
    }
    Value random_element(std::mt19937_64 &rng, int size) const override {
        std::uniform_int_distribution<int> d(0, 1);
        return canon(base_->random_element(rng, size), d(rng));
    }
    Value normalize(const Value &a) const override {
        if (a.parts.empty())
            return zero();
        return canon(base_->normalize(a.parts[0]), a.num);
    }

  private:
    Value make(Value n, std::int64_t k) const {
        Value v;
        v.num = k;
        v.parts.push_back(std::move(n));
        return v;
    }
    Value spow(std::int64_t e) const { return base_->pow(s_, static_cast<std::uint64_t>(e)); }
    // reduce to minimal exponent k
    Value canon(Value n, std::int64_t k) const {
        if (k < 0)
            throw DomainError("negative localization exponent");
        if (base_->is_zero(n))
            return make(std::move(n), 0);
        while (k > 0) {
            auto q = base_->divide_exact(n, s_);
            if (!q || base_->mul(*q, s_) != n)
                break;
            n = std::move(*q);
            --k;
        }
        return make(std::move(n), k);
    }
    Value s_;
};

class HyperbolicRing final : public Ring {
  public:
    explicit HyperbolicRing(RingPtr base) { base_ = std::move(base); }
    Kind kind() const override { return Kind::Hyperbolic; }
    std::string describe() const override { return "hyp(" + base_->describe() + ")"; }
    Value zero() const override { return pair(base_->zero(), base_->zero()); }
    Value from_int(std::int64_t k) const override { return lift(base_->from_int(k)); }
    Value lift(const Value &b) const override { return pair(b, b); }
    Value add(const Value &a, const Value &b) const override {
        return pair(base_->add(a.parts[0], b.parts[0]), base_->add(a.parts[1], b.parts[1]));
    }
    Value neg(const Value &a) const override {
        return pair(base_->neg(a.parts[0]), base_->neg(a.parts[1]));
    }
    // second component multiplies in the opposite ring
    Value mul(const Value &a, const Value &b) const override {
        return pair(base_->mul(a.parts[0], b.parts[0]), base_->mul(b.parts[1], a.parts[1]));
    }
    Value involve(const Value &a) const override { return pair(a.parts[1], a.parts[0]); }
    std::optional<Value> unit_inverse(const Value &a) const override {
        auto x = base_->unit_inverse(a.parts[0]);
        auto y = base_->unit_inverse(a.parts[1]);
        if (!x || !y)
            return std::nullopt;
        return pair(*x, *y);
    }
    std::optional<Value> divide_exact(const Value &a, const Value &b) const override {
        auto x = base_->divide_exact(a.parts[0], b.parts[0]);
        auto y = base_->divide_exact(a.parts[1], b.parts[1]);
        if (!x || !y)
            return std::nullopt;
        Value q = pair(*x, *y);
        if (mul(q, b) != a)
            return std::nullopt;
        return q;
    }
    Verdict is_non_zero_divisor(const Value &a) const override {
        return verdict_and(base_->is_non_zero_divisor(a.parts[0]),
                           base_->is_non_zero_divisor(a.parts[1]));
    }
    std::optional<std::vector<Value>> elements() const override {
        auto b = base_->elements();
        if (!b)
            return std::nullopt;
        std::vector<Value> out;
        out.reserve(b->size() * b->size());
        for (const auto &x : *b)
            for (const auto &y : *b)
                out.push_back(pair(x, y));
        return out;
    }
    std::uint64_t elements_count() const override {
        std::uint64_t b = base_->elements_count();
        if (b == 0 || b > (1ull << 20))
            return 0;
        return b * b;
    }
    bool commutative() const override { return base_->commutative(); }
    bool trivial_involution() const override { return false; }
    std::optional<Value> variable(std::string_view name) const override {
        if (auto b = base_->variable(name))
            return lift(*b);
        return std::nullopt;
    }
    std::string format(const Value &a) const override {
        return "(" + base_->format(a.parts[0]) + "," + base_->format(a.parts[1]) + ")";
    }
    Value random_element(std::mt19937_64 &rng, int size) const override {
        Value x = base_->random_element(rng, size);
        return pair(x, base_->random_element(rng, size));
    }
    Value normalize(const Value &a) const override {
        return pair(base_->normalize(a.parts.at(0)), base_->normalize(a.parts.at(1)));
    }

  private:
    static Value pair(Value x, Value y) {
        Value v;
        v.parts.push_back(std::move(x));
        v.parts.push_back(std::move(y));
        return v;
    }
};

bool is_nilpotent(const Ring &r, const Value &a) {
    if (r.is_zero(a))
        return true;
    switch (r.kind()) {
    case Ring::Kind::Integers:
        return false;
    case Ring::Kind::IntegersMod: {
        // x nilpotent mod m iff x^e == 0 with e = ceil(log2 m)
        Value p = a;
        for (int i = 0; i < 64; ++i) {
            if (r.is_zero(p))
                return true;
            p = r.mul(p, p);
        }
        return r.is_zero(p);
    }
    case Ring::Kind::Poly:
    case Ring::Kind::Truncated:
        return std::all_of(a.parts.begin(), a.parts.end(),
                           [&](const Value &c) { return is_nilpotent(*r.base(), c); });
    case Ring::Kind::Localized:
        return is_nilpotent(*r.base(), a.parts[0]);
    case Ring::Kind::Hyperbolic:
        return is_nilpotent(*r.base(), a.parts[0]) && is_nilpotent(*r.base(), a.parts[1]);
    }
    return false;
}

} // namespace

RingPtr make_integers() { return std::make_shared<IntegersRing>(); }
RingPtr make_integers_mod(std::int64_t m) { return std::make_shared<ModRing>(m); }
RingPtr make_poly(RingPtr base, std::string variable, bool fixes_variable) {
    return std::make_shared<PolyRing>(std::move(base), std::move(variable), fixes_variable,
                                      std::nullopt);
}
RingPtr make_truncated(RingPtr base, std::int64_t t, std::string variable) {
    return std::make_shared<PolyRing>(std::move(base), std::move(variable), true, t);
}
RingPtr make_localized(RingPtr base, Value s) {
    return std::make_shared<LocalizedRing>(std::move(base), std::move(s));
}
RingPtr make_hyperbolic(RingPtr base) { return std::make_shared<HyperbolicRing>(std::move(base)); }

const Value &localized_denominator(const Ring &ring) {
    auto *loc = dynamic_cast<const LocalizedRing *>(&ring);
    if (!loc)
        throw DomainError("ring " + ring.describe() + " is not a localization");
    return loc->denominator();
}

RingPtr ring_make(const Descriptor &d) {
    using K = Descriptor::Kind;
    auto need_base = [&]() -> RingPtr {
        if (!d.base)
            throw DomainError("descriptor is missing its base ring");
        return ring_make(*d.base);
    };
    switch (d.kind) {
    case K::Integers:
        return make_integers();
    case K::IntegersMod:
        return make_integers_mod(d.modulus);
    case K::Poly:
        return make_poly(need_base(), d.variable.empty() ? "X" : d.variable, d.fixes_variable);
    case K::Truncated:
        return make_truncated(need_base(), d.truncation, d.variable.empty() ? "X" : d.variable);
    case K::Localized: {
        RingPtr b = need_base();
        return make_localized(b, parse_element(*b, d.denominator));
    }
    case K::Hyperbolic:
        return make_hyperbolic(need_base());
    }
    throw DomainError("unknown descriptor kind");
}

namespace {

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_top_level(std::string_view s) {
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(' || c == '{' || c == '[')
            ++depth;
        else if (c == ')' || c == '}' || c == ']')
            --depth;
        else if (c == ',' && depth == 0) {
            out.push_back(trim_view(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim_view(s.substr(start)));
    return out;
}

std::int64_t parse_int(std::string_view s, std::string_view what) {
    s = trim_view(s);
    std::int64_t v = 0;
    if (s.empty())
        throw ParseError("expected integer for " + std::string(what));
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("expected integer for " + std::string(what) + ", got '" +
                             std::string(s) + "'");
        v = checked_add(checked_mul(v, 10), c - '0');
    }
    return v;
}

} // namespace

Descriptor parse_descriptor(std::string_view text) {
    using K = Descriptor::Kind;
    std::string_view s = trim_view(text);
    Descriptor d;
    if (s == "Z") {
        d.kind = K::Integers;
        return d;
    }
    if (s.size() > 2 && s.substr(0, 2) == "Z/") {
        d.kind = K::IntegersMod;
        d.modulus = parse_int(s.substr(2), "modulus");
        if (d.modulus < 2)
            throw ParseError("modulus must be at least 2");
        return d;
    }
    auto open = s.find('(');
    if (open == std::string_view::npos || s.back() != ')')
        throw ParseError("malformed ring descriptor '" + std::string(s) + "'");
    std::string_view head = trim_view(s.substr(0, open));
    auto args = split_top_level(s.substr(open + 1, s.size() - open - 2));
    auto base = [&]() { return std::make_shared<Descriptor>(parse_descriptor(args.at(0))); };
    if (head == "poly" || head == "graded") {
        if (args.size() < 2 || args.size() > 3)
            throw ParseError(std::string(head) + "(R, var[, flip]) expects 2 or 3 arguments");
        d.kind = K::Poly;
        d.base = base();
        d.variable = std::string(args[1]);
        if (args.size() == 3) {
            if (args[2] != "flip")
                throw ParseError("unknown poly option '" + std::string(args[2]) + "'");
            d.fixes_variable = false;
        }
        return d;
    }
    if (head == "trunc") {
        if (args.size() < 2 || args.size() > 3)
            throw ParseError("trunc(R, t[, var]) expects 2 or 3 arguments");
        d.kind = K::Truncated;
        d.base = base();
        d.truncation = parse_int(args[1], "truncation");
        d.variable = args.size() == 3 ? std::string(args[2]) : "X";
        return d;
    }
    if (head == "hyp") {
        if (args.size() != 1)
            throw ParseError("hyp(R) expects 1 argument");
        d.kind = K::Hyperbolic;
        d.base = base();
        return d;
    }
    if (head == "loc") {
        if (args.size() != 2)
            throw ParseError("loc(R, s) expects 2 arguments");
        d.kind = K::Localized;
        d.base = base();
        d.denominator = std::string(args[1]);
        return d;
    }
    throw ParseError("unknown ring constructor '" + std::string(head) + "'");
}

RingPtr parse_ring(std::string_view text) { return ring_make(parse_descriptor(text)); }

namespace {

// Recursive-descent parser for element strings in a given ring.
class ElementParser {
  public:
    ElementParser(const Ring &ring, std::string_view text) : ring_(ring), s_(text) {}

    Value parse() {
        Value v = expr();
        skip_ws();
        if (pos_ != s_.size())
            fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

  private:
    [[noreturn]] void fail(const std::string &msg) const {
        throw ParseError("element '" + std::string(s_) + "': " + msg + " at column " +
                             std::to_string(pos_ + 1),
                         pos_);
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    Value expr() {
        Value v = term();
        while (true) {
            if (accept('+'))
                v = ring_.add(v, term());
            else if (accept('-'))
                v = ring_.sub(v, term());
            else
                return v;
        }
    }
    Value term() {
        Value v = unary();
        while (true) {
            if (accept('*')) {
                v = ring_.mul(v, unary());
            } else if (accept('/')) {
                Value d = unary();
                auto inv = ring_.unit_inverse(d);
                if (!inv)
                    fail("divisor is not a unit in " + ring_.describe());
                v = ring_.mul(v, *inv);
            } else {
                return v;
            }
        }
    }
    Value unary() {
        if (accept('-'))
            return ring_.neg(unary());
        if (accept('+'))
            return unary();
        return power();
    }
    Value power() {
        Value v = atom();
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected exponent");
            auto e = parse_int(s_.substr(start, pos_ - start), "exponent");
            v = ring_.pow(v, static_cast<std::uint64_t>(e));
        }
        return v;
    }
    Value atom() {
        skip_ws();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            return ring_.from_int(parse_int(s_.substr(start, pos_ - start), "literal"));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            auto name = s_.substr(start, pos_ - start);
            auto v = ring_.variable(name);
            if (!v)
                fail("unknown variable '" + std::string(name) + "' in " + ring_.describe());
            return *v;
        }
        if (c == '(') {
            std::size_t close = matching(pos_);
            auto inner = s_.substr(pos_ + 1, close - pos_ - 1);
            auto pieces = split_top_level(inner);
            if (pieces.size() == 2) {
                Value v = pair_literal(pieces[0], pieces[1]);
                pos_ = close + 1;
                return v;
            }
            ++pos_;
            Value v = expr();
            if (!accept(')'))
                fail("expected ')'");
            return v;
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }
    std::size_t matching(std::size_t open) const {
        int depth = 0;
        for (std::size_t i = open; i < s_.size(); ++i) {
            if (s_[i] == '(')
                ++depth;
            else if (s_[i] == ')' && --depth == 0)
                return i;
        }
        throw ParseError("element '" + std::string(s_) + "': unbalanced parentheses", open);
    }
    // (x,y) names an element of the nearest hyperbolic ring in the tower.
    Value pair_literal(std::string_view x, std::string_view y) {
        std::vector<const Ring *> chain;
        const Ring *r = &ring_;
        while (r && r->kind() != Ring::Kind::Hyperbolic) {
            chain.push_back(r);
            r = r->base().get();
        }
        if (!r)
            fail("pair literal outside a hyperbolic ring");
        Value v;
        v.parts.push_back(ElementParser(*r->base(), x).parse());
        v.parts.push_back(ElementParser(*r->base(), y).parse());
        for (auto it = chain.rbegin(); it != chain.rend(); ++it)
            v = (*it)->lift(v);
        return v;
    }

    const Ring &ring_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

Value parse_element(const Ring &ring, std::string_view text) {
    if (trim_view(text).empty())
        throw ParseError("empty element string");
    return ElementParser(ring, text).parse();
}

LambdaCheck lambda_check(const Ring &ring, const Value &lambda, int samples, std::uint64_t seed) {
    LambdaCheck out;
    Value lb = ring.involve(lambda);
    if (!ring.is_one(ring.mul(lambda, lb)) || !ring.is_one(ring.mul(lb, lambda))) {
        out.reason = "lambda*bar(lambda) = " + ring.format(ring.mul(lambda, lb)) + " != 1";
        return out;
    }
    auto commutes = [&](const Value &x) { return ring.mul(lambda, x) == ring.mul(x, lambda); };
    if (auto elems = ring.elements()) {
        out.exhaustive = true;
        for (const auto &x : *elems)
            if (!commutes(x)) {
                out.reason = "lambda does not commute with " + ring.format(x);
                return out;
            }
    } else {
        std::mt19937_64 rng(seed);
        for (int i = 0; i < samples; ++i) {
            Value x = ring.random_element(rng, 2);
            if (!commutes(x)) {
                out.reason = "lambda does not commute with " + ring.format(x);
                return out;
            }
        }
    }
    out.ok = true;
    return out;
}

} // namespace formring
