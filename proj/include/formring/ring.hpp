#pragma once

// Recursive tower of involutive rings with canonical-form element payloads.
//
// A ring is an immutable object reached through RingPtr. Elements are plain
// Value payloads in canonical form, so structural equality is ring equality.
// The tower supports Z, Z/m, polynomial rings (graded by degree), truncated
// polynomial rings R[X]/(X^{t+1}), principal localizations at involution-fixed
// non-zero-divisors, and the hyperbolic ring H(R) = R x R^op.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace formring {

/// Thrown when an operation's precondition fails (bad arguments, not a bug).
class DomainError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Thrown by the text parsers; carries the offending input position.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string &what, std::size_t pos = 0)
        : std::runtime_error(what), pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

  private:
    std::size_t pos_;
};

/// Three-valued answer for semi-decidable questions.
enum class Verdict { False, True, Unknown };

inline Verdict to_verdict(bool b) { return b ? Verdict::True : Verdict::False; }
Verdict verdict_and(Verdict a, Verdict b);
std::string_view to_string(Verdict v);

/// Canonical element payload. Interpretation depends on the owning ring:
///   Z, Z/m        num
///   poly, trunc   parts = coefficients, no trailing zeros
///   localized     parts = {numerator}, num = exponent k of s (minimal)
///   hyperbolic    parts = {x, y}
struct Value {
    std::int64_t num = 0;
    std::vector<Value> parts;

    bool operator==(const Value &) const = default;
    std::strong_ordering operator<=>(const Value &) const = default;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Textual/structural description of a ring in the tower.
struct Descriptor {
    enum class Kind { Integers, IntegersMod, Poly, Truncated, Localized, Hyperbolic };
    Kind kind = Kind::Integers;
    std::int64_t modulus = 0;     // IntegersMod
    std::int64_t truncation = 0;  // Truncated: t
    std::string variable;         // Poly / Truncated
    bool fixes_variable = true;   // Poly: X-bar = X (otherwise X-bar = -X)
    std::shared_ptr<Descriptor> base;
    std::string denominator;      // Localized: element string of s in base
};

class Ring : public std::enable_shared_from_this<Ring> {
  public:
    using Kind = Descriptor::Kind;
    virtual ~Ring() = default;

    virtual Kind kind() const = 0;
    /// Re-parseable descriptor text, e.g. "trunc(Z/4,2)".
    virtual std::string describe() const = 0;
    const RingPtr &base() const { return base_; }

    virtual Value zero() const = 0;
    virtual Value from_int(std::int64_t k) const = 0;
    Value one() const { return from_int(1); }

    virtual Value add(const Value &a, const Value &b) const = 0;
    virtual Value neg(const Value &a) const = 0;
    virtual Value mul(const Value &a, const Value &b) const = 0;
    virtual Value involve(const Value &a) const = 0;
    Value sub(const Value &a, const Value &b) const { return add(a, neg(b)); }
    Value pow(const Value &a, std::uint64_t e) const;
    bool is_zero(const Value &a) const { return a == zero(); }
    bool is_one(const Value &a) const { return a == one(); }

    /// Two-sided inverse if `a` is a unit (decided exactly for every ring here).
    virtual std::optional<Value> unit_inverse(const Value &a) const = 0;
    /// Some q with q*b == a, if one is found.
    virtual std::optional<Value> divide_exact(const Value &a, const Value &b) const = 0;
    virtual Verdict is_non_zero_divisor(const Value &a) const = 0;

    /// All elements, for finite rings.
    virtual std::optional<std::vector<Value>> elements() const { return std::nullopt; }
    bool finite() const { return elements_count() > 0; }
    /// Number of elements or 0 if infinite. May be large.
    virtual std::uint64_t elements_count() const { return 0; }

    virtual bool commutative() const { return true; }
    virtual bool trivial_involution() const = 0;

    /// A named generator reachable through the tower (lifted into this ring).
    virtual std::optional<Value> variable(std::string_view name) const = 0;
    /// Image of a base-ring element (identity on Z and Z/m).
    virtual Value lift(const Value &base_value) const { return base_value; }

    virtual std::string format(const Value &a) const = 0;

    /// Uniform random element; `size` bounds integer magnitudes and degrees.
    virtual Value random_element(std::mt19937_64 &rng, int size = 2) const = 0;

    /// Canonical-form check; normalize(normalize(x)) == normalize(x).
    virtual Value normalize(const Value &a) const = 0;

  protected:
    RingPtr base_;
};

RingPtr make_integers();
RingPtr make_integers_mod(std::int64_t m);
RingPtr make_poly(RingPtr base, std::string variable, bool fixes_variable = true);
RingPtr make_truncated(RingPtr base, std::int64_t t, std::string variable = "X");
/// Localization at the powers of `s`; s must be fixed by the involution and a
/// non-zero-divisor (checked exhaustively on finite bases).
RingPtr make_localized(RingPtr base, Value s);
RingPtr make_hyperbolic(RingPtr base);

RingPtr ring_make(const Descriptor &d);
Descriptor parse_descriptor(std::string_view text);
RingPtr parse_ring(std::string_view text);

/// Parses an element string such as "1+2*X+X^2", "(2,3)" or "Y/2".
Value parse_element(const Ring &ring, std::string_view text);

/// Localization specifics, valid when ring.kind() == Localized.
const Value &localized_denominator(const Ring &ring);

/// Element handle pairing a value with its ring; convenient for call sites
/// that do not care about performance.
class RingValue {
  public:
    RingValue(RingPtr ring, Value v) : ring_(std::move(ring)), v_(ring_->normalize(v)) {}
    RingValue(RingPtr ring, std::string_view text)
        : ring_(std::move(ring)), v_(parse_element(*ring_, text)) {}

    const RingPtr &ring() const { return ring_; }
    const Value &value() const { return v_; }
    std::string str() const { return ring_->format(v_); }

    RingValue operator+(const RingValue &o) const { return {ring_, ring_->add(v_, o.v_)}; }
    RingValue operator-(const RingValue &o) const { return {ring_, ring_->sub(v_, o.v_)}; }
    RingValue operator*(const RingValue &o) const { return {ring_, ring_->mul(v_, o.v_)}; }
    RingValue operator-() const { return {ring_, ring_->neg(v_)}; }
    RingValue bar() const { return {ring_, ring_->involve(v_)}; }
    bool operator==(const RingValue &o) const { return v_ == o.v_; }

  private:
    RingPtr ring_;
    Value v_;
};

/// Result of lambda_check with a short reason when it fails.
struct LambdaCheck {
    bool ok = false;
    bool exhaustive = false;
    std::string reason;
};

/// lambda * bar(lambda) == 1 and lambda central. Exhaustive on finite rings,
/// otherwise `samples` random witnesses drawn from `seed`.
LambdaCheck lambda_check(const Ring &ring, const Value &lambda, int samples = 64,
                         std::uint64_t seed = 0);

// Checked 64-bit integer arithmetic used by the integer rings.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

} // namespace formring
