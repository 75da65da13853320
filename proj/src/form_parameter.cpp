#include "formring/form_parameter.hpp"

#include <deque>

namespace formring {

std::set<Value> lambda_min_set(const Ring &ring, const Value &lambda) {
    std::set<Value> out;
    auto elems = ring.elements();
    for (const auto &x : *elems)
        out.insert(ring.sub(x, ring.mul(lambda, ring.involve(x))));
    return out;
}

std::set<Value> lambda_max_set(const Ring &ring, const Value &lambda) {
    std::set<Value> out;
    auto elems = ring.elements();
    for (const auto &x : *elems)
        if (x == ring.neg(ring.mul(lambda, ring.involve(x))))
            out.insert(x);
    return out;
}

namespace {

std::set<Value> closure(const Ring &ring, std::set<Value> seed) {
    auto elems = *ring.elements();
    std::set<Value> s;
    std::deque<Value> queue;
    auto push = [&](const Value &v) {
        if (s.insert(v).second)
            queue.push_back(v);
    };
    push(ring.zero());
    for (const auto &v : seed)
        push(v);
    while (!queue.empty()) {
        Value e = queue.front();
        queue.pop_front();
        std::vector<Value> snapshot(s.begin(), s.end());
        for (const auto &b : snapshot)
            push(ring.add(e, b));
        for (const auto &x : elems)
            push(ring.mul(ring.mul(ring.involve(x), e), x));
    }
    return s;
}

bool is_constant(const Ring &ring, const Value &v) {
    return (ring.kind() == Ring::Kind::Poly || ring.kind() == Ring::Kind::Truncated) &&
           v.parts.size() <= 1;
}

Value constant_of(const Ring &ring, const Value &v) {
    return v.parts.empty() ? ring.base()->zero() : v.parts[0];
}

} // namespace

FormParameter::FormParameter(RingPtr ring, Value lambda, Mode mode, std::vector<Value> generators,
                             int search_depth)
    : ring_(std::move(ring)), lambda_(ring_->normalize(lambda)), mode_(mode), depth_(search_depth) {
    for (auto &g : generators)
        generators_.push_back(ring_->normalize(g));
    std::optional<std::set<Value>> members;
    if (ring_->finite() && ring_->elements_count() <= 20000) {
        switch (mode_) {
        case Mode::Min:
            members = lambda_min_set(*ring_, lambda_);
            break;
        case Mode::Max:
            members = lambda_max_set(*ring_, lambda_);
            break;
        case Mode::Generated: {
            auto seed = lambda_min_set(*ring_, lambda_);
            seed.insert(generators_.begin(), generators_.end());
            members = closure(*ring_, std::move(seed));
            break;
        }
        }
    } else if (is_constant(*ring_, lambda_)) {
        // Lambda[X]: only valid when the variable is fixed by the involution
        Value var;
        var.parts = {ring_->base()->zero(), ring_->base()->one()};
        bool fixes = ring_->involve(var) == var;
        bool gens_constant = true;
        for (const auto &g : generators_)
            gens_constant = gens_constant && is_constant(*ring_, g);
        if (fixes && gens_constant) {
            std::vector<Value> cg;
            for (const auto &g : generators_)
                cg.push_back(constant_of(*ring_, g));
            coefficients_ = std::make_shared<const FormParameter>(
                ring_->base(), constant_of(*ring_, lambda_), mode_, std::move(cg), depth_);
        }
    }
    members_ = std::make_shared<const std::optional<std::set<Value>>>(std::move(members));
}

bool FormParameter::in_max(const Value &a) const {
    return a == ring_->neg(ring_->mul(lambda_, ring_->involve(a)));
}

Verdict FormParameter::contains(const Value &a, bool conjugated) const {
    Value v = ring_->normalize(a);
    if (conjugated)
        v = ring_->involve(v);
    return contains_unconjugated(v);
}

Verdict FormParameter::contains_unconjugated(const Value &a) const {
    if (ring_->is_zero(a))
        return Verdict::True;
    if (*members_)
        return to_verdict((*members_)->count(a) > 0);
    if (mode_ == Mode::Max)
        return to_verdict(in_max(a));
    if (coefficients_) {
        Verdict v = Verdict::True;
        for (const auto &c : a.parts)
            v = verdict_and(v, coefficients_->contains_unconjugated(c));
        return v;
    }
    if (mode_ == Mode::Min) {
        if (ring_->kind() == Ring::Kind::Hyperbolic)
            return to_verdict(in_max(a)); // Lambda_min == Lambda_max on H(R)
        if (!in_max(a))
            return Verdict::False;
        if (ring_->trivial_involution() && ring_->commutative()) {
            // Lambda_min = (1 - lambda) R
            Value d = ring_->sub(ring_->one(), lambda_);
            if (ring_->is_zero(d))
                return Verdict::False;
            if (auto q = ring_->divide_exact(a, d); q && ring_->mul(*q, d) == a)
                return Verdict::True;
            return ring_->kind() == Ring::Kind::Integers ? Verdict::False : Verdict::Unknown;
        }
        return Verdict::Unknown;
    }
    // Generated on an infinite ring.
    bool gens_in_max = true;
    for (const auto &g : generators_)
        gens_in_max = gens_in_max && in_max(g);
    if (gens_in_max && !in_max(a))
        return Verdict::False;
    FormParameter minimal(ring_, lambda_, Mode::Min);
    if (minimal.contains_unconjugated(a) == Verdict::True)
        return Verdict::True;
    return bounded_closure_search(a);
}

Verdict FormParameter::bounded_closure_search(const Value &a) const {
    std::vector<Value> probes = {ring_->one(), ring_->from_int(-1), ring_->from_int(2), lambda_};
    std::set<Value> s(generators_.begin(), generators_.end());
    for (const auto &x : probes)
        s.insert(ring_->sub(x, ring_->mul(lambda_, ring_->involve(x))));
    for (int round = 0; round < depth_; ++round) {
        if (s.count(a))
            return Verdict::True;
        std::vector<Value> cur(s.begin(), s.end());
        for (std::size_t i = 0; i < cur.size() && s.size() < 4000; ++i) {
            for (std::size_t j = i; j < cur.size() && s.size() < 4000; ++j) {
                s.insert(ring_->add(cur[i], cur[j]));
                s.insert(ring_->sub(cur[i], cur[j]));
            }
            for (const auto &x : probes)
                s.insert(ring_->mul(ring_->mul(ring_->involve(x), cur[i]), x));
        }
    }
    return s.count(a) ? Verdict::True : Verdict::Unknown;
}

Verdict FormParameter::validate() const {
    if (*members_) {
        const auto &s = **members_;
        auto lmin = lambda_min_set(*ring_, lambda_);
        auto lmax = lambda_max_set(*ring_, lambda_);
        for (const auto &m : lmin)
            if (!s.count(m))
                return Verdict::False;
        for (const auto &m : s)
            if (!lmax.count(m))
                return Verdict::False;
        for (const auto &a : s)
            for (const auto &b : s)
                if (!s.count(ring_->add(a, b)))
                    return Verdict::False;
        auto elems = ring_->elements();
        for (const auto &x : *elems)
            for (const auto &a : s)
                if (!s.count(ring_->mul(ring_->mul(ring_->involve(x), a), x)))
                    return Verdict::False;
        return Verdict::True;
    }
    if (coefficients_)
        return coefficients_->validate();
    if (mode_ != Mode::Generated)
        return Verdict::True;
    for (const auto &g : generators_)
        if (!in_max(g))
            return Verdict::False;
    return Verdict::Unknown;
}

std::string FormParameter::describe() const {
    switch (mode_) {
    case Mode::Min:
        return "min";
    case Mode::Max:
        return "max";
    default:
        break;
    }
    std::string s = "gen{";
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (i)
            s += ",";
        s += ring_->format(generators_[i]);
    }
    return s + "}";
}

FormParameter parse_form_parameter(RingPtr ring, const Value &lambda, std::string_view text) {
    while (!text.empty() && text.front() == ' ')
        text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ')
        text.remove_suffix(1);
    if (text == "min")
        return FormParameter::min(std::move(ring), lambda);
    if (text == "max")
        return FormParameter::max(std::move(ring), lambda);
    if (text.size() >= 5 && text.substr(0, 4) == "gen{" && text.back() == '}') {
        std::vector<Value> gens;
        auto inner = text.substr(4, text.size() - 5);
        int depth = 0;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= inner.size(); ++i) {
            if (i < inner.size() && (inner[i] == '(' || inner[i] == '{'))
                ++depth;
            else if (i < inner.size() && (inner[i] == ')' || inner[i] == '}'))
                --depth;
            if (i == inner.size() || (inner[i] == ',' && depth == 0)) {
                auto piece = inner.substr(start, i - start);
                if (!piece.empty())
                    gens.push_back(parse_element(*ring, piece));
                start = i + 1;
            }
        }
        return FormParameter(std::move(ring), lambda, FormParameter::Mode::Generated,
                             std::move(gens));
    }
    throw ParseError("form parameter must be min, max or gen{...}, got '" + std::string(text) +
                     "'");
}

} // namespace formring
