#pragma once

#include "formring/ring.hpp"

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace formring {

/// A lambda-form parameter Lambda with Lambda_min <= Lambda <= Lambda_max,
/// closed under a -> bar(x) a x.
///
/// Membership is exact on finite rings (the whole set is enumerated once at
/// construction). On polynomial and truncated rings whose lambda is a
/// constant, membership reduces to the coefficients (Lambda[X]). Elsewhere
/// Max is always exact, Min is exact when it reduces to divisibility, and
/// Generated falls back to a depth-bounded closure with Unknown on failure.
class FormParameter {
  public:
    enum class Mode { Min, Max, Generated };

    FormParameter(RingPtr ring, Value lambda, Mode mode, std::vector<Value> generators = {},
                  int search_depth = 4);

    static FormParameter min(RingPtr ring, Value lambda) {
        return {std::move(ring), std::move(lambda), Mode::Min};
    }
    static FormParameter max(RingPtr ring, Value lambda) {
        return {std::move(ring), std::move(lambda), Mode::Max};
    }

    const RingPtr &ring() const { return ring_; }
    const Value &lambda() const { return lambda_; }
    Mode mode() const { return mode_; }
    const std::vector<Value> &generators() const { return generators_; }

    /// a in Lambda, or a in bar(Lambda) when `conjugated`.
    Verdict contains(const Value &a, bool conjugated = false) const;
    bool in_max(const Value &a) const;

    /// Checks the form-parameter axioms; Unknown when not decidable here.
    Verdict validate() const;

    /// Same mode over another ring, e.g. Lambda[X] over R[X] or Lambda_s over R_s;
    /// `map` carries lambda and the generators across.
    template <class Map> FormParameter rebase(RingPtr target, Map &&map) const {
        std::vector<Value> gens;
        for (const auto &g : generators_)
            gens.push_back(map(g));
        return FormParameter(std::move(target), map(lambda_), mode_, std::move(gens), depth_);
    }

    /// "min", "max" or "gen{g1,g2}".
    std::string describe() const;

    /// Enumerated member set on finite rings (empty optional otherwise).
    const std::optional<std::set<Value>> &members() const { return *members_; }

  private:
    Verdict contains_unconjugated(const Value &a) const;
    Verdict bounded_closure_search(const Value &a) const;

    RingPtr ring_;
    Value lambda_;
    Mode mode_;
    std::vector<Value> generators_;
    int depth_;
    std::shared_ptr<const std::optional<std::set<Value>>> members_;
    std::shared_ptr<const FormParameter> coefficients_;
};

/// Parses "min", "max", "gen{2}" or "gen{2,X}" against `ring`.
FormParameter parse_form_parameter(RingPtr ring, const Value &lambda, std::string_view text);

/// Lambda_min and Lambda_max as explicit sets on a finite ring.
std::set<Value> lambda_min_set(const Ring &ring, const Value &lambda);
std::set<Value> lambda_max_set(const Ring &ring, const Value &lambda);

} // namespace formring
