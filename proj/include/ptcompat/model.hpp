#ifndef PTCOMPAT_MODEL_HPP
#define PTCOMPAT_MODEL_HPP

// Finite-dimensional probabilistic theories and finite-outcome observables.
//
// A theory is the convex hull of finitely many extreme points in homogeneous
// coordinates, normalised by a unit functional. Effects are linear
// functionals taking values in [0,1] on every extreme point; an observable is
// an ordered list of effects summing to the unit.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "lp.hpp"
#include "rational.hpp"

namespace ptc {

class TheorySpace {
public:
    TheorySpace(std::string name, std::size_t dim, std::vector<Vector> extreme_points, Vector unit)
        : name_(std::move(name)), dim_(dim), points_(std::move(extreme_points)), unit_(std::move(unit))
    {
        if (dim_ == 0) throw InputError("theory '" + name_ + "': dimension must be positive");
        if (unit_.size() != dim_) throw InputError("theory '" + name_ + "': unit has wrong length");
        if (points_.empty()) throw InputError("theory '" + name_ + "': no extreme points");
        for (std::size_t k = 0; k < points_.size(); ++k) {
            if (points_[k].size() != dim_)
                throw InputError("theory '" + name_ + "': extreme point " + std::to_string(k) + " has wrong length");
            if (dot(unit_, points_[k]) != 1)
                throw InputError("theory '" + name_ + "': extreme point " + std::to_string(k) + " is not normalised");
        }
        std::vector<const Vector*> sorted;
        for (const auto& p : points_) sorted.push_back(&p);
        std::sort(sorted.begin(), sorted.end(), [](const Vector* a, const Vector* b) { return *a < *b; });
        for (std::size_t k = 1; k < sorted.size(); ++k)
            if (*sorted[k] == *sorted[k - 1]) throw InputError("theory '" + name_ + "': duplicate extreme point");
        if (rank(points_) != dim_)
            throw InputError("theory '" + name_ + "': extreme points do not span the coordinate space");
    }

    const std::string& name() const { return name_; }
    std::size_t dim() const { return dim_; }
    const std::vector<Vector>& extreme_points() const { return points_; }
    const Vector& unit() const { return unit_; }

    friend bool operator==(const TheorySpace& a, const TheorySpace& b)
    {
        return a.name_ == b.name_ && a.dim_ == b.dim_ && a.unit_ == b.unit_ && a.points_ == b.points_;
    }

private:
    std::string name_;
    std::size_t dim_;
    std::vector<Vector> points_;
    Vector unit_;
};

using TheoryPtr = std::shared_ptr<const TheorySpace>;

inline TheoryPtr make_theory(std::string name, std::size_t dim, std::vector<Vector> points, Vector unit)
{
    return std::make_shared<const TheorySpace>(std::move(name), dim, std::move(points), std::move(unit));
}

inline bool same_theory(const TheoryPtr& a, const TheoryPtr& b) { return a == b || (a && b && *a == *b); }

struct Effect {
    Vector coeffs;

    Rational operator()(const Vector& state) const { return dot(coeffs, state); }
    friend bool operator==(const Effect&, const Effect&) = default;
};

/// True iff 0 <= e.x <= 1 on every extreme point (hence on the whole hull).
inline bool is_valid_effect(const TheorySpace& theory, const Effect& e)
{
    if (e.coeffs.size() != theory.dim()) return false;
    for (const auto& x : theory.extreme_points()) {
        Rational v = e(x);
        if (sgn(v) < 0 || v > 1) return false;
    }
    return true;
}

struct Distribution {
    Vector probs;

    explicit Distribution(Vector p) : probs(std::move(p))
    {
        Rational total = 0;
        for (const auto& q : probs) {
            if (sgn(q) < 0) throw InputError("distribution has a negative entry");
            total += q;
        }
        if (total != 1) throw InputError("distribution does not sum to 1");
    }

    std::size_t size() const { return probs.size(); }
    friend bool operator==(const Distribution&, const Distribution&) = default;
};

inline Distribution uniform_distribution(std::size_t m)
{
    if (m == 0) throw InputError("uniform distribution needs at least one outcome");
    return Distribution(Vector(m, Rational(1, m)));
}

class Observable {
public:
    Observable(TheoryPtr theory, std::vector<std::string> outcomes, std::vector<Effect> effects)
        : theory_(std::move(theory)), outcomes_(std::move(outcomes)), effects_(std::move(effects))
    {
        if (!theory_) throw InputError("observable without a theory");
        if (outcomes_.empty()) throw InputError("observable needs at least one outcome");
        if (outcomes_.size() != effects_.size()) throw InputError("observable: outcome and effect counts differ");
        std::set<std::string> seen(outcomes_.begin(), outcomes_.end());
        if (seen.size() != outcomes_.size()) throw InputError("observable: outcome labels are not distinct");
        Vector total(theory_->dim(), Rational(0));
        for (std::size_t j = 0; j < effects_.size(); ++j) {
            if (!is_valid_effect(*theory_, effects_[j]))
                throw InputError("observable: effect '" + outcomes_[j] + "' leaves [0,1] on some extreme point");
            add_scaled(total, effects_[j].coeffs, Rational(1));
        }
        if (total != theory_->unit()) throw InputError("observable: effects do not sum to the unit");
    }

    const TheoryPtr& theory() const { return theory_; }
    const std::vector<std::string>& outcomes() const { return outcomes_; }
    const std::vector<Effect>& effects() const { return effects_; }
    std::size_t size() const { return effects_.size(); }

    friend bool operator==(const Observable& a, const Observable& b)
    {
        return same_theory(a.theory_, b.theory_) && a.outcomes_ == b.outcomes_ && a.effects_ == b.effects_;
    }

private:
    TheoryPtr theory_;
    std::vector<std::string> outcomes_;
    std::vector<Effect> effects_;
};

/// Source outcome -> target outcome. Targets are ordered by first
/// appearance when walking the source outcomes in order.
using OutcomeMap = std::map<std::string, std::string>;

struct State {
    Vector coords;
    /// Convex weights over the theory's extreme points reproducing coords.
    Vector weights;
};

struct StateRejection {
    /// Affine functional h(z) = coeffs.z + offset with h >= 0 on every
    /// extreme point and h(v) < 0 at the rejected vector.
    Vector coeffs;
    Rational offset;
    Vector farkas;
};

using StateCheck = std::variant<State, StateRejection>;

inline Distribution apply(const Observable& m, const Vector& state)
{
    if (state.size() != m.theory()->dim()) throw InputError("apply: state dimension mismatch");
    Vector p;
    p.reserve(m.size());
    for (const auto& e : m.effects()) p.push_back(e(state));
    return Distribution(std::move(p));
}

inline Distribution apply(const Observable& m, const State& s) { return apply(m, s.coords); }

inline Observable make_trivial(const TheoryPtr& theory, const Distribution& p, std::vector<std::string> labels)
{
    if (labels.size() != p.size()) throw InputError("make_trivial: label count differs from distribution length");
    std::vector<Effect> effects;
    for (const auto& q : p.probs) effects.push_back(Effect{scaled(theory->unit(), q)});
    return Observable(theory, std::move(labels), std::move(effects));
}

/// Effects proportional to the unit, i.e. state independent.
inline std::optional<Distribution> trivial_distribution(const Observable& m)
{
    const Vector& u = m.theory()->unit();
    std::size_t pivot = 0;
    while (sgn(u[pivot]) == 0) ++pivot;
    Vector p;
    for (const auto& e : m.effects()) {
        Rational q = e.coeffs[pivot] / u[pivot];
        if (e.coeffs != scaled(u, q)) return std::nullopt;
        p.push_back(q);
    }
    return Distribution(std::move(p));
}

inline Observable mix(const std::vector<Observable>& obs, const Vector& weights)
{
    if (obs.empty()) throw InputError("mix: no observables");
    if (obs.size() != weights.size()) throw InputError("mix: weight count differs from observable count");
    Rational total = 0;
    for (const auto& w : weights) {
        if (sgn(w) < 0) throw InputError("mix: negative weight");
        total += w;
    }
    if (total != 1) throw InputError("mix: weights do not sum to 1");
    const auto& first = obs.front();
    for (const auto& o : obs) {
        if (!same_theory(o.theory(), first.theory())) throw InputError("mix: observables live on different theories");
        if (o.outcomes() != first.outcomes()) throw InputError("mix: outcome label lists differ");
    }
    std::vector<Effect> effects(first.size(), Effect{Vector(first.theory()->dim(), Rational(0))});
    for (std::size_t i = 0; i < obs.size(); ++i)
        for (std::size_t j = 0; j < first.size(); ++j) add_scaled(effects[j].coeffs, obs[i].effects()[j].coeffs, weights[i]);
    return Observable(first.theory(), first.outcomes(), std::move(effects));
}

/// lambda * m + (1 - lambda) * noise, with noise a trivial observable.
inline Observable noisy(const Observable& m, const Rational& lambda, const Observable& noise)
{
    if (sgn(lambda) < 0 || lambda > 1) throw InputError("noisy: lambda outside [0,1]");
    if (!trivial_distribution(noise)) throw InputError("noisy: noise observable is not trivial");
    if (lambda == 1) {
        if (!same_theory(m.theory(), noise.theory()) || m.outcomes() != noise.outcomes())
            throw InputError("noisy: noise must share theory and outcomes");
        return m;
    }
    if (sgn(lambda) == 0) {
        if (!same_theory(m.theory(), noise.theory()) || m.outcomes() != noise.outcomes())
            throw InputError("noisy: noise must share theory and outcomes");
        return noise;
    }
    return mix({m, noise}, {lambda, 1 - lambda});
}

inline Observable post_process(const Observable& m, const OutcomeMap& g)
{
    std::vector<std::string> targets;
    std::map<std::string, std::size_t> index;
    for (const auto& o : m.outcomes()) {
        auto it = g.find(o);
        if (it == g.end()) throw InputError("post_process: outcome '" + o + "' has no image");
        if (index.emplace(it->second, targets.size()).second) targets.push_back(it->second);
    }
    std::vector<Effect> effects(targets.size(), Effect{Vector(m.theory()->dim(), Rational(0))});
    for (std::size_t j = 0; j < m.size(); ++j)
        add_scaled(effects[index.at(g.at(m.outcomes()[j]))].coeffs, m.effects()[j].coeffs, Rational(1));
    return Observable(m.theory(), std::move(targets), std::move(effects));
}

/// (h after g) as a single outcome map on g's domain.
inline OutcomeMap compose(const OutcomeMap& h, const OutcomeMap& g)
{
    OutcomeMap out;
    for (const auto& [src, mid] : g) {
        auto it = h.find(mid);
        if (it == h.end()) throw InputError("compose: '" + mid + "' has no image");
        out[src] = it->second;
    }
    return out;
}

inline StateCheck validate_state(const TheorySpace& theory, const Vector& v)
{
    if (v.size() != theory.dim()) throw InputError("validate_state: wrong vector length");
    const auto& pts = theory.extreme_points();
    const std::size_t d = theory.dim();
    LinearProgram lp(pts.size());
    for (std::size_t i = 0; i < d; ++i) {
        Vector row(pts.size());
        for (std::size_t k = 0; k < pts.size(); ++k) row[k] = pts[k][i];
        lp.add(std::move(row), Relation::equal, v[i]);
    }
    lp.add(Vector(pts.size(), Rational(1)), Relation::equal, Rational(1));

    LpOutcome out = solve(lp);
    if (auto* opt = std::get_if<lp::Optimal>(&out)) return State{v, opt->point};
    const auto& inf = std::get<lp::Infeasible>(out);
    StateRejection rej;
    rej.coeffs.resize(d);
    for (std::size_t i = 0; i < d; ++i) rej.coeffs[i] = -inf.farkas[i];
    rej.offset = -inf.farkas[d];
    rej.farkas = inf.farkas;
    return rej;
}

}  // namespace ptc

#endif
