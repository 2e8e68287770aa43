#ifndef PTCOMPAT_SAMPLER_HPP
#define PTCOMPAT_SAMPLER_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "model.hpp"

namespace ptc {

/// Deterministic random observable.
///
/// Each split draws an integer direction h, evaluates it on the extreme
/// points and rescales affinely so the minimum is 0 and the maximum 1,
/// giving an effect f = (h - min*unit) / (max - min) that touches both ends
/// of [0,1]. The unit is split iteratively: outcome j takes the largest
/// multiple of f that keeps the remainder an effect, the last outcome takes
/// the remainder. For two outcomes this is exactly (f, unit - f).
inline Observable random_observable(const TheoryPtr& theory, std::size_t outcomes, std::uint64_t seed)
{
    if (outcomes == 0) throw InputError("random_observable: need at least one outcome");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-8, 8);
    const auto& pts = theory->extreme_points();
    const std::size_t d = theory->dim();

    auto boundary_effect = [&]() {
        // one state: every functional is constant, only the unit touches 1
        if (pts.size() == 1) return theory->unit();
        for (;;) {
            Vector h(d);
            for (auto& x : h) x = coeff(rng);
            Rational lo = dot(h, pts[0]), hi = lo;
            for (const auto& p : pts) {
                Rational v = dot(h, p);
                if (v < lo) lo = v;
                if (v > hi) hi = v;
            }
            if (lo == hi) continue;
            Vector f = h;
            add_scaled(f, theory->unit(), Rational(-lo));
            return scaled(f, 1 / (hi - lo));
        }
    };

    std::vector<std::string> labels;
    std::vector<Effect> effects;
    Vector remainder = theory->unit();
    for (std::size_t j = 0; j + 1 < outcomes; ++j) {
        Vector f = boundary_effect();
        Rational alpha = 1;
        for (const auto& p : pts) {
            Rational fv = dot(f, p);
            if (sgn(fv) <= 0) continue;
            Rational cap = dot(remainder, p) / fv;
            if (cap < alpha) alpha = cap;
        }
        Vector e = scaled(f, alpha);
        add_scaled(remainder, e, Rational(-1));
        labels.push_back(std::to_string(j));
        effects.push_back(Effect{std::move(e)});
    }
    labels.push_back(std::to_string(outcomes - 1));
    effects.push_back(Effect{std::move(remainder)});
    return Observable(theory, std::move(labels), std::move(effects));
}

}  // namespace ptc

#endif
