#ifndef PTCOMPAT_COMPAT_HPP
#define PTCOMPAT_COMPAT_HPP

// Joint measurability as exact linear programming.
//
// A joint observable for n observables is a grid of effects, one per cell of
// the m_1 x ... x m_n outcome grid, summing along all other axes to each
// input observable. Because the extreme points span the coordinate space,
// marginals are matched coefficient-wise, and effect validity only needs to
// be imposed at extreme points.
//
// Noisy versions lambda*M + (1-lambda)*T_p enter the programs through the
// substitution t_j = (1-lambda)*p_j with sum_j t_j = 1-lambda, which keeps
// index and region problems linear even when lambda is a variable.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "lp.hpp"
#include "model.hpp"
#include "rational.hpp"
#include "sampler.hpp"

namespace ptc {

class JointObservable {
public:
    JointObservable(TheoryPtr theory, std::vector<std::vector<std::string>> axes, std::vector<Effect> cells)
        : theory_(std::move(theory)), axes_(std::move(axes)), cells_(std::move(cells))
    {
        if (!theory_) throw InputError("joint observable without a theory");
        if (axes_.empty()) throw InputError("joint observable needs at least one axis");
        std::size_t count = 1;
        for (const auto& a : axes_) {
            if (a.empty()) throw InputError("joint observable: empty axis");
            count *= a.size();
        }
        if (cells_.size() != count) throw InputError("joint observable: cell count does not match the grid");
        Vector total(theory_->dim(), Rational(0));
        for (const auto& e : cells_) {
            if (!is_valid_effect(*theory_, e)) throw InputError("joint observable: cell effect leaves [0,1]");
            add_scaled(total, e.coeffs, Rational(1));
        }
        if (total != theory_->unit()) throw InputError("joint observable: cells do not sum to the unit");
    }

    const TheoryPtr& theory() const { return theory_; }
    const std::vector<std::vector<std::string>>& axes() const { return axes_; }
    const std::vector<Effect>& cells() const { return cells_; }

    /// Outcome index along each axis for a row-major cell index (last axis fastest).
    std::vector<std::size_t> coordinates(std::size_t cell) const
    {
        std::vector<std::size_t> c(axes_.size());
        for (std::size_t k = axes_.size(); k-- > 0;) {
            c[k] = cell % axes_[k].size();
            cell /= axes_[k].size();
        }
        return c;
    }

private:
    TheoryPtr theory_;
    std::vector<std::vector<std::string>> axes_;
    std::vector<Effect> cells_;
};

inline Observable marginal(const JointObservable& joint, std::size_t axis)
{
    if (axis >= joint.axes().size()) throw InputError("marginal: axis out of range");
    const auto& labels = joint.axes()[axis];
    std::vector<Effect> effects(labels.size(), Effect{Vector(joint.theory()->dim(), Rational(0))});
    for (std::size_t c = 0; c < joint.cells().size(); ++c)
        add_scaled(effects[joint.coordinates(c)[axis]].coeffs, joint.cells()[c].coeffs, Rational(1));
    return Observable(joint.theory(), labels, std::move(effects));
}

namespace verdict {

struct Compatible {
    JointObservable joint;
    /// Per-axis noise distribution of the witnessed noisy versions; empty
    /// for plain joint-measurability checks, nullopt on axes without noise.
    std::vector<std::optional<Distribution>> noise;
};

struct Incompatible {
    Vector farkas;
};

}  // namespace verdict

struct CompatVerdict {
    LinearProgram lp;
    std::variant<verdict::Compatible, verdict::Incompatible> result;

    bool compatible() const { return std::holds_alternative<verdict::Compatible>(result); }
    const verdict::Compatible& witness() const { return std::get<verdict::Compatible>(result); }
    const verdict::Incompatible& certificate() const { return std::get<verdict::Incompatible>(result); }
};

namespace detail {

inline const TheoryPtr& common_theory(const std::vector<Observable>& obs)
{
    if (obs.empty()) throw InputError("need at least one observable");
    for (const auto& o : obs)
        if (!same_theory(o.theory(), obs.front().theory())) throw InputError("observables live on different theories");
    return obs.front().theory();
}

struct GridLayout {
    std::vector<std::size_t> sizes;
    std::size_t cells = 1;
    std::size_t dim = 0;

    GridLayout(const std::vector<Observable>& obs, std::size_t d) : dim(d)
    {
        for (const auto& o : obs) {
            sizes.push_back(o.size());
            cells *= o.size();
        }
    }

    std::size_t var(std::size_t cell, std::size_t coord) const { return cell * dim + coord; }
    std::size_t grid_vars() const { return cells * dim; }

    std::size_t coordinate(std::size_t cell, std::size_t axis) const
    {
        for (std::size_t k = sizes.size(); k-- > axis + 1;) cell /= sizes[k];
        return cell % sizes[axis];
    }
};

// G_c . x >= 0 (and optionally <= 1) at every extreme point, using an
// integer multiple of x so the rows stay integral.
inline void add_cell_bounds(LinearProgram& lp, const GridLayout& g, const TheorySpace& theory, bool upper)
{
    std::vector<Vector> scaled_points;
    std::vector<Rational> scale;
    for (const auto& x : theory.extreme_points()) {
        Vector xi = integer_multiple(x);
        std::size_t i = 0;
        while (sgn(x[i]) == 0) ++i;
        scale.push_back(xi[i] / x[i]);
        scaled_points.push_back(std::move(xi));
    }
    for (std::size_t c = 0; c < g.cells; ++c) {
        for (std::size_t k = 0; k < scaled_points.size(); ++k) {
            Vector row(lp.num_vars, Rational(0));
            for (std::size_t i = 0; i < g.dim; ++i) row[g.var(c, i)] = scaled_points[k][i];
            if (upper) {
                lp.add(row, Relation::greater_equal, Rational(0));
                lp.add(std::move(row), Relation::less_equal, scale[k]);
            } else {
                lp.add(std::move(row), Relation::greater_equal, Rational(0));
            }
        }
    }
}

inline JointObservable joint_from_point(const std::vector<Observable>& obs, const GridLayout& g, const Vector& point)
{
    std::vector<std::vector<std::string>> axes;
    for (const auto& o : obs) axes.push_back(o.outcomes());
    std::vector<Effect> cells;
    for (std::size_t c = 0; c < g.cells; ++c) {
        Vector e(g.dim);
        for (std::size_t i = 0; i < g.dim; ++i) e[i] = point[g.var(c, i)];
        cells.push_back(Effect{std::move(e)});
    }
    return JointObservable(obs.front().theory(), std::move(axes), std::move(cells));
}

/// lambda_k = offset_k + slope_k * tau, with tau an LP variable when any
/// slope is nonzero.
struct AxisLambda {
    Rational offset;
    Rational slope;
};

struct NoisyJointProgram {
    LinearProgram lp;
    GridLayout grid;
    std::vector<std::vector<std::size_t>> noise_vars;  // empty per axis when lambda is fixed at 1
    std::optional<std::size_t> tau;
};

inline NoisyJointProgram build_noisy_joint_lp(const std::vector<Observable>& obs, const std::vector<AxisLambda>& lambdas)
{
    const auto& theory = common_theory(obs);
    GridLayout g(obs, theory->dim());
    const std::size_t d = g.dim;
    const Vector& unit = theory->unit();

    bool has_tau = false;
    for (const auto& l : lambdas) has_tau = has_tau || sgn(l.slope) != 0;

    std::size_t nvars = g.grid_vars();
    std::vector<std::vector<std::size_t>> noise(obs.size());
    for (std::size_t k = 0; k < obs.size(); ++k) {
        if (lambdas[k].offset == 1 && sgn(lambdas[k].slope) == 0) continue;
        for (std::size_t j = 0; j < obs[k].size(); ++j) noise[k].push_back(nvars++);
    }
    std::optional<std::size_t> tau;
    if (has_tau) tau = nvars++;

    LinearProgram lp(nvars, VarBound::nonnegative);
    for (std::size_t v = 0; v < g.grid_vars(); ++v) lp.bounds[v] = VarBound::free;

    add_cell_bounds(lp, g, *theory, false);

    for (std::size_t k = 0; k < obs.size(); ++k) {
        const auto& lam = lambdas[k];
        for (std::size_t j = 0; j < obs[k].size(); ++j) {
            const Vector& e = obs[k].effects()[j].coeffs;
            for (std::size_t i = 0; i < d; ++i) {
                Vector row(nvars, Rational(0));
                for (std::size_t c = 0; c < g.cells; ++c)
                    if (g.coordinate(c, k) == j) row[g.var(c, i)] = 1;
                if (!noise[k].empty()) row[noise[k][j]] = -unit[i];
                if (tau && sgn(lam.slope) != 0) row[*tau] = -lam.slope * e[i];
                lp.add(std::move(row), Relation::equal, lam.offset * e[i]);
            }
        }
        if (!noise[k].empty()) {
            Vector row(nvars, Rational(0));
            for (auto v : noise[k]) row[v] = 1;
            if (tau && sgn(lam.slope) != 0) row[*tau] = lam.slope;
            lp.add(std::move(row), Relation::equal, 1 - lam.offset);
        }
    }
    if (tau) {
        for (std::size_t k = 0; k < obs.size(); ++k) {
            if (sgn(lambdas[k].slope) == 0) continue;
            Vector row(nvars, Rational(0));
            row[*tau] = lambdas[k].slope;
            lp.add(std::move(row), Relation::less_equal, 1 - lambdas[k].offset);
        }
        lp.sense = Sense::maximize;
        lp.objective[*tau] = 1;
    }
    return NoisyJointProgram{std::move(lp), std::move(g), std::move(noise), tau};
}

inline std::vector<std::optional<Distribution>> noise_from_point(const NoisyJointProgram& prog, const Vector& point)
{
    std::vector<std::optional<Distribution>> out;
    for (const auto& vars : prog.noise_vars) {
        if (vars.empty()) {
            out.emplace_back(std::nullopt);
            continue;
        }
        Rational total = 0;
        for (auto v : vars) total += point[v];
        if (sgn(total) == 0) {
            out.emplace_back(std::nullopt);  // no noise weight: distribution irrelevant
            continue;
        }
        Vector p;
        for (auto v : vars) p.push_back(point[v] / total);
        out.emplace_back(Distribution(std::move(p)));
    }
    return out;
}

inline LpOutcome checked_solve(const LinearProgram& lp)
{
    LpOutcome out = solve(lp);
    if (!verify(lp, out)) throw InvariantError("LP certificate failed exact re-verification");
    return out;
}

}  // namespace detail

/// Feasibility program whose solutions are exactly the joint observables.
inline LinearProgram build_joint_lp(const std::vector<Observable>& obs)
{
    const auto& theory = detail::common_theory(obs);
    detail::GridLayout g(obs, theory->dim());
    LinearProgram lp(g.grid_vars(), VarBound::free);
    detail::add_cell_bounds(lp, g, *theory, true);
    for (std::size_t k = 0; k < obs.size(); ++k) {
        for (std::size_t j = 0; j < obs[k].size(); ++j) {
            for (std::size_t i = 0; i < g.dim; ++i) {
                Vector row(lp.num_vars, Rational(0));
                for (std::size_t c = 0; c < g.cells; ++c)
                    if (g.coordinate(c, k) == j) row[g.var(c, i)] = 1;
                lp.add(std::move(row), Relation::equal, obs[k].effects()[j].coeffs[i]);
            }
        }
    }
    return lp;
}

inline CompatVerdict check_compatible(const std::vector<Observable>& obs)
{
    LinearProgram lp = build_joint_lp(obs);
    LpOutcome out = detail::checked_solve(lp);
    if (auto* opt = std::get_if<lp::Optimal>(&out)) {
        detail::GridLayout g(obs, obs.front().theory()->dim());
        auto joint = detail::joint_from_point(obs, g, opt->point);
        return CompatVerdict{std::move(lp), verdict::Compatible{std::move(joint), {}}};
    }
    if (auto* inf = std::get_if<lp::Infeasible>(&out)) return CompatVerdict{std::move(lp), verdict::Incompatible{inf->farkas}};
    throw InvariantError("joint feasibility program reported unbounded");
}

/// Joint witness marginals equal the inputs exactly; certificates verify
/// against a freshly built program.
inline bool verify_verdict(const std::vector<Observable>& obs, const CompatVerdict& v)
{
    if (v.compatible()) {
        const auto& joint = v.witness().joint;
        if (joint.axes().size() != obs.size()) return false;
        for (std::size_t k = 0; k < obs.size(); ++k)
            if (!(marginal(joint, k) == obs[k])) return false;
        return true;
    }
    LinearProgram fresh = build_joint_lp(obs);
    if (fresh.constraints.size() != v.lp.constraints.size()) return false;
    return verify(fresh, lp::Infeasible{v.certificate().farkas});
}

struct IndexResult {
    Rational lambda_star;
    /// Noise distribution p of the optimal noisy version; nullopt when
    /// lambda_star = 1 (no noise, p irrelevant).
    std::optional<Distribution> noise_witness;
    JointObservable joint;
};

/// Largest lambda such that m is compatible with lambda*n + (1-lambda)*T for
/// some trivial T. A single LP; the optimum is attained.
inline IndexResult compat_index(const Observable& m, const Observable& n, std::ostream* dump_lp = nullptr)
{
    auto prog = detail::build_noisy_joint_lp({m, n}, {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
    if (dump_lp) dump(*dump_lp, prog.lp);
    LpOutcome out = detail::checked_solve(prog.lp);
    const auto* opt = std::get_if<lp::Optimal>(&out);
    if (!opt) throw InvariantError("index program not optimal");
    Rational lambda = opt->point[*prog.tau];
    auto joint = detail::joint_from_point({m, n}, prog.grid, opt->point);
    std::optional<Distribution> p;
    if (lambda < 1) p = detail::noise_from_point(prog, opt->point)[1];
    return IndexResult{lambda, std::move(p), std::move(joint)};
}

struct CompatInterval {
    Rational lower;
    Rational upper;
    bool closed = true;
};

inline CompatInterval compat_interval(const Observable& m, const Observable& n)
{
    return CompatInterval{Rational(0), compat_index(m, n).lambda_star, true};
}

inline CompatVerdict region_membership(const std::vector<Observable>& obs, const Vector& lambdas)
{
    if (lambdas.size() != obs.size()) throw InputError("region_membership: one lambda per observable required");
    std::vector<detail::AxisLambda> axis;
    for (const auto& l : lambdas) {
        if (sgn(l) < 0 || l > 1) throw InputError("region_membership: lambda outside [0,1]");
        axis.push_back({l, Rational(0)});
    }
    auto prog = detail::build_noisy_joint_lp(obs, axis);
    LpOutcome out = detail::checked_solve(prog.lp);
    if (auto* opt = std::get_if<lp::Optimal>(&out)) {
        auto joint = detail::joint_from_point(obs, prog.grid, opt->point);
        return CompatVerdict{std::move(prog.lp), verdict::Compatible{std::move(joint), detail::noise_from_point(prog, opt->point)}};
    }
    if (auto* inf = std::get_if<lp::Infeasible>(&out)) return CompatVerdict{std::move(prog.lp), verdict::Incompatible{inf->farkas}};
    throw InvariantError("region program reported unbounded");
}

/// The noisy version of obs[k] at lambdas[k] that a region witness claims.
inline Observable witnessed_noisy(const Observable& m, const Rational& lambda, const std::optional<Distribution>& p)
{
    if (!p) {
        if (lambda != 1) {
            // zero noise weight only happens at lambda = 1
            throw InputError("witnessed_noisy: missing noise distribution");
        }
        return m;
    }
    return noisy(m, lambda, make_trivial(m.theory(), *p, m.outcomes()));
}

inline bool verify_region_verdict(const std::vector<Observable>& obs, const Vector& lambdas, const CompatVerdict& v)
{
    if (v.compatible()) {
        const auto& w = v.witness();
        if (w.joint.axes().size() != obs.size() || w.noise.size() != obs.size()) return false;
        for (std::size_t k = 0; k < obs.size(); ++k)
            if (!(marginal(w.joint, k) == witnessed_noisy(obs[k], lambdas[k], w.noise[k]))) return false;
        return true;
    }
    std::vector<detail::AxisLambda> axis;
    for (const auto& l : lambdas) axis.push_back({l, Rational(0)});
    auto fresh = detail::build_noisy_joint_lp(obs, axis);
    if (fresh.lp.constraints.size() != v.lp.constraints.size()) return false;
    return verify(fresh.lp, lp::Infeasible{v.certificate().farkas});
}

struct RegionSample {
    Vector direction;
    Rational reach;
    Vector point;  // reach * direction
    JointObservable joint;
    std::vector<std::optional<Distribution>> noise;
};

inline RegionSample region_ray(const std::vector<Observable>& obs, const Vector& direction, std::ostream* dump_lp = nullptr)
{
    if (direction.size() != obs.size()) throw InputError("region scan: direction length differs from observable count");
    Rational total = 0;
    for (const auto& w : direction) {
        if (sgn(w) < 0) throw InputError("region scan: negative direction component");
        total += w;
    }
    if (sgn(total) == 0) throw InputError("region scan: zero direction");
    std::vector<detail::AxisLambda> axis;
    for (const auto& w : direction) axis.push_back({Rational(0), w});
    auto prog = detail::build_noisy_joint_lp(obs, axis);
    if (dump_lp) dump(*dump_lp, prog.lp);
    LpOutcome out = detail::checked_solve(prog.lp);
    const auto* opt = std::get_if<lp::Optimal>(&out);
    if (!opt) throw InvariantError("region scan program not optimal");
    Rational reach = opt->point[*prog.tau];
    auto joint = detail::joint_from_point(obs, prog.grid, opt->point);
    return RegionSample{direction, reach, scaled(direction, reach), std::move(joint), detail::noise_from_point(prog, opt->point)};
}

/// Reach along each direction from the origin. J is convex and contains the
/// origin, so the reaches trace its boundary. Output order = input order.
inline std::vector<RegionSample> region_boundary_scan(const std::vector<Observable>& obs, const std::vector<Vector>& directions)
{
    std::vector<RegionSample> out;
    out.reserve(directions.size());
    for (const auto& w : directions) out.push_back(region_ray(obs, w));
    return out;
}

/// Uniform angular grid over the closed first quadrant, each direction
/// rescaled to unit sum and rounded to denominator 10^6 (second component is
/// one minus the first, so sums stay exact). A single direction is the diagonal.
inline std::vector<Vector> default_directions(std::size_t count)
{
    std::vector<Vector> out;
    if (count == 0) return out;
    if (count == 1) return {Vector{Rational(1, 2), Rational(1, 2)}};
    for (std::size_t i = 0; i < count; ++i) {
        double theta = std::numbers::pi / 2 * static_cast<double>(i) / static_cast<double>(count - 1);
        double c = std::cos(theta), s = std::sin(theta);
        long first = std::lround(c / (c + s) * 1e6);
        Rational w1 = fraction(first, 1000000);
        out.push_back(Vector{w1, 1 - w1});
    }
    return out;
}

struct SamplerConfig {
    std::size_t pairs = 0;
    std::size_t outcomes = 2;
    std::uint64_t seed = 0;
};

struct IndexEstimate {
    Rational upper_bound = 1;
    std::optional<std::pair<Observable, Observable>> argmin;
    std::size_t argmin_index = 0;
    std::size_t evaluated = 0;
};

/// Seeds of the i-th sampled pair; independent of the sample budget, so
/// larger budgets extend smaller ones.
inline std::pair<std::uint64_t, std::uint64_t> pair_seeds(std::uint64_t seed, std::size_t i)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(i),
                      static_cast<std::uint32_t>(static_cast<std::uint64_t>(i) >> 32)};
    std::mt19937_64 rng(seq);
    std::uint64_t a = rng();
    std::uint64_t b = rng();
    return {a, b};
}

/// Minimum of compat_index over sampled pairs: an upper bound on the index
/// of the theory. Ties keep the earliest pair.
inline IndexEstimate theory_index_estimate(const TheoryPtr& theory, const SamplerConfig& config)
{
    IndexEstimate est;
    for (std::size_t i = 0; i < config.pairs; ++i) {
        auto [sa, sb] = pair_seeds(config.seed, i);
        Observable m = random_observable(theory, config.outcomes, sa);
        Observable n = random_observable(theory, config.outcomes, sb);
        Rational value = compat_index(m, n).lambda_star;
        if (!est.argmin || value < est.upper_bound) {
            est.upper_bound = value;
            est.argmin = std::make_pair(m, n);
            est.argmin_index = i;
        }
        ++est.evaluated;
    }
    return est;
}

}  // namespace ptc

#endif
