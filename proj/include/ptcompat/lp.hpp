#ifndef PTCOMPAT_LP_HPP
#define PTCOMPAT_LP_HPP

// Exact rational linear programming with checkable certificates.
//
// A LinearProgram is solved by the revised simplex in detail/simplex.hpp,
// either on the program itself brought to standard form ("primal route",
// rows = constraints) or on its dual ("dual route", rows = variables),
// whichever has fewer rows. Both routes report results in terms of the
// original program.
//
// Certificate conventions:
//  * Optimal::dual holds multipliers u for the maximisation form
//    (objective c for maximize, -c for minimize, 0 for feasibility):
//    u_i >= 0 on <= rows, u_i <= 0 on >= rows, free on = rows,
//    sum_i u_i a_ij >= c_j on nonnegative variables, = c_j on free ones,
//    and b^T u equals the maximisation-form optimum.
//  * Infeasible::farkas holds y with y_i >= 0 on inequality rows, free on
//    equality rows, applied to each row rewritten as ">=" (<= rows negated).
//    The combined row r = sum_i y_i s_i a_i (s_i = -1 on <= rows) has
//    r_j <= 0 on nonnegative variables and r_j = 0 on free ones, while the
//    combined right-hand side is strictly positive: 0 >= r.x >= rhs > 0.
//  * Unbounded carries a feasible point and a recession ray that improves
//    the objective.

#include <cstddef>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "detail/simplex.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace ptc {

enum class Relation { less_equal, equal, greater_equal };
enum class Sense { maximize, minimize, feasibility };
enum class VarBound { nonnegative, free };

struct Constraint {
    Vector row;
    Relation relation = Relation::less_equal;
    Rational rhs;
};

struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<VarBound> bounds;
    std::vector<Constraint> constraints;
    Sense sense = Sense::feasibility;
    Vector objective;

    LinearProgram() = default;
    LinearProgram(std::size_t n, VarBound bound = VarBound::nonnegative)
        : num_vars(n), bounds(n, bound), objective(n, Rational(0))
    {
    }

    void add(Vector row, Relation rel, Rational rhs)
    {
        constraints.push_back(Constraint{std::move(row), rel, std::move(rhs)});
    }
};

namespace lp {

struct Optimal {
    Vector point;
    Rational value;
    Vector dual;
};

struct Infeasible {
    Vector farkas;
};

struct Unbounded {
    Vector point;
    Vector ray;
};

}  // namespace lp

using LpOutcome = std::variant<lp::Optimal, lp::Infeasible, lp::Unbounded>;

enum class LpRoute { automatic, primal, dual };

struct SolveOptions {
    LpRoute route = LpRoute::automatic;
};

namespace detail {

inline int row_sign(Relation r) { return r == Relation::less_equal ? -1 : 1; }

inline Vector max_form_objective(const LinearProgram& lp)
{
    switch (lp.sense) {
    case Sense::maximize:
        return lp.objective;
    case Sense::minimize:
        return scaled(lp.objective, Rational(-1));
    case Sense::feasibility:
        break;
    }
    return Vector(lp.num_vars, Rational(0));
}

inline void check_shape(const LinearProgram& lp)
{
    if (lp.bounds.size() != lp.num_vars) throw InputError("LP: bounds length differs from variable count");
    if (lp.objective.size() != lp.num_vars) throw InputError("LP: objective length differs from variable count");
    for (std::size_t i = 0; i < lp.constraints.size(); ++i)
        if (lp.constraints[i].row.size() != lp.num_vars)
            throw InputError("LP: constraint " + std::to_string(i) + " has wrong row length");
    if (lp.constraints.empty() && lp.sense == Sense::feasibility && lp.num_vars == 0)
        throw InputError("LP: no constraints and no objective");
}

inline bool relation_holds(const Rational& lhs, Relation rel, const Rational& rhs)
{
    switch (rel) {
    case Relation::less_equal:
        return lhs <= rhs;
    case Relation::equal:
        return lhs == rhs;
    case Relation::greater_equal:
        return lhs >= rhs;
    }
    return false;
}

inline bool point_feasible(const LinearProgram& lp, const Vector& x)
{
    if (x.size() != lp.num_vars) return false;
    for (std::size_t j = 0; j < lp.num_vars; ++j)
        if (lp.bounds[j] == VarBound::nonnegative && sgn(x[j]) < 0) return false;
    for (const auto& c : lp.constraints)
        if (!relation_holds(dot(c.row, x), c.relation, c.rhs)) return false;
    return true;
}

// ---- primal route: the program itself in standard form -------------------

inline LpOutcome solve_primal_route(const LinearProgram& lp, const std::vector<std::size_t>& kept)
{
    const std::size_t n = lp.num_vars;
    StandardForm sf;
    sf.rows = kept.size();
    sf.rhs.resize(sf.rows);
    Vector c = max_form_objective(lp);

    // variable j -> column(s)
    std::vector<std::size_t> plus_col(n), minus_col(n, SIZE_MAX);
    for (std::size_t j = 0; j < n; ++j) {
        SparseColumn col;
        for (std::size_t r = 0; r < kept.size(); ++r) {
            const Rational& a = lp.constraints[kept[r]].row[j];
            if (sgn(a) != 0) col.entries.emplace_back(r, a);
        }
        plus_col[j] = sf.columns.size();
        sf.cost.push_back(-c[j]);
        if (lp.bounds[j] == VarBound::free) {
            SparseColumn neg = col;
            for (auto& e : neg.entries) e.second = -e.second;
            sf.columns.push_back(std::move(col));
            minus_col[j] = sf.columns.size();
            sf.columns.push_back(std::move(neg));
            sf.cost.push_back(c[j]);
        } else {
            sf.columns.push_back(std::move(col));
        }
    }
    for (std::size_t r = 0; r < kept.size(); ++r) {
        const auto& con = lp.constraints[kept[r]];
        sf.rhs[r] = con.rhs;
        if (con.relation == Relation::equal) continue;
        SparseColumn slack;
        slack.entries.emplace_back(r, Rational(con.relation == Relation::less_equal ? 1 : -1));
        sf.columns.push_back(std::move(slack));
        sf.cost.push_back(Rational(0));
    }

    SfResult res = solve_standard_form(sf);
    auto recover = [&](const Vector& y) {
        Vector x(n);
        for (std::size_t j = 0; j < n; ++j) {
            x[j] = y[plus_col[j]];
            if (minus_col[j] != SIZE_MAX) x[j] -= y[minus_col[j]];
        }
        return x;
    };

    switch (res.status) {
    case SfStatus::optimal: {
        lp::Optimal out;
        out.point = recover(res.primal);
        out.value = lp.sense == Sense::feasibility ? Rational(0) : dot(lp.objective, out.point);
        out.dual.assign(lp.constraints.size(), Rational(0));
        for (std::size_t r = 0; r < kept.size(); ++r) out.dual[kept[r]] = -res.duals[r];
        return out;
    }
    case SfStatus::infeasible: {
        lp::Infeasible out;
        out.farkas.assign(lp.constraints.size(), Rational(0));
        for (std::size_t r = 0; r < kept.size(); ++r) {
            const auto& con = lp.constraints[kept[r]];
            out.farkas[kept[r]] = row_sign(con.relation) * res.duals[r];
        }
        return out;
    }
    case SfStatus::unbounded:
        return lp::Unbounded{recover(res.primal), recover(res.ray)};
    }
    throw InvariantError("unreachable simplex status");
}

// ---- dual route: solve the dual program in standard form ------------------

inline LpOutcome solve_dual_route(const LinearProgram& lp, const std::vector<std::size_t>& kept, bool allow_recursion = true)
{
    const std::size_t n = lp.num_vars;
    Vector c = max_form_objective(lp);

    StandardForm sf;
    sf.rows = n;
    sf.rhs = c;
    // column -> (constraint, sign) so u_i = sign * column value
    struct Origin {
        std::size_t constraint;
        int sign;
    };
    std::vector<Origin> origin;
    for (std::size_t r = 0; r < kept.size(); ++r) {
        const auto& con = lp.constraints[kept[r]];
        auto push = [&](int sign) {
            SparseColumn col;
            for (std::size_t j = 0; j < n; ++j)
                if (sgn(con.row[j]) != 0) col.entries.emplace_back(j, sign > 0 ? con.row[j] : Rational(-con.row[j]));
            sf.columns.push_back(std::move(col));
            sf.cost.push_back(sign > 0 ? con.rhs : Rational(-con.rhs));
            origin.push_back({kept[r], sign});
        };
        switch (con.relation) {
        case Relation::less_equal:
            push(1);
            break;
        case Relation::greater_equal:
            push(-1);
            break;
        case Relation::equal:
            push(1);
            push(-1);
            break;
        }
    }
    const std::size_t structural = sf.columns.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (lp.bounds[j] != VarBound::nonnegative) continue;
        SparseColumn surplus;
        surplus.entries.emplace_back(j, Rational(-1));
        sf.columns.push_back(std::move(surplus));
        sf.cost.push_back(Rational(0));
    }

    SfResult res = solve_standard_form(sf);
    auto multipliers = [&](const Vector& y) {
        Vector u(lp.constraints.size(), Rational(0));
        for (std::size_t k = 0; k < structural; ++k)
            if (sgn(y[k]) != 0) u[origin[k].constraint] += origin[k].sign * y[k];
        return u;
    };

    switch (res.status) {
    case SfStatus::optimal: {
        lp::Optimal out;
        out.point = res.duals;
        out.value = lp.sense == Sense::feasibility ? Rational(0) : dot(lp.objective, out.point);
        out.dual = multipliers(res.primal);
        return out;
    }
    case SfStatus::unbounded: {
        // dual unbounded: primal infeasible
        Vector du = multipliers(res.ray);
        lp::Infeasible out;
        out.farkas.assign(lp.constraints.size(), Rational(0));
        for (std::size_t i = 0; i < du.size(); ++i)
            if (sgn(du[i]) != 0) out.farkas[i] = -row_sign(lp.constraints[i].relation) * du[i];
        return out;
    }
    case SfStatus::infeasible: {
        // dual infeasible: the Farkas vector is an improving primal ray; the
        // primal is unbounded if it is feasible at all.
        if (!allow_recursion) throw InvariantError("feasibility dual cannot be infeasible");
        LinearProgram feas = lp;
        feas.sense = Sense::feasibility;
        std::fill(feas.objective.begin(), feas.objective.end(), Rational(0));
        LpOutcome f = solve_dual_route(feas, kept, false);
        if (auto* opt = std::get_if<lp::Optimal>(&f)) return lp::Unbounded{opt->point, res.duals};
        return f;
    }
    }
    throw InvariantError("unreachable simplex status");
}

}  // namespace detail

/// Solves the program exactly. Deterministic: Bland's rule with
/// smallest-index tie breaking throughout.
inline LpOutcome solve(const LinearProgram& lp, SolveOptions options = {})
{
    detail::check_shape(lp);

    // Only presolve step: all-zero rows are dropped, or refute the program.
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
        const auto& con = lp.constraints[i];
        if (!is_zero(con.row)) {
            kept.push_back(i);
            continue;
        }
        if (detail::relation_holds(Rational(0), con.relation, con.rhs)) continue;
        lp::Infeasible out;
        out.farkas.assign(lp.constraints.size(), Rational(0));
        // 0 (rel) b violated: pick y so that the combined rhs is positive.
        Rational y = 1;
        if (con.relation == Relation::equal && sgn(con.rhs) < 0) y = -1;
        out.farkas[i] = y;
        return out;
    }

    LpRoute route = options.route;
    if (route == LpRoute::automatic) route = kept.size() <= lp.num_vars ? LpRoute::primal : LpRoute::dual;
    if (route == LpRoute::primal) return detail::solve_primal_route(lp, kept);
    return detail::solve_dual_route(lp, kept);
}

/// Re-checks a certificate with exact arithmetic only.
inline bool verify(const LinearProgram& lp, const LpOutcome& outcome)
{
    try {
        detail::check_shape(lp);
    } catch (const InputError&) {
        return false;
    }
    const std::size_t n = lp.num_vars;
    const std::size_t m = lp.constraints.size();
    Vector c = detail::max_form_objective(lp);

    if (const auto* opt = std::get_if<lp::Optimal>(&outcome)) {
        if (!detail::point_feasible(lp, opt->point)) return false;
        Rational value = lp.sense == Sense::feasibility ? Rational(0) : dot(lp.objective, opt->point);
        if (value != opt->value) return false;
        if (opt->dual.size() != m) return false;
        Vector combined(n, Rational(0));
        Rational dual_value = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& con = lp.constraints[i];
            const Rational& u = opt->dual[i];
            if (con.relation == Relation::less_equal && sgn(u) < 0) return false;
            if (con.relation == Relation::greater_equal && sgn(u) > 0) return false;
            add_scaled(combined, con.row, u);
            dual_value += u * con.rhs;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (lp.bounds[j] == VarBound::nonnegative ? combined[j] < c[j] : combined[j] != c[j]) return false;
        }
        return dual_value == dot(c, opt->point);
    }

    if (const auto* inf = std::get_if<lp::Infeasible>(&outcome)) {
        if (inf->farkas.size() != m) return false;
        Vector combined(n, Rational(0));
        Rational rhs = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& con = lp.constraints[i];
            const Rational& y = inf->farkas[i];
            if (con.relation != Relation::equal && sgn(y) < 0) return false;
            if (sgn(y) == 0) continue;
            Rational signed_y = detail::row_sign(con.relation) * y;
            add_scaled(combined, con.row, signed_y);
            rhs += signed_y * con.rhs;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (lp.bounds[j] == VarBound::nonnegative ? sgn(combined[j]) > 0 : sgn(combined[j]) != 0) return false;
        }
        return sgn(rhs) > 0;
    }

    const auto& unb = std::get<lp::Unbounded>(outcome);
    if (lp.sense == Sense::feasibility) return false;
    if (!detail::point_feasible(lp, unb.point)) return false;
    if (unb.ray.size() != n) return false;
    for (std::size_t j = 0; j < n; ++j)
        if (lp.bounds[j] == VarBound::nonnegative && sgn(unb.ray[j]) < 0) return false;
    for (const auto& con : lp.constraints) {
        Rational s = dot(con.row, unb.ray);
        if (!detail::relation_holds(s, con.relation, Rational(0))) return false;
    }
    return sgn(dot(c, unb.ray)) > 0;
}

inline const char* status_name(const LpOutcome& out)
{
    if (std::holds_alternative<lp::Optimal>(out)) return "optimal";
    if (std::holds_alternative<lp::Infeasible>(out)) return "infeasible";
    return "unbounded";
}

/// Plain-text dump, one item per line, rationals as num/den:
///
///     lp <num_vars> <num_constraints>
///     sense maximize|minimize|feasibility
///     objective <c_0> ... <c_{n-1}>
///     bounds <n|f> ...            (n = nonnegative, f = free)
///     c<i> <a_0> ... <a_{n-1}> <=|=|>= <rhs>
///     end
inline void dump(std::ostream& os, const LinearProgram& lp)
{
    os << "lp " << lp.num_vars << ' ' << lp.constraints.size() << '\n';
    os << "sense "
       << (lp.sense == Sense::maximize ? "maximize" : lp.sense == Sense::minimize ? "minimize" : "feasibility") << '\n';
    os << "objective";
    for (const auto& c : lp.objective) os << ' ' << to_string(c);
    os << "\nbounds";
    for (auto b : lp.bounds) os << (b == VarBound::free ? " f" : " n");
    os << '\n';
    for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
        const auto& con = lp.constraints[i];
        os << 'c' << i;
        for (const auto& a : con.row) os << ' ' << to_string(a);
        os << (con.relation == Relation::less_equal ? " <= " : con.relation == Relation::equal ? " = " : " >= ")
           << to_string(con.rhs) << '\n';
    }
    os << "end\n";
}

}  // namespace ptc

#endif
