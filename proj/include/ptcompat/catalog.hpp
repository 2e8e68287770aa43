#ifndef PTCOMPAT_CATALOG_HPP
#define PTCOMPAT_CATALOG_HPP

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "lp.hpp"
#include "model.hpp"
#include "rational.hpp"
#include "sampler.hpp"

namespace ptc {

/// Probability simplex on n points: standard basis, all-ones unit.
inline TheoryPtr classical_simplex(std::size_t n)
{
    if (n == 0) throw InputError("classical_simplex: need at least one point");
    std::vector<Vector> pts;
    for (std::size_t i = 0; i < n; ++i) {
        Vector e(n, Rational(0));
        e[i] = 1;
        pts.push_back(std::move(e));
    }
    return make_theory("classical:" + std::to_string(n), n, std::move(pts), Vector(n, Rational(1)));
}

/// Square state space: (1, x, y) with x, y = +-1, listed cyclically.
inline TheoryPtr square_gbit()
{
    auto q = [](int x, int y) { return Vector{Rational(1), Rational(x), Rational(y)}; };
    return make_theory("gbit-square", 3, {q(1, 1), q(-1, 1), q(-1, -1), q(1, -1)}, {Rational(1), Rational(0), Rational(0)});
}

/// Dichotomic gbit observables: "X" and "Y" read the coordinates, "D" reads
/// x+y and "A" reads x-y (the diagonals, at half strength so they stay effects).
inline Observable gbit_observable(const TheoryPtr& theory, const std::string& which)
{
    Rational h(1, 2), q(1, 4);
    Vector plus;
    if (which == "X") plus = {h, h, 0};
    else if (which == "Y") plus = {h, 0, h};
    else if (which == "D") plus = {h, q, q};
    else if (which == "A") plus = {h, q, -q};
    else throw InputError("unknown gbit observable '" + which + "'");
    Vector minus = theory->unit();
    add_scaled(minus, plus, Rational(-1));
    return Observable(theory, {"+1", "-1"}, {Effect{std::move(plus)}, Effect{std::move(minus)}});
}

// ---- even-cardinality logic on {1,2,3,4} ------------------------------------
//
// Events a = {1,2}, b = {1,3}, c = {1,4} and their complements
// a' = {3,4}, b' = {2,4}, c' = {2,3}. A state is fixed by
// (s(a), s(b), s(c)) in [0,1]^3; in homogeneous coordinates (1, s(a), s(b), s(c)).

struct LogicState {
    std::array<Rational, 3> lambdas;

    explicit LogicState(std::array<Rational, 3> l) : lambdas(std::move(l))
    {
        for (const auto& x : lambdas)
            if (sgn(x) < 0 || x > 1) throw InputError("logic state coordinate outside [0,1]");
    }

    /// (s(a), s(a'), s(b), s(b'), s(c), s(c'))
    std::array<Rational, 6> sixtuple() const
    {
        return {lambdas[0], 1 - lambdas[0], lambdas[1], 1 - lambdas[1], lambdas[2], 1 - lambdas[2]};
    }

    Vector coords() const { return {Rational(1), lambdas[0], lambdas[1], lambdas[2]}; }
};

/// delta_i: point mass at atom i restricted to the logic (classical).
inline LogicState logic_delta(int i)
{
    switch (i) {
    case 1: return LogicState({1, 1, 1});
    case 2: return LogicState({1, 0, 0});
    case 3: return LogicState({0, 1, 0});
    case 4: return LogicState({0, 0, 1});
    }
    throw InputError("logic_delta: index must be 1..4");
}

/// gamma_i = 1 - delta_i (nonclassical vertices).
inline LogicState logic_gamma(int i)
{
    auto d = logic_delta(i);
    return LogicState({1 - d.lambdas[0], 1 - d.lambdas[1], 1 - d.lambdas[2]});
}

inline LogicState logic_uniform() { return LogicState({Rational(1, 2), Rational(1, 2), Rational(1, 2)}); }

/// Named states: delta1..delta4, gamma1..gamma4, uniform.
inline LogicState logic_state_by_name(const std::string& name)
{
    if (name == "uniform") return logic_uniform();
    if (name.size() == 6 && name.rfind("delta", 0) == 0 && name[5] >= '1' && name[5] <= '4') return logic_delta(name[5] - '0');
    if (name.size() == 6 && name.rfind("gamma", 0) == 0 && name[5] >= '1' && name[5] <= '4') return logic_gamma(name[5] - '0');
    throw InputError("unknown logic state '" + name + "'");
}

/// The cube [0,1]^3 of logic states; extreme points delta1..4 then gamma1..4.
inline TheoryPtr even_logic_cube()
{
    std::vector<Vector> pts;
    for (int i = 1; i <= 4; ++i) pts.push_back(logic_delta(i).coords());
    for (int i = 1; i <= 4; ++i) pts.push_back(logic_gamma(i).coords());
    return make_theory("even-logic-cube", 4, std::move(pts), {Rational(1), Rational(0), Rational(0), Rational(0)});
}

/// Sharp observables "A", "B", "C": outcome x reads s(x), outcome x' reads s(x').
inline Observable logic_observable(const TheoryPtr& theory, const std::string& which)
{
    std::size_t axis;
    std::string label;
    if (which == "A") axis = 1, label = "a";
    else if (which == "B") axis = 2, label = "b";
    else if (which == "C") axis = 3, label = "c";
    else throw InputError("unknown logic observable '" + which + "'");
    Vector e(4, Rational(0));
    e[axis] = 1;
    Vector ec = theory->unit();
    ec[axis] = -1;
    return Observable(theory, {label, label + "'"}, {Effect{std::move(e)}, Effect{std::move(ec)}});
}

struct Classification {
    bool classical = false;
    /// Measure on atoms 1..4 when classical.
    Vector measure;
    LinearProgram lp;
    LpOutcome outcome;
};

/// Classical iff some probability measure mu on {1,2,3,4} restricts to s:
/// mu{1,2} = s(a), mu{1,3} = s(b), mu{1,4} = s(c).
inline Classification classify_logic_state(const LogicState& s)
{
    LinearProgram lp(4);
    lp.add({1, 1, 1, 1}, Relation::equal, Rational(1));
    lp.add({1, 1, 0, 0}, Relation::equal, s.lambdas[0]);
    lp.add({1, 0, 1, 0}, Relation::equal, s.lambdas[1]);
    lp.add({1, 0, 0, 1}, Relation::equal, s.lambdas[2]);
    LpOutcome out = solve(lp);
    if (!verify(lp, out)) throw InvariantError("classification certificate failed re-verification");
    Classification c{false, {}, lp, out};
    if (auto* opt = std::get_if<lp::Optimal>(&out)) {
        c.classical = true;
        c.measure = opt->point;
    }
    return c;
}

inline bool is_classical_state(const LogicState& s) { return classify_logic_state(s).classical; }

// ---- Bloch-ball polytopes ---------------------------------------------------

enum class BlochScheme { inscribed, octahedron };

namespace detail {

/// Rational truncation toward zero at denominator 10^6; never increases |x|.
inline Rational truncate_micro(double x)
{
    double scaled_value = std::trunc(x * 1e6);
    return fraction(static_cast<long>(scaled_value), 1000000);
}

/// i-th point of an open-ended spherical low-discrepancy sequence: the
/// two-dimensional additive recurrence with plastic-number increments mapped
/// area-preservingly to the sphere. Prefixes of the sequence are nested.
inline std::array<double, 3> sphere_sequence_point(std::size_t i)
{
    constexpr double plastic = 1.32471795724474602596;
    const double a1 = 1.0 / plastic;
    const double a2 = 1.0 / (plastic * plastic);
    double u = std::fmod(0.5 + a1 * static_cast<double>(i), 1.0);
    double v = std::fmod(0.5 + a2 * static_cast<double>(i), 1.0);
    double z = 1.0 - 2.0 * u;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = 2.0 * std::numbers::pi * v;
    return {r * std::cos(phi), r * std::sin(phi), z};
}

}  // namespace detail

/// Polytope stand-in for the qubit state space: extreme points (1, r) with r
/// rational and |r| <= 1, unit (1,0,0,0). The inscribed scheme takes the
/// first `points` distinct truncated points of a spherical sequence, so
/// smaller point counts give subsets of larger ones.
inline TheoryPtr bloch_polytope(std::size_t points, BlochScheme scheme = BlochScheme::inscribed)
{
    Vector unit{Rational(1), Rational(0), Rational(0), Rational(0)};
    if (scheme == BlochScheme::octahedron) {
        std::vector<Vector> pts;
        for (std::size_t axis = 1; axis <= 3; ++axis) {
            for (int s : {1, -1}) {
                Vector p(4, Rational(0));
                p[0] = 1;
                p[axis] = s;
                pts.push_back(std::move(p));
            }
        }
        return make_theory("bloch:octahedron", 4, std::move(pts), unit);
    }
    if (points < 4) throw InputError("bloch_polytope: need at least 4 points");
    std::vector<Vector> pts;
    std::set<Vector> seen;
    for (std::size_t i = 0; pts.size() < points; ++i) {
        auto r = detail::sphere_sequence_point(i);
        Vector p{Rational(1), detail::truncate_micro(r[0]), detail::truncate_micro(r[1]), detail::truncate_micro(r[2])};
        Rational norm2 = p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
        if (norm2 > 1) throw InvariantError("bloch_polytope: truncated point outside the ball");
        if (seen.insert(p).second) pts.push_back(std::move(p));
    }
    return make_theory("bloch:" + std::to_string(points), 4, std::move(pts), unit);
}

inline bool is_bloch_theory(const TheorySpace& t)
{
    return t.dim() == 4 && t.unit() == Vector{Rational(1), Rational(0), Rational(0), Rational(0)} && t.name().rfind("bloch:", 0) == 0;
}

/// Pauli-like dichotomic observables with effects (1/2)(unit +- coordinate).
inline Observable bloch_axis_observable(const TheoryPtr& theory, std::size_t axis)
{
    if (!is_bloch_theory(*theory)) throw InputError("bloch observable on a non-bloch theory");
    if (axis < 1 || axis > 3) throw InputError("bloch axis must be 1, 2 or 3");
    Vector plus(4, Rational(0)), minus(4, Rational(0));
    plus[0] = minus[0] = Rational(1, 2);
    plus[axis] = Rational(1, 2);
    minus[axis] = Rational(-1, 2);
    return Observable(theory, {"+1", "-1"}, {Effect{std::move(plus)}, Effect{std::move(minus)}});
}

inline std::pair<Observable, Observable> noisy_pauli_observables(const TheoryPtr& theory)
{
    return {bloch_axis_observable(theory, 1), bloch_axis_observable(theory, 2)};
}

// ---- catalog lookup -----------------------------------------------------------

inline std::vector<std::string> catalog_names()
{
    return {"classical:<n>", "gbit-square", "even-logic-cube", "bloch:<points>", "bloch:octahedron"};
}

inline TheoryPtr theory_by_name(const std::string& name)
{
    auto parse_count = [&](const std::string& digits) {
        if (digits.empty() || digits.size() > 9 || digits.find_first_not_of("0123456789") != std::string::npos)
            throw InputError("bad count in theory name '" + name + "'");
        return static_cast<std::size_t>(std::stoul(digits));
    };
    if (name == "gbit-square") return square_gbit();
    if (name == "even-logic-cube") return even_logic_cube();
    if (name == "bloch:octahedron") return bloch_polytope(6, BlochScheme::octahedron);
    if (name.rfind("classical:", 0) == 0) return classical_simplex(parse_count(name.substr(10)));
    if (name.rfind("bloch:", 0) == 0) return bloch_polytope(parse_count(name.substr(6)));
    throw InputError("unknown theory '" + name + "'");
}

/// Named observables a catalog theory ships with (may be empty).
inline std::map<std::string, Observable> catalog_observables(const TheoryPtr& theory)
{
    std::map<std::string, Observable> out;
    if (theory->name() == "gbit-square") {
        for (const char* n : {"X", "Y", "D", "A"}) out.emplace(n, gbit_observable(theory, n));
    } else if (theory->name() == "even-logic-cube") {
        for (const char* n : {"A", "B", "C"}) out.emplace(n, logic_observable(theory, n));
    } else if (is_bloch_theory(*theory)) {
        out.emplace("Mx", bloch_axis_observable(theory, 1));
        out.emplace("My", bloch_axis_observable(theory, 2));
        out.emplace("Mz", bloch_axis_observable(theory, 3));
    }
    return out;
}

}  // namespace ptc

#endif
