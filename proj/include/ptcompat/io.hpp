#ifndef PTCOMPAT_IO_HPP
#define PTCOMPAT_IO_HPP

// JSON and CSV encodings. Rationals are "num/den" strings on output; input
// also accepts JSON integers and integer strings. See docs/formats.md.

#include <json.hpp>

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "compat.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "qubit.hpp"
#include "rational.hpp"

namespace ptc::io {

using json = nlohmann::json;

// ---- rationals and vectors ----------------------------------------------------

inline json rational_json(const Rational& r) { return to_string(r); }

inline json vector_json(const Vector& v)
{
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

inline Rational rational_from(const json& j, const std::string& path)
{
    if (j.is_number_integer()) return Rational(mpz_class(j.dump()));
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const InputError& e) {
            throw InputError(path + ": " + e.what());
        }
    }
    throw InputError(path + ": expected a rational (\"num/den\" string or integer)");
}

inline Vector vector_from(const json& j, const std::string& path)
{
    if (!j.is_array()) throw InputError(path + ": expected an array of rationals");
    Vector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational_from(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

inline const json& field(const json& j, const char* key, const std::string& path)
{
    if (!j.is_object()) throw InputError(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(path + ": missing field '" + key + "'");
    return *it;
}

// ---- theories -----------------------------------------------------------------

inline json theory_json(const TheorySpace& t)
{
    json pts = json::array();
    for (const auto& p : t.extreme_points()) pts.push_back(vector_json(p));
    return json{{"name", t.name()}, {"dim", t.dim()}, {"unit", vector_json(t.unit())}, {"extreme_points", pts}};
}

inline TheoryPtr theory_from(const json& j, const std::string& path = "theory")
{
    if (j.is_string()) {
        try {
            return theory_by_name(j.get<std::string>());
        } catch (const InputError& e) {
            throw InputError(path + ": " + e.what());
        }
    }
    const json& name = field(j, "name", path);
    const json& dim = field(j, "dim", path);
    if (!name.is_string()) throw InputError(path + ".name: expected a string");
    if (!dim.is_number_unsigned()) throw InputError(path + ".dim: expected a positive integer");
    Vector unit = vector_from(field(j, "unit", path), path + ".unit");
    const json& pts = field(j, "extreme_points", path);
    if (!pts.is_array()) throw InputError(path + ".extreme_points: expected an array");
    std::vector<Vector> points;
    for (std::size_t k = 0; k < pts.size(); ++k)
        points.push_back(vector_from(pts[k], path + ".extreme_points[" + std::to_string(k) + "]"));
    try {
        return make_theory(name.get<std::string>(), dim.get<std::size_t>(), std::move(points), std::move(unit));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

// ---- observables ----------------------------------------------------------------

inline json observable_json(const Observable& m)
{
    json effects = json::array();
    for (const auto& e : m.effects()) effects.push_back(vector_json(e.coeffs));
    return json{{"theory", theory_json(*m.theory())}, {"outcomes", m.outcomes()}, {"effects", effects}};
}

/// `default_theory` is used when the document has no "theory" field.
inline Observable observable_from(const json& j, const std::string& path = "observable", TheoryPtr default_theory = nullptr)
{
    if (!j.is_object()) throw InputError(path + ": expected an object");
    TheoryPtr theory;
    if (j.contains("theory")) theory = theory_from(j["theory"], path + ".theory");
    else if (default_theory) theory = default_theory;
    else throw InputError(path + ": missing field 'theory'");

    if (j.contains("name") && !j.contains("effects")) {
        // reference to a catalog observable, e.g. {"theory": "gbit-square", "name": "X"}
        const json& name = j["name"];
        if (!name.is_string()) throw InputError(path + ".name: expected a string");
        auto named = catalog_observables(theory);
        auto it = named.find(name.get<std::string>());
        if (it == named.end()) throw InputError(path + ".name: theory has no observable '" + name.get<std::string>() + "'");
        return it->second;
    }

    const json& outs = field(j, "outcomes", path);
    if (!outs.is_array()) throw InputError(path + ".outcomes: expected an array of strings");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < outs.size(); ++i) {
        if (!outs[i].is_string()) throw InputError(path + ".outcomes[" + std::to_string(i) + "]: expected a string");
        labels.push_back(outs[i].get<std::string>());
    }
    const json& effs = field(j, "effects", path);
    if (!effs.is_array()) throw InputError(path + ".effects: expected an array");
    std::vector<Effect> effects;
    for (std::size_t i = 0; i < effs.size(); ++i) {
        std::string p = path + ".effects[" + std::to_string(i) + "]";
        Vector c = vector_from(effs[i], p);
        if (c.size() != theory->dim())
            throw InputError(p + ": expected " + std::to_string(theory->dim()) + " coefficients, got " + std::to_string(c.size()));
        effects.push_back(Effect{std::move(c)});
    }
    try {
        return Observable(theory, std::move(labels), std::move(effects));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

/// A file holds one observable, or {"theory": ..., "observables": [...]}.
inline std::vector<Observable> observables_from(const json& j, const std::string& path)
{
    if (j.is_object() && j.contains("observables")) {
        TheoryPtr shared;
        if (j.contains("theory")) shared = theory_from(j["theory"], path + ".theory");
        const json& arr = j["observables"];
        if (!arr.is_array()) throw InputError(path + ".observables: expected an array");
        std::vector<Observable> out;
        for (std::size_t i = 0; i < arr.size(); ++i)
            out.push_back(observable_from(arr[i], path + ".observables[" + std::to_string(i) + "]", shared));
        return out;
    }
    return {observable_from(j, path)};
}

inline json distribution_json(const Distribution& p) { return vector_json(p.probs); }

// ---- results ----------------------------------------------------------------------

inline json joint_json(const JointObservable& joint)
{
    json cells = json::array();
    for (std::size_t c = 0; c < joint.cells().size(); ++c) {
        json labels = json::array();
        auto coords = joint.coordinates(c);
        for (std::size_t k = 0; k < coords.size(); ++k) labels.push_back(joint.axes()[k][coords[k]]);
        cells.push_back(json{{"outcomes", labels}, {"effect", vector_json(joint.cells()[c].coeffs)}});
    }
    return json{{"theory", joint.theory()->name()}, {"axes", joint.axes()}, {"cells", cells}};
}

inline json noise_json(const std::vector<std::optional<Distribution>>& noise)
{
    json a = json::array();
    for (const auto& p : noise) {
        if (p) a.push_back(distribution_json(*p));
        else a.push_back("irrelevant (no noise)");
    }
    return a;
}

inline json verdict_json(const CompatVerdict& v)
{
    json out;
    if (v.compatible()) {
        out["verdict"] = "compatible";
        out["witness"] = joint_json(v.witness().joint);
        if (!v.witness().noise.empty()) out["noise"] = noise_json(v.witness().noise);
    } else {
        out["verdict"] = "incompatible";
        out["certificate"] = json{{"kind", "farkas"},
                                  {"constraints", v.lp.constraints.size()},
                                  {"variables", v.lp.num_vars},
                                  {"multipliers", vector_json(v.certificate().farkas)}};
    }
    return out;
}

inline json rational_with_approx(const Rational& r)
{
    return json{{"exact", to_string(r)}, {"approx", approx_string(r)}};
}

inline json index_json(const IndexResult& r)
{
    json out{{"lambda_star", to_string(r.lambda_star)}, {"lambda_star_approx", approx_string(r.lambda_star)}};
    if (r.noise_witness) out["noise_witness"] = distribution_json(*r.noise_witness);
    else out["noise_witness"] = "irrelevant (no noise)";
    out["joint"] = joint_json(r.joint);
    return out;
}

inline json interval_json(const CompatInterval& iv)
{
    return json{{"lower", to_string(iv.lower)},
                {"upper", to_string(iv.upper)},
                {"upper_approx", approx_string(iv.upper)},
                {"closed", iv.closed},
                {"text", std::string("[") + to_string(iv.lower) + ", " + to_string(iv.upper) + (iv.closed ? "]" : ")")}};
}

/// Columns: index, w_1..w_n, reach, reach_approx, lambda_1..lambda_n,
/// lambda_1_approx..lambda_n_approx.
inline void write_region_csv(std::ostream& os, const std::vector<RegionSample>& samples)
{
    std::size_t n = samples.empty() ? 0 : samples.front().direction.size();
    os << "index";
    for (std::size_t k = 1; k <= n; ++k) os << ",w_" << k;
    os << ",reach,reach_approx";
    for (std::size_t k = 1; k <= n; ++k) os << ",lambda_" << k;
    for (std::size_t k = 1; k <= n; ++k) os << ",lambda_" << k << "_approx";
    os << '\n';
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        os << i;
        for (const auto& w : s.direction) os << ',' << to_string(w);
        os << ',' << to_string(s.reach) << ',' << approx_string(s.reach);
        for (const auto& p : s.point) os << ',' << to_string(p);
        for (const auto& p : s.point) os << ',' << approx_string(p);
        os << '\n';
    }
}

inline json region_json(const std::vector<RegionSample>& samples)
{
    json arr = json::array();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        arr.push_back(json{{"index", i},
                           {"direction", vector_json(s.direction)},
                           {"reach", to_string(s.reach)},
                           {"reach_approx", approx_string(s.reach)},
                           {"point", vector_json(s.point)},
                           {"noise", noise_json(s.noise)}});
    }
    return arr;
}

/// Columns: lambda, mu, member (0/1).
inline void write_disk_csv(std::ostream& os, const std::vector<qubit::GridPoint>& grid)
{
    os << "lambda,mu,member\n";
    char buf[96];
    for (const auto& g : grid) {
        std::snprintf(buf, sizeof buf, "%.12f,%.12f,%d\n", g.lambda, g.mu, g.member ? 1 : 0);
        os << buf;
    }
}

}  // namespace ptc::io

#endif
