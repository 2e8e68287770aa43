// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <ptcompat/ptcompat.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "../theorem_checks.hpp"

namespace {

using ptc::Observable;
using ptc::Rational;
using ptc::Vector;

struct Outcome {
    bool pass = true;
    std::string note;

    void fail(const std::string& why)
    {
        if (pass) note = why;
        pass = false;
    }
};

int failures = 0;

void run(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body)
{
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > limit_seconds) out.fail("runtime " + std::to_string(secs) + " s over limit");
    if (!out.pass) ++failures;
    std::printf("%s %d %s (%.2f s, limit %.0f s)%s%s\n", out.pass ? "PASS" : "FAIL", id, title, secs, limit_seconds,
                out.note.empty() ? "" : ": ", out.note.c_str());
    std::fflush(stdout);
}

std::vector<Observable> seeded_pair(const ptc::TheoryPtr& t, std::uint64_t seed, std::size_t i)
{
    auto [a, b] = ptc::pair_seeds(seed, i);
    return {ptc::random_observable(t, 2, a), ptc::random_observable(t, 2, b)};
}

Outcome classical_index()
{
    Outcome o;
    for (std::size_t n = 2; n <= 4; ++n) {
        auto t = ptc::classical_simplex(n);
        for (std::size_t i = 0; i < 50; ++i) {
            auto [a, b] = ptc::pair_seeds(n, i);
            auto m = ptc::random_observable(t, 2 + i % 2, a);
            auto k = ptc::random_observable(t, 2 + (i / 2) % 2, b);
            if (ptc::compat_index(m, k).lambda_star != 1) o.fail("index below 1 on classical:" + std::to_string(n));
        }
    }
    return o;
}

Outcome quarter_disk()
{
    Outcome o;
    auto grid = ptc::qubit::pauli_region(0.005);
    if (grid.size() != 201u * 201u) o.fail("grid is not 201x201");
    for (const auto& g : grid) {
        double excess = g.lambda * g.lambda + g.mu * g.mu - 1;
        bool expected = excess <= 1e-12;
        if (g.member != expected) o.fail("membership differs from the inequality");
        if (g.lambda == 1.0 && g.mu > 0 && g.member) o.fail("point (1, mu>0) reported as member");
    }
    if (ptc::qubit::pauli_index() != 0) o.fail("index is not 0");
    return o;
}

Outcome bloch_bracket()
{
    Outcome o;
    auto dirs = ptc::default_directions(32);
    dirs.push_back({Rational(1, 2), Rational(1, 2)});
    auto scan = [&](std::size_t points) {
        auto t = ptc::bloch_polytope(points);
        auto [mx, my] = ptc::noisy_pauli_observables(t);
        return ptc::region_boundary_scan({mx, my}, dirs);
    };
    auto coarse = scan(128);
    auto fine = scan(512);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        double w1 = dirs[i][0].get_d(), w2 = dirs[i][1].get_d();
        double disk = std::min(ptc::qubit::disk_reach(w1, w2), 1 / std::max(w1, w2));
        if (fine[i].reach.get_d() < disk - 1e-12) o.fail("LP reach below the disk at direction " + std::to_string(i));
        if (coarse[i].reach.get_d() < disk - 1e-12) o.fail("coarse LP reach below the disk at direction " + std::to_string(i));
        if (fine[i].reach > coarse[i].reach) o.fail("gap grew from 128 to 512 points at direction " + std::to_string(i));
    }
    double diag = Rational(fine.back().reach / 2).get_d();
    char buf[128];
    std::snprintf(buf, sizeof buf, "diagonal %.6f at 512 points, %.6f at 128", diag, Rational(coarse.back().reach / 2).get_d());
    o.note = buf;
    if (diag < 0.7071 || diag > 0.7213) o.fail(std::string("diagonal coordinate out of range, ") + buf);
    return o;
}

Outcome corner_simplex()
{
    Outcome o;
    for (auto t : {ptc::even_logic_cube(), ptc::square_gbit()}) {
        for (std::size_t i = 0; i < 25; ++i) {
            auto obs = seeded_pair(t, 4, i);
            for (long a = 0; a <= 8; ++a)
                for (long b = 0; a + b <= 8; ++b)
                    if (!ptc::region_membership(obs, {ptc::fraction(a, 8), ptc::fraction(b, 8)}).compatible())
                        o.fail("corner simplex point rejected on " + t->name());
        }
    }
    return o;
}

Outcome convexity()
{
    Outcome o;
    std::size_t checked = 0;
    for (std::size_t i = 0; i < 10; ++i) {
        auto t = i % 2 ? ptc::square_gbit() : ptc::even_logic_cube();
        auto obs = seeded_pair(t, 5, i);
        std::vector<Vector> members;
        for (long a = 0; a <= 4; ++a)
            for (long b = 0; b <= 4; ++b) {
                Vector l{ptc::fraction(a, 4), ptc::fraction(b, 4)};
                if (ptc::region_membership(obs, l).compatible()) members.push_back(l);
            }
        std::set<Vector> mids;
        for (std::size_t p = 0; p < members.size(); ++p)
            for (std::size_t q = p + 1; q < members.size(); ++q)
                mids.insert({(members[p][0] + members[q][0]) / 2, (members[p][1] + members[q][1]) / 2});
        for (const auto& mid : mids) {
            ++checked;
            if (!ptc::region_membership(obs, mid).compatible()) o.fail("midpoint of member points rejected");
        }
    }
    o.note = std::to_string(checked) + " midpoints";
    return o;
}

Outcome theorem_suite()
{
    Outcome o;
    using CaseFn = std::string (*)(checks::Checker&, std::uint64_t);
    struct Named {
        const char* name;
        CaseFn fn;
    };
    const Named cases[] = {{"post-processing", checks::post_processing_case},
                           {"mixtures", checks::mixture_case},
                           {"mixed partner", checks::mixture_partner_case},
                           {"complementary noise", checks::complementary_noise_case},
                           {"downward closed", checks::downward_closed_case},
                           {"verdict soundness", checks::soundness_case}};
    checks::Checker ck;
    for (const auto& c : cases)
        for (std::uint64_t s = 0; s < 100; ++s) {
            ck.failure.clear();
            std::string why = c.fn(ck, 60000 + s);
            if (!why.empty()) o.fail(std::string(c.name) + " seed " + std::to_string(s) + ": " + why);
        }
    if (ck.incompatible == 0) o.fail("no incompatible verdicts were exercised");
    o.note = std::to_string(ck.verdicts) + " verdicts re-verified (" + std::to_string(ck.compatible) + " compatible, " +
             std::to_string(ck.incompatible) + " incompatible)";
    return o;
}

Outcome cube_states()
{
    Outcome o;
    for (int i = 1; i <= 4; ++i) {
        if (!ptc::is_classical_state(ptc::logic_delta(i))) o.fail("delta" + std::to_string(i) + " not classical");
        if (ptc::is_classical_state(ptc::logic_gamma(i))) o.fail("gamma" + std::to_string(i) + " classical");
    }
    if (!ptc::is_classical_state(ptc::logic_uniform())) o.fail("uniform state not classical");
    return o;
}

Outcome grid_oracle_agreement()
{
    Outcome o;
    std::mt19937_64 rng(8);
    const ptc::TheoryPtr theories[] = {ptc::classical_simplex(2), ptc::classical_simplex(3), ptc::classical_simplex(4),
                                       ptc::square_gbit()};
    std::size_t incompatible = 0;
    for (std::size_t i = 0; i < 50; ++i) {
        // the gbit gets half the instances: it is the only theory here with incompatible pairs
        auto t = i % 2 ? theories[3] : theories[(i / 2) % 3];
        auto m = oracle::grid_observable(t, 6, rng);
        auto n = oracle::grid_observable(t, 6, rng);
        std::vector<Observable> obs{m, n};
        auto v = ptc::check_compatible(obs);
        if (!ptc::verify_verdict(obs, v)) o.fail("verdict failed re-verification");
        if (v.compatible() != oracle::grid_oracle(m, n, 6).compatible) o.fail("disagreement on instance " + std::to_string(i));
        incompatible += !v.compatible();
    }
    o.note = std::to_string(incompatible) + " of 50 incompatible";
    return o;
}

Outcome cube_estimate()
{
    Outcome o;
    auto t = ptc::even_logic_cube();
    auto est = ptc::theory_index_estimate(t, {200, 2, 0});
    if (!(est.upper_bound < 1)) o.fail("estimate is not below 1");
    if (!est.argmin) {
        o.fail("no argmin pair");
        return o;
    }
    const auto& [m, n] = *est.argmin;
    Rational bis = oracle::bisect_index(m, n, Rational(1, 1000));
    if (abs(bis - est.upper_bound) > Rational(1, 1000)) o.fail("bisection oracle disagrees");
    if (!oracle::noisy_feasible(m, n, est.upper_bound)) o.fail("estimate not feasible in the oracle");
    if (est.upper_bound < 1 && oracle::noisy_feasible(m, n, est.upper_bound + Rational(1, 1000)))
        o.fail("oracle feasible above the estimate");
    o.note = "estimate " + ptc::to_string(est.upper_bound) + " (" + ptc::approx_string(est.upper_bound) + ") at pair " +
             std::to_string(est.argmin_index) + ", bisection " + ptc::approx_string(bis);
    return o;
}

}  // namespace

int main()
{
    run(1, "classical simplices have index 1", 30, classical_index);
    run(2, "quarter disk grid and qubit index", 5, quarter_disk);
    run(3, "Bloch polytope region brackets the disk", 600, bloch_bracket);
    run(4, "corner simplex inside the region", 120, corner_simplex);
    run(5, "region convexity at midpoints", 120, convexity);
    run(6, "structural theorem properties", 300, theorem_suite);
    run(7, "cube state classification", 1, cube_states);
    run(8, "effect-level verdict matches state-level grid oracle", 300, grid_oracle_agreement);
    run(9, "sampled cube index below 1, confirmed by bisection", 900, cube_estimate);
    std::printf("%s: %d failing\n", failures ? "FAILED" : "ALL PASSED", failures);
    return failures ? 1 : 0;
}
