#include <gtest/gtest.h>

#include <ptcompat/ptcompat.hpp>

#include <array>

using ptc::Rational;
using ptc::Vector;

namespace {

std::array<Rational, 6> six(int a, int b, int c, int d, int e, int f)
{
    return {Rational(a), Rational(b), Rational(c), Rational(d), Rational(e), Rational(f)};
}

}  // namespace

TEST(Catalog, ClassicalSimplex)
{
    auto t = ptc::classical_simplex(4);
    EXPECT_EQ(t->dim(), 4u);
    EXPECT_EQ(t->extreme_points().size(), 4u);
    EXPECT_EQ(t->unit(), (Vector{1, 1, 1, 1}));
    EXPECT_THROW(ptc::classical_simplex(0), ptc::InputError);

    auto one = ptc::classical_simplex(1);
    auto m = ptc::random_observable(one, 3, 5);
    EXPECT_TRUE(ptc::trivial_distribution(m));
}

TEST(Catalog, SquareGbit)
{
    auto t = ptc::square_gbit();
    EXPECT_EQ(t->dim(), 3u);
    ASSERT_EQ(t->extreme_points().size(), 4u);
    for (const auto& x : t->extreme_points()) EXPECT_EQ(ptc::dot(t->unit(), x), 1);
    for (const char* n : {"X", "Y", "D", "A"}) EXPECT_NO_THROW(ptc::gbit_observable(t, n));
    EXPECT_THROW(ptc::gbit_observable(t, "Z"), ptc::InputError);
}

TEST(Catalog, CubeVertices)
{
    auto t = ptc::even_logic_cube();
    EXPECT_EQ(t->extreme_points().size(), 8u);
    EXPECT_EQ(ptc::logic_delta(1).sixtuple(), six(1, 0, 1, 0, 1, 0));
    EXPECT_EQ(ptc::logic_gamma(1).sixtuple(), six(0, 1, 0, 1, 0, 1));
    for (int i = 1; i <= 4; ++i) {
        auto d = ptc::logic_delta(i).sixtuple();
        auto g = ptc::logic_gamma(i).sixtuple();
        for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(d[k] + g[k], 1);
        for (std::size_t k = 0; k < 6; k += 2) EXPECT_EQ(d[k] + d[k + 1], 1);
    }
}

TEST(Catalog, ClassicalStatesOfTheCube)
{
    int classical = 0;
    for (int i = 1; i <= 4; ++i) {
        EXPECT_TRUE(ptc::is_classical_state(ptc::logic_delta(i))) << "delta" << i;
        EXPECT_FALSE(ptc::is_classical_state(ptc::logic_gamma(i))) << "gamma" << i;
        classical += ptc::is_classical_state(ptc::logic_delta(i)) + ptc::is_classical_state(ptc::logic_gamma(i));
    }
    EXPECT_EQ(classical, 4);
    EXPECT_TRUE(ptc::is_classical_state(ptc::logic_uniform()));

    auto d1 = ptc::classify_logic_state(ptc::logic_delta(1));
    EXPECT_EQ(d1.measure, (Vector{1, 0, 0, 0}));
    auto g1 = ptc::classify_logic_state(ptc::logic_gamma(1));
    EXPECT_TRUE(ptc::verify(g1.lp, g1.outcome));
}

TEST(Catalog, CubeStateNames)
{
    EXPECT_EQ(ptc::logic_state_by_name("gamma3").lambdas, ptc::logic_gamma(3).lambdas);
    EXPECT_THROW(ptc::logic_state_by_name("gamma5"), ptc::InputError);
    EXPECT_THROW(ptc::LogicState({Rational(2), Rational(0), Rational(0)}), ptc::InputError);
}

TEST(Catalog, SharpCubeObservablesAreIncompatible)
{
    // A joint for A and B would need cells vanishing on the facet s(a)=0 and on
    // s(b)=0 at once; only the zero functional does, and the cells must sum to
    // the unit. The LP confirms this with a certificate.
    auto t = ptc::even_logic_cube();
    auto a = ptc::logic_observable(t, "A"), b = ptc::logic_observable(t, "B"), c = ptc::logic_observable(t, "C");
    for (const auto& pair : {std::vector{a, b}, std::vector{a, c}, std::vector{b, c}, std::vector{a, b, c}}) {
        auto v = ptc::check_compatible(pair);
        EXPECT_FALSE(v.compatible());
        EXPECT_TRUE(ptc::verify_verdict(pair, v));
    }
    EXPECT_EQ(ptc::compat_index(a, b).lambda_star, 0);
}

TEST(Catalog, PauliObservables)
{
    auto t = ptc::bloch_polytope(64);
    auto [mx, my] = ptc::noisy_pauli_observables(t);
    EXPECT_EQ(mx.effects()[0].coeffs, (Vector{Rational(1, 2), Rational(1, 2), 0, 0}));
    EXPECT_EQ(mx.effects()[1].coeffs, (Vector{Rational(1, 2), Rational(-1, 2), 0, 0}));
    EXPECT_EQ(my.effects()[0].coeffs, (Vector{Rational(1, 2), 0, Rational(1, 2), 0}));
    EXPECT_THROW(ptc::noisy_pauli_observables(ptc::square_gbit()), ptc::InputError);
}

TEST(Catalog, BlochPointsInsideBallAndNested)
{
    auto small = ptc::bloch_polytope(128);
    auto large = ptc::bloch_polytope(512);
    EXPECT_EQ(small->extreme_points().size(), 128u);
    EXPECT_EQ(large->extreme_points().size(), 512u);
    for (const auto& p : large->extreme_points()) {
        Rational r2 = p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
        EXPECT_LE(r2, 1);
        EXPECT_GT(r2, Rational(999, 1000));
    }
    std::set<Vector> big(large->extreme_points().begin(), large->extreme_points().end());
    for (const auto& p : small->extreme_points()) EXPECT_TRUE(big.count(p));
    EXPECT_THROW(ptc::bloch_polytope(3), ptc::InputError);
}

TEST(Catalog, TheoryNames)
{
    EXPECT_EQ(ptc::theory_by_name("classical:3")->dim(), 3u);
    EXPECT_EQ(ptc::theory_by_name("bloch:octahedron")->extreme_points().size(), 6u);
    EXPECT_THROW(ptc::theory_by_name("classical:x"), ptc::InputError);
    EXPECT_THROW(ptc::theory_by_name("nope"), ptc::InputError);
    EXPECT_EQ(ptc::catalog_observables(ptc::theory_by_name("bloch:16")).size(), 3u);
}

TEST(Sampler, DeterministicPerSeed)
{
    auto t = ptc::even_logic_cube();
    for (std::uint64_t s = 0; s < 20; ++s) EXPECT_EQ(ptc::random_observable(t, 3, s), ptc::random_observable(t, 3, s));
    EXPECT_FALSE(ptc::random_observable(t, 2, 1) == ptc::random_observable(t, 2, 2));
}

TEST(Sampler, SingleOutcomeIsUnit)
{
    auto t = ptc::square_gbit();
    auto m = ptc::random_observable(t, 1, 9);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m.effects()[0].coeffs, t->unit());
}

TEST(Sampler, DichotomicEffectsTouchZeroAndOne)
{
    for (auto t : {ptc::even_logic_cube(), ptc::square_gbit(), ptc::classical_simplex(3)}) {
        for (std::uint64_t s = 0; s < 30; ++s) {
            auto m = ptc::random_observable(t, 2, s);
            Rational lo = 1, hi = 0;
            for (const auto& x : t->extreme_points()) {
                Rational v = m.effects()[0](x);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            EXPECT_EQ(lo, 0);
            EXPECT_EQ(hi, 1);
        }
    }
}
