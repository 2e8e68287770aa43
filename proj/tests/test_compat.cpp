#include <gtest/gtest.h>

#include <ptcompat/ptcompat.hpp>

#include <random>

#include "oracles.hpp"

using ptc::Observable;
using ptc::Rational;
using ptc::Vector;

namespace {

ptc::JointObservable product_joint(const ptc::Distribution& p, const Observable& m)
{
    std::vector<ptc::Effect> cells;
    for (const auto& q : p.probs)
        for (const auto& e : m.effects()) cells.push_back(ptc::Effect{ptc::scaled(e.coeffs, q)});
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < p.size(); ++i) labels.push_back("t" + std::to_string(i));
    return ptc::JointObservable(m.theory(), {labels, m.outcomes()}, cells);
}

}  // namespace

TEST(JointLp, SingleObservableIsItsOwnSolution)
{
    auto t = ptc::even_logic_cube();
    auto m = ptc::random_observable(t, 3, 4);
    auto lp = ptc::build_joint_lp({m});
    Vector x;
    for (const auto& e : m.effects()) x.insert(x.end(), e.coeffs.begin(), e.coeffs.end());
    EXPECT_TRUE(ptc::detail::point_feasible(lp, x));
}

TEST(JointLp, ProductJointSolvesTrivialPair)
{
    auto t = ptc::square_gbit();
    auto m = ptc::gbit_observable(t, "X");
    ptc::Distribution p({Rational(1, 4), Rational(3, 4)});
    auto triv = ptc::make_trivial(t, p, {"t0", "t1"});
    auto lp = ptc::build_joint_lp({triv, m});
    auto joint = product_joint(p, m);
    Vector x;
    for (const auto& c : joint.cells()) x.insert(x.end(), c.coeffs.begin(), c.coeffs.end());
    EXPECT_TRUE(ptc::detail::point_feasible(lp, x));
    EXPECT_EQ(ptc::marginal(joint, 1), m);
}

TEST(JointLp, DiagonalJointSolvesSelfPair)
{
    auto t = ptc::even_logic_cube();
    auto m = ptc::random_observable(t, 2, 8);
    auto lp = ptc::build_joint_lp({m, m});
    Vector x;
    Vector zero(t->dim(), Rational(0));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            const Vector& c = i == j ? m.effects()[i].coeffs : zero;
            x.insert(x.end(), c.begin(), c.end());
        }
    EXPECT_TRUE(ptc::detail::point_feasible(lp, x));
}

TEST(JointLp, RejectsMixedTheories)
{
    auto a = ptc::random_observable(ptc::classical_simplex(2), 2, 1);
    auto b = ptc::random_observable(ptc::classical_simplex(3), 2, 1);
    EXPECT_THROW(ptc::build_joint_lp({a, b}), ptc::InputError);
    EXPECT_THROW(ptc::check_compatible({a, b}), ptc::InputError);
    EXPECT_THROW(ptc::compat_index(a, b), ptc::InputError);
}

TEST(Compat, ClassicalPairsAreCompatible)
{
    for (std::size_t n = 2; n <= 4; ++n) {
        auto t = ptc::classical_simplex(n);
        for (std::uint64_t s = 0; s < 10; ++s) {
            std::vector<Observable> obs{ptc::random_observable(t, 2, s), ptc::random_observable(t, 3, s + 100)};
            auto v = ptc::check_compatible(obs);
            ASSERT_TRUE(v.compatible());
            EXPECT_TRUE(ptc::verify_verdict(obs, v));
            EXPECT_EQ(ptc::marginal(v.witness().joint, 0), obs[0]);
            EXPECT_EQ(ptc::marginal(v.witness().joint, 1), obs[1]);
        }
    }
}

TEST(Compat, TrivialPartnerIsAlwaysCompatible)
{
    std::mt19937_64 rng(3);
    for (auto t : {ptc::square_gbit(), ptc::even_logic_cube(), ptc::bloch_polytope(0, ptc::BlochScheme::octahedron)}) {
        for (int trial = 0; trial < 5; ++trial) {
            auto m = ptc::random_observable(t, 2, rng());
            auto triv = ptc::make_trivial(t, oracle::random_distribution(rng, 3), {"x", "y", "z"});
            std::vector<Observable> obs{m, triv};
            auto v = ptc::check_compatible(obs);
            EXPECT_TRUE(v.compatible());
            EXPECT_TRUE(ptc::verify_verdict(obs, v));
            EXPECT_EQ(ptc::compat_index(m, triv).lambda_star, 1);
            auto iv = ptc::compat_interval(m, triv);
            EXPECT_EQ(iv.lower, 0);
            EXPECT_EQ(iv.upper, 1);
            EXPECT_TRUE(iv.closed);
        }
    }
}

TEST(Compat, GbitVerdictsAgreeWithGridOracle)
{
    auto t = ptc::square_gbit();
    auto named = ptc::catalog_observables(t);
    struct Case {
        const char* m;
        const char* n;
    };
    for (auto [a, b] : {Case{"X", "Y"}, Case{"D", "A"}, Case{"X", "D"}, Case{"Y", "A"}, Case{"X", "X"}}) {
        const auto& m = named.at(a);
        const auto& n = named.at(b);
        std::vector<Observable> obs{m, n};
        auto v = ptc::check_compatible(obs);
        EXPECT_TRUE(ptc::verify_verdict(obs, v));
        EXPECT_EQ(v.compatible(), oracle::grid_oracle(m, n, 4).compatible) << a << "," << b;
    }
    // the two coordinate readings are sharp on opposite edge pairs: no joint, and no noise on one side helps
    EXPECT_FALSE(ptc::check_compatible({named.at("X"), named.at("Y")}).compatible());
    EXPECT_EQ(ptc::compat_index(named.at("X"), named.at("Y")).lambda_star, 0);
    EXPECT_TRUE(ptc::check_compatible({named.at("D"), named.at("A")}).compatible());
}

TEST(Compat, IncompatibleCertificateVerifies)
{
    auto t = ptc::square_gbit();
    std::vector<Observable> obs{ptc::gbit_observable(t, "X"), ptc::gbit_observable(t, "Y")};
    auto v = ptc::check_compatible(obs);
    ASSERT_FALSE(v.compatible());
    EXPECT_TRUE(ptc::verify(v.lp, ptc::lp::Infeasible{v.certificate().farkas}));
    auto broken = v.certificate().farkas;
    for (auto& y : broken) y = -y;
    EXPECT_FALSE(ptc::verify(v.lp, ptc::lp::Infeasible{broken}));
}

TEST(Compat, MarginalAxisOutOfRange)
{
    auto t = ptc::square_gbit();
    auto m = ptc::gbit_observable(t, "D");
    auto v = ptc::check_compatible({m, m});
    ASSERT_TRUE(v.compatible());
    EXPECT_EQ(ptc::marginal(v.witness().joint, 0), m);
    EXPECT_THROW(ptc::marginal(v.witness().joint, 2), ptc::InputError);
}

TEST(Index, MatchesBisectionOracle)
{
    std::mt19937_64 rng(21);
    std::size_t below_one = 0;
    for (auto t : {ptc::even_logic_cube(), ptc::square_gbit()}) {
        for (int trial = 0; trial < 6; ++trial) {
            auto m = ptc::random_observable(t, 2, rng());
            auto n = ptc::random_observable(t, 2, rng());
            auto r = ptc::compat_index(m, n);
            EXPECT_TRUE(oracle::noisy_feasible(m, n, r.lambda_star));
            if (r.lambda_star < 1) {
                ++below_one;
                EXPECT_FALSE(oracle::noisy_feasible(m, n, r.lambda_star + Rational(1, 1000)));
                ASSERT_TRUE(r.noise_witness);
                auto witnessed = ptc::noisy(n, r.lambda_star, ptc::make_trivial(t, *r.noise_witness, n.outcomes()));
                EXPECT_TRUE(ptc::check_compatible({m, witnessed}).compatible());
                EXPECT_EQ(ptc::marginal(r.joint, 1), witnessed);
            } else {
                EXPECT_FALSE(r.noise_witness);
            }
            Rational bis = oracle::bisect_index(m, n, Rational(1, 1000));
            EXPECT_LE(abs(bis - r.lambda_star), Rational(1, 1000));
        }
    }
    EXPECT_GT(below_one, 0u);
}

TEST(Index, CompatiblePairHasIndexOne)
{
    auto t = ptc::square_gbit();
    auto m = ptc::gbit_observable(t, "D"), n = ptc::gbit_observable(t, "A");
    EXPECT_EQ(ptc::compat_index(m, n).lambda_star, 1);
    EXPECT_EQ(ptc::compat_interval(m, n).upper, 1);
}

TEST(Interval, DownwardClosed)
{
    std::mt19937_64 rng(5);
    auto t = ptc::even_logic_cube();
    for (int trial = 0; trial < 6; ++trial) {
        auto m = ptc::random_observable(t, 2, rng());
        auto n = ptc::random_observable(t, 2, rng());
        Rational top = ptc::compat_interval(m, n).upper;
        for (int k = 0; k <= 4; ++k) {
            Rational mu = top * ptc::fraction(k, 4);
            std::vector<Observable> obs{m, n};
            auto v = ptc::region_membership(obs, {Rational(1), mu});
            EXPECT_TRUE(v.compatible());
            EXPECT_TRUE(ptc::verify_region_verdict(obs, {Rational(1), mu}, v));
        }
    }
}

TEST(Region, CornerPointsAndSimplex)
{
    auto t = ptc::square_gbit();
    std::vector<Observable> obs{ptc::gbit_observable(t, "X"), ptc::gbit_observable(t, "Y")};
    for (const Vector& l : {Vector{0, 0}, Vector{1, 0}, Vector{0, 1}, Vector{Rational(1, 2), Rational(1, 2)}}) {
        auto v = ptc::region_membership(obs, l);
        EXPECT_TRUE(v.compatible());
        EXPECT_TRUE(ptc::verify_region_verdict(obs, l, v));
    }
    auto v = ptc::region_membership(obs, {1, 1});
    EXPECT_FALSE(v.compatible());
    EXPECT_TRUE(ptc::verify_region_verdict(obs, {1, 1}, v));
    EXPECT_THROW(ptc::region_membership(obs, {2, 0}), ptc::InputError);
    EXPECT_THROW(ptc::region_membership(obs, {1}), ptc::InputError);
}

TEST(Region, AxisDirectionsReachOne)
{
    auto t = ptc::even_logic_cube();
    std::vector<Observable> obs{ptc::logic_observable(t, "A"), ptc::logic_observable(t, "B")};
    auto scan = ptc::region_boundary_scan(obs, {{1, 0}, {0, 1}});
    EXPECT_EQ(scan[0].reach, 1);
    EXPECT_EQ(scan[1].reach, 1);
}

TEST(Region, CompatiblePairReachesSquareCorner)
{
    auto t = ptc::classical_simplex(3);
    std::vector<Observable> obs{ptc::random_observable(t, 2, 1), ptc::random_observable(t, 2, 2)};
    for (const auto& w : ptc::default_directions(9)) {
        auto s = ptc::region_ray(obs, w);
        Rational wmax = std::max(w[0], w[1]);
        EXPECT_EQ(s.reach, 1 / wmax);
        EXPECT_TRUE(ptc::verify_region_verdict(obs, s.point, ptc::region_membership(obs, s.point)));
    }
}

TEST(Region, ReachIsTight)
{
    auto t = ptc::square_gbit();
    std::vector<Observable> obs{ptc::gbit_observable(t, "X"), ptc::gbit_observable(t, "Y")};
    for (const auto& w : ptc::default_directions(7)) {
        auto s = ptc::region_ray(obs, w);
        EXPECT_TRUE(ptc::region_membership(obs, s.point).compatible());
        Vector beyond = ptc::scaled(w, s.reach + Rational(1, 1000));
        if (beyond[0] <= 1 && beyond[1] <= 1) {
            EXPECT_FALSE(ptc::region_membership(obs, beyond).compatible());
        }
    }
    // the gbit pair is a square-root-free case: the region is exactly the simplex
    auto diag = ptc::region_ray(obs, {Rational(1, 2), Rational(1, 2)});
    EXPECT_EQ(diag.reach, 1);
}

TEST(Region, SwapSymmetry)
{
    std::mt19937_64 rng(8);
    auto t = ptc::even_logic_cube();
    for (int trial = 0; trial < 10; ++trial) {
        auto m = ptc::random_observable(t, 2, rng());
        auto n = ptc::random_observable(t, 3, rng());
        Vector l{oracle::random_rational(rng, 6), oracle::random_rational(rng, 6)};
        EXPECT_EQ(ptc::region_membership({m, n}, l).compatible(), ptc::region_membership({n, m}, {l[1], l[0]}).compatible());
    }
}

TEST(Region, DefaultDirections)
{
    auto d = ptc::default_directions(5);
    ASSERT_EQ(d.size(), 5u);
    EXPECT_EQ(d.front(), (Vector{1, 0}));
    EXPECT_EQ(d.back(), (Vector{0, 1}));
    EXPECT_EQ(d[2], (Vector{Rational(1, 2), Rational(1, 2)}));
    for (const auto& w : d) EXPECT_EQ(w[0] + w[1], 1);
    EXPECT_TRUE(ptc::default_directions(0).empty());
}

TEST(Estimate, ZeroBudgetIsVacuous)
{
    auto e = ptc::theory_index_estimate(ptc::even_logic_cube(), {0, 2, 0});
    EXPECT_EQ(e.upper_bound, 1);
    EXPECT_FALSE(e.argmin);
}

TEST(Estimate, ClassicalTheoryGivesOne)
{
    auto e = ptc::theory_index_estimate(ptc::classical_simplex(3), {15, 2, 4});
    EXPECT_EQ(e.upper_bound, 1);
}

TEST(Estimate, NonincreasingInBudget)
{
    auto t = ptc::square_gbit();
    Rational prev = 1;
    for (std::size_t k : {1, 3, 6, 12}) {
        auto e = ptc::theory_index_estimate(t, {k, 2, 17});
        EXPECT_LE(e.upper_bound, prev);
        prev = e.upper_bound;
    }
}
