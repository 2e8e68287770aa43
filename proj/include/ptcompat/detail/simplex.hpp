#ifndef PTCOMPAT_DETAIL_SIMPLEX_HPP
#define PTCOMPAT_DETAIL_SIMPLEX_HPP

// Revised simplex over exact rationals for the standard form
//
//     minimize c^T y   subject to   A y = b,  y >= 0
//
// with a dense explicit basis inverse (row counts here stay small) and
// Bland's rule for both the entering and the leaving choice.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "../rational.hpp"

namespace ptc::detail {

struct SparseColumn {
    std::vector<std::pair<std::size_t, Rational>> entries;
};

struct StandardForm {
    std::size_t rows = 0;
    std::vector<SparseColumn> columns;
    Vector rhs;
    Vector cost;
};

enum class SfStatus { optimal, infeasible, unbounded };

struct SfResult {
    SfStatus status = SfStatus::optimal;
    /// Basic feasible point (optimal, or the vertex where a ray was found).
    Vector primal;
    /// optimal: simplex multipliers pi with A^T pi <= c, b^T pi = c^T y.
    /// infeasible: Farkas vector with A^T pi <= 0, b^T pi > 0.
    Vector duals;
    /// unbounded: d >= 0, A d = 0, c^T d < 0.
    Vector ray;
    std::size_t pivots = 0;
};

class RevisedSimplex {
public:
    explicit RevisedSimplex(const StandardForm& sf) : sf_(sf), m_(sf.rows), n_(sf.columns.size())
    {
        flip_.assign(m_, 1);
        for (std::size_t i = 0; i < m_; ++i)
            if (sgn(sf_.rhs[i]) < 0) flip_[i] = -1;
    }

    SfResult run()
    {
        init_artificial_basis();

        // Phase 1: minimise the sum of artificials.
        phase_ = 1;
        if (phase_one_objective() > 0) iterate();
        if (phase_one_objective() > 0) {
            SfResult res;
            res.status = SfStatus::infeasible;
            res.duals = unflipped(multipliers());
            res.pivots = pivots_;
            return res;
        }
        drive_out_artificials();

        phase_ = 2;
        auto entering_for_ray = iterate();
        SfResult res;
        res.pivots = pivots_;
        res.primal = primal();
        if (entering_for_ray) {
            res.status = SfStatus::unbounded;
            res.ray.assign(n_, Rational(0));
            res.ray[entering_for_ray->first] = 1;
            const Vector& u = entering_for_ray->second;
            for (std::size_t i = 0; i < m_; ++i)
                if (head_[i] < n_) res.ray[head_[i]] = -u[i];
            return res;
        }
        res.status = SfStatus::optimal;
        res.duals = unflipped(multipliers());
        return res;
    }

private:
    const StandardForm& sf_;
    std::size_t m_;
    std::size_t n_;
    std::vector<int> flip_;
    std::vector<std::size_t> head_;   // basic variable per row; >= n_ means artificial
    std::vector<long> position_;      // row of a basic structural variable, -1 otherwise
    std::vector<Rational> binv_;      // m x m, row-major
    Vector xb_;
    int phase_ = 1;
    std::size_t pivots_ = 0;

    Rational& binv(std::size_t i, std::size_t k) { return binv_[i * m_ + k]; }
    const Rational& binv(std::size_t i, std::size_t k) const { return binv_[i * m_ + k]; }

    void init_artificial_basis()
    {
        head_.resize(m_);
        position_.assign(n_, -1);
        binv_.assign(m_ * m_, Rational(0));
        xb_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            head_[i] = n_ + i;
            binv(i, i) = 1;
            xb_[i] = flip_[i] < 0 ? Rational(-sf_.rhs[i]) : sf_.rhs[i];
        }
    }

    Rational phase_one_objective() const
    {
        Rational s = 0;
        for (std::size_t i = 0; i < m_; ++i)
            if (head_[i] >= n_) s += xb_[i];
        return s;
    }

    Rational basic_cost(std::size_t row) const
    {
        std::size_t v = head_[row];
        if (phase_ == 1) return v >= n_ ? Rational(1) : Rational(0);
        return v >= n_ ? Rational(0) : sf_.cost[v];
    }

    Rational structural_cost(std::size_t j) const { return phase_ == 1 ? Rational(0) : sf_.cost[j]; }

    // pi^T = c_B^T B^{-1}, in the flipped row orientation.
    Vector multipliers() const
    {
        Vector pi(m_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i) {
            Rational cb = basic_cost(i);
            if (sgn(cb) == 0) continue;
            for (std::size_t k = 0; k < m_; ++k)
                if (sgn(binv(i, k)) != 0) pi[k] += cb * binv(i, k);
        }
        return pi;
    }

    Vector unflipped(Vector pi) const
    {
        for (std::size_t i = 0; i < m_; ++i)
            if (flip_[i] < 0) pi[i] = -pi[i];
        return pi;
    }

    Rational column_dot(const Vector& pi, std::size_t j) const
    {
        Rational s = 0;
        for (const auto& [row, a] : sf_.columns[j].entries)
            if (sgn(pi[row]) != 0) s += flip_[row] < 0 ? Rational(-(pi[row] * a)) : Rational(pi[row] * a);
        return s;
    }

    // u = B^{-1} A_j
    Vector ftran(std::size_t j) const
    {
        Vector u(m_, Rational(0));
        for (const auto& [row, a0] : sf_.columns[j].entries) {
            Rational a = flip_[row] < 0 ? Rational(-a0) : a0;
            for (std::size_t i = 0; i < m_; ++i)
                if (sgn(binv(i, row)) != 0) u[i] += binv(i, row) * a;
        }
        return u;
    }

    // Bland order for leaving ties: artificials first, then structurals by index.
    std::size_t rank_of(std::size_t var) const { return var >= n_ ? var - n_ : var + m_; }

    void pivot(std::size_t row, std::size_t entering, const Vector& u)
    {
        Rational theta = xb_[row] / u[row];
        for (std::size_t i = 0; i < m_; ++i)
            if (i != row && sgn(u[i]) != 0) xb_[i] -= theta * u[i];
        xb_[row] = theta;

        Rational inv = 1 / u[row];
        for (std::size_t k = 0; k < m_; ++k)
            if (sgn(binv(row, k)) != 0) binv(row, k) *= inv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row || sgn(u[i]) == 0) continue;
            for (std::size_t k = 0; k < m_; ++k)
                if (sgn(binv(row, k)) != 0) binv(i, k) -= u[i] * binv(row, k);
        }

        if (head_[row] < n_) position_[head_[row]] = -1;
        head_[row] = entering;
        position_[entering] = static_cast<long>(row);
        ++pivots_;
    }

    // Runs the current phase to optimality. Returns the entering column and
    // its B^{-1} column when an unbounded direction is found.
    std::optional<std::pair<std::size_t, Vector>> iterate()
    {
        for (;;) {
            if (phase_ == 1 && sgn(phase_one_objective()) == 0) return std::nullopt;
            Vector pi = multipliers();
            std::size_t entering = n_;
            for (std::size_t j = 0; j < n_; ++j) {
                if (position_[j] >= 0) continue;
                if (structural_cost(j) - column_dot(pi, j) < 0) {
                    entering = j;
                    break;
                }
            }
            if (entering == n_) return std::nullopt;

            Vector u = ftran(entering);
            std::size_t leave = m_;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (sgn(u[i]) <= 0) continue;
                Rational ratio = xb_[i] / u[i];
                if (leave == m_ || ratio < best || (ratio == best && rank_of(head_[i]) < rank_of(head_[leave]))) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) return std::make_pair(entering, std::move(u));
            pivot(leave, entering, u);
        }
    }

    void drive_out_artificials()
    {
        for (std::size_t r = 0; r < m_; ++r) {
            if (head_[r] < n_) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (position_[j] >= 0) continue;
                Rational ur = 0;
                for (const auto& [row, a0] : sf_.columns[j].entries) {
                    Rational a = flip_[row] < 0 ? Rational(-a0) : a0;
                    if (sgn(binv(r, row)) != 0) ur += binv(r, row) * a;
                }
                if (sgn(ur) != 0) {
                    pivot(r, j, ftran(j));
                    break;
                }
            }
            // A row with no structural entry is redundant; its artificial stays
            // basic at zero and can never move.
        }
    }

    Vector primal() const
    {
        Vector y(n_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (head_[i] < n_) y[head_[i]] = xb_[i];
        return y;
    }
};

inline SfResult solve_standard_form(const StandardForm& sf)
{
    RevisedSimplex simplex(sf);
    return simplex.run();
}

}  // namespace ptc::detail

#endif
