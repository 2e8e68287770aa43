#ifndef PTCOMPAT_QUBIT_HPP
#define PTCOMPAT_QUBIT_HPP

// Closed-form qubit reference results, in floating point. Used to bracket
// the exact polytope programs, never to produce certificates.

#include <cmath>
#include <vector>

#include "errors.hpp"

namespace ptc::qubit {

inline constexpr double tolerance = 1e-12;

struct BlochVector {
    double x = 0, y = 0, z = 0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    BlochVector operator+(const BlochVector& o) const { return {x + o.x, y + o.y, z + o.z}; }
    BlochVector operator-(const BlochVector& o) const { return {x - o.x, y - o.y, z - o.z}; }
};

/// Unbiased dichotomic qubit observables with effects (I +- a.sigma)/2 and
/// (I +- b.sigma)/2 are jointly measurable iff |a+b| + |a-b| <= 2.
inline bool unbiased_compatible(const BlochVector& a, const BlochVector& b)
{
    if (a.norm() > 1 + tolerance || b.norm() > 1 + tolerance) throw InputError("bloch vector outside the unit ball");
    return (a + b).norm() + (a - b).norm() <= 2 + tolerance;
}

/// Membership of (lambda, mu) in the compatibility region of the noisy
/// x/y Pauli pair: the quarter disk lambda^2 + mu^2 <= 1.
inline bool pauli_member(double lambda, double mu) { return lambda * lambda + mu * mu <= 1 + tolerance; }

struct GridPoint {
    double lambda;
    double mu;
    bool member;
};

/// Row-major grid over [0,1]^2 with spacing `step`; the last node is
/// clamped to 1 so both edges are always included.
inline std::vector<GridPoint> pauli_region(double step)
{
    if (!(step > 0)) throw InputError("pauli_region: step must be positive");
    const long n = std::lround(std::ceil(1.0 / step - 1e-9));
    std::vector<GridPoint> out;
    out.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
    auto node = [&](long i) { return i >= n ? 1.0 : static_cast<double>(i) * step; };
    for (long i = 0; i <= n; ++i)
        for (long j = 0; j <= n; ++j) out.push_back({node(i), node(j), pauli_member(node(i), node(j))});
    return out;
}

/// lambda = 1 forces 1 + mu^2 <= 1, so mu = 0: the index is zero.
inline double pauli_index() { return 0.0; }

/// Reach of the quarter disk along a nonnegative direction w (scale t with
/// t*w on the boundary).
inline double disk_reach(double w1, double w2) { return 1.0 / std::sqrt(w1 * w1 + w2 * w2); }

}  // namespace ptc::qubit

#endif
