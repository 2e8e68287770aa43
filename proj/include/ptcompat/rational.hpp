#ifndef PTCOMPAT_RATIONAL_HPP
#define PTCOMPAT_RATIONAL_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace ptc {

/// Exact rational scalar. GMP keeps every value canonical: lowest terms,
/// positive denominator.
using Rational = mpq_class;
using Vector = std::vector<Rational>;

inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto slash = s.find('/');
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
    if (slash == std::string::npos) {
        if (!is_int(s)) throw InputError("not a rational: '" + s + "'");
        return Rational(mpz_class(strip_plus(s)));
    }
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
        throw InputError("not a rational: '" + s + "'");
    mpz_class d(den);
    if (d == 0) throw InputError("zero denominator: '" + s + "'");
    Rational r(mpz_class(strip_plus(num)), d);
    r.canonicalize();
    return r;
}

/// n/d in canonical form (mpq_class(n, d) alone does not reduce).
inline Rational fraction(long n, long d)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

/// Always "num/den", also for integers ("1/1"), so output is uniform.
inline std::string to_string(const Rational& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

/// Decimal rendering rounded to 12 places; approximate by construction.
inline std::string approx_string(const Rational& r)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", r.get_d());
    return buf;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b)
{
    if (a.size() != b.size()) throw InputError("dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
    return s;
}

inline Vector scaled(const Vector& v, const Rational& c)
{
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * c;
    return out;
}

inline void add_scaled(Vector& acc, const Vector& v, const Rational& c)
{
    if (acc.size() != v.size()) throw InputError("add_scaled: length mismatch");
    if (sgn(c) == 0) return;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) acc[i] += v[i] * c;
}

inline bool is_zero(const Vector& v)
{
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

/// Rank of a row set by exact Gaussian elimination.
inline std::size_t rank(std::vector<Vector> rows)
{
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && sgn(rows[pivot][c]) == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[r]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (sgn(rows[i][c]) == 0) continue;
            Rational f = rows[i][c] / rows[r][c];
            for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
        }
        ++r;
    }
    return r;
}

/// Smallest positive integer multiple of v (all entries integral, gcd 1 not
/// enforced). Scaling by a positive constant preserves sign conditions.
inline Vector integer_multiple(const Vector& v)
{
    mpz_class l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * Rational(l);
    return out;
}

}  // namespace ptc

#endif
