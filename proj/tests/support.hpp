#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <parabolic/parabolic.hpp>

namespace parabolic::testing {

/// Series of the given order from integer coefficients a_0, a_1, ...
inline Series poly(std::size_t order, std::initializer_list<long> ascending) {
    Series s(order);
    std::size_t d = 0;
    for (long c : ascending) {
        if (d > order) break;
        s.set(d++, Rational{c});
    }
    return s;
}

/// x + x^2 + ... + x^N, the truncation of x/(1-x).
inline Series geometric(std::size_t order, const Rational& ratio = 1) {
    Series s(order);
    Rational c = 1;
    for (std::size_t d = 1; d <= order; ++d) {
        s.set(d, c);
        c *= ratio;
    }
    return s;
}

class Generator {
   public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    Rational rational(long lo, long hi, long max_den) {
        return make_rational(integer(lo, hi), integer(1, max_den));
    }

    /// x + x^m + Σ_{n>m} a_n x^n with integer a_n in [lo, hi].
    Series integral_germ(std::size_t m, std::size_t order, long lo = -9, long hi = 9) {
        auto f = Series::identity(order);
        f.set(m, Rational{1});
        for (std::size_t n = m + 1; n <= order; ++n) f.set(n, Rational{integer(lo, hi)});
        return f;
    }

    /// x + rational coefficients of small height in degrees 2..order.
    Series rational_germ(std::size_t order, std::size_t max_degree) {
        auto f = Series::identity(order);
        for (std::size_t n = 2; n <= std::min(order, max_degree); ++n) f.set(n, rational(-5, 5, 4));
        if (is_zero(f[2])) f.set(2, Rational{1});
        return f;
    }

    /// x + c_2 x^2 + ... + c_d x^d with small rational c_j.
    Series tangent_polynomial(std::size_t degree, std::size_t order) {
        auto h = Series::identity(order);
        for (std::size_t n = 2; n <= std::min(degree, order); ++n) h.set(n, rational(-3, 3, 3));
        return h;
    }

    /// x + x^m + Σ_{n>=2m-1} b_n/p^n x^n with b_n ∈ {0..p-1}.
    Series reduced_form_germ(std::size_t m, std::size_t order, std::uint64_t p) {
        auto f = Series::identity(order);
        f.set(m, Rational{1});
        for (std::size_t n = 2 * m - 1; n <= order; ++n)
            f.set(n, Rational{integer(0, static_cast<long>(p) - 1)} * prime_power(p, -static_cast<std::int64_t>(n)));
        return f;
    }

    std::mt19937_64& engine() { return rng_; }

   private:
    std::mt19937_64 rng_;
};

}  // namespace parabolic::testing
