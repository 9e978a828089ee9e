#pragma once

// Exact rationals over GMP and p-adic valuation queries on them.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <regex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace parabolic {

using Integer = mpz_class;
using Rational = mpq_class;

/// Primes are passed as plain integers; they must lie below this bound so that
/// the trial-division primality check stays cheap (at most ~46341 divisions).
inline constexpr std::uint64_t kMaxPrime = std::uint64_t{1} << 31;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_zero(const Integer& z) { return sgn(z) == 0; }

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

inline void require_prime(std::uint64_t p) {
    if (p >= kMaxPrime)
        throw std::invalid_argument("prime " + std::to_string(p) + " exceeds supported bound 2^31");
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

/// ord_p of a rational: an integer, or +infinity for zero.
class Valuation {
   public:
    constexpr Valuation() = default;  // +infinity
    constexpr explicit Valuation(std::int64_t v) : value_(v), finite_(true) {}

    static constexpr Valuation infinity() { return Valuation{}; }

    constexpr bool is_infinite() const { return !finite_; }
    constexpr bool is_finite() const { return finite_; }
    /// Undefined for +infinity; callers check is_finite() first.
    constexpr std::int64_t value() const {
        if (!finite_) throw std::logic_error("value() of infinite valuation");
        return value_;
    }
    /// Membership in the valuation ring: ord_p >= 0.
    constexpr bool is_integral() const { return !finite_ || value_ >= 0; }

    friend constexpr Valuation operator+(Valuation a, Valuation b) {
        if (!a.finite_ || !b.finite_) return infinity();
        return Valuation{a.value_ + b.value_};
    }
    friend constexpr bool operator==(Valuation a, Valuation b) {
        return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(Valuation a, Valuation b) {
        if (!a.finite_ || !b.finite_) return b.finite_ <=> a.finite_;
        return a.value_ <=> b.value_;
    }

    std::string to_string() const { return finite_ ? std::to_string(value_) : "inf"; }

   private:
    std::int64_t value_ = 0;
    bool finite_ = false;
};

inline Valuation min(Valuation a, Valuation b) { return a < b ? a : b; }

namespace detail {

inline std::int64_t ord_integer(const Integer& z, std::uint64_t p) {
    Integer rest;
    Integer prime{static_cast<unsigned long>(p)};
    return static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), prime.get_mpz_t()));
}

}  // namespace detail

inline Valuation ord(const Rational& r, std::uint64_t p) {
    require_prime(p);
    if (is_zero(r)) return Valuation::infinity();
    return Valuation{detail::ord_integer(r.get_num(), p) - detail::ord_integer(r.get_den(), p)};
}

inline Valuation ord(const Integer& z, std::uint64_t p) { return ord(Rational{z}, p); }

inline std::uint64_t digit_sum(std::uint64_t n, std::uint64_t p) {
    require_prime(p);
    std::uint64_t s = 0;
    for (; n > 0; n /= p) s += n % p;
    return s;
}

/// ord_p(n!) via the base-p digit sum: (n - S_p(n)) / (p - 1).
inline std::uint64_t ord_factorial(std::uint64_t n, std::uint64_t p) {
    return (n - digit_sum(n, p)) / (p - 1);
}

/// (sum parts)! / prod(parts!).
inline Integer multinomial(std::span<const std::uint64_t> parts) {
    if (parts.empty()) throw std::invalid_argument("multinomial of empty list");
    // Product of binomials C(k_1 + ... + k_j, k_j) keeps intermediates small.
    Integer result = 1;
    unsigned long total = 0;
    for (std::uint64_t k : parts) {
        total += static_cast<unsigned long>(k);
        Integer b;
        mpz_bin_uiui(b.get_mpz_t(), total, static_cast<unsigned long>(k));
        result *= b;
    }
    return result;
}

inline Integer multinomial(std::initializer_list<std::uint64_t> parts) {
    return multinomial(std::span<const std::uint64_t>(parts.begin(), parts.size()));
}

/// num/den in lowest terms.
inline Rational make_rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational r{Integer{num}, Integer{den}};
    r.canonicalize();
    return r;
}

/// Canonical "num/den" form, den omitted when 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(std::string_view text) {
    static const std::regex pattern{R"([+-]?[0-9]+(/[0-9]+)?)"};
    std::string s{text};
    if (!std::regex_match(s, pattern)) throw std::invalid_argument("malformed rational \"" + s + "\"");
    if (s.front() == '+') s.erase(0, 1);
    auto slash = s.find('/');
    if (slash != std::string::npos && Integer{s.substr(slash + 1)} == 0)
        throw std::invalid_argument("zero denominator in \"" + std::string{text} + "\"");
    Rational r{s};
    r.canonicalize();
    return r;
}

/// k-th root of r when it is rational; the positive one for even k.
inline bool exact_root(const Rational& r, unsigned long k, Rational& root) {
    if (k == 0) throw std::invalid_argument("zeroth root");
    if (sgn(r) < 0 && k % 2 == 0) return false;
    Integer num, den;
    Integer abs_num = abs(r.get_num());
    if (mpz_root(num.get_mpz_t(), abs_num.get_mpz_t(), k) == 0) return false;
    if (mpz_root(den.get_mpz_t(), r.get_den().get_mpz_t(), k) == 0) return false;
    if (sgn(r) < 0) num = -num;
    root = Rational{num, den};
    root.canonicalize();
    return true;
}

inline Rational pow(const Rational& base, std::int64_t exponent) {
    Rational b = exponent < 0 ? Rational{1} / base : base;
    unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), b.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), b.get_den_mpz_t(), e);
    out.canonicalize();
    return out;
}

inline Rational prime_power(std::uint64_t p, std::int64_t exponent) {
    return pow(Rational{static_cast<unsigned long>(p)}, exponent);
}

}  // namespace parabolic
