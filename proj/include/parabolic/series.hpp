#pragma once

// Truncated formal power series over an exact coefficient ring.
//
// A series carries its truncation order N explicitly: coefficients of degree
// 0..N are known, everything above is unknown. Binary operations on operands
// of different order produce a result of the smaller order.
//
// The coefficient ring only needs +, -, *, construction from int and an
// is_zero() overload found by ADL. Rational is the main instance; flows use
// series whose coefficients are polynomials in the time variable.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace parabolic {

template <class Coeff>
class TruncatedSeries {
   public:
    using coefficient_type = Coeff;

    /// The zero series of order N.
    explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1, Coeff(0)) {}

    /// Coefficients a_0, a_1, ... listed from degree 0; missing ones are zero.
    TruncatedSeries(std::size_t order, std::initializer_list<Coeff> ascending) : TruncatedSeries(order) {
        std::size_t d = 0;
        for (const auto& c : ascending) {
            if (d > order) break;
            coeffs_[d++] = c;
        }
    }

    static TruncatedSeries identity(std::size_t order) { return monomial(Coeff(1), 1, order); }

    static TruncatedSeries constant(const Coeff& c, std::size_t order) { return monomial(c, 0, order); }

    static TruncatedSeries monomial(const Coeff& c, std::size_t degree, std::size_t order) {
        TruncatedSeries s(order);
        if (degree <= order) s.coeffs_[degree] = c;
        return s;
    }

    std::size_t order() const { return coeffs_.size() - 1; }

    /// The coefficient of x^n ("bracket"); n beyond the truncation order is an error.
    const Coeff& operator[](std::size_t n) const {
        if (n > order())
            throw std::out_of_range("coefficient of degree " + std::to_string(n) + " beyond truncation order " +
                                    std::to_string(order()));
        return coeffs_[n];
    }

    void set(std::size_t n, Coeff c) {
        if (n > order())
            throw std::out_of_range("degree " + std::to_string(n) + " beyond truncation order " + std::to_string(order()));
        coeffs_[n] = std::move(c);
    }

    const std::vector<Coeff>& coefficients() const { return coeffs_; }

    TruncatedSeries truncated(std::size_t order) const {
        TruncatedSeries s(std::min(order, this->order()));
        std::copy_n(coeffs_.begin(), s.coeffs_.size(), s.coeffs_.begin());
        return s;
    }

    /// Lowest degree with a nonzero coefficient, order()+1 when all vanish.
    std::size_t valuation() const {
        for (std::size_t d = 0; d < coeffs_.size(); ++d)
            if (!is_zero(coeffs_[d])) return d;
        return coeffs_.size();
    }

    bool is_zero_series() const { return valuation() > order(); }

    TruncatedSeries& operator+=(const TruncatedSeries& o) {
        shrink_to(o.order());
        for (std::size_t d = 0; d < coeffs_.size(); ++d) coeffs_[d] += o.coeffs_[d];
        return *this;
    }
    TruncatedSeries& operator-=(const TruncatedSeries& o) {
        shrink_to(o.order());
        for (std::size_t d = 0; d < coeffs_.size(); ++d) coeffs_[d] -= o.coeffs_[d];
        return *this;
    }
    TruncatedSeries& operator*=(const Coeff& c) {
        for (auto& a : coeffs_) a *= c;
        return *this;
    }

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator-(const TruncatedSeries& a) { return TruncatedSeries(a.order()) - a; }
    friend TruncatedSeries operator*(TruncatedSeries a, const Coeff& c) { return a *= c; }
    friend TruncatedSeries operator*(const Coeff& c, TruncatedSeries a) { return a *= c; }

    /// Cauchy product truncated at min order. Zero coefficients are skipped,
    /// which makes products with sparse polynomials cheap.
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        const std::size_t n = std::min(a.order(), b.order());
        TruncatedSeries out(n);
        std::vector<std::size_t> support_b;
        for (std::size_t j = 0; j <= n; ++j)
            if (!is_zero(b.coeffs_[j])) support_b.push_back(j);
        for (std::size_t i = 0; i <= n; ++i) {
            if (is_zero(a.coeffs_[i])) continue;
            for (std::size_t j : support_b) {
                if (i + j > n) break;
                out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return out;
    }
    TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.order() == b.order() && a.coeffs_ == b.coeffs_;
    }

    /// Formal derivative; the result has order N-1.
    TruncatedSeries derivative() const {
        if (order() == 0) return TruncatedSeries(0);
        TruncatedSeries out(order() - 1);
        for (std::size_t d = 1; d <= order(); ++d) out.coeffs_[d - 1] = coeffs_[d] * Coeff(static_cast<int>(d));
        return out;
    }

   private:
    void shrink_to(std::size_t order) {
        if (order < this->order()) coeffs_.resize(order + 1);
    }

    std::vector<Coeff> coeffs_;
};

/// Multiplicative power f^k; f^0 = 1.
template <class Coeff>
TruncatedSeries<Coeff> pow(TruncatedSeries<Coeff> base, std::size_t k) {
    auto result = TruncatedSeries<Coeff>::constant(Coeff(1), base.order());
    while (k > 0) {
        if (k & 1) result *= base;
        k >>= 1;
        if (k > 0) base *= base;
    }
    return result;
}

/// f(g(x)) through degree min(N_f, N_g), by Horner's rule. g(0) must vanish.
template <class Coeff>
TruncatedSeries<Coeff> compose(const TruncatedSeries<Coeff>& f, const TruncatedSeries<Coeff>& g) {
    if (!is_zero(g[0])) throw std::domain_error("compose: inner series has nonzero constant term");
    const std::size_t n = std::min(f.order(), g.order());
    const auto inner = g.truncated(n);
    auto acc = TruncatedSeries<Coeff>::constant(f[n], n);
    for (std::size_t k = n; k-- > 0;) {
        acc *= inner;
        acc.set(0, acc[0] + f[k]);
    }
    return acc;
}

/// Compositional inverse of f with f(0) = 0, f'(0) != 0.
///
/// Writing f(y) = a_1 y + sum_{k>=2} a_k y^k, the inverse g satisfies
/// a_1 g_d = [x]_d - sum_{k>=2} a_k [g^k]_d, and [g^k]_d only involves
/// g_1..g_{d-1}. The powers of g are filled degree by degree.
template <class Coeff>
TruncatedSeries<Coeff> comp_inverse(const TruncatedSeries<Coeff>& f) {
    if (!is_zero(f[0])) throw std::domain_error("comp_inverse: series has nonzero constant term");
    if (f.order() < 1 || is_zero(f[1])) throw NotInvertible("comp_inverse: linear coefficient is zero");
    const std::size_t n = f.order();
    const Coeff inv_a1 = Coeff(1) / f[1];

    // powers[k][d] = [g^k]_d for k = 1..n.
    std::vector<std::vector<Coeff>> powers(n + 1, std::vector<Coeff>(n + 1, Coeff(0)));
    std::vector<std::size_t> active;  // k >= 2 with a_k != 0
    for (std::size_t k = 2; k <= n; ++k)
        if (!is_zero(f[k])) active.push_back(k);

    TruncatedSeries<Coeff> g(n);
    for (std::size_t d = 1; d <= n; ++d) {
        // g^k has valuation >= k, so [g^k]_d = sum_{j=1}^{d-k+1} g_j [g^{k-1}]_{d-j}.
        for (std::size_t k = 2; k <= d; ++k) {
            Coeff acc(0);
            for (std::size_t j = 1; j + k - 1 <= d; ++j) {
                if (is_zero(g[j]) || is_zero(powers[k - 1][d - j])) continue;
                acc += g[j] * powers[k - 1][d - j];
            }
            powers[k][d] = acc;
        }
        Coeff rhs = d == 1 ? Coeff(1) : Coeff(0);
        for (std::size_t k : active) {
            if (k > d) break;
            rhs -= f[k] * powers[k][d];
        }
        Coeff gd = rhs * inv_a1;
        g.set(d, gd);
        powers[1][d] = gd;
    }
    return g;
}

/// h∘f∘h⁻¹.
template <class Coeff>
TruncatedSeries<Coeff> conjugate(const TruncatedSeries<Coeff>& h, const TruncatedSeries<Coeff>& f) {
    const std::size_t n = std::min(h.order(), f.order());
    const auto h_n = h.truncated(n);
    return compose(h_n, compose(f.truncated(n), comp_inverse(h_n)));
}

/// Coefficient of x^n.
template <class Coeff>
const Coeff& bracket(const TruncatedSeries<Coeff>& f, std::size_t n) {
    return f[n];
}

/// n-fold composition; iterate(f, 0) is the identity.
template <class Coeff>
TruncatedSeries<Coeff> iterate(const TruncatedSeries<Coeff>& f, std::size_t n) {
    auto result = TruncatedSeries<Coeff>::identity(f.order());
    for (std::size_t i = 0; i < n; ++i) result = compose(f, result);
    return result;
}

using Series = TruncatedSeries<Rational>;

/// Tangent to the identity: a_0 = 0 and a_1 = 1.
inline bool is_tangent_to_identity(const Series& f) { return f.order() >= 1 && is_zero(f[0]) && f[1] == 1; }

inline void require_tangent_to_identity(const Series& f, const char* who) {
    if (!is_tangent_to_identity(f))
        throw std::invalid_argument(std::string{who} + ": series is not tangent to the identity (need a0 = 0, a1 = 1)");
}

/// The linear map x -> λx at the given order.
inline Series linear(const Rational& lambda, std::size_t order) { return Series::monomial(lambda, 1, order); }

}  // namespace parabolic
