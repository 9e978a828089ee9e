#pragma once

// Dense univariate polynomials with rational coefficients. Used as the
// coefficient ring of flows, where each coefficient depends on the time t.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "rational.hpp"

namespace parabolic {

class Polynomial {
   public:
    Polynomial() = default;
    Polynomial(int c) : Polynomial(Rational{c}) {}
    Polynomial(const Rational& c) {
        if (!parabolic::is_zero(c)) coeffs_.push_back(c);
    }
    Polynomial(std::initializer_list<Rational> ascending) : coeffs_(ascending) { trim(); }
    explicit Polynomial(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { trim(); }

    static Polynomial monomial(const Rational& c, std::size_t degree) {
        std::vector<Rational> v(degree + 1);
        v[degree] = c;
        return Polynomial{std::move(v)};
    }

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree, or nullopt for the zero polynomial.
    std::optional<std::size_t> degree() const {
        if (coeffs_.empty()) return std::nullopt;
        return coeffs_.size() - 1;
    }
    Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational{0}; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    Rational operator()(const Rational& t) const {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    Polynomial derivative() const {
        std::vector<Rational> v;
        for (std::size_t k = 1; k < coeffs_.size(); ++k) v.push_back(coeffs_[k] * Rational{static_cast<unsigned long>(k)});
        return Polynomial{std::move(v)};
    }

    /// Antiderivative vanishing at t = 0.
    Polynomial antiderivative() const {
        std::vector<Rational> v(coeffs_.size() + 1);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) v[k + 1] = coeffs_[k] / Rational{static_cast<unsigned long>(k + 1)};
        return Polynomial{std::move(v)};
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(const Polynomial& a) { return Polynomial{} - a; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (parabolic::is_zero(a.coeffs_[i])) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Polynomial{std::move(v)};
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

   private:
    void trim() {
        while (!coeffs_.empty() && parabolic::is_zero(coeffs_.back())) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

inline bool is_zero(const Polynomial& p) { return p.is_zero(); }

}  // namespace parabolic
