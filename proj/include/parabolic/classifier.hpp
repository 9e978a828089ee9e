#pragma once

// Formal classification of germs tangent to the identity.
//
// A germ f = x + a_m x^m + ... is first rescaled by x -> λx with
// λ^{m-1} = a_m, then conjugated by h_n(x) = x + c_n x^n for n = 2, 3, ...
// (skipping n = m) so that H∘f∘H⁻¹ = x + x^m + μx^{2m-1} with
// H = ... ∘ h_3 ∘ h_2. Conjugating by h_n changes the coefficient of
// x^{n+m-1} by (n-m)c_n and leaves lower degrees alone, so
//
//     c_n = (α_{n+m-1} - b_{n+m-1}) / (m - n),
//
// where α is read from the current conjugate and b from the target; b is zero
// at every degree n+m-1 with n != m. Degree 2m-1 is out of reach: its
// coefficient when n = m is reached is the invariant μ.
//
// At truncation order N only c_n with n + m - 1 <= N are determined by the
// data; the remaining c_n (N-m+1 < n <= N) only move coefficients above N
// and are set to zero.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <variant>

#include "errors.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace parabolic {

struct GermClassification {
    std::size_t m = 0;
    Rational mu;
    /// c_n for n = 2..N, n != m.
    std::map<std::size_t, Rational> c;
    /// Tangent-to-identity conjugator with H∘f̂∘H⁻¹ = x + x^m + μx^{2m-1}, f̂ the rescaled germ.
    Series H{1};
    /// λ with λ^{m-1} = a_m; f̂ = (λx)∘f∘(x/λ).
    Rational scale = 1;
    /// f̂, the germ after rescaling so that a_m = 1.
    Series normalized{1};

    std::size_t order() const { return H.order(); }

    /// H∘(λx): conjugates the original germ to the normal form.
    Series full_conjugator() const { return compose(H, linear(scale, order())); }
};

/// x + x^m + μx^{2m-1} at order N.
inline Series normal_form_series(std::size_t m, const Rational& mu, std::size_t order) {
    auto g = Series::identity(order);
    if (m <= order) g.set(m, g[m] + Rational{1});
    if (2 * m - 1 <= order) g.set(2 * m - 1, g[2 * m - 1] + mu);
    return g;
}

/// Smallest n >= 2 with a_n != 0.
inline std::size_t detect_m(const Series& f) {
    require_tangent_to_identity(f, "detect_m");
    for (std::size_t n = 2; n <= f.order(); ++n)
        if (!is_zero(f[n])) return n;
    throw IdentityGerm(f.order());
}

struct Normalization {
    Rational scale;
    Series germ;
};

/// Rescales f so that its leading coefficient a_m becomes 1.
inline Normalization normalize_leading(const Series& f) {
    const std::size_t m = detect_m(f);
    Rational lambda;
    if (!exact_root(f[m], static_cast<unsigned long>(m - 1), lambda)) throw NeedsFieldExtension(m, f[m]);
    if (lambda == 1) return {lambda, f};
    // (λx)∘f∘(x/λ) has coefficients a_n λ^{1-n}.
    Series g(f.order());
    Rational factor = 1;  // λ^{1-n}
    const Rational inv = Rational{1} / lambda;
    for (std::size_t n = 1; n <= f.order(); ++n) {
        g.set(n, f[n] * factor);
        factor *= inv;
    }
    return {lambda, std::move(g)};
}

namespace detail {

/// x + c x^n applied on the outside: G + c G^n.
inline Series apply_monomial_shift(const Series& g, const Rational& c, std::size_t n) {
    return g + pow(g, n) * c;
}

inline Series monomial_shift(const Rational& c, std::size_t n, std::size_t order) {
    auto h = Series::identity(order);
    h.set(n, c);
    return h;
}

inline GermClassification run_recursion(const Series& normalized, std::size_t m, bool stop_at_mu) {
    const std::size_t order = normalized.order();
    GermClassification out;
    out.m = m;
    out.normalized = normalized;
    out.H = Series::identity(order);

    Series current = normalized;  // H_{n-1}∘f∘H_{n-1}⁻¹
    for (std::size_t n = 2; n <= order; ++n) {
        if (n == m) {
            out.mu = current[2 * m - 1];
            if (stop_at_mu) break;
            continue;
        }
        Rational cn = 0;
        if (n + m - 1 <= order) {
            cn = current[n + m - 1] / Rational{static_cast<long>(m) - static_cast<long>(n)};
        }
        out.c[n] = cn;
        if (is_zero(cn)) continue;
        const auto h = monomial_shift(cn, n, order);
        current = apply_monomial_shift(compose(current, comp_inverse(h)), cn, n);
        out.H = apply_monomial_shift(out.H, cn, n);
    }
    return out;
}

}  // namespace detail

/// Normal form of a germ whose leading coefficient a_m is already 1.
inline GermClassification normal_form(const Series& normalized) {
    const std::size_t m = detect_m(normalized);
    if (normalized[m] != 1) throw std::invalid_argument("normal_form: leading coefficient must be 1 (use classify)");
    if (normalized.order() < 2 * m - 1) throw PrecisionError(2 * m - 1, normalized.order(), "normal form");
    return detail::run_recursion(normalized, m, false);
}

inline GermClassification normal_form(const Series& normalized, std::size_t order) {
    return normal_form(normalized.truncated(order));
}

/// Rescale then run the normal-form recursion.
inline GermClassification classify(const Series& f) {
    auto [scale, germ] = normalize_leading(f);
    auto result = normal_form(germ);
    result.scale = scale;
    return result;
}

inline GermClassification classify(const Series& f, std::size_t order) { return classify(f.truncated(order)); }

struct Invariants {
    std::size_t m;
    Rational mu;
    friend bool operator==(const Invariants&, const Invariants&) = default;
};

inline Invariants invariants(const Series& f) {
    const std::size_t m = detect_m(f);
    if (f.order() < 2 * m - 1) throw PrecisionError(2 * m - 1, f.order(), "invariant mu");
    auto norm = normalize_leading(f);
    auto result = detail::run_recursion(norm.germ, m, true);
    return {m, result.mu};
}

struct Conjugator {
    /// conjugate(h, f) = g through the truncation order.
    Series h;
};

struct NotEquivalent {
    /// "m" or "mu".
    std::string differing;
    Invariants f;
    Invariants g;
};

using ConjugacyResult = std::variant<Conjugator, NotEquivalent>;

/// Decides conjugacy of f and g at the common order; the conjugator is
/// (H_g∘λ_g)⁻¹∘(H_f∘λ_f).
inline ConjugacyResult check_conjugacy(const Series& f, const Series& g) {
    const std::size_t order = std::min(f.order(), g.order());
    const auto cf = classify(f, order);
    const auto cg = classify(g, order);
    if (cf.m != cg.m) return NotEquivalent{"m", {cf.m, cf.mu}, {cg.m, cg.mu}};
    if (cf.mu != cg.mu) return NotEquivalent{"mu", {cf.m, cf.mu}, {cg.m, cg.mu}};
    return Conjugator{compose(comp_inverse(cg.full_conjugator()), cf.full_conjugator())};
}

inline ConjugacyResult check_conjugacy(const Series& f, const Series& g, std::size_t order) {
    return check_conjugacy(f.truncated(order), g.truncated(order));
}

}  // namespace parabolic
