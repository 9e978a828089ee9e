#pragma once

// Formal flows of vector fields vanishing to order two, compositional roots,
// and centralizers of germs tangent to the identity.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "certificates.hpp"
#include "classifier.hpp"
#include "errors.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace parabolic {

/// V(x) = Σ_{n>=2} v_n x^n ∂/∂x.
class VectorField {
   public:
    explicit VectorField(Series coefficients) : coeffs_(std::move(coefficients)) {
        if (!is_zero(coeffs_[0]) || (coeffs_.order() >= 1 && !is_zero(coeffs_[1])))
            throw std::invalid_argument("vector field must vanish to order 2 (v0 = v1 = 0)");
    }

    std::size_t order() const { return coeffs_.order(); }
    const Rational& operator[](std::size_t n) const { return coeffs_[n]; }
    const Series& series() const { return coeffs_; }

    friend bool operator==(const VectorField&, const VectorField&) = default;

   private:
    Series coeffs_;
};

using TimeSeries = TruncatedSeries<Polynomial>;

/// T^t(x) = Σ a_n(t) x^n, each a_n a polynomial in t.
struct FlowMap {
    VectorField field;
    /// a[0..N]; a[0] = 0, a[1] = 1.
    std::vector<Polynomial> a;

    std::size_t order() const { return a.size() - 1; }

    TimeSeries as_series() const {
        TimeSeries s(order());
        for (std::size_t n = 0; n <= order(); ++n) s.set(n, a[n]);
        return s;
    }
};

/// Solves dT/dt = V(T), T^0 = x degree by degree. Writing [T^k]_d for the
/// coefficients of the multiplicative powers of T, a_d' = Σ_{k>=2} v_k [T^k]_d
/// and [T^k]_d only involves a_1..a_{d-1}, so each a_d is one antiderivative.
inline FlowMap flow_coefficients(const VectorField& field, std::size_t order) {
    const std::size_t n = std::min(order, field.order());
    if (n < 1) throw std::invalid_argument("flow_coefficients: order must be >= 1");
    std::vector<Polynomial> a(n + 1);
    a[1] = Polynomial{1};
    // powers[k][d] = [T^k]_d
    std::vector<std::vector<Polynomial>> powers(n + 1, std::vector<Polynomial>(n + 1));
    powers[1][1] = a[1];
    for (std::size_t d = 2; d <= n; ++d) {
        Polynomial rate;
        for (std::size_t k = 2; k <= d; ++k) {
            Polynomial acc;
            for (std::size_t j = 1; j + k - 1 <= d; ++j) {
                if (a[j].is_zero() || powers[k - 1][d - j].is_zero()) continue;
                acc += a[j] * powers[k - 1][d - j];
            }
            powers[k][d] = acc;
            if (!is_zero(field[k]) && !acc.is_zero()) rate += acc * Polynomial{field[k]};
        }
        a[d] = rate.antiderivative();
        powers[1][d] = a[d];
    }
    return FlowMap{VectorField{field.series().truncated(n)}, std::move(a)};
}

inline FlowMap flow_coefficients(const VectorField& field) { return flow_coefficients(field, field.order()); }

inline Series time_t_map(const FlowMap& flow, const Rational& t) {
    Series s(flow.order());
    for (std::size_t n = 1; n <= flow.order(); ++n) s.set(n, flow.a[n](t));
    return s;
}

/// Result of an exact comparison of two series; the first differing degree when they differ.
struct SeriesComparison {
    std::optional<std::size_t> first_difference;
    bool pass() const { return !first_difference; }
};

inline SeriesComparison compare_series(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.order(), b.order());
    for (std::size_t d = 0; d <= n; ++d)
        if (a[d] != b[d]) return {d};
    return {};
}

/// T^s ∘ T^t = T^{s+t} through the truncation order.
inline SeriesComparison check_group_law(const FlowMap& flow, const Rational& s, const Rational& t) {
    return compare_series(compose(time_t_map(flow, s), time_t_map(flow, t)), time_t_map(flow, s + t));
}

/// d a_n/dt against [V∘T^t]_n, with V∘T^t computed by Horner composition over
/// polynomial coefficients.
inline SeriesComparison check_flow_equation(const FlowMap& flow) {
    const std::size_t n = flow.order();
    TimeSeries lifted(n);
    for (std::size_t d = 0; d <= n; ++d) lifted.set(d, Polynomial{flow.field[d]});
    const auto rhs = compose(lifted, flow.as_series());
    for (std::size_t d = 0; d <= n; ++d)
        if (!(flow.a[d].derivative() == rhs[d])) return {d};
    return {};
}

struct FlowIntegrityRecord {
    std::size_t n = 0;
    std::size_t t_power = 0;
    Valuation ord;
    std::int64_t factorial = 0;  // ord_p(n!)
    Valuation margin() const { return ord.is_infinite() ? ord : Valuation{ord.value() + factorial}; }
    bool ok() const { return margin().is_integral(); }
};

struct FlowIntegrityReport {
    std::uint64_t prime = 0;
    std::size_t order = 0;
    std::vector<FlowIntegrityRecord> records;
    /// Degrees n with deg a_n > n-1.
    std::vector<std::size_t> degree_violations;

    bool pass() const {
        if (!degree_violations.empty()) return false;
        for (const auto& r : records)
            if (!r.ok()) return false;
        return true;
    }
};

/// n! a_n(t) ∈ Δ[t] and deg a_n <= n-1, for fields with p-integral coefficients.
inline FlowIntegrityReport flow_integrality_check(const FlowMap& flow, std::uint64_t p) {
    require_prime(p);
    for (std::size_t n = 2; n <= flow.field.order(); ++n)
        if (!ord(flow.field[n], p).is_integral())
            throw InapplicableCertificate("flow_integrality_check: v_" + std::to_string(n) + " = " +
                                          to_string(flow.field[n]) + " is not p-integral for p=" + std::to_string(p) +
                                          " (rescale the field first)");
    FlowIntegrityReport report{p, flow.order(), {}, {}};
    for (std::size_t n = 1; n <= flow.order(); ++n) {
        const auto& poly = flow.a[n];
        if (auto deg = poly.degree(); deg && *deg + 1 > n) report.degree_violations.push_back(n);
        const auto fact = static_cast<std::int64_t>(ord_factorial(n, p));
        for (std::size_t j = 0; j < poly.coefficients().size(); ++j)
            report.records.push_back({n, j, ord(poly.coefficients()[j], p), fact});
    }
    return report;
}

/// Conjugation by L_r(x) = r x with r = p^s, chosen minimal so that the
/// rescaled field Ṽ(x) = V(r x)/r, with coefficients v_n r^{n-1}, is
/// p-integral. The flows are related by T^t_V = L_r ∘ T^t_Ṽ ∘ L_r⁻¹.
struct Rescaling {
    std::size_t exponent = 0;
    Rational r = 1;
    VectorField rescaled{Series{1}};
};

inline Rescaling integral_rescaling(const VectorField& field, std::uint64_t p) {
    require_prime(p);
    std::int64_t s = 0;
    for (std::size_t n = 2; n <= field.order(); ++n) {
        const auto v = ord(field[n], p);
        if (v.is_infinite() || v.value() >= 0) continue;
        const auto step = static_cast<std::int64_t>(n - 1);
        s = std::max(s, (-v.value() + step - 1) / step);
    }
    const Rational r = prime_power(p, s);
    Series coeffs(field.order());
    Rational factor = 1;  // r^{n-1}
    for (std::size_t n = 1; n <= field.order(); ++n) {
        coeffs.set(n, field[n] * factor);
        factor *= r;
    }
    return {static_cast<std::size_t>(s), r, VectorField{std::move(coeffs)}};
}

/// A field whose time-one map is x + x^m + μx^{2m-1} + O(x^{2m}):
/// V = x^m / (1 - λ x^{m-1}) ∂/∂x with λ = μ - m/2.
///
/// The time-one map of x^m + λx^{2m-1} is x + x^m + (λ + m/2)x^{2m-1} + ...,
/// the m/2 coming from the second-order term V·V'/2. For m = 2 this is
/// λ = μ - 1.
inline VectorField embedding_field(std::size_t m, const Rational& mu, std::size_t order) {
    if (m < 2) throw std::invalid_argument("embedding_field: m must be >= 2");
    const Rational lambda = mu - make_rational(static_cast<long>(m), 2);
    Series v(order);
    Rational term = 1;  // λ^j
    for (std::size_t d = m; d <= order; d += m - 1) {
        v.set(d, term);
        term *= lambda;
    }
    return VectorField{std::move(v)};
}

/// The unique tangent-to-identity g with g^{∘n} = f. At degree d the unknown
/// g_d enters the d-th coefficient of g^{∘n} as n·g_d plus terms in lower
/// coefficients.
inline Series nth_root(const Series& f, std::size_t n) {
    if (n == 0) throw std::invalid_argument("nth_root: root index must be >= 1");
    require_tangent_to_identity(f, "nth_root");
    if (n == 1) return f;
    const Rational inv_n = make_rational(1, static_cast<long>(n));
    auto g = Series::identity(f.order());
    for (std::size_t d = 2; d <= f.order(); ++d) {
        const auto partial = iterate(g.truncated(d), n);
        g.set(d, (f[d] - partial[d]) * inv_n);
    }
    return g;
}

inline Series nth_root(const Series& f, std::size_t n, std::size_t order) { return nth_root(f.truncated(order), n); }

/// h⁻¹∘T^t∘h, where T^t is the flow of the embedding field for f's invariants
/// and h conjugates f to T^1. The result commutes with f; t = 1 recovers f.
inline Series centralizer_element(const Series& f, const Rational& t) {
    const std::size_t order = f.order();
    const auto cls_f = classify(f);
    const auto field = embedding_field(cls_f.m, cls_f.mu, order);
    const auto flow = flow_coefficients(field, order);
    const auto time_one = time_t_map(flow, Rational{1});
    const auto cls_t = classify(time_one);
    if (cls_t.m != cls_f.m || cls_t.mu != cls_f.mu)
        throw std::logic_error("centralizer_element: embedding field has the wrong invariants");
    const auto h = compose(comp_inverse(cls_t.full_conjugator()), cls_f.full_conjugator());
    return compose(comp_inverse(h), compose(time_t_map(flow, t), h));
}

inline Series centralizer_element(const Series& f, const Rational& t, std::size_t order) {
    return centralizer_element(f.truncated(order), t);
}

/// f∘g against g∘f.
inline SeriesComparison check_commute(const Series& f, const Series& g) {
    return compare_series(compose(f, g), compose(g, f));
}

inline SeriesComparison check_commute(const Series& f, const Series& g, std::size_t order) {
    return check_commute(f.truncated(order), g.truncated(order));
}

}  // namespace parabolic
