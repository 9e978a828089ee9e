#pragma once

// Valuation certificates for normal-form conjugators.
//
// Integral germs: (n-m)! c_n and (n-m)! A_n lie in the valuation ring.
// General germs: after choosing q = p^k with a_n q^n integral, the same holds
// with an extra factor q^{σ_m(n)}, where σ_m is the jump function
//
//     σ_m(n) = (2m-1)/(m-1) · (n-(m+1)) + ε_m(n),
//     ε_m(n) = 2m + (1 - (2m-1)/(m-1)) · r,   r = (n-2) mod (m-1).
//
// Every check is stated at the valuation level: x ∈ Δ  <=>  ord_p(x) >= 0.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "classifier.hpp"
#include "errors.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace parabolic {

namespace detail {

inline void require_sigma_domain(std::size_t m, std::size_t n) {
    if (m < 2) throw std::invalid_argument("sigma: m must be >= 2");
    if (n < m + 1) throw std::invalid_argument("sigma: n must be >= m+1");
}

inline Rational slope(std::size_t m) {
    return make_rational(static_cast<long>(2 * m - 1), static_cast<long>(m - 1));
}

}  // namespace detail

inline Rational epsilon(std::size_t m, std::size_t n) {
    detail::require_sigma_domain(m, n);
    const std::size_t r = (n - 2) % (m - 1);
    return Rational{static_cast<long>(2 * m)} + (Rational{1} - detail::slope(m)) * Rational{static_cast<long>(r)};
}

inline std::int64_t sigma(std::size_t m, std::size_t n) {
    detail::require_sigma_domain(m, n);
    Rational value = detail::slope(m) * Rational{static_cast<long>(n) - static_cast<long>(m + 1)} + epsilon(m, n);
    if (value.get_den() != 1)
        throw std::logic_error("sigma(" + std::to_string(m) + ", " + std::to_string(n) + ") = " + to_string(value) +
                               " is not an integer");
    return value.get_num().get_si();
}

/// A finite index sequence (i_1, ..., i_l).
struct IndexTuple {
    std::vector<std::size_t> entries;

    std::size_t length() const { return entries.size(); }
    std::size_t weight() const {
        std::size_t w = 0;
        for (auto i : entries) w += i;
        return w;
    }
    /// The degree |i| - l + 1 that the monomial c_{i_1}...c_{i_l} contributes to.
    std::size_t degree() const { return weight() - length() + 1; }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t j = 0; j < entries.size(); ++j) s += (j ? "," : "") + std::to_string(entries[j]);
        return s + ")";
    }
};

/// Calls visit on every ordered tuple with entries >= min_entry and weight <= max_weight.
inline void for_each_index_tuple(std::size_t min_entry, std::size_t max_weight,
                                 const std::function<void(const IndexTuple&)>& visit) {
    IndexTuple t;
    std::function<void(std::size_t)> extend = [&](std::size_t remaining) {
        for (std::size_t i = min_entry; i <= remaining; ++i) {
            t.entries.push_back(i);
            visit(t);
            extend(remaining - i);
            t.entries.pop_back();
        }
    };
    extend(max_weight);
}

struct SigmaViolation {
    std::string part;
    std::string witness;
};

struct SigmaSuiteReport {
    std::size_t m = 0;
    std::size_t n_max = 0;
    std::size_t weight_max = 0;
    std::size_t checks = 0;
    std::vector<SigmaViolation> violations;

    bool pass() const { return violations.empty(); }
};

/// Exhaustive check of the structural properties of ε_m and σ_m:
/// (i) ε has period m-1, decreases on [m+1, 2m-1] and lies in [m²/(m+1), 2m];
/// (ii) σ is integral and strictly increasing, σ(n+m-1) = σ(n) + 2m-1, and
///      s·n - (m+2+1/(m-1)) <= σ(n) <= s·n - (3m-1)/(m-1) with s = (2m-1)/(m-1);
/// (iii) b - a >= m-1 implies σ(b) - σ(a) >= (b-a) + m;
/// (iv) Σ σ(i_j) <= σ(|i| - l + 1) for tuples with entries >= m+1.
inline SigmaSuiteReport sigma_property_suite(std::size_t m, std::size_t n_max, std::size_t weight_max) {
    if (m < 2) throw std::invalid_argument("sigma_property_suite: m must be >= 2");
    SigmaSuiteReport report{m, n_max, weight_max, 0, {}};
    auto fail = [&](std::string part, std::string witness) {
        report.violations.push_back({std::move(part), std::move(witness)});
    };
    auto check = [&](bool ok, const char* part, const std::function<std::string()>& witness) {
        ++report.checks;
        if (!ok) fail(part, witness());
    };

    const std::size_t first = m + 1;
    const std::size_t table_end = std::max(n_max + m, weight_max) + 1;
    std::vector<std::int64_t> sig(table_end + 1, 0);
    std::vector<Rational> eps(table_end + 1);
    for (std::size_t n = first; n <= table_end; ++n) {
        eps[n] = epsilon(m, n);
        try {
            sig[n] = sigma(m, n);
        } catch (const std::logic_error& e) {
            fail("ii", e.what());
        }
    }
    const Rational s = detail::slope(m);
    const Rational eps_lo = make_rational(static_cast<long>(m * m), static_cast<long>(m + 1));
    const Rational eps_hi = Rational{static_cast<long>(2 * m)};
    const Rational lo_shift = Rational{static_cast<long>(m + 2)} + make_rational(1, static_cast<long>(m - 1));
    const Rational hi_shift = make_rational(static_cast<long>(3 * m - 1), static_cast<long>(m - 1));
    auto at = [](std::size_t n) { return "n=" + std::to_string(n); };

    for (std::size_t n = first; n <= n_max; ++n) {
        // (i)
        check(eps[n + m - 1] == eps[n], "i", [&] { return at(n) + " period"; });
        check(eps[n] >= eps_lo && eps[n] <= eps_hi, "i", [&] { return at(n) + " eps=" + to_string(eps[n]); });
        if (n + 1 <= 2 * m - 1) check(eps[n + 1] < eps[n], "i", [&] { return at(n) + " eps not decreasing"; });
        // (ii)
        check(sig[n + 1] > sig[n], "ii", [&] { return at(n) + " not strictly increasing"; });
        check(sig[n + m - 1] == sig[n] + static_cast<std::int64_t>(2 * m - 1), "ii",
              [&] { return at(n) + " jump relation"; });
        const Rational value{static_cast<long>(sig[n])};
        const Rational linear = s * Rational{static_cast<long>(n)};
        check(linear - lo_shift <= value && value <= linear - hi_shift, "ii",
              [&] { return at(n) + " sigma=" + std::to_string(sig[n]) + " outside linear bounds"; });
    }
    // (iii)
    for (std::size_t a = first; a <= n_max; ++a)
        for (std::size_t b = a + m - 1; b <= n_max; ++b)
            check(sig[b] - sig[a] >= static_cast<std::int64_t>(b - a + m), "iii",
                  [&] { return "a=" + std::to_string(a) + " b=" + std::to_string(b); });
    // (iv)
    for_each_index_tuple(first, weight_max, [&](const IndexTuple& t) {
        std::int64_t total = 0;
        for (auto i : t.entries) total += sig[i];
        const std::size_t n = t.degree();
        check(total <= sig[n], "iv", [&] {
            return "tuple " + t.to_string() + " sum=" + std::to_string(total) + " sigma(" + std::to_string(n) +
                   ")=" + std::to_string(sig[n]);
        });
    });
    return report;
}

/// Smallest k >= 0 with ord_p(a_n) + n·k >= 0 for every n in 1..N.
inline std::size_t choose_q_exponent(const Series& f, std::uint64_t p) {
    require_prime(p);
    if (f.is_zero_series()) throw std::invalid_argument("choose_q_exponent: zero series");
    std::int64_t k = 0;
    for (std::size_t n = 1; n <= f.order(); ++n) {
        const auto v = ord(f[n], p);
        if (v.is_infinite() || v.value() >= 0) continue;
        const std::int64_t need = -v.value();
        const std::int64_t nn = static_cast<std::int64_t>(n);
        k = std::max(k, (need + nn - 1) / nn);
    }
    return static_cast<std::size_t>(k);
}

/// One per-degree check: ord_p(value) + factorial + sigma_term >= 0.
struct MarginRecord {
    std::size_t n = 0;
    char kind = 'c';  // 'c' conjugator step coefficient, 'A' coefficient of H, 'b' power coefficient
    Valuation ord;
    std::int64_t factorial = 0;   // ord_p((n-m)!)
    std::int64_t sigma_term = 0;  // k·σ_m(n)
    Valuation margin() const {
        if (ord.is_infinite()) return ord;
        return Valuation{ord.value() + factorial + sigma_term};
    }
    bool ok() const { return margin().is_integral(); }
};

struct CertificateReport {
    std::string kind;
    std::uint64_t prime = 0;
    std::size_t q_exponent = 0;
    std::size_t m = 0;
    std::size_t order = 0;
    std::vector<MarginRecord> records;

    bool pass() const {
        for (const auto& r : records)
            if (!r.ok()) return false;
        return true;
    }
    std::optional<MarginRecord> first_failure() const {
        for (const auto& r : records)
            if (!r.ok()) return r;
        return std::nullopt;
    }
};

namespace detail {

inline void add_margins(CertificateReport& report, const GermClassification& cls, std::size_t k) {
    const std::size_t m = cls.m;
    const std::uint64_t p = report.prime;
    for (std::size_t n = m + 1; n <= cls.order(); ++n) {
        const auto fact = static_cast<std::int64_t>(ord_factorial(n - m, p));
        const std::int64_t sig = k == 0 ? 0 : static_cast<std::int64_t>(k) * sigma(m, n);
        const auto it = cls.c.find(n);
        const Rational cn = it == cls.c.end() ? Rational{0} : it->second;
        report.records.push_back({n, 'c', ord(cn, p), fact, sig});
        report.records.push_back({n, 'A', ord(cls.H[n], p), fact, sig});
    }
}

}  // namespace detail

/// (n-m)! c_n ∈ Δ and (n-m)! A_n ∈ Δ for m+1 <= n <= N, for germs whose
/// rescaled form, μ and prenormalizing steps c_2..c_{m-1} are all integral.
inline CertificateReport certify_integral(const GermClassification& cls, std::uint64_t p) {
    require_prime(p);
    for (std::size_t n = 0; n <= cls.normalized.order(); ++n)
        if (!ord(cls.normalized[n], p).is_integral())
            throw InapplicableCertificate("certify_integral: coefficient of degree " + std::to_string(n) + " is " +
                                          to_string(cls.normalized[n]) + ", not p-integral for p=" + std::to_string(p));
    if (!ord(cls.mu, p).is_integral())
        throw InapplicableCertificate("certify_integral: mu = " + to_string(cls.mu) + " is not p-integral");
    for (std::size_t n = 2; n < cls.m; ++n)
        if (!ord(cls.c.at(n), p).is_integral())
            throw InapplicableCertificate("certify_integral: prenormalizing coefficient c_" + std::to_string(n) +
                                          " is not p-integral");
    CertificateReport report{"integral", p, 0, cls.m, cls.order(), {}};
    detail::add_margins(report, cls, 0);
    return report;
}

/// (n-m)! q^{σ_m(n)} c_n ∈ Δ and the same for A_n, with q = p^k.
inline CertificateReport certify_general(const GermClassification& cls, std::uint64_t p, std::size_t k) {
    require_prime(p);
    CertificateReport report{"general", p, k, cls.m, cls.order(), {}};
    detail::add_margins(report, cls, k);
    return report;
}

/// Coefficients b_n (n >= m+1) of H^e satisfy (n-m)! b_n ∈ Δ.
inline CertificateReport certify_powers(const GermClassification& cls, std::size_t exponent, std::uint64_t p) {
    require_prime(p);
    CertificateReport report{"powers", p, 0, cls.m, cls.order(), {}};
    const auto power = pow(cls.H, exponent);
    for (std::size_t n = cls.m + 1; n <= power.order(); ++n) {
        if (n == exponent) continue;  // the leading x^e term
        report.records.push_back(
            {n, 'b', ord(power[n], p), static_cast<std::int64_t>(ord_factorial(n - cls.m, p)), 0});
    }
    return report;
}

/// e = max_{1<=n<=N, a_n != 0} (-ord_p(a_n)/n). Every truncated term a_n x^n
/// has positive valuation when ord_p(x) > e. This is an order-N proxy for the
/// radius of convergence, not the radius itself. nullopt for a series with no
/// nonzero coefficient in degrees 1..N.
inline std::optional<Rational> radius_lower_bound(const Series& f, std::uint64_t p) {
    require_prime(p);
    std::optional<Rational> best;
    for (std::size_t n = 1; n <= f.order(); ++n) {
        const auto v = ord(f[n], p);
        if (v.is_infinite()) continue;
        const Rational e = make_rational(-v.value(), static_cast<long>(n));
        if (!best || e > *best) best = e;
    }
    return best;
}

}  // namespace parabolic
