#include <gtest/gtest.h>

#include <parabolic/flows.hpp>

#include "support.hpp"

using namespace parabolic;
using parabolic::testing::Generator;
using parabolic::testing::geometric;
using parabolic::testing::poly;

namespace {

VectorField field(std::size_t order, std::initializer_list<long> ascending) {
    return VectorField{poly(order, ascending)};
}

VectorField random_integral_field(Generator& gen, std::size_t order) {
    Series v(order);
    for (std::size_t n = 2; n <= order; ++n) v.set(n, Rational{gen.integer(-5, 5)});
    return VectorField{v};
}

}  // namespace

TEST(VectorField, RejectsLowOrderTerms) {
    EXPECT_THROW(field(5, {0, 1, 1}), std::invalid_argument);
    EXPECT_THROW(field(5, {1, 0, 1}), std::invalid_argument);
    EXPECT_NO_THROW(field(5, {0, 0, 1}));
}

TEST(Flow, SquareFieldClosedForm) {
    // x/(1 - t x).
    const auto flow = flow_coefficients(field(30, {0, 0, 1}));
    for (std::size_t n = 1; n <= 30; ++n) EXPECT_EQ(flow.a[n], Polynomial::monomial(Rational{1}, n - 1)) << n;
    EXPECT_TRUE(flow.a[0].is_zero());
}

TEST(Flow, ZeroFieldIsIdentity) {
    const auto flow = flow_coefficients(VectorField{Series(12)});
    EXPECT_EQ(time_t_map(flow, make_rational(7, 3)), Series::identity(12));
    for (std::size_t n = 2; n <= 12; ++n) EXPECT_TRUE(flow.a[n].is_zero());
}

TEST(Flow, MonomialField) {
    for (std::size_t m = 2; m <= 5; ++m) {
        const auto flow = flow_coefficients(VectorField{Series::monomial(Rational{1}, m, 15)});
        EXPECT_EQ(flow.a[m], (Polynomial{0, 1}));
        for (std::size_t n = 2; n < m; ++n) EXPECT_TRUE(flow.a[n].is_zero());
    }
}

TEST(Flow, FlowAxioms) {
    Generator gen(101);
    for (int trial = 0; trial < 8; ++trial) {
        const auto flow = flow_coefficients(random_integral_field(gen, 14));
        EXPECT_EQ(flow.a[1], Polynomial{1});
        EXPECT_EQ(time_t_map(flow, Rational{0}), Series::identity(14));
        for (std::size_t n = 2; n <= 14; ++n) {
            EXPECT_EQ(flow.a[n](Rational{0}), 0);
            if (auto d = flow.a[n].degree()) EXPECT_LE(*d, n - 1);
        }
        EXPECT_TRUE(check_flow_equation(flow).pass());
    }
}

TEST(TimeTMap, SquareField) {
    const auto flow = flow_coefficients(field(16, {0, 0, 1}));
    EXPECT_EQ(time_t_map(flow, Rational{1}), geometric(16));
    EXPECT_EQ(time_t_map(flow, make_rational(1, 2)), geometric(16, make_rational(1, 2)));
}

TEST(GroupLaw, Examples) {
    const auto flow = flow_coefficients(field(20, {0, 0, 1}));
    EXPECT_TRUE(check_group_law(flow, Rational{1}, Rational{1}).pass());
    EXPECT_EQ(compose(geometric(20), geometric(20)), geometric(20, Rational{2}));
    EXPECT_TRUE(check_group_law(flow, Rational{0}, make_rational(-5, 3)).pass());
}

TEST(GroupLaw, RandomFieldsAndTimes) {
    Generator gen(202);
    for (int trial = 0; trial < 6; ++trial) {
        const auto flow = flow_coefficients(random_integral_field(gen, 16));
        const auto s = gen.rational(-4, 4, 5);
        const auto t = gen.rational(-4, 4, 5);
        EXPECT_TRUE(check_group_law(flow, s, t).pass()) << trial;
    }
}

TEST(GroupLaw, DetectsWrongFlow) {
    auto flow = flow_coefficients(field(10, {0, 0, 1}));
    flow.a[4] = flow.a[4] + Polynomial{0, 0, 1};  // a t-linear change would be additive
    const auto cmp = check_group_law(flow, Rational{1}, Rational{1});
    ASSERT_FALSE(cmp.pass());
    EXPECT_EQ(*cmp.first_difference, 4u);
    EXPECT_EQ(*check_flow_equation(flow).first_difference, 4u);
}

TEST(FlowIntegrality, Examples) {
    for (std::uint64_t p : {2u, 3u, 5u}) EXPECT_TRUE(flow_integrality_check(flow_coefficients(field(20, {0, 0, 1})), p).pass());
    EXPECT_TRUE(flow_integrality_check(flow_coefficients(field(30, {0, 0, 1, 1})), 2).pass());
    Series v(10);
    v.set(2, make_rational(1, 3));
    EXPECT_THROW(flow_integrality_check(flow_coefficients(VectorField{v}), 3), InapplicableCertificate);
}

TEST(FlowIntegrality, RandomIntegralFields) {
    Generator gen(303);
    for (int trial = 0; trial < 6; ++trial) {
        const auto flow = flow_coefficients(random_integral_field(gen, 20));
        for (std::uint64_t p : {2u, 3u}) EXPECT_TRUE(flow_integrality_check(flow, p).pass());
    }
}

TEST(FlowIntegrality, FactorialIsNeeded) {
    // V = x^2 + x^3 at p = 2: some a_n(t) has a coefficient with negative
    // valuation, so dropping n! would be wrong.
    const auto flow = flow_coefficients(field(12, {0, 0, 1, 1}));
    bool negative = false;
    for (const auto& a : flow.a)
        for (const auto& c : a.coefficients())
            if (!ord(c, 2).is_integral()) negative = true;
    EXPECT_TRUE(negative);
}

TEST(Rescaling, RelatesFlowsByLinearConjugation) {
    for (std::uint64_t p : {2u, 3u}) {
        Series v(12);
        v.set(2, prime_power(p, -1));
        v.set(3, prime_power(p, -3));
        v.set(5, Rational{7});
        const VectorField V{v};
        const auto r = integral_rescaling(V, p);
        EXPECT_EQ(r.exponent, 2u);  // ceil(1/1), ceil(3/2)
        EXPECT_EQ(r.r, prime_power(p, 2));
        for (std::size_t n = 2; n <= 12; ++n) EXPECT_TRUE(ord(r.rescaled[n], p).is_integral());
        const auto t = make_rational(2, 3);
        const auto direct = time_t_map(flow_coefficients(V), t);
        const auto via = compose(linear(r.r, 12), compose(time_t_map(flow_coefficients(r.rescaled), t),
                                                          linear(Rational{1} / r.r, 12)));
        EXPECT_EQ(direct, via);
        EXPECT_TRUE(flow_integrality_check(flow_coefficients(r.rescaled), p).pass());
    }
    EXPECT_EQ(integral_rescaling(field(6, {0, 0, 3}), 2).exponent, 0u);
}

TEST(Embedding, FieldExpansion) {
    EXPECT_EQ(embedding_field(2, Rational{1}, 10).series(), poly(10, {0, 0, 1}));
    EXPECT_EQ(embedding_field(2, Rational{0}, 6).series(), poly(6, {0, 0, 1, -1, 1, -1, 1}));
    EXPECT_THROW(embedding_field(1, Rational{0}, 6), std::invalid_argument);
}

TEST(Embedding, TimeOneInvariants) {
    const std::pair<std::size_t, long> cases[] = {{2, 0}, {2, 1}, {3, 2}, {3, -1}, {4, 5}, {2, 7}};
    for (const auto& [m, mu] : cases) {
        const auto T1 = time_t_map(flow_coefficients(embedding_field(m, Rational{mu}, 20)), Rational{1});
        EXPECT_EQ(invariants(T1), (Invariants{m, Rational{mu}})) << m << "," << mu;
        EXPECT_EQ(T1[m], 1);
        EXPECT_EQ(T1[2 * m - 1], mu);
    }
    // (2,1): x/(1-x).
    EXPECT_EQ(time_t_map(flow_coefficients(embedding_field(2, Rational{1}, 20)), Rational{1}), geometric(20));
}

TEST(Embedding, CoefficientFormulaWithoutShiftFailsForCubic) {
    // x^m/(1-(μ-1)x^{m-1}) is right for m = 2 only: at m = 3 the time-one
    // map picks up μ-1+3/2 at degree 5.
    Series v(20);
    const Rational mu = 2;
    Rational term = 1;
    for (std::size_t d = 3; d <= 20; d += 2, term *= mu - 1) v.set(d, term);
    const auto T1 = time_t_map(flow_coefficients(VectorField{v}), Rational{1});
    EXPECT_EQ(invariants(T1).mu, make_rational(5, 2));
}

TEST(Iterate, Examples) {
    const auto f = poly(10, {0, 1, 1});
    EXPECT_EQ(iterate(f, 2), poly(10, {0, 1, 2, 2, 1}));
    // Flow of x^2: f^{∘n} = x/(1-nx).
    EXPECT_EQ(iterate(geometric(12), 5), geometric(12, Rational{5}));
}

TEST(NthRoot, Examples) {
    const auto f = poly(16, {0, 1, 1});
    EXPECT_EQ(nth_root(f, 1), f);
    EXPECT_EQ(nth_root(geometric(16), 2), geometric(16, make_rational(1, 2)));
    const auto g = nth_root(f, 2);
    EXPECT_EQ(g[2], make_rational(1, 2));
    EXPECT_EQ(g[3], make_rational(-1, 4));
    EXPECT_EQ(iterate(g, 2), f);
    EXPECT_THROW(nth_root(f, 0), std::invalid_argument);
    EXPECT_THROW(nth_root(poly(5, {0, 2, 1}), 2), std::invalid_argument);
}

TEST(NthRoot, RandomGerms) {
    Generator gen(404);
    for (int trial = 0; trial < 5; ++trial) {
        const auto f = gen.rational_germ(14, 8);
        for (std::size_t n : {1u, 2u, 3u, 5u}) EXPECT_EQ(iterate(nth_root(f, n), n), f) << n;
        EXPECT_TRUE(check_commute(f, nth_root(f, 3)).pass());
    }
}

TEST(NthRoot, ExplicitOrderOverload) {
    const auto f = geometric(20);
    EXPECT_EQ(nth_root(f, 3, 9), geometric(9, make_rational(1, 3)));
}

TEST(Centralizer, Examples) {
    Generator gen(505);
    for (int trial = 0; trial < 4; ++trial) {
        const std::size_t m = 2 + trial % 2;
        const auto f = gen.integral_germ(m, 14, -3, 3);
        EXPECT_EQ(centralizer_element(f, Rational{0}), Series::identity(14));
        EXPECT_EQ(centralizer_element(f, Rational{1}), f);
        EXPECT_EQ(centralizer_element(f, make_rational(1, 2)), nth_root(f, 2));
        const auto g = centralizer_element(f, make_rational(2, 7));
        EXPECT_TRUE(check_commute(f, g).pass());
    }
}

TEST(Centralizer, OneParameterGroup) {
    Generator gen(606);
    const auto f = gen.integral_germ(2, 12, -2, 2);
    const auto s = make_rational(1, 3);
    const auto t = make_rational(-3, 4);
    EXPECT_EQ(compose(centralizer_element(f, s), centralizer_element(f, t)), centralizer_element(f, s + t));
    EXPECT_EQ(centralizer_element(f, Rational{2}), iterate(f, 2));
}

TEST(Centralizer, ScaledLeadingCoefficient) {
    const auto f = poly(12, {0, 1, 3, 1, -2});
    const auto g = centralizer_element(f, make_rational(1, 2));
    EXPECT_EQ(g, nth_root(f, 2));
    EXPECT_THROW(centralizer_element(poly(12, {0, 1, 0, 2}), Rational{1}), NeedsFieldExtension);
}

TEST(Commute, Examples) {
    const auto f = poly(10, {0, 1, 1, 5});
    EXPECT_TRUE(check_commute(f, Series::identity(10)).pass());
    const auto c = check_commute(poly(10, {0, 1, 1}), poly(10, {0, 1, 0, 1}));
    ASSERT_FALSE(c.pass());
    EXPECT_EQ(*c.first_difference, 4u);
    EXPECT_TRUE(check_commute(f, nth_root(f, 3), 8).pass());
}
