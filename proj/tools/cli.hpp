#pragma once

// Command-line front end. Every subcommand prints one JSON document on
// standard output. Exit codes: 0 success or PASS, 2 certificate FAIL,
// NotEquivalent or a failed commutation check, 1 usage/parse/domain error.

#include <cstddef>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <parabolic/parabolic.hpp>

namespace parabolic::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFail = 2;

inline constexpr std::size_t kDefaultOrder = 24;

struct CommandRequest {
    std::vector<std::string> inputs;
    std::optional<std::uint64_t> prime;
    std::size_t order = kDefaultOrder;
    std::optional<std::string> time;
    std::size_t root_index = 2;
    std::optional<std::size_t> q_exponent;
    std::optional<std::string> mu;
    std::size_t m = 2;
    std::size_t n_max = 40;
    std::size_t weight_max = 14;
};

namespace detail {

using io::Json;

inline Series load(const CommandRequest& req, std::size_t index) {
    return io::read_series_file(req.inputs.at(index)).truncated(req.order);
}

inline Rational time_arg(const CommandRequest& req, const char* fallback) {
    try {
        return parse_rational(req.time.value_or(fallback));
    } catch (const std::invalid_argument& e) {
        throw io::ParseError(std::string{"--time: "} + e.what());
    }
}

inline std::uint64_t prime_arg(const CommandRequest& req) {
    if (!req.prime) throw std::invalid_argument("--prime is required for this subcommand");
    require_prime(*req.prime);
    return *req.prime;
}

inline int emit(std::ostream& out, const Json& report, int code) {
    out << io::dump(report) << '\n';
    return code;
}

inline int classify_cmd(const CommandRequest& req, std::ostream& out) {
    const auto f = load(req, 0);
    auto report = io::to_json(classify(f));
    report["truncation_order"] = f.order();
    return emit(out, report, kExitOk);
}

inline int conjugacy_cmd(const CommandRequest& req, std::ostream& out) {
    const auto f = load(req, 0);
    const auto g = load(req, 1);
    const auto result = check_conjugacy(f, g);
    if (const auto* c = std::get_if<Conjugator>(&result))
        return emit(out, Json{{"equivalent", true}, {"h", io::to_json(c->h)}}, kExitOk);
    const auto& ne = std::get<NotEquivalent>(result);
    return emit(out,
                Json{{"equivalent", false}, {"differing", ne.differing}, {"f", io::to_json(ne.f)}, {"g", io::to_json(ne.g)}},
                kExitFail);
}

inline Json radius_json(const Series& s, std::uint64_t p) {
    Json out{{"truncation_limited", true}, {"truncation_order", s.order()}};
    const auto e = radius_lower_bound(s, p);
    out["exponent"] = e ? Json(to_string(*e)) : Json(nullptr);
    return out;
}

inline int certify_integral_cmd(const CommandRequest& req, std::ostream& out) {
    const auto p = prime_arg(req);
    const auto cls = classify(load(req, 0));
    const auto report = certify_integral(cls, p);
    auto j = io::to_json(report);
    j["radius_proxy_H"] = radius_json(cls.H, p);
    return emit(out, j, report.pass() ? kExitOk : kExitFail);
}

inline int certify_general_cmd(const CommandRequest& req, std::ostream& out) {
    const auto p = prime_arg(req);
    const auto cls = classify(load(req, 0));
    const std::size_t k = req.q_exponent.value_or(choose_q_exponent(cls.normalized, p));
    const auto report = certify_general(cls, p, k);
    auto j = io::to_json(report);
    j["radius_proxy_H"] = radius_json(cls.H, p);
    return emit(out, j, report.pass() ? kExitOk : kExitFail);
}

inline int sigma_table_cmd(const CommandRequest& req, std::ostream& out) {
    if (req.m < 2) throw std::invalid_argument("--m must be >= 2");
    Json rows = Json::array();
    for (std::size_t n = req.m + 1; n <= req.n_max; ++n)
        rows.push_back(Json{{"n", n}, {"epsilon", to_string(epsilon(req.m, n))}, {"sigma", sigma(req.m, n)}});
    const auto suite = sigma_property_suite(req.m, req.n_max, req.weight_max);
    return emit(out, Json{{"m", req.m}, {"table", rows}, {"properties", io::to_json(suite)}},
                suite.pass() ? kExitOk : kExitFail);
}

inline int flow_cmd(const CommandRequest& req, std::ostream& out) {
    std::optional<VectorField> field;
    if (!req.inputs.empty()) {
        field.emplace(load(req, 0));
    } else if (req.mu) {
        Rational mu;
        try {
            mu = parse_rational(*req.mu);
        } catch (const std::invalid_argument& e) {
            throw io::ParseError(std::string{"--mu: "} + e.what());
        }
        field.emplace(embedding_field(req.m, mu, req.order));
    } else {
        throw std::invalid_argument("flow needs a vector field file or --mu (with --m) for the embedding field");
    }
    const auto flow = flow_coefficients(*field, req.order);
    auto j = io::to_json(flow);
    if (req.time) {
        const auto t = time_arg(req, "1");
        j["time"] = to_string(t);
        j["time_t_map"] = io::to_json(time_t_map(flow, t));
    }
    int code = kExitOk;
    if (req.prime) {
        const auto p = prime_arg(req);
        const auto rescaling = integral_rescaling(flow.field, p);
        Json cert;
        if (rescaling.exponent == 0) {
            const auto report = flow_integrality_check(flow, p);
            cert = io::to_json(report);
            if (!report.pass()) code = kExitFail;
        } else {
            // Certify the conjugate flow x -> x/r, T~ = (1/r)·T(r x).
            const auto rescaled_flow = flow_coefficients(rescaling.rescaled, req.order);
            const auto report = flow_integrality_check(rescaled_flow, p);
            cert = io::to_json(report);
            cert["rescaling"] = Json{{"r", to_string(rescaling.r)},
                                     {"exponent", rescaling.exponent},
                                     {"rescaled_field", io::to_json(rescaling.rescaled.series())}};
            if (!report.pass()) code = kExitFail;
        }
        j["integrality"] = cert;
    }
    return emit(out, j, code);
}

inline int root_cmd(const CommandRequest& req, std::ostream& out) {
    const auto f = load(req, 0);
    return emit(out, Json{{"root_index", req.root_index}, {"root", io::to_json(nth_root(f, req.root_index))}}, kExitOk);
}

inline int centralizer_cmd(const CommandRequest& req, std::ostream& out) {
    const auto f = load(req, 0);
    const auto t = time_arg(req, "1");
    return emit(out, Json{{"time", to_string(t)}, {"element", io::to_json(centralizer_element(f, t))}}, kExitOk);
}

inline int commute_cmd(const CommandRequest& req, std::ostream& out) {
    const auto cmp = check_commute(load(req, 0), load(req, 1));
    return emit(out, io::to_json(cmp), cmp.pass() ? kExitOk : kExitFail);
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Normal forms, certificates, flows and roots of germs tangent to the identity"};
    app.require_subcommand(1);
    CommandRequest req;

    auto order_opt = [&](CLI::App* sub) {
        sub->add_option("--order", req.order, "truncation order N")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    };
    auto prime_opt = [&](CLI::App* sub) { sub->add_option("--prime", req.prime, "prime p"); };
    auto files = [&](CLI::App* sub, std::size_t count, bool required = true) {
        auto* opt = sub->add_option("inputs", req.inputs, "series JSON file(s)")->expected(static_cast<int>(count));
        if (required) opt->required();
    };

    auto* classify = app.add_subcommand("classify", "invariants (m, mu) and conjugator H");
    files(classify, 1);
    order_opt(classify);

    auto* conjugacy = app.add_subcommand("conjugacy", "decide conjugacy of two germs");
    files(conjugacy, 2);
    order_opt(conjugacy);

    auto* cert_int = app.add_subcommand("certify-integral", "(n-m)! c_n and (n-m)! A_n are p-integral");
    files(cert_int, 1);
    order_opt(cert_int);
    prime_opt(cert_int);

    auto* cert_gen = app.add_subcommand("certify-general", "(n-m)! q^sigma(n) c_n and A_n are p-integral");
    files(cert_gen, 1);
    order_opt(cert_gen);
    prime_opt(cert_gen);
    cert_gen->add_option("--q-exponent", req.q_exponent, "k with q = p^k (default: smallest admissible)");

    auto* sigma_table = app.add_subcommand("sigma-table", "table of epsilon_m, sigma_m and their properties");
    sigma_table->add_option("--m", req.m, "order of tangency")->required();
    sigma_table->add_option("--n-max", req.n_max, "largest n");
    sigma_table->add_option("--weight-max", req.weight_max, "largest index tuple weight");

    auto* flow = app.add_subcommand("flow", "flow coefficients a_n(t) of a vector field");
    files(flow, 1, false);
    order_opt(flow);
    prime_opt(flow);
    flow->add_option("--time", req.time, "also evaluate the time-t map");
    flow->add_option("--m", req.m, "embedding field order of tangency");
    flow->add_option("--mu", req.mu, "embedding field for invariant mu (no input file)");

    auto* root = app.add_subcommand("root", "compositional n-th root");
    files(root, 1);
    order_opt(root);
    root->add_option("--root-index,--n", req.root_index, "n")->check(CLI::PositiveNumber);

    auto* centralizer = app.add_subcommand("centralizer", "element h^-1 o T^t o h of the centralizer");
    files(centralizer, 1);
    order_opt(centralizer);
    centralizer->add_option("--time", req.time, "flow time t (rational)");

    auto* commute = app.add_subcommand("commute", "check f o g = g o f");
    files(commute, 2);
    order_opt(commute);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (classify->parsed()) return detail::classify_cmd(req, out);
        if (conjugacy->parsed()) return detail::conjugacy_cmd(req, out);
        if (cert_int->parsed()) return detail::certify_integral_cmd(req, out);
        if (cert_gen->parsed()) return detail::certify_general_cmd(req, out);
        if (sigma_table->parsed()) return detail::sigma_table_cmd(req, out);
        if (flow->parsed()) return detail::flow_cmd(req, out);
        if (root->parsed()) return detail::root_cmd(req, out);
        if (centralizer->parsed()) return detail::centralizer_cmd(req, out);
        if (commute->parsed()) return detail::commute_cmd(req, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return detail::emit(out, io::Json{{"error", e.what()}}, kExitError);
    }
    return kExitError;
}

}  // namespace parabolic::cli
