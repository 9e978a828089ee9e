#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "rational.hpp"

namespace parabolic {

/// comp_inverse on a series whose linear coefficient vanishes.
struct NotInvertible : std::domain_error {
    using std::domain_error::domain_error;
};

/// The germ equals x through the truncation order, so no order of tangency exists.
struct IdentityGerm : std::domain_error {
    explicit IdentityGerm(std::size_t order)
        : std::domain_error("germ is the identity through order " + std::to_string(order)), order(order) {}
    std::size_t order;
};

/// The leading coefficient a_m has no rational (m-1)-th root.
struct NeedsFieldExtension : std::domain_error {
    NeedsFieldExtension(std::size_t m, Rational leading)
        : std::domain_error("leading coefficient " + to_string(leading) + " at degree " + std::to_string(m) +
                            " has no rational " + std::to_string(m - 1) + "-th root"),
          m(m),
          leading(std::move(leading)) {}
    std::size_t m;
    Rational leading;
};

/// The truncation order is too small for the requested quantity.
struct PrecisionError : std::domain_error {
    PrecisionError(std::size_t required, std::size_t available, const std::string& what)
        : std::domain_error(what + " needs truncation order >= " + std::to_string(required) + ", have " +
                            std::to_string(available)),
          required(required),
          available(available) {}
    std::size_t required;
    std::size_t available;
};

/// A certificate's hypotheses do not hold for the given input.
struct InapplicableCertificate : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace parabolic
