#pragma once

#include <cmath>

namespace mnls {

/// Power nonlinearity g(r) = r^p acting as g(|u|^2) u; mu = +1 defocusing,
/// -1 focusing (0 switches the nonlinearity off). G is the pressure-type
/// antiderivative with G'(r) = r g'(r); F_pot' = g.
struct NonlinearitySpec {
    double mu = 1.0;
    double p = 1.0;

    double g(double r) const { return p == 1.0 ? r : std::pow(r, p); }
    double gprime(double r) const { return p == 1.0 ? 1.0 : p * std::pow(r, p - 1.0); }
    double G(double r) const { return p / (p + 1.0) * (p == 1.0 ? r * r : std::pow(r, p + 1.0)); }
    double F_pot(double r) const { return (p == 1.0 ? r * r : std::pow(r, p + 1.0)) / (p + 1.0); }
};

}  // namespace mnls
