#include "lidonor/levels.hpp"

#include <cmath>

#include "lidonor/errors.hpp"
#include "lidonor/units.hpp"

namespace lidonor {

double epsilon_from_stress(double f_z, const MaterialParams& p) {
    if (f_z < 0.0)
        throw ValidationError("F_z uses the compressive magnitude convention; "
                              "must be >= 0");
    return p.xi_u * (p.s11 - p.s12) * f_z / (3.0 * p.delta_c);
}

double stress_from_epsilon(double epsilon, const MaterialParams& p) {
    return 3.0 * p.delta_c * epsilon / (p.xi_u * (p.s11 - p.s12));
}

LevelStructure manifold(double epsilon, const MaterialParams& p) {
    if (!(epsilon >= 0.0 && epsilon < 3.0))
        throw ValidationError("epsilon outside [0, 3): linear stress "
                              "coefficients not valid");
    const double sqrt3 = std::sqrt(3.0);
    double a = (6.0 + epsilon) / (6.0 * sqrt3);
    double b = (3.0 - epsilon) / (6.0 * sqrt3);
    // The linear coefficients satisfy 2a^2+4b^2 = 1 only to O(eps^2);
    // renormalize so the state invariants hold exactly.
    const double norm = std::sqrt(2.0 * a * a + 4.0 * b * b);
    a /= norm;
    b /= norm;

    LevelStructure ls;
    ls.epsilon = epsilon;
    ls.a_coef = a;
    ls.b_coef = b;
    ls.omega10 = epsilon * p.delta_c / units::hbar;
    ls.omega21 = 2.0 * ls.omega10;

    const double s2 = 1.0 / std::sqrt(2.0);
    const double e10 = units::hbar * ls.omega10;
    const double e20 = units::hbar * (ls.omega10 + ls.omega21);

    ls.states = {
        {LevelLabel::ground, {0, 0, 0, 0, s2, -s2}, Parity::odd, 0.0},
        {LevelLabel::singlet, {b, b, b, b, a, a}, Parity::even, e10},
        {LevelLabel::triplet_even, {0.5, 0.5, -0.5, -0.5, 0, 0}, Parity::even,
         e20},
        // Odd combinations of the x and y valley pairs; bookkeeping only,
        // excluded from dynamics.
        {LevelLabel::triplet_odd_a, {s2, -s2, 0, 0, 0, 0}, Parity::odd, e20},
        {LevelLabel::triplet_odd_b, {0, 0, s2, -s2, 0, 0}, Parity::odd, e20},
    };
    return ls;
}

Parity parity_of(const ValleyState& s) {
    // Valley inversion swaps the (+j, -j) pairs: indices (0,1), (2,3), (4,5).
    bool even = true, odd = true;
    for (int pair = 0; pair < 3; ++pair) {
        const double plus = s.alpha[2 * pair];
        const double minus = s.alpha[2 * pair + 1];
        if (std::abs(plus - minus) > 1e-12) even = false;
        if (std::abs(plus + minus) > 1e-12) odd = false;
    }
    if (even == odd)
        throw ValidationError("alpha has no definite parity under valley "
                              "inversion");
    return even ? Parity::even : Parity::odd;
}

namespace {
const ValleyState& find_state(const LevelStructure& ls, LevelLabel lbl) {
    for (const auto& s : ls.states)
        if (s.label == lbl) return s;
    throw ValidationError("level not present in manifold");
}
}  // namespace

const ValleyState& ground_state(const LevelStructure& ls) {
    return find_state(ls, LevelLabel::ground);
}
const ValleyState& singlet_state(const LevelStructure& ls) {
    return find_state(ls, LevelLabel::singlet);
}
const ValleyState& triplet_even_state(const LevelStructure& ls) {
    return find_state(ls, LevelLabel::triplet_even);
}

}  // namespace lidonor
