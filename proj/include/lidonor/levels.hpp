#pragma once

#include <array>
#include <vector>

#include "lidonor/materials.hpp"

namespace lidonor {

enum class Parity { even, odd };

enum class LevelLabel { ground, singlet, triplet_even, triplet_odd_a, triplet_odd_b };

// Valley ordering for the alpha coefficients: (+x, -x, +y, -y, +z, -z).
struct ValleyState {
    LevelLabel label;
    std::array<double, 6> alpha;
    Parity parity;
    double energy;  // erg, relative to the ground state
};

// Stress-split 1s manifold of the Li donor under <001> compression.
struct LevelStructure {
    double epsilon;
    double a_coef;  // alpha amplitude on the z valleys of |1>
    double b_coef;  // alpha amplitude on the x,y valleys of |1>
    std::vector<ValleyState> states;  // ground, singlet, triplet_even, odd pair
    double omega10;  // rad/s
    double omega21;  // rad/s
};

// epsilon = Xi_u (s11 - s12) F_z / (3 delta_c), F_z in dyn/cm^2.
double epsilon_from_stress(double f_z, const MaterialParams& p);
double stress_from_epsilon(double epsilon, const MaterialParams& p);

// Valid for 0 <= epsilon < 3 (linear small-stress coefficients).
LevelStructure manifold(double epsilon, const MaterialParams& p);

// Classifies alpha under valley inversion j -> -j; throws on mixed parity.
Parity parity_of(const ValleyState& s);

const ValleyState& ground_state(const LevelStructure& ls);
const ValleyState& singlet_state(const LevelStructure& ls);
const ValleyState& triplet_even_state(const LevelStructure& ls);

}  // namespace lidonor
