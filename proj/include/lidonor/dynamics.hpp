#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lidonor/coupling.hpp"
#include "lidonor/levels.hpp"
#include "lidonor/materials.hpp"
#include "lidonor/pulses.hpp"
#include "lidonor/rates.hpp"

namespace lidonor {

enum class RegisterMode { two_level, three_level };

struct RegisterSpec {
    int n = 1;
    std::vector<Vec3> positions;       // cm
    RegisterMode mode = RegisterMode::two_level;
    std::vector<double> epsilon;       // per-donor baseline
    double temperature = 0.0;          // K
};

struct DonorRates {
    double w10_down = 0.0;  // (n10+1) W10
    double w10_up = 0.0;    // n10 W10
    double w21_down = 0.0;  // (n21+1) W21, three-level only
    double w21_up = 0.0;    // n21 W21
    double dephase = 0.0;   // nu0 (T/T0)^11
};

struct PairCoupling {
    int i, j;
    CouplingSet c;  // closed-form values at the pair distance
};

// Dense register over n donors; Hamiltonian per unordered pair
//   (hbar/2) J S_iz S_jz + (hbar/2)(g10 S_i+ S_j- + h.c.)
// with S_z|1> = +1/2 |1>, plus the resonant |1,2> <-> |2,1> block at
// hbar g21/2 in three-level mode. Level |2> carries no ZZ coupling.
struct Register {
    RegisterSpec spec;
    MaterialParams params;
    int site_dim = 2;
    long dim = 2;
    std::vector<LevelStructure> levels;
    std::vector<DonorRates> rates;
    std::vector<PairCoupling> pairs;
};

Register build_register(const RegisterSpec& spec, const MaterialParams& p);

struct EvolveOptions {
    double dt = 0.0;            // s, fixed RK4 step
    bool lab_frame = false;     // keep the counter-rotating drive term
    bool with_dissipation = true;
    int sample_stride = 0;      // 0 = no trajectory
};

struct EvolutionResult {
    Eigen::MatrixXcd final_state;
    std::vector<double> sample_times;              // s
    std::vector<Eigen::MatrixXcd> trajectory;
    double leakage = 0.0;           // population on level 2 (three-level)
    double trace_deviation = 0.0;   // |tr(rho) - 1| before renormalization
};

// Fixed-step RK4 master-equation evolution in the frame rotating at each
// donor's baseline level energies; re-Hermitizes every step and enforces
// trace and positivity tolerances.
EvolutionResult evolve(const Register& reg, const PulseSchedule& schedule,
                       const Eigen::MatrixXcd& rho0,
                       const EvolveOptions& opt);

// Coherent propagator over the schedule window (no dissipation); used for
// fidelity scans where the register state space is small.
Eigen::MatrixXcd propagator(const Register& reg, const PulseSchedule& schedule,
                            double dt, bool lab_frame = false);

// Exact propagator by matrix exponentials when the rotating-frame
// Hamiltonian is constant between pulse edges (resonant rectangular
// pulses, dc segments); throws if the schedule is genuinely
// time-dependent inside an interval.
Eigen::MatrixXcd propagator_exact(const Register& reg,
                                  const PulseSchedule& schedule);

// Average gate fidelity of a realized unitary against the ideal one:
// (|tr(U_ideal^dag U)|^2 + d) / (d(d+1)).
double gate_fidelity_unitary(const Eigen::MatrixXcd& u,
                             const Eigen::MatrixXcd& u_ideal);

// <psi|rho|psi> for a pure target.
double state_fidelity(const Eigen::MatrixXcd& rho, const Eigen::VectorXcd& psi);

// Thermal fixed point of the undriven Lindbladian, per donor:
// populations [p0, p1] or [p0, p1, p2].
std::vector<std::vector<double>> steady_state_populations(const Register& reg);

// Product-basis helpers.
Eigen::VectorXcd basis_vector(const Register& reg,
                              const std::vector<int>& levels);
Eigen::MatrixXcd basis_density(const Register& reg,
                               const std::vector<int>& levels);

// Embeds a single-site operator at the given site.
Eigen::MatrixXcd site_operator(const Register& reg, int site,
                               const Eigen::MatrixXcd& local);

}  // namespace lidonor
