#pragma once

#include <string>
#include <vector>

#include "lidonor/levels.hpp"
#include "lidonor/materials.hpp"

#include "json.hpp"

namespace lidonor {

enum class PulseKind { dc_stress, ac_stress, ramp_epsilon };

std::string pulse_kind_name(PulseKind k);
PulseKind pulse_kind_from_name(const std::string& name);

struct Pulse {
    PulseKind kind;
    int target = 0;
    double t_start = 0.0;   // s
    double duration = 0.0;  // s
    double amplitude = 0.0; // dyn/cm^2 (dc_stress, ac_stress)
    double carrier = 0.0;   // rad/s (ac_stress)
    double phase = 0.0;     // rad (ac_stress)
    double ramp_to = 0.0;   // target epsilon (ramp_epsilon)
};

struct PulseSchedule {
    std::vector<Pulse> pulses;  // time-ordered
    double total_time = 0.0;    // s
};

// Checks pulse-level invariants, ordering and same-target same-kind
// overlaps; throws ValidationError.
void validate_schedule(const PulseSchedule& s);

// Resonant ac drive amplitude, Omega_x =
//   128 A omega10 s11 (Xi_u + Xi_d) kappa0 a_par^2 / (u_l sqrt(6) hbar).
// The closed-form energy expression is divided by hbar to give an
// angular frequency.
double rabi_frequency_x(double amplitude, double omega10,
                        const MaterialParams& p);

// dc stress increment realizing exp(i tau_dc dOmega S_z) on the target;
// the stress amplitude follows from the linear epsilon(F_z) relation.
Pulse phase_gate_pulse(double delta_omega, double tau_dc, int target,
                       double epsilon0, const MaterialParams& p,
                       double t_start = 0.0);

// Resonant X(angle) pulse: duration tau1 = angle / (2 Omega_x), carrier
// at omega10. Rejects durations below one carrier period (RWA breakdown).
Pulse x_rotation_pulse(double angle, double amplitude,
                       const LevelStructure& level, int target,
                       const MaterialParams& p, double t_start = 0.0);

// Pi-pulse interleaving over a 1D chain that cancels the always-on ZZ
// phase for every pair except the selected adjacent one over the window
// tau2. The selected pair stays idle; the k-th remaining qubit flips at
// the odd multiples of tau2/2^(k+1) (staggered dyadic echo trains), so
// the sign functions are zero-mean, mutually orthogonal, and never flip
// simultaneously. Each flip is a composite pulse that cancels the first-
// and second-order errors from the couplings running during the pulse
// window, so the gate error scales as (tau1/tau2)^6; even flip counts
// return every qubit frame to identity by themselves.
PulseSchedule refocusing_sequence(int n, int pair_first, double tau2,
                                  double tau1, double amplitude,
                                  const LevelStructure& level,
                                  const MaterialParams& p);

// Sign pattern used by refocusing_sequence, exposed for the delta-pulse
// verification: slot values in {-1, +1} for each qubit.
std::vector<std::vector<int>> refocusing_signs(int n, int pair_first);

// Adiabatic RET gate: ramp both donors from epsilon0 to epsilon2, dwell
// at resonance for angle/g21, ramp back. g21 is supplied by the caller
// (closed form or oracle).
PulseSchedule ret_gate_schedule(int donor_a, int donor_b, double angle,
                                double epsilon0, double epsilon2,
                                double ramp_time, double g21,
                                const MaterialParams& p);

// Schedule file payload: register geometry plus the pulse list.
struct ScheduleHeader {
    int n = 1;
    double spacing_nm = 100.0;
    double epsilon0 = 0.2;
};

struct ScheduleFile {
    ScheduleHeader reg;
    PulseSchedule schedule;
};

// JSON document {register: {n, spacing_nm, epsilon0}, pulses: [...]}
// with times in ns, amplitudes in dyn/cm^2, carriers in rad/ns.
ScheduleFile schedule_from_json(const nlohmann::json& doc);
nlohmann::json schedule_to_json(const ScheduleFile& file);
ScheduleFile load_schedule(const std::string& path);

}  // namespace lidonor
