#include "lidonor/pulses.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>

#include "lidonor/errors.hpp"
#include "lidonor/units.hpp"

namespace lidonor {

using std::numbers::pi;

std::string pulse_kind_name(PulseKind k) {
    switch (k) {
        case PulseKind::dc_stress: return "dc_stress";
        case PulseKind::ac_stress: return "ac_stress";
        case PulseKind::ramp_epsilon: return "ramp_epsilon";
    }
    throw ValidationError("unknown pulse kind");
}

PulseKind pulse_kind_from_name(const std::string& name) {
    if (name == "dc_stress") return PulseKind::dc_stress;
    if (name == "ac_stress") return PulseKind::ac_stress;
    if (name == "ramp_epsilon") return PulseKind::ramp_epsilon;
    if (name == "stark")
        throw ConfigError("pulse kind 'stark' is reserved but unsupported");
    throw ConfigError("unknown pulse kind '" + name + "'");
}

namespace {

void validate_pulse(const Pulse& p, std::size_t idx) {
    const std::string tag = "pulse " + std::to_string(idx) + ": ";
    if (!(p.duration > 0.0)) throw ValidationError(tag + "duration must be > 0");
    if (p.target < 0) throw ValidationError(tag + "target must be >= 0");
    if (p.kind == PulseKind::ac_stress && !(p.carrier > 0.0))
        throw ValidationError(tag + "ac carrier must be > 0");
    if (p.kind == PulseKind::ramp_epsilon &&
        !(p.ramp_to >= 0.0 && p.ramp_to < 3.0))
        throw ValidationError(tag + "ramp_to outside the valid epsilon range");
}

}  // namespace

void validate_schedule(const PulseSchedule& s) {
    for (std::size_t i = 0; i < s.pulses.size(); ++i)
        validate_pulse(s.pulses[i], i);
    for (std::size_t i = 1; i < s.pulses.size(); ++i)
        if (s.pulses[i].t_start < s.pulses[i - 1].t_start)
            throw ValidationError("pulses not sorted by t_start (pulse " +
                                  std::to_string(i) + ")");
    for (std::size_t i = 0; i < s.pulses.size(); ++i)
        for (std::size_t j = i + 1; j < s.pulses.size(); ++j) {
            const Pulse& a = s.pulses[i];
            const Pulse& b = s.pulses[j];
            if (a.target != b.target || a.kind != b.kind) continue;
            if (b.t_start < a.t_start + a.duration &&
                a.t_start < b.t_start + b.duration)
                throw ValidationError(
                    "overlapping pulses " + std::to_string(i) + " and " +
                    std::to_string(j) + " on target " +
                    std::to_string(a.target));
        }
    if (s.total_time < 0.0)
        throw ValidationError("total_time must be >= 0");
    for (const Pulse& p : s.pulses)
        if (p.t_start + p.duration > s.total_time * (1.0 + 1e-12))
            throw ValidationError("pulse extends past total_time");
}

double rabi_frequency_x(double amplitude, double omega10,
                        const MaterialParams& p) {
    if (!(amplitude > 0.0)) throw ValidationError("amplitude must be > 0");
    const DerivedParams d = derive(p);
    return 128.0 * amplitude * omega10 * p.s11 * (p.xi_u + p.xi_d) * d.kappa0 *
           p.a_par * p.a_par / (p.u_l * std::sqrt(6.0) * units::hbar);
}

Pulse phase_gate_pulse(double delta_omega, double tau_dc, int target,
                       double epsilon0, const MaterialParams& p,
                       double t_start) {
    if (!(tau_dc > 0.0)) throw ValidationError("tau_dc must be > 0");
    const double delta_eps = delta_omega * units::hbar / p.delta_c;
    const double eps1 = epsilon0 + delta_eps;
    if (!(eps1 >= 0.0 && eps1 < 3.0))
        throw ValidationError("requested phase shift leaves the linear regime");
    const double f0 = stress_from_epsilon(epsilon0, p);
    const double f1 = stress_from_epsilon(eps1, p);
    Pulse pulse;
    pulse.kind = PulseKind::dc_stress;
    pulse.target = target;
    pulse.t_start = t_start;
    pulse.duration = tau_dc;
    pulse.amplitude = f1 - f0;
    return pulse;
}

Pulse x_rotation_pulse(double angle, double amplitude,
                       const LevelStructure& level, int target,
                       const MaterialParams& p, double t_start) {
    if (!(angle > 0.0 && angle <= 4.0 * pi))
        throw ValidationError("rotation angle must be in (0, 4pi]");
    const double omega_x = rabi_frequency_x(amplitude, level.omega10, p);
    const double tau1 = angle / (2.0 * omega_x);
    if (tau1 < 2.0 * pi / level.omega10)
        throw ValidationError(
            "pulse shorter than one carrier period (RWA breakdown)");
    Pulse pulse;
    pulse.kind = PulseKind::ac_stress;
    pulse.target = target;
    pulse.t_start = t_start;
    pulse.duration = tau1;
    pulse.amplitude = amplitude;
    pulse.carrier = level.omega10;
    return pulse;
}

std::vector<std::vector<int>> refocusing_signs(int n, int pair_first) {
    if (n < 2) throw ValidationError("need at least two qubits");
    if (pair_first < 0 || pair_first + 1 >= n)
        throw ValidationError("selected pair must be adjacent and in range");
    // Staggered dyadic echo patterns: the k-th refocused qubit flips at the
    // odd multiples of tau2/2^(k+1).  Patterns are zero-mean and mutually
    // orthogonal, so every coupling not inside the selected pair averages
    // out, and no two qubits ever flip at the same instant, so pulses are
    // never simultaneous.
    const int m = n - 2;
    const int slots = 1 << (m + 1);
    std::vector<std::vector<int>> signs(n, std::vector<int>(slots, 1));
    int k = 1;
    for (int q = 0; q < n; ++q) {
        if (q == pair_first || q == pair_first + 1) continue;
        const int half_period = slots >> k;
        for (int i = 0; i < slots; ++i)
            signs[q][i] =
                (((i + half_period / 2) / half_period) % 2 == 0) ? 1 : -1;
        ++k;
    }
    return signs;
}

PulseSchedule refocusing_sequence(int n, int pair_first, double tau2,
                                  double tau1, double amplitude,
                                  const LevelStructure& level,
                                  const MaterialParams& p) {
    if (!(tau2 > 0.0)) throw ValidationError("tau2 must be > 0");
    const auto signs = refocusing_signs(n, pair_first);
    const int slots = static_cast<int>(signs[0].size());
    const double slot_w = tau2 / slots;
    const double omega_x = rabi_frequency_x(amplitude, level.omega10, p);
    const double tau_pi = pi / (2.0 * omega_x);
    // composite pi flip with first- and second-order off-resonance error
    // cancellation: the z-type couplings that keep running during the pulse
    // window act as a static detuning within each partner-spin sector, and
    // this segment train (numerically optimized; net rotation X(pi), total
    // angle 4.41 pi) leaves a residual cubic in (J tau1)
    static const double comp_segments[6][2] = {
        {1.8087317797752427, 2.6304819343652621},
        {0.26648185135935692, 0.44473572223354685},
        {1.5066916209923695, -2.2666162099142255},
        {4.5414854991718556, -2.4352307889239206},
        {4.4642113499224001, 0.63535768049399666},
        {1.2716075045558088, 2.27354779388717},
    };
    double comp_total = 0.0;
    for (const auto& seg : comp_segments) comp_total += seg[0];
    const double width = comp_total / (2.0 * omega_x);
    if (!(tau1 > 0.0) ||
        (comp_total / pi) * std::max(tau1, tau_pi) > slot_w / 2.0)
        throw ValidationError(
            "pulse window too wide: need 4.42 tau1 <= tau2/(2 slots)");

    PulseSchedule sched;
    for (int q = 0; q < n; ++q)
        for (int i = 1; i < slots; ++i)
            if (signs[q][i] != signs[q][i - 1]) {
                double t = i * slot_w - width / 2.0;
                for (const auto& seg : comp_segments) {
                    Pulse pu = x_rotation_pulse(seg[0], amplitude, level, q,
                                                p, t);
                    pu.phase = seg[1];
                    t += pu.duration;
                    sched.pulses.push_back(pu);
                }
            }
    std::sort(sched.pulses.begin(), sched.pulses.end(),
              [](const Pulse& a, const Pulse& b) {
                  return a.t_start < b.t_start ||
                         (a.t_start == b.t_start && a.target < b.target);
              });
    sched.total_time = tau2;
    validate_schedule(sched);
    return sched;
}

PulseSchedule ret_gate_schedule(int donor_a, int donor_b, double angle,
                                double epsilon0, double epsilon2,
                                double ramp_time, double g21,
                                const MaterialParams& p) {
    if (donor_a == donor_b) throw ValidationError("pair must be distinct");
    if (!(epsilon2 < epsilon0))
        throw ValidationError("epsilon2 must be below epsilon0");
    if (!(angle >= 0.0)) throw ValidationError("angle must be >= 0");
    const LevelStructure ls2 = manifold(epsilon2, p);
    if (!(ramp_time * ls2.omega21 >= 50.0))
        throw ValidationError("ramp_time too short for adiabaticity");
    const double dwell = (angle > 0.0) ? angle / std::abs(g21) : 0.0;

    PulseSchedule sched;
    auto ramp = [&](int target, double t0, double to) {
        Pulse r;
        r.kind = PulseKind::ramp_epsilon;
        r.target = target;
        r.t_start = t0;
        r.duration = ramp_time;
        r.ramp_to = to;
        return r;
    };
    sched.pulses.push_back(ramp(donor_a, 0.0, epsilon2));
    sched.pulses.push_back(ramp(donor_b, 0.0, epsilon2));
    sched.pulses.push_back(ramp(donor_a, ramp_time + dwell, epsilon0));
    sched.pulses.push_back(ramp(donor_b, ramp_time + dwell, epsilon0));
    sched.total_time = 2.0 * ramp_time + dwell;
    validate_schedule(sched);
    return sched;
}

namespace {

double require_number(const nlohmann::json& obj, const std::string& key) {
    if (!obj.contains(key))
        throw ConfigError("schedule: missing field '" + key + "'");
    if (!obj[key].is_number())
        throw ConfigError("schedule: field '" + key + "' must be a number");
    return obj[key].get<double>();
}

}  // namespace

ScheduleFile schedule_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("schedule: root must be an object");
    ScheduleFile file;
    if (doc.contains("register")) {
        const auto& reg = doc["register"];
        file.reg.n = static_cast<int>(require_number(reg, "n"));
        file.reg.spacing_nm = require_number(reg, "spacing_nm");
        file.reg.epsilon0 = require_number(reg, "epsilon0");
        if (file.reg.n < 1) throw ConfigError("schedule: register.n must be >= 1");
        if (!(file.reg.spacing_nm > 0.0))
            throw ConfigError("schedule: register.spacing_nm must be > 0");
    }
    if (!doc.contains("pulses") || !doc["pulses"].is_array())
        throw ConfigError("schedule: 'pulses' array required");
    for (const auto& jp : doc["pulses"]) {
        Pulse p;
        if (!jp.contains("kind") || !jp["kind"].is_string())
            throw ConfigError("schedule: pulse missing string field 'kind'");
        p.kind = pulse_kind_from_name(jp["kind"].get<std::string>());
        p.target = static_cast<int>(require_number(jp, "target"));
        p.t_start = units::ns_to_s(require_number(jp, "t_start_ns"));
        p.duration = units::ns_to_s(require_number(jp, "duration_ns"));
        if (p.kind != PulseKind::ramp_epsilon)
            p.amplitude = require_number(jp, "amplitude_dyn_cm2");
        if (p.kind == PulseKind::ac_stress) {
            p.carrier = require_number(jp, "carrier_rad_per_ns") / units::s_per_ns;
            if (jp.contains("phase_rad"))
                p.phase = require_number(jp, "phase_rad");
        }
        if (p.kind == PulseKind::ramp_epsilon)
            p.ramp_to = require_number(jp, "ramp_to");
        file.schedule.pulses.push_back(p);
    }
    double t_end = 0.0;
    for (const Pulse& p : file.schedule.pulses)
        t_end = std::max(t_end, p.t_start + p.duration);
    file.schedule.total_time =
        doc.contains("total_time_ns")
            ? units::ns_to_s(require_number(doc, "total_time_ns"))
            : t_end;
    validate_schedule(file.schedule);
    return file;
}

nlohmann::json schedule_to_json(const ScheduleFile& file) {
    nlohmann::json doc;
    doc["register"] = {{"n", file.reg.n},
                       {"spacing_nm", file.reg.spacing_nm},
                       {"epsilon0", file.reg.epsilon0}};
    doc["total_time_ns"] = units::s_to_ns(file.schedule.total_time);
    doc["pulses"] = nlohmann::json::array();
    for (const Pulse& p : file.schedule.pulses) {
        nlohmann::json jp;
        jp["kind"] = pulse_kind_name(p.kind);
        jp["target"] = p.target;
        jp["t_start_ns"] = units::s_to_ns(p.t_start);
        jp["duration_ns"] = units::s_to_ns(p.duration);
        if (p.kind != PulseKind::ramp_epsilon)
            jp["amplitude_dyn_cm2"] = p.amplitude;
        if (p.kind == PulseKind::ac_stress) {
            jp["carrier_rad_per_ns"] = p.carrier * units::s_per_ns;
            jp["phase_rad"] = p.phase;
        }
        if (p.kind == PulseKind::ramp_epsilon) jp["ramp_to"] = p.ramp_to;
        doc["pulses"].push_back(jp);
    }
    return doc;
}

ScheduleFile load_schedule(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open schedule file: " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("schedule JSON parse error: " + std::string(e.what()));
    }
    return schedule_from_json(doc);
}

}  // namespace lidonor
