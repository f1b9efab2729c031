#include "lidonor/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>

#include "lidonor/errors.hpp"
#include "lidonor/units.hpp"

namespace lidonor {

using std::numbers::pi;
using Cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

namespace {

constexpr Cd I{0.0, 1.0};

// level energies relative to the ground state, in units of epsilon*delta_c
constexpr double level_weight[3] = {0.0, 1.0, 3.0};

Mat local_ket_bra(int dim, int ket, int bra) {
    Mat m = Mat::Zero(dim, dim);
    m(ket, bra) = 1.0;
    return m;
}

}  // namespace

Register build_register(const RegisterSpec& spec, const MaterialParams& p) {
    validate(p);
    if (spec.n < 1) throw ValidationError("register needs at least one donor");
    const int max_n = (spec.mode == RegisterMode::three_level) ? 5 : 8;
    if (spec.n > max_n)
        throw ValidationError("register too large for dense evolution (max " +
                              std::to_string(max_n) + " in this mode)");
    if (static_cast<int>(spec.positions.size()) != spec.n)
        throw ValidationError("positions list must have n entries");
    if (static_cast<int>(spec.epsilon.size()) != spec.n)
        throw ValidationError("epsilon list must have n entries");
    if (spec.temperature < 0.0)
        throw ValidationError("temperature must be >= 0");
    for (int i = 0; i < spec.n; ++i)
        for (int j = i + 1; j < spec.n; ++j) {
            const Vec3 d = {spec.positions[i][0] - spec.positions[j][0],
                            spec.positions[i][1] - spec.positions[j][1],
                            spec.positions[i][2] - spec.positions[j][2]};
            if (norm(d) <= units::nm_to_cm(10.0))
                throw ValidationError(
                    "donor pair closer than 10 nm (effective-Hamiltonian "
                    "validity)");
        }

    Register reg;
    reg.spec = spec;
    reg.params = p;
    reg.site_dim = (spec.mode == RegisterMode::three_level) ? 3 : 2;
    reg.dim = 1;
    for (int i = 0; i < spec.n; ++i) reg.dim *= reg.site_dim;

    std::map<double, double> w21_cache;
    auto w21_of = [&](double eps) {
        auto it = w21_cache.find(eps);
        if (it != w21_cache.end()) return it->second;
        const double w = decay_rate_oracle_21(eps, p).total;
        w21_cache[eps] = w;
        return w;
    };

    for (int i = 0; i < spec.n; ++i) {
        const LevelStructure ls = manifold(spec.epsilon[i], p);
        DonorRates r;
        const double w10 = decay_rate_closed_form_10(spec.epsilon[i], p).total;
        const double n10 = planck_n(ls.omega10, spec.temperature);
        r.w10_down = (n10 + 1.0) * w10;
        r.w10_up = n10 * w10;
        if (spec.mode == RegisterMode::three_level) {
            const double w21 = w21_of(spec.epsilon[i]);
            const double n21 = planck_n(ls.omega21, spec.temperature);
            r.w21_down = (n21 + 1.0) * w21;
            r.w21_up = n21 * w21;
        }
        r.dephase = dephasing_rate(spec.temperature, p);
        reg.levels.push_back(ls);
        reg.rates.push_back(r);
    }

    for (int i = 0; i < spec.n; ++i)
        for (int j = i + 1; j < spec.n; ++j) {
            const Vec3 d = {spec.positions[i][0] - spec.positions[j][0],
                            spec.positions[i][1] - spec.positions[j][1],
                            spec.positions[i][2] - spec.positions[j][2]};
            const double r = norm(d);
            const double eps =
                0.5 * (spec.epsilon[i] + spec.epsilon[j]);
            PairCoupling pc;
            pc.i = i;
            pc.j = j;
            pc.c.j_ising = ising_coupling(r, p);
            pc.c.g10 = ret_coupling_10(r, eps, p);
            pc.c.g21 = (spec.mode == RegisterMode::three_level)
                           ? ret_coupling_21(r, eps, p, w21_of(eps))
                           : 0.0;
            reg.pairs.push_back(pc);
        }
    return reg;
}

Eigen::MatrixXcd site_operator(const Register& reg, int site,
                               const Eigen::MatrixXcd& local) {
    if (site < 0 || site >= reg.spec.n)
        throw ValidationError("site index out of range");
    Mat out = Mat::Identity(1, 1);
    for (int s = 0; s < reg.spec.n; ++s) {
        const Mat& factor =
            (s == site) ? local
                        : Mat(Mat::Identity(reg.site_dim, reg.site_dim));
        Mat next(out.rows() * factor.rows(), out.cols() * factor.cols());
        for (long a = 0; a < out.rows(); ++a)
            for (long b = 0; b < out.cols(); ++b)
                next.block(a * factor.rows(), b * factor.cols(), factor.rows(),
                           factor.cols()) = out(a, b) * factor;
        out = next;
    }
    return out;
}

Eigen::VectorXcd basis_vector(const Register& reg,
                              const std::vector<int>& levels) {
    if (static_cast<int>(levels.size()) != reg.spec.n)
        throw ValidationError("basis label needs one level per donor");
    long idx = 0;
    for (int l : levels) {
        if (l < 0 || l >= reg.site_dim)
            throw ValidationError("basis level out of range");
        idx = idx * reg.site_dim + l;
    }
    Vec v = Vec::Zero(reg.dim);
    v(idx) = 1.0;
    return v;
}

Eigen::MatrixXcd basis_density(const Register& reg,
                               const std::vector<int>& levels) {
    const Vec v = basis_vector(reg, levels);
    return v * v.adjoint();
}

namespace {

// Hamiltonian assembled as H0 + sum_k [c_k(t) A_k + h.c. if flagged].
struct Term {
    Mat op;
    bool add_hc;
    std::function<Cd(double)> coef;  // erg
};

struct Generator {
    Mat h0;                      // erg
    std::vector<Term> terms;
    std::vector<Mat> lindblad;   // sqrt(rate) * jump op
    std::vector<Mat> ldl;        // L^dag L, precomputed
    std::vector<double> breaks;  // integration breakpoints, s
    double omega_fast = 0.0;     // rad/s, fastest coefficient scale
    double rate_max = 0.0;       // 1/s
};

// Per-donor epsilon(t) from the ramp pulses; piecewise linear.
struct EpsTimeline {
    struct Seg {
        double t0, t1, e0, e1;
    };
    double baseline;
    std::vector<Seg> segs;  // time-ordered ramps

    double at(double t) const {
        double e = baseline;
        for (const Seg& s : segs) {
            if (t < s.t0) break;
            e = (t >= s.t1) ? s.e1 : s.e0 + (s.e1 - s.e0) * (t - s.t0) /
                                              (s.t1 - s.t0);
        }
        return e;
    }
};

Generator build_generator(const Register& reg, const PulseSchedule& schedule,
                          bool lab_frame, bool with_dissipation) {
    validate_schedule(schedule);
    const MaterialParams& p = reg.params;
    const int d = reg.site_dim;
    Generator gen;
    gen.h0 = Mat::Zero(reg.dim, reg.dim);

    Mat sz = Mat::Zero(d, d);
    sz(0, 0) = -0.5;
    sz(1, 1) = 0.5;  // level 2 carries no ZZ coupling

    for (const PairCoupling& pc : reg.pairs) {
        const double hbar = units::hbar;
        gen.h0 += (hbar * pc.c.j_ising / 2.0) *
                  (site_operator(reg, pc.i, sz) * site_operator(reg, pc.j, sz));
        gen.rate_max = std::max(gen.rate_max, std::abs(pc.c.j_ising));

        // flip-flop blocks; a baseline frequency mismatch shows up as a
        // beat phase in the rotating frame
        auto add_exchange = [&](int ka, int kb, double g, double beat) {
            if (g == 0.0) return;
            const Mat raise = local_ket_bra(d, kb, ka);  // |kb><ka|
            const Mat lower = local_ket_bra(d, ka, kb);
            const Mat op = site_operator(reg, pc.i, raise) *
                           site_operator(reg, pc.j, lower);
            const double amp = units::hbar * g / 2.0;
            if (std::abs(beat) < 1e-9 * std::abs(g)) {
                gen.h0 += amp * op + amp * Mat(op.adjoint());
            } else {
                gen.terms.push_back(
                    {op, true, [amp, beat](double t) {
                         return amp * std::exp(I * beat * t);
                     }});
                gen.omega_fast = std::max(gen.omega_fast, std::abs(beat));
            }
            gen.rate_max = std::max(gen.rate_max, std::abs(g));
        };
        add_exchange(0, 1, pc.c.g10,
                     reg.levels[pc.i].omega10 - reg.levels[pc.j].omega10);
        if (d == 3)
            add_exchange(1, 2, pc.c.g21,
                         reg.levels[pc.i].omega21 - reg.levels[pc.j].omega21);
    }

    // level-energy weights for diagonal (stress) modulation
    Mat wdiag = Mat::Zero(d, d);
    for (int l = 0; l < d; ++l) wdiag(l, l) = level_weight[l];

    std::vector<EpsTimeline> timelines(reg.spec.n);
    for (int i = 0; i < reg.spec.n; ++i)
        timelines[i].baseline = reg.spec.epsilon[i];

    gen.breaks.push_back(0.0);
    gen.breaks.push_back(schedule.total_time);

    for (const Pulse& pu : schedule.pulses) {
        if (pu.target >= reg.spec.n)
            throw ValidationError("pulse targets a donor outside the register");
        gen.breaks.push_back(pu.t_start);
        gen.breaks.push_back(pu.t_start + pu.duration);
        const double t0 = pu.t_start, t1 = pu.t_start + pu.duration;
        switch (pu.kind) {
            case PulseKind::dc_stress: {
                const double de = epsilon_from_stress(pu.amplitude, p);
                const double domega = de * p.delta_c / units::hbar;
                const Mat op = site_operator(reg, pu.target, wdiag);
                const double amp = de * p.delta_c;
                gen.terms.push_back({op, false, [amp, t0, t1](double t) {
                                         return (t >= t0 && t < t1)
                                                    ? Cd(amp)
                                                    : Cd(0.0);
                                     }});
                gen.omega_fast =
                    std::max(gen.omega_fast, std::abs(domega));
                break;
            }
            case PulseKind::ac_stress: {
                const double omega10 = reg.levels[pu.target].omega10;
                const double omega_x =
                    rabi_frequency_x(std::abs(pu.amplitude), omega10, p);
                const double det = pu.carrier - omega10;
                const Mat op =
                    site_operator(reg, pu.target, local_ket_bra(d, 1, 0));
                // a pulse of duration angle/(2 Omega_x) realizes a Bloch
                // rotation by angle, so the frame Rabi rate is 2 Omega_x
                const double amp = units::hbar * omega_x;
                const double phase = pu.phase;
                gen.terms.push_back(
                    {op, true, [amp, det, phase, t0, t1](double t) {
                         if (t < t0 || t >= t1) return Cd(0.0);
                         return amp * std::exp(-I * (det * t + phase));
                     }});
                gen.omega_fast = std::max(
                    {gen.omega_fast, std::abs(det), omega_x});
                if (lab_frame) {
                    const double sum = pu.carrier + omega10;
                    gen.terms.push_back(
                        {op, true, [amp, sum, phase, t0, t1](double t) {
                             if (t < t0 || t >= t1) return Cd(0.0);
                             return amp * std::exp(I * (sum * t + phase));
                         }});
                    gen.omega_fast = std::max(gen.omega_fast, sum);
                }
                break;
            }
            case PulseKind::ramp_epsilon: {
                EpsTimeline& tl = timelines[pu.target];
                const double e_from =
                    tl.segs.empty() ? tl.baseline : tl.segs.back().e1;
                if (!tl.segs.empty() && t0 < tl.segs.back().t1)
                    throw ValidationError("overlapping ramps on one donor");
                tl.segs.push_back({t0, t1, e_from, pu.ramp_to});
                break;
            }
        }
    }

    for (int i = 0; i < reg.spec.n; ++i) {
        if (timelines[i].segs.empty()) continue;
        const EpsTimeline tl = timelines[i];
        const Mat op = site_operator(reg, i, wdiag);
        const double dc = p.delta_c;
        gen.terms.push_back({op, false, [tl, dc](double t) {
                                 return Cd((tl.at(t) - tl.baseline) * dc);
                             }});
        double de_max = 0.0;
        for (const auto& s : tl.segs)
            de_max = std::max({de_max, std::abs(s.e0 - tl.baseline),
                               std::abs(s.e1 - tl.baseline)});
        gen.omega_fast = std::max(
            gen.omega_fast, 3.0 * de_max * p.delta_c / units::hbar);
    }

    if (with_dissipation) {
        for (int i = 0; i < reg.spec.n; ++i) {
            const DonorRates& r = reg.rates[i];
            auto add = [&](double rate, const Mat& local) {
                if (rate <= 0.0) return;
                Mat l = std::sqrt(rate) * site_operator(reg, i, local);
                gen.ldl.push_back(l.adjoint() * l);
                gen.lindblad.push_back(std::move(l));
                gen.rate_max = std::max(gen.rate_max, rate);
            };
            add(r.w10_down, local_ket_bra(d, 0, 1));
            add(r.w10_up, local_ket_bra(d, 1, 0));
            add(r.dephase, wdiag);
            if (d == 3) {
                add(r.w21_down, local_ket_bra(d, 1, 2));
                add(r.w21_up, local_ket_bra(d, 2, 1));
            }
        }
    }

    std::sort(gen.breaks.begin(), gen.breaks.end());
    gen.breaks.erase(std::unique(gen.breaks.begin(), gen.breaks.end(),
                                 [](double a, double b) {
                                     return std::abs(a - b) < 1e-18;
                                 }),
                     gen.breaks.end());
    return gen;
}

Mat hamiltonian_at(const Generator& gen, double t) {
    Mat h = gen.h0;
    for (const Term& term : gen.terms) {
        const Cd c = term.coef(t);
        if (c == Cd(0.0)) continue;
        h += c * term.op;
        if (term.add_hc) h += std::conj(c) * Mat(term.op.adjoint());
    }
    return h;
}

Mat master_rhs(const Generator& gen, double t, const Mat& rho) {
    const Mat h = hamiltonian_at(gen, t);
    Mat drho = -(I / units::hbar) * (h * rho - rho * h);
    for (std::size_t k = 0; k < gen.lindblad.size(); ++k) {
        const Mat& l = gen.lindblad[k];
        const Mat& ldl = gen.ldl[k];
        drho += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
    }
    return drho;
}

double pick_dt(const Generator& gen, double requested, double total) {
    double dt = requested;
    if (dt <= 0.0) {
        dt = total > 0.0 ? total / 100.0 : 1.0;
        if (gen.omega_fast > 0.0)
            dt = std::min(dt, 2.0 * pi / gen.omega_fast / 20.0);
        if (gen.rate_max > 0.0) dt = std::min(dt, 0.05 / gen.rate_max);
        return dt;
    }
    if (gen.omega_fast > 0.0 && dt > 2.0 * pi / gen.omega_fast / 20.0)
        throw ValidationError(
            "dt too coarse for the fastest modulation (need >= 20 steps "
            "per period)");
    if (gen.rate_max > 0.0 && dt * gen.rate_max >= 0.1)
        throw ValidationError("dt too coarse for the Lindblad rates");
    return dt;
}

}  // namespace

EvolutionResult evolve(const Register& reg, const PulseSchedule& schedule,
                       const Eigen::MatrixXcd& rho0,
                       const EvolveOptions& opt) {
    if (rho0.rows() != reg.dim || rho0.cols() != reg.dim)
        throw ValidationError("initial state dimension mismatch");
    Generator gen = build_generator(reg, schedule, opt.lab_frame,
                                    opt.with_dissipation);
    const double total = schedule.total_time;
    const double dt = pick_dt(gen, opt.dt, total);

    EvolutionResult res;
    Mat rho = rho0;
    double trace_dev = std::abs(rho.trace().real() - 1.0);
    long step_count = 0;

    auto sample = [&](double t) {
        if (opt.sample_stride <= 0) return;
        if (step_count % opt.sample_stride == 0) {
            res.sample_times.push_back(t);
            res.trajectory.push_back(rho);
        }
    };
    sample(0.0);

    for (std::size_t b = 0; b + 1 < gen.breaks.size(); ++b) {
        const double ta = gen.breaks[b], tb = gen.breaks[b + 1];
        if (tb <= ta) continue;
        const long n_steps =
            std::max<long>(1, static_cast<long>(std::ceil((tb - ta) / dt)));
        const double h = (tb - ta) / n_steps;
        // keep stage evaluations strictly inside the interval so the k4
        // stage at a pulse edge still sees the pulse (coefficients are
        // half-open in t)
        const double t_cap = tb - 1e-9 * (tb - ta);
        for (long s = 0; s < n_steps; ++s) {
            const double t = ta + s * h;
            const Mat k1 = master_rhs(gen, t, rho);
            const Mat k2 = master_rhs(gen, t + h / 2.0, rho + (h / 2.0) * k1);
            const Mat k3 = master_rhs(gen, t + h / 2.0, rho + (h / 2.0) * k2);
            const Mat k4 =
                master_rhs(gen, std::min(t + h, t_cap), rho + h * k3);
            rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            rho = 0.5 * (rho + Mat(rho.adjoint()));
            ++step_count;
            trace_dev = std::max(trace_dev,
                                 std::abs(rho.trace().real() - 1.0));
            sample(t + h);
        }
    }
    if (trace_dev > 1e-6)
        throw NumericalError("trace drift " + std::to_string(trace_dev) +
                             " exceeds tolerance; reduce dt");

    res.final_state = rho;
    res.trace_deviation = trace_dev;
    if (reg.site_dim == 3) {
        double leak = 0.0;
        Mat p2 = Mat::Zero(3, 3);
        p2(2, 2) = 1.0;
        for (int i = 0; i < reg.spec.n; ++i)
            leak = std::max(
                leak, (site_operator(reg, i, p2) * rho).trace().real());
        res.leakage = leak;
    }
    return res;
}

Eigen::MatrixXcd propagator(const Register& reg, const PulseSchedule& schedule,
                            double dt, bool lab_frame) {
    Generator gen = build_generator(reg, schedule, lab_frame, false);
    const double used_dt = pick_dt(gen, dt, schedule.total_time);
    Mat u = Mat::Identity(reg.dim, reg.dim);
    auto rhs = [&](double t, const Mat& uu) {
        return Mat(-(I / units::hbar) * (hamiltonian_at(gen, t) * uu));
    };
    for (std::size_t b = 0; b + 1 < gen.breaks.size(); ++b) {
        const double ta = gen.breaks[b], tb = gen.breaks[b + 1];
        if (tb <= ta) continue;
        const long n_steps = std::max<long>(
            1, static_cast<long>(std::ceil((tb - ta) / used_dt)));
        const double h = (tb - ta) / n_steps;
        const double t_cap = tb - 1e-9 * (tb - ta);
        for (long s = 0; s < n_steps; ++s) {
            const double t = ta + s * h;
            const Mat k1 = rhs(t, u);
            const Mat k2 = rhs(t + h / 2.0, u + (h / 2.0) * k1);
            const Mat k3 = rhs(t + h / 2.0, u + (h / 2.0) * k2);
            const Mat k4 = rhs(std::min(t + h, t_cap), u + h * k3);
            u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }
    return u;
}

Eigen::MatrixXcd propagator_exact(const Register& reg,
                                  const PulseSchedule& schedule) {
    Generator gen = build_generator(reg, schedule, false, false);
    Mat u = Mat::Identity(reg.dim, reg.dim);
    Eigen::SelfAdjointEigenSolver<Mat> es;
    for (std::size_t b = 0; b + 1 < gen.breaks.size(); ++b) {
        const double ta = gen.breaks[b], tb = gen.breaks[b + 1];
        if (tb <= ta) continue;
        const double eps = (tb - ta) * 1e-9;
        const Mat h = hamiltonian_at(gen, 0.5 * (ta + tb));
        const Mat ha = hamiltonian_at(gen, ta + eps);
        const Mat hb = hamiltonian_at(gen, tb - eps);
        const double scale = std::max(h.norm(), 1e-300);
        if ((ha - h).norm() > 1e-10 * scale ||
            (hb - h).norm() > 1e-10 * scale)
            throw ValidationError(
                "schedule is not piecewise constant; use propagator()");
        es.compute(h);
        const auto& v = es.eigenvectors();
        Vec phases(reg.dim);
        for (long k = 0; k < reg.dim; ++k)
            phases(k) = std::exp(-I * es.eigenvalues()(k) * (tb - ta) /
                                 units::hbar);
        u = v * phases.asDiagonal() * v.adjoint() * u;
    }
    return u;
}

double gate_fidelity_unitary(const Eigen::MatrixXcd& u,
                             const Eigen::MatrixXcd& u_ideal) {
    if (u.rows() != u_ideal.rows() || u.cols() != u_ideal.cols())
        throw ValidationError("unitary dimension mismatch");
    const double d = static_cast<double>(u.rows());
    const Cd tr = (u_ideal.adjoint() * u).trace();
    return (std::norm(tr) + d) / (d * (d + 1.0));
}

double state_fidelity(const Eigen::MatrixXcd& rho,
                      const Eigen::VectorXcd& psi) {
    if (rho.rows() != psi.size())
        throw ValidationError("state dimension mismatch");
    return (psi.adjoint() * rho * psi)(0, 0).real();
}

std::vector<std::vector<double>> steady_state_populations(const Register& reg) {
    std::vector<std::vector<double>> out;
    for (int i = 0; i < reg.spec.n; ++i) {
        const DonorRates& r = reg.rates[i];
        std::vector<double> pops(reg.site_dim, 0.0);
        const double r10 = (r.w10_down > 0.0) ? r.w10_up / r.w10_down : 0.0;
        if (reg.site_dim == 2) {
            pops[0] = 1.0 / (1.0 + r10);
            pops[1] = r10 / (1.0 + r10);
        } else {
            const double r21 =
                (r.w21_down > 0.0) ? r.w21_up / r.w21_down : 0.0;
            const double z = 1.0 + r10 + r10 * r21;
            pops[0] = 1.0 / z;
            pops[1] = r10 / z;
            pops[2] = r10 * r21 / z;
        }
        out.push_back(pops);
    }
    return out;
}

}  // namespace lidonor
