#include "lidonor/oracles.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "lidonor/errors.hpp"
#include "lidonor/levels.hpp"
#include "lidonor/pulses.hpp"
#include "lidonor/rates.hpp"
#include "lidonor/units.hpp"

namespace lidonor {

using std::numbers::pi;

namespace {

double ratio_deviation(double production, double oracle) {
    return std::abs(production - oracle) / std::max(std::abs(oracle), 1e-300);
}

std::string fingerprint(const QuadSettings& q, double epsilon, double r_nm) {
    std::ostringstream os;
    os << "ntheta=" << q.n_theta << ";nphi=" << q.n_phi
       << ";lmax=" << q.legendre_terms << ";nrad=" << q.radial_samples
       << ";qmax=" << q.q_max_over_inv_apar << ";eps=" << epsilon;
    if (r_nm > 0.0) os << ";r_nm=" << r_nm;
    return os.str();
}

}  // namespace

OracleReport verify_rate(double epsilon, const MaterialParams& p,
                         const QuadSettings& quad) {
    OracleReport rep;
    rep.quantity = "w10(eps=" + std::to_string(epsilon) + ")";
    rep.production = decay_rate_closed_form_10(epsilon, p).total;
    const LevelStructure ls = manifold(epsilon, p);
    rep.oracle = decay_rate_oracle(ground_state(ls), singlet_state(ls),
                                   ls.omega10, p, quad,
                                   BranchFilter::transverse_only)
                     .total;
    rep.deviation = ratio_deviation(rep.production, rep.oracle);
    rep.threshold = kRateAgreement;
    rep.pass = rep.deviation <= rep.threshold;
    rep.fingerprint = fingerprint(quad, epsilon, 0.0);
    return rep;
}

namespace {

struct CouplingPair {
    double production;
    double oracle;
};

CouplingPair coupling_at(CouplingKind kind, double r_cm, double epsilon,
                         const MaterialParams& p, const QuadSettings& quad) {
    const LevelStructure ls = manifold(epsilon, p);
    const DonorPairGeometry geom = make_pair_geometry({r_cm, 0.0, 0.0});
    switch (kind) {
        case CouplingKind::g10:
            return {ret_coupling_10(r_cm, epsilon, p),
                    ret_coupling_oracle_10(ls, geom, p, quad).value};
        case CouplingKind::g21: {
            const double w21 = decay_rate_oracle_21(epsilon, p).total;
            return {ret_coupling_21(r_cm, epsilon, p, w21),
                    ret_coupling_oracle_21(ls, geom, p, quad).value};
        }
        case CouplingKind::ising:
            return {ising_coupling(r_cm, p),
                    ising_coupling_oracle(ls, geom, p, quad).value};
    }
    throw ValidationError("unknown coupling kind");
}

const char* kind_name(CouplingKind k) {
    switch (k) {
        case CouplingKind::g10: return "g10";
        case CouplingKind::g21: return "g21";
        case CouplingKind::ising: return "ising";
    }
    return "?";
}

}  // namespace

OracleReport verify_coupling(CouplingKind kind, double r_cm, double epsilon,
                             const MaterialParams& p, const QuadSettings& quad,
                             bool fit_exponent) {
    OracleReport rep;
    const double r_nm = units::cm_to_nm(r_cm);
    rep.quantity = std::string(kind_name(kind)) + "(r=" +
                   std::to_string(r_nm) + "nm)";
    const CouplingPair at = coupling_at(kind, r_cm, epsilon, p, quad);
    rep.production = at.production;
    rep.oracle = at.oracle;
    // sign conventions differ between the flip-flop closed forms and the
    // quadrature; the physical scale is the magnitude
    rep.deviation = ratio_deviation(std::abs(at.production),
                                    std::abs(at.oracle));
    rep.threshold = kCouplingAgreement;
    rep.pass = rep.deviation <= rep.threshold;
    rep.fingerprint = fingerprint(quad, epsilon, r_nm);

    if (fit_exponent) {
        const int n_pts = 5;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < n_pts; ++i) {
            // a decade upward from r_cm, where the closed forms are
            // asymptotic; below r_cm finite-R corrections bias the slope
            const double f = std::pow(10.0, i / (n_pts - 1.0));
            const double r = r_cm * f;
            QuadSettings fq = quad;
            // the relative tail estimate grows with R because the integral
            // itself falls off; the absolute error stays small
            fq.rel_tol = quad.rel_tol * f * f;
            const double v =
                std::abs(coupling_at(kind, r, epsilon, p, fq).oracle);
            const double lx = std::log(r), ly = std::log(v);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        rep.fitted_exponent =
            (n_pts * sxy - sx * sy) / (n_pts * sxx - sx * sx);
    }
    return rep;
}

OracleReport verify_refocusing(int n, int pair_first,
                               const MaterialParams& p) {
    if (n < 2 || n > 4)
        throw ValidationError("refocusing oracle supports 2 <= n <= 4");
    using Mat = Eigen::MatrixXcd;
    using Cd = std::complex<double>;
    const Cd imag_unit{0.0, 1.0};

    // ZZ couplings of a uniform chain, R^-3 law, spacing 100 nm
    const double spacing = units::nm_to_cm(100.0);
    std::vector<std::vector<double>> j(n, std::vector<double>(n, 0.0));
    double j_max = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            j[a][b] = ising_coupling(spacing * (b - a), p);
            j_max = std::max(j_max, std::abs(j[a][b]));
        }
    const double tau2 = 0.01 / j_max;  // keeps every phase well inside (-pi, pi)

    const auto signs = refocusing_signs(n, pair_first);
    const int slots = static_cast<int>(signs[0].size());
    const double slot_w = tau2 / slots;
    const long dim = 1L << n;

    auto z_of = [&](long basis, int q) {
        return ((basis >> (n - 1 - q)) & 1) ? 1.0 : -1.0;  // S_z eigenvalue *2
    };

    // diagonal ZZ propagator over one slot
    auto slot_phase = [&](long basis) {
        double e = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                e += (j[a][b] / 2.0) * (z_of(basis, a) / 2.0) *
                     (z_of(basis, b) / 2.0);
        return -e * slot_w;  // exp(-i H t / hbar), H = (hbar J/2) SzSz
    };

    Mat u = Mat::Identity(dim, dim);
    std::vector<int> cur(n, 1);
    for (int s = 0; s < slots; ++s) {
        // instantaneous X flips where the sign pattern changes
        for (int q = 0; q < n; ++q)
            if (signs[q][s] != cur[q]) {
                Mat x = Mat::Zero(dim, dim);
                for (long b = 0; b < dim; ++b)
                    x(b ^ (1L << (n - 1 - q)), b) = 1.0;
                u = x * u;
                cur[q] = signs[q][s];
            }
        Mat d = Mat::Zero(dim, dim);
        for (long b = 0; b < dim; ++b)
            d(b, b) = std::exp(imag_unit * slot_phase(b));
        u = d * u;
    }
    for (int q = 0; q < n; ++q)
        if (cur[q] != 1) {
            Mat x = Mat::Zero(dim, dim);
            for (long b = 0; b < dim; ++b)
                x(b ^ (1L << (n - 1 - q)), b) = 1.0;
            u = x * u;
        }

    // ZZ phase coefficients from the diagonal phases
    double residual = 0.0;
    double selected = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            double c = 0.0;
            for (long k = 0; k < dim; ++k)
                c += std::arg(u(k, k)) * z_of(k, a) * z_of(k, b);
            c /= static_cast<double>(dim);
            if (a == pair_first && b == pair_first + 1)
                selected = c;
            else
                residual = std::max(residual, std::abs(c));
        }

    OracleReport rep;
    rep.quantity = "refocusing(n=" + std::to_string(n) + ",pair=" +
                   std::to_string(pair_first) + ")";
    rep.production = selected;   // retained ZZ phase on the selected pair
    rep.oracle = residual;       // largest leaked phase elsewhere
    rep.deviation = residual;    // absolute residual, floor 1
    rep.threshold = kRefocusingResidual;
    rep.pass = residual < rep.threshold &&
               (n == 2 || std::abs(selected) > 0.0);
    std::ostringstream os;
    os << "slots=" << slots << ";tau2_s=" << tau2 << ";spacing_nm=100";
    rep.fingerprint = os.str();
    return rep;
}

std::vector<OracleReport> run_verification(const MaterialParams& p,
                                           const QuadSettings& quad) {
    std::vector<OracleReport> out;
    out.push_back(verify_rate(0.2, p, quad));
    out.push_back(verify_rate(0.5, p, quad));
    out.push_back(
        verify_coupling(CouplingKind::g10, units::nm_to_cm(100.0), 0.2, p,
                        quad));
    out.push_back(verify_coupling(CouplingKind::g21, units::nm_to_cm(50.0),
                                  0.002, p, quad));
    out.push_back(verify_coupling(CouplingKind::ising, units::nm_to_cm(100.0),
                                  0.002, p, quad));
    out.push_back(verify_refocusing(3, 0, p));
    out.push_back(verify_refocusing(4, 1, p));
    return out;
}

std::string format_report_line(const OracleReport& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.quantity
       << "  production=" << r.production << "  oracle=" << r.oracle
       << "  deviation=" << r.deviation << "  threshold=" << r.threshold;
    if (r.fitted_exponent) os << "  r_exponent=" << *r.fitted_exponent;
    os << "  [" << r.fingerprint << "]";
    return os.str();
}

}  // namespace lidonor
