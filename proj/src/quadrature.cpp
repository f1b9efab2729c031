#include "lidonor/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "lidonor/errors.hpp"

namespace lidonor {

GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw ValidationError("quadrature order must be >= 1");
    GaussLegendre gl;
    gl.x.resize(n);
    gl.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        gl.x[i] = -z;
        gl.x[n - 1 - i] = z;
        gl.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        gl.w[n - 1 - i] = gl.w[i];
    }
    return gl;
}

}  // namespace lidonor
