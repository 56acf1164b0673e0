#include "gacz/interference.hpp"

#include "gacz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace gacz {

namespace {

constexpr double kPi = std::numbers::pi;

DfMode make_mode(double k, double hopping) {
    DfMode m;
    m.k = k;
    m.omega = dispersion(k, hopping);
    m.band_edge = std::abs(m.omega) >= 1.9 * hopping;
    return m;
}

void sort_by_k(std::vector<DfMode>& v) {
    std::sort(v.begin(), v.end(), [](const DfMode& a, const DfMode& b) { return a.k < b.k; });
}

} // namespace

double dispersion(double k, double hopping) { return -2.0 * hopping * std::cos(k); }

std::vector<DfMode> df_two_point(int dx, double hopping) {
    if (dx < 1) throw config_error("coupling-point spacing must be at least 1 site");
    std::vector<DfMode> out;
    for (int n = 0;; ++n) {
        const double k = (kPi + 2.0 * kPi * n) / dx;
        if (k >= kPi) break;  // open interval: dx=1 has no interior solution
        out.push_back(make_mode(k, hopping));
    }
    return out;
}

std::vector<DfMode> df_three_point(int dx, double zeta, double hopping) {
    if (dx < 1) throw config_error("coupling-point spacing must be at least 1 site");
    if (std::abs(zeta) >= 2.0)
        throw config_error("middle-point weight magnitude must be below 2 for an in-band zero");
    const double kc = std::acos(-zeta / 2.0);  // root of 2 cos(theta) + zeta in (0, pi)
    std::vector<DfMode> out;
    for (int n = 0;; ++n) {
        const double k = (kc + 2.0 * kPi * n) / dx;
        if (k >= kPi) break;
        if (k > 0.0) out.push_back(make_mode(k, hopping));
    }
    for (int n = 1;; ++n) {  // mirrored branch, -kc + 2 pi n
        const double k = (-kc + 2.0 * kPi * n) / dx;
        if (k >= kPi) break;
        if (k > 0.0) out.push_back(make_mode(k, hopping));
    }
    sort_by_k(out);
    return out;
}

std::vector<DfMode> df_general(const std::vector<CouplingPoint>& points, double hopping,
                               int grid) {
    if (points.empty()) throw config_error("need at least one coupling point");
    if (grid < 16) throw config_error("scan grid too coarse");

    double gsum = 0.0;
    for (const CouplingPoint& p : points) gsum += std::abs(p.strength);
    if (gsum == 0.0) throw config_error("all coupling strengths are zero");

    const auto structure = [&](double k) {
        std::complex<double> f = 0.0;
        for (const CouplingPoint& p : points)
            f += p.strength * std::exp(std::complex<double>(0.0, k * p.site));
        return std::abs(f);
    };

    // |f| is non-negative; look for local minima on the grid, then bisect on
    // the derivative of |f|^2 to polish.
    const auto deriv = [&](double k) {
        std::complex<double> f = 0.0, df = 0.0;
        for (const CouplingPoint& p : points) {
            const auto ph = std::exp(std::complex<double>(0.0, k * p.site));
            f += p.strength * ph;
            df += p.strength * ph * std::complex<double>(0.0, static_cast<double>(p.site));
        }
        return 2.0 * std::real(std::conj(f) * df);
    };

    const double tol = 1e-12 * gsum;
    std::vector<DfMode> out;
    const double dk = kPi / grid;
    for (int i = 1; i < grid; ++i) {
        const double k0 = i * dk;
        const double v = structure(k0);
        if (v > structure(k0 - dk) || v >= structure(k0 + dk)) continue;
        double lo = k0 - dk, hi = k0 + dk;
        double dlo = deriv(lo), dhi = deriv(hi);
        if (dlo > 0.0 || dhi < 0.0) continue;  // not a bracketed minimum
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (deriv(mid) < 0.0)
                lo = mid;
            else
                hi = mid;
        }
        const double k = 0.5 * (lo + hi);
        if (structure(k) > tol) continue;  // shallow minimum, not a zero
        if (k <= 0.0 || k >= kPi) continue;
        if (!out.empty() && std::abs(out.back().k - k) < 2.0 * dk) continue;
        out.push_back(make_mode(k, hopping));
    }
    return out;
}

} // namespace gacz
