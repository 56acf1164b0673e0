#pragma once

#include "gacz/hilbert.hpp"

#include <vector>

namespace gacz {

// One wavevector at which the coupling-point phases cancel, with the matching
// in-band frequency an atom must be tuned to.
struct DfMode {
    double k;          // in (0, pi)
    double omega;      // band frequency, units of J, relative to band center
    bool band_edge;    // |omega| within 5% of the band edge: flat dispersion,
                       // protection degrades quickly with finite bandwidth
};

// Band dispersion of the cavity array: omega(k) = -2 J cos k (band center 0).
double dispersion(double k, double hopping = 1.0);

// Equally spaced coupling points, uniform strengths, spacing dx sites:
// cancellation at k = (pi + 2 pi n) / dx.
std::vector<DfMode> df_two_point(int dx, double hopping = 1.0);

// Three points with strength pattern (1, zeta, 1):
// cancellation where 2 cos(k dx) = -zeta, both branches of the arccos.
// zeta >= 2 puts the roots outside the band (no solution) -> config_error.
std::vector<DfMode> df_three_point(int dx, double zeta, double hopping = 1.0);

// Arbitrary point pattern: scans k on a fine grid for zeros of
// |sum_p g_p e^{i k x_p}| and polishes each root by bisection.
std::vector<DfMode> df_general(const std::vector<CouplingPoint>& points, double hopping = 1.0,
                               int grid = 10000);

} // namespace gacz
