#pragma once

#include "gacz/propagator.hpp"

#include <Eigen/Dense>

#include <utility>

namespace gacz {

// Two-qubit computational basis, ordered (|11>, |10>, |01>, |00>).
// |2> population and emitted photons fall outside it and show up as
// trace deficit.
using ReducedDensityMatrix = Eigen::Matrix4cd;
using ChoiMatrix = Eigen::Matrix<cplx, 16, 16>;

struct GateResult {
    double gate_time = 0.0;  // units 1/J
    double process_fidelity = 0.0;
    double average_fidelity = 0.0;
    std::pair<double, double> local_phases{0.0, 0.0};
};

// |<20|psi>|^2 and |<11|psi>|^2 on a sector-2 state.
double population_20(const StateVector& psi);
double population_11(const StateVector& psi);

// Traces out the photons: rho_A[a][b] = <bath row a | bath row b> over the
// amplitudes grouped by atomic label. Hermitian PSD, trace <= 1.
ReducedDensityMatrix reduce(const StateVector& psi);

// Choi matrix of the reconstructed channel from the four computational
// initial states evolved to a common time (bath starting in vacuum).
// Element [(m,a),(n,b)] = (1/4) * <bath row a of psi_m | bath row b of psi_n>.
ChoiMatrix build_choi(const StateVector& e00, const StateVector& e01, const StateVector& e10,
                      const StateVector& e11);

ChoiMatrix choi_of_unitary(const Eigen::Matrix4cd& u);
Eigen::Matrix4cd cz_unitary();      // diag(-1, 1, 1, 1) in this ordering
Eigen::Matrix4cd identity_unitary();

// Uhlmann fidelity Tr(sqrt(sqrt(A) B sqrt(A)))^2 between Choi matrices.
// Eigenvalues below -1e-10 raise numerical_error; small negatives clip to 0.
double process_fidelity(const ChoiMatrix& choi, const ChoiMatrix& ideal);

// F_avg = (4 F_proc + 1) / 5 for d = 4.
double average_fidelity(double process);

// Single-qubit frame freedom: conjugate the channel output by
// Z(phi1) x Z(phi2), with Z(phi)|1> = e^{i phi}|1>.
ChoiMatrix apply_local_phases(const ChoiMatrix& choi, double phi1, double phi2);

// Frame-aligning phases read off the |+>|+> output coherences
// <10|rho|00> and <01|rho|00>.
std::pair<double, double> local_phase_seed(const ChoiMatrix& choi);

// Phases maximizing fidelity against the target channel (ideal CZ by
// default). The seed above is refined by coordinate-wise golden-section
// search unless refine = false.
struct PhaseCorrection {
    ChoiMatrix choi;
    double phi1 = 0.0;
    double phi2 = 0.0;
};
PhaseCorrection correct_local_phases(const ChoiMatrix& choi, bool refine = true);
PhaseCorrection correct_local_phases(const ChoiMatrix& choi, const ChoiMatrix& target,
                                     bool refine = true);

} // namespace gacz
