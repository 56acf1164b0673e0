#pragma once

#include <functional>
#include <vector>

#include "gacz/operators.hpp"

namespace gacz {

struct StateVector {
    int sector = 0;
    double t = 0.0;  // evolution time the amplitudes refer to
    std::vector<cplx> amp;

    std::size_t dim() const { return amp.size(); }
    double norm2() const;  // squared 2-norm

    static StateVector basis_state(int sector, std::size_t index, std::size_t dim);
};

// Uniform sample times 0 .. t_max inclusive.
struct TimeGrid {
    double t_max = 0.0;
    int num_points = 2;

    static TimeGrid with_spacing(double t_max, double dt);
    double time_at(int i) const;
    void validate() const;
};

struct EvolveOptions {
    double tol = 1e-10;     // per-step local error target
    int krylov_dim = 30;    // max Arnoldi basis size per step
    double max_step = 1.0;  // cap on the internal step, units 1/J
    int max_steps = 4000000;
};

// Cheap view of psi(t) at a sample time inside the current Krylov step.
// norm2() and amp(row) cost O(m)–O(m^2) in the Krylov dimension; only
// materialize() touches the full state dimension.
class Sample {
public:
    double t() const { return t_; }
    int index() const { return idx_; }
    double norm2() const;
    cplx amp(std::size_t row) const;
    void materialize(StateVector& out) const;

private:
    friend class Krylov;
    Sample() = default;
    double t_ = 0.0;
    int idx_ = 0;
    const cplx* coeffs_ = nullptr;  // m-dim combination in the Krylov basis
    int m_ = 0;
    const std::vector<cplx>* basis_ = nullptr;  // m vectors of length n
    std::size_t n_ = 0;
    int sector_ = 0;
};

using SampleFn = std::function<void(const Sample&)>;

// Streaming propagation of exp(-iHt)|psi0> over the grid. Krylov
// exponential with full reorthogonalization, adaptive step size against
// `tol`, Hermitian fast path (tridiagonal eigensolve) and dense-Pade
// exponentials for the non-Hermitian decay model. The callback fires once
// per grid point in time order (including t = 0).
void evolve_cb(const SparseOperator& H, const StateVector& psi0, const TimeGrid& grid,
               const EvolveOptions& opt, const SampleFn& on_sample);

// Convenience wrapper collecting full state vectors at the grid times.
std::vector<StateVector> evolve(const SparseOperator& H, const StateVector& psi0,
                                const TimeGrid& grid, double tol = 1e-10);

// Worst-case |  ||psi(t)||^2 - ||psi(0)||^2  | over the returned states;
// quality gate for Hermitian evolutions.
double propagation_norm_report(const std::vector<StateVector>& states);

} // namespace gacz
