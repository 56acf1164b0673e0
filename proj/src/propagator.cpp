#include "gacz/propagator.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <string>

namespace gacz {

double StateVector::norm2() const { return active_kernels().nrm2sq(amp.size(), amp.data()); }

StateVector StateVector::basis_state(int sector, std::size_t index, std::size_t dim) {
    StateVector s;
    s.sector = sector;
    s.amp.assign(dim, 0.0);
    s.amp.at(index) = 1.0;
    return s;
}

TimeGrid TimeGrid::with_spacing(double t_max, double dt) {
    TimeGrid g;
    g.t_max = t_max;
    g.num_points = std::max(2, static_cast<int>(std::round(t_max / dt)) + 1);
    return g;
}

double TimeGrid::time_at(int i) const {
    return t_max * static_cast<double>(i) / static_cast<double>(num_points - 1);
}

void TimeGrid::validate() const {
    if (!(t_max > 0.0) || num_points < 2)
        throw config_error("time grid needs t_max > 0 and at least 2 points");
}

double Sample::norm2() const {
    if (m_ < 0) return active_kernels().nrm2sq(n_, coeffs_);  // direct view of psi0
    double s = 0.0;
    for (int i = 0; i < m_; ++i) s += std::norm(coeffs_[i]);
    return s;  // Krylov basis is orthonormal
}

cplx Sample::amp(std::size_t row) const {
    if (m_ < 0) return coeffs_[row];
    cplx a = 0.0;
    for (int i = 0; i < m_; ++i) a += coeffs_[i] * basis_[i][row];
    return a;
}

void Sample::materialize(StateVector& out) const {
    out.sector = sector_;
    out.t = t_;
    out.amp.assign(n_, 0.0);
    if (m_ < 0) {
        std::copy(coeffs_, coeffs_ + n_, out.amp.begin());
        return;
    }
    const Kernels& k = active_kernels();
    for (int i = 0; i < m_; ++i) k.axpy(n_, coeffs_[i], basis_[i].data(), out.amp.data());
}

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// One Arnoldi factorization H V_m = V_m T_m + h_next v_next e_m^T, reused
// across step-size retries (the basis does not depend on the step).
class Krylov {
public:
    Krylov(const SparseOperator& H, int max_dim)
        : H_(H), n_(static_cast<std::size_t>(H.dim())), mmax_(max_dim) {
        V_.resize(static_cast<std::size_t>(mmax_) + 1);
        for (auto& v : V_) v.resize(n_);
        T_ = MatrixXcd::Zero(mmax_, mmax_);
        scratch_.resize(n_);
    }

    // Builds the basis from w (unnormalized). Returns false if w is zero.
    bool factorize(const std::vector<cplx>& w) {
        const Kernels& k = active_kernels();
        beta_ = std::sqrt(k.nrm2sq(n_, w.data()));
        if (beta_ == 0.0) return false;
        T_.setZero();
        std::copy(w.begin(), w.end(), V_[0].begin());
        k.scal(n_, 1.0 / beta_, V_[0].data());

        m_ = mmax_;
        hnext_ = 0.0;
        happy_ = false;
        double hscale = 0.0;
        for (int j = 0; j < mmax_; ++j) {
            k.spmv(H_.mat, V_[j].data(), scratch_.data());
            const double before = k.nrm2sq(n_, scratch_.data());
            for (int i = 0; i <= j; ++i) {
                const cplx h = k.dotc(n_, V_[i].data(), scratch_.data());
                T_(i, j) += h;
                k.axpy(n_, -h, V_[i].data(), scratch_.data());
            }
            double after = k.nrm2sq(n_, scratch_.data());
            if (after < 0.5 * before) {  // selective second orthogonalization pass
                for (int i = 0; i <= j; ++i) {
                    const cplx h = k.dotc(n_, V_[i].data(), scratch_.data());
                    T_(i, j) += h;
                    k.axpy(n_, -h, V_[i].data(), scratch_.data());
                }
                after = k.nrm2sq(n_, scratch_.data());
            }
            hscale = std::max(hscale, std::sqrt(before));
            const double h1 = std::sqrt(after);
            if (h1 <= 1e-14 * std::max(1.0, hscale)) {  // invariant subspace
                m_ = j + 1;
                happy_ = true;
                hnext_ = 0.0;
                break;
            }
            if (j + 1 < mmax_) {
                T_(j + 1, j) = h1;
            } else {
                hnext_ = h1;
            }
            std::copy(scratch_.begin(), scratch_.end(), V_[static_cast<std::size_t>(j) + 1].begin());
            k.scal(n_, 1.0 / h1, V_[static_cast<std::size_t>(j) + 1].data());
        }

        if (H_.hermitian) {
            es_.compute(T_.topLeftCorner(m_, m_));
            lam_ = es_.eigenvalues();
            U_ = es_.eigenvectors();
            c0_ = U_.row(0).adjoint();  // U^dag e1
        } else {
            // Spectral shortcut for the weakly non-Hermitian decay model:
            // diagonalize once per step, exponentiate per sample. Falls back
            // to a dense Pade exponential when the eigenbasis is too
            // ill-conditioned to trust.
            ces_.compute(T_.topLeftCorner(m_, m_));
            spectral_ok_ = ces_.info() == Eigen::Success;
            if (spectral_ok_) {
                // cond(S) bounds the spectral-exponential error at ~eps*cond
                Eigen::FullPivLU<MatrixXcd> lu(ces_.eigenvectors());
                spectral_ok_ = lu.isInvertible() && lu.rcond() > 1e-4;
                if (spectral_ok_) c0_ = lu.solve(VectorXcd::Unit(m_, 0));
            }
        }
        return true;
    }

    // y(dt) = beta * exp(-i dt T_m) e1
    void combination(double dt, VectorXcd& y) const {
        if (H_.hermitian) {
            VectorXcd phase(m_);
            for (int i = 0; i < m_; ++i)
                phase(i) = std::exp(cplx(0.0, -dt * lam_(i))) * c0_(i);
            y.noalias() = U_ * phase;
            y *= beta_;
        } else if (spectral_ok_) {
            VectorXcd phase(m_);
            for (int i = 0; i < m_; ++i)
                phase(i) = std::exp(cplx(0.0, -dt) * ces_.eigenvalues()(i)) * c0_(i);
            y.noalias() = ces_.eigenvectors() * phase;
            y *= beta_;
        } else {
            MatrixXcd A = cplx(0.0, -dt) * T_.topLeftCorner(m_, m_);
            y = beta_ * MatrixXcd(A.exp()).col(0);
        }
    }

    // A-posteriori local error estimate for one step of size dt.
    double error_estimate(double dt, const VectorXcd& y) const {
        if (happy_) return 0.0;
        return hnext_ * std::abs(y(m_ - 1)) * dt;
    }

    int m() const { return m_; }
    bool happy() const { return happy_; }
    double beta() const { return beta_; }
    const std::vector<std::vector<cplx>>& basis() const { return V_; }

    Sample make_sample(int idx, double t, const VectorXcd& y, int sector) const {
        Sample s;
        s.t_ = t;
        s.idx_ = idx;
        s.coeffs_ = y.data();
        s.m_ = m_;
        s.basis_ = V_.data();
        s.n_ = n_;
        s.sector_ = sector;
        return s;
    }

    static Sample direct_sample(int idx, double t, const cplx* data, std::size_t n, int sector) {
        Sample s;
        s.t_ = t;
        s.idx_ = idx;
        s.coeffs_ = data;
        s.m_ = -1;
        s.n_ = n;
        s.sector_ = sector;
        return s;
    }

    static Sample zero_sample(int idx, double t, std::size_t n, int sector) {
        Sample s;
        s.t_ = t;
        s.idx_ = idx;
        s.m_ = 0;
        s.n_ = n;
        s.sector_ = sector;
        return s;
    }

private:
    const SparseOperator& H_;
    std::size_t n_;
    int mmax_;
    int m_ = 0;
    double beta_ = 0.0;
    double hnext_ = 0.0;
    bool happy_ = false;
    std::vector<std::vector<cplx>> V_;
    std::vector<cplx> scratch_;
    MatrixXcd T_;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es_;
    Eigen::ComplexEigenSolver<MatrixXcd> ces_;
    bool spectral_ok_ = false;
    VectorXd lam_;
    MatrixXcd U_;
    VectorXcd c0_;
};

void evolve_cb(const SparseOperator& H, const StateVector& psi0, const TimeGrid& grid,
               const EvolveOptions& opt, const SampleFn& on_sample) {
    grid.validate();
    if (static_cast<std::size_t>(H.dim()) != psi0.dim())
        throw error("dimension mismatch: H is " + std::to_string(H.dim()) + ", state is " +
                    std::to_string(psi0.dim()));
    if (!(opt.tol > 0.0)) throw config_error("propagation tolerance must be positive");

    const double eps = 1e-9 * std::max(1.0, grid.t_max);
    int next = 0;

    // t = 0 is the input, bit for bit.
    on_sample(Krylov::direct_sample(0, 0.0, psi0.amp.data(), psi0.dim(), psi0.sector));
    ++next;

    const int m = std::min<int>(opt.krylov_dim, H.dim());
    Krylov kry(H, std::max(1, m));
    std::vector<cplx> w = psi0.amp;
    double t = 0.0;
    double h = std::min(opt.max_step, grid.t_max);
    VectorXcd y;
    const Kernels& kern = active_kernels();

    int steps = 0;
    while (next < grid.num_points) {
        if (++steps > opt.max_steps)
            throw convergence_error("step budget exhausted at t=" + std::to_string(t));
        if (!kry.factorize(w)) {
            // state vanished (fully decayed); remaining samples are zero
            while (next < grid.num_points) {
                on_sample(Krylov::zero_sample(next, grid.time_at(next), psi0.dim(), psi0.sector));
                ++next;
            }
            break;
        }

        const double remaining = grid.t_max - t;
        double dt = kry.happy() ? remaining : std::min(h, remaining);
        double err = 0.0;
        const double dt0 = dt;
        int tries = 0;
        for (;;) {
            kry.combination(dt, y);
            err = kry.error_estimate(dt, y);
            if (err <= opt.tol || kry.happy()) break;
            if (++tries > 60)
                throw convergence_error(
                    "local tolerance unattainable on t in [" + std::to_string(t) + ", " +
                    std::to_string(t + dt0) + "] (err=" + std::to_string(err) + ")");
            dt *= std::clamp(0.8 * std::pow(opt.tol / err, 1.0 / kry.m()), 0.1, 0.7);
        }

        // emit samples inside (t, t+dt]
        VectorXcd ys;
        while (next < grid.num_points && grid.time_at(next) <= t + dt + eps) {
            const double ts = std::min(grid.time_at(next) - t, dt);
            kry.combination(ts, ys);
            on_sample(kry.make_sample(next, grid.time_at(next), ys, psi0.sector));
            ++next;
        }

        // advance the running state: w = V y(dt)
        kry.combination(dt, y);
        std::fill(w.begin(), w.end(), cplx(0.0));
        for (int i = 0; i < kry.m(); ++i)
            kern.axpy(w.size(), y(i), kry.basis()[i].data(), w.data());
        t += dt;

        if (!kry.happy() && err > 0.0)
            h = std::min(opt.max_step, dt * std::clamp(0.9 * std::pow(opt.tol / err, 1.0 / kry.m()),
                                                       1.0, 2.0));
        else
            h = opt.max_step;
    }
}

std::vector<StateVector> evolve(const SparseOperator& H, const StateVector& psi0,
                                const TimeGrid& grid, double tol) {
    EvolveOptions opt;
    opt.tol = tol;
    std::vector<StateVector> out(static_cast<std::size_t>(grid.num_points));
    evolve_cb(H, psi0, grid, opt, [&](const Sample& s) {
        if (s.index() == 0) {
            out[0] = psi0;  // exact handoff at t = 0
            out[0].t = 0.0;
        } else {
            s.materialize(out[static_cast<std::size_t>(s.index())]);
        }
    });
    return out;
}

double propagation_norm_report(const std::vector<StateVector>& states) {
    if (states.empty()) return 0.0;
    const double ref = states.front().norm2();
    double worst = 0.0;
    for (const StateVector& s : states) worst = std::max(worst, std::abs(s.norm2() - ref));
    return worst;
}

} // namespace gacz
