#include "gacz/tomography.hpp"

#include "gacz/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace gacz {

namespace {

// Amplitudes of a state grouped by atomic label (11, 10, 01, 00) and photon
// number; empty vector = identically zero block. This is the row content of
// the partial-trace M matrix.
struct BathRows {
    std::array<cplx, 4> vac{};
    std::array<std::vector<cplx>, 4> one;
    std::array<std::vector<cplx>, 4> two;
};

std::size_t sites_from_dim(int sector, std::size_t dim) {
    if (sector == 2) {
        // dim = 3 + 2N + N(N+1)/2
        const double root = std::sqrt(1.0 + 8.0 * static_cast<double>(dim));
        const auto n = static_cast<std::size_t>(std::llround((root - 5.0) / 2.0));
        if (3 + 2 * n + n * (n + 1) / 2 != dim)
            throw error("sector-2 state dimension does not match any lattice size");
        return n;
    }
    if (sector == 1) {
        if (dim < 3) throw error("sector-1 state dimension too small");
        return dim - 2;
    }
    if (sector == 0) {
        if (dim != 1) throw error("sector-0 state must be one-dimensional");
        return 0;
    }
    throw unsupported_sector_error("states above two excitations are not supported");
}

BathRows rows_of(const StateVector& psi) {
    const std::size_t n = sites_from_dim(psi.sector, psi.dim());
    BathRows r;
    const auto& a = psi.amp;
    switch (psi.sector) {
    case 2: {
        r.vac[0] = a[1];  // |11>
        r.one[1].assign(a.begin() + 3, a.begin() + 3 + n);
        r.one[2].assign(a.begin() + 3 + n, a.begin() + 3 + 2 * n);
        r.two[3].assign(a.begin() + 3 + 2 * n, a.end());
        break;
    }
    case 1: {
        r.vac[1] = a[0];  // |10>
        r.vac[2] = a[1];  // |01>
        r.one[3].assign(a.begin() + 2, a.end());
        break;
    }
    case 0:
        r.vac[3] = a[0];  // |00>
        break;
    default:
        throw unsupported_sector_error("states above two excitations are not supported");
    }
    return r;
}

cplx block_dot(const std::vector<cplx>& x, const std::vector<cplx>& y) {
    if (x.empty() || y.empty()) return 0.0;
    if (x.size() != y.size()) throw error("states live on different lattices");
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
    return s;
}

// <bath row a of p | bath row b of q>
cplx cross(const BathRows& p, const BathRows& q, int a, int b) {
    return p.vac[a] * std::conj(q.vac[b]) + block_dot(p.one[a], q.one[b]) +
           block_dot(p.two[a], q.two[b]);
}

const ChoiMatrix& cz_choi() {
    static const ChoiMatrix c = choi_of_unitary(cz_unitary());
    return c;
}

double golden_max(const std::function<double(double)>& f, double lo, double hi, double xtol) {
    const double inv = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - inv * (b - a), x2 = a + inv * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

double population_20(const StateVector& psi) {
    if (psi.sector != 2) throw unsupported_sector_error("pair populations need a sector-2 state");
    return std::norm(psi.amp[0]);
}

double population_11(const StateVector& psi) {
    if (psi.sector != 2) throw unsupported_sector_error("pair populations need a sector-2 state");
    return std::norm(psi.amp[1]);
}

ReducedDensityMatrix reduce(const StateVector& psi) {
    const BathRows r = rows_of(psi);
    ReducedDensityMatrix rho;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) rho(a, b) = cross(r, r, a, b);
    return rho;
}

ChoiMatrix build_choi(const StateVector& e00, const StateVector& e01, const StateVector& e10,
                      const StateVector& e11) {
    const StateVector* by_label[4] = {&e11, &e10, &e01, &e00};  // Choi index order
    const int expected_sector[4] = {2, 1, 1, 0};
    for (int m = 0; m < 4; ++m)
        if (by_label[m]->sector != expected_sector[m])
            throw config_error("build_choi inputs must be the four computational initial states");
    const double t0 = e00.t;
    for (const StateVector* s : by_label)
        if (std::abs(s->t - t0) > 1e-9 * std::max(1.0, std::abs(t0)))
            throw error("build_choi inputs were evolved to different times");

    std::array<BathRows, 4> rows;
    for (int m = 0; m < 4; ++m) rows[m] = rows_of(*by_label[m]);

    ChoiMatrix choi;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    choi(m * 4 + a, n * 4 + b) = 0.25 * cross(rows[m], rows[n], a, b);
    return choi;
}

ChoiMatrix choi_of_unitary(const Eigen::Matrix4cd& u) {
    ChoiMatrix choi;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    choi(m * 4 + a, n * 4 + b) = 0.25 * u(a, m) * std::conj(u(b, n));
    return choi;
}

Eigen::Matrix4cd cz_unitary() {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    u(0, 0) = -1.0;
    return u;
}

Eigen::Matrix4cd identity_unitary() { return Eigen::Matrix4cd::Identity(); }

double process_fidelity(const ChoiMatrix& choi, const ChoiMatrix& ideal) {
    using Mat = Eigen::Matrix<cplx, 16, 16>;
    const auto psd_clip = [](const Mat& h, const char* what) {
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()));
        Eigen::Matrix<double, 16, 1> lam = es.eigenvalues();
        for (int i = 0; i < 16; ++i) {
            if (lam(i) < -1e-10)
                throw numerical_error(std::string(what) + " is not positive semidefinite");
            lam(i) = std::max(lam(i), 0.0);
        }
        return std::make_pair(es.eigenvectors(), lam);
    };

    auto [u, lam] = psd_clip(choi, "Choi matrix");
    Mat root = u * lam.cwiseSqrt().asDiagonal() * u.adjoint();
    Mat inner = root * ideal * root;
    auto [ui, li] = psd_clip(inner, "fidelity kernel");
    double f = li.cwiseSqrt().sum();
    f *= f;
    return std::clamp(f, 0.0, 1.0);
}

double average_fidelity(double process) { return (4.0 * process + 1.0) / 5.0; }

ChoiMatrix apply_local_phases(const ChoiMatrix& choi, double phi1, double phi2) {
    const std::array<cplx, 4> z = {std::exp(cplx(0.0, phi1 + phi2)), std::exp(cplx(0.0, phi1)),
                                   std::exp(cplx(0.0, phi2)), cplx(1.0)};
    ChoiMatrix out;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    out(m * 4 + a, n * 4 + b) = z[a] * choi(m * 4 + a, n * 4 + b) * std::conj(z[b]);
    return out;
}

std::pair<double, double> local_phase_seed(const ChoiMatrix& choi) {
    // rho = channel(|+>< +|) up to scale: sum over the input indices
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) rho(a, b) += choi(m * 4 + a, n * 4 + b);
    const auto angle = [](cplx v) { return std::abs(v) > 0.0 ? -std::arg(v) : 0.0; };
    return {angle(rho(1, 3)), angle(rho(2, 3))};
}

PhaseCorrection correct_local_phases(const ChoiMatrix& choi, const ChoiMatrix& target,
                                     bool refine) {
    auto [p1, p2] = local_phase_seed(choi);
    if (refine) {
        const auto score = [&](double a, double b) {
            return process_fidelity(apply_local_phases(choi, a, b), target);
        };
        double best = score(p1, p2);
        for (int sweep = 0; sweep < 5; ++sweep) {
            p1 = golden_max([&](double x) { return score(x, p2); }, p1 - 0.6, p1 + 0.6, 1e-6);
            p2 = golden_max([&](double x) { return score(p1, x); }, p2 - 0.6, p2 + 0.6, 1e-6);
            const double now = score(p1, p2);
            if (now - best < 1e-13) break;
            best = now;
        }
    }
    PhaseCorrection out;
    out.choi = apply_local_phases(choi, p1, p2);
    out.phi1 = p1;
    out.phi2 = p2;
    return out;
}

PhaseCorrection correct_local_phases(const ChoiMatrix& choi, bool refine) {
    return correct_local_phases(choi, cz_choi(), refine);
}

} // namespace gacz
