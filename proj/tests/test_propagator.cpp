#include "doctest.h"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <vector>

#include "gacz/operators.hpp"
#include "gacz/propagator.hpp"

using namespace gacz;

namespace {

Eigen::MatrixXcd to_dense(const SparseOperator& op) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(op.dim(), op.dim());
    for (int r = 0; r < op.mat.n; ++r)
        for (int p = op.mat.ptr[r]; p < op.mat.ptr[r + 1]; ++p) m(r, op.mat.col[p]) += op.mat.val[p];
    return m;
}

// Small detuned system with asymmetric placement so nothing cancels by accident.
SystemSpec small_spec(int n) {
    SystemSpec s;
    s.lattice.num_sites = n;
    s.atoms[0].omega = 0.31;
    s.atoms[0].anharmonicity = -0.62;
    s.atoms[0].points = {{0, 0.12}, {2, 0.17}};
    s.atoms[1].omega = -0.27;
    s.atoms[1].anharmonicity = -0.51;
    s.atoms[1].points = {{1, 0.14}, {3, 0.09}};
    return s;
}

// Deterministic non-trivial start vector.
StateVector ripple_state(int sector, std::size_t dim) {
    StateVector psi;
    psi.sector = sector;
    psi.amp.resize(dim);
    for (std::size_t i = 0; i < dim; ++i)
        psi.amp[i] = cplx(std::cos(0.7 * double(i) + 0.3), std::sin(1.3 * double(i)));
    const double nrm = std::sqrt(psi.norm2());
    for (auto& a : psi.amp) a /= nrm;
    return psi;
}

Eigen::VectorXcd as_eigen(const StateVector& s) {
    return Eigen::Map<const Eigen::VectorXcd>(s.amp.data(), static_cast<long>(s.amp.size()));
}

} // namespace

TEST_CASE("time grid construction and validation") {
    TimeGrid g = TimeGrid::with_spacing(1.0, 0.1);
    CHECK(g.num_points == 11);
    CHECK(g.time_at(0) == 0.0);
    CHECK(g.time_at(10) == doctest::Approx(1.0));
    CHECK(g.time_at(3) == doctest::Approx(0.3));

    // spacing coarser than the horizon still yields both endpoints
    TimeGrid tiny = TimeGrid::with_spacing(0.05, 0.1);
    CHECK(tiny.num_points == 2);
    CHECK(tiny.time_at(1) == doctest::Approx(0.05));

    CHECK_THROWS_AS((TimeGrid{0.0, 5}.validate()), config_error);
    CHECK_THROWS_AS((TimeGrid{1.0, 1}.validate()), config_error);
    CHECK_THROWS_AS((TimeGrid{-2.0, 5}.validate()), config_error);
}

TEST_CASE("krylov evolution matches a dense matrix exponential") {
    const SystemSpec spec = small_spec(4);
    const TimeGrid grid = TimeGrid::with_spacing(7.0, 0.7);

    for (int sector : {1, 2}) {
        CAPTURE(sector);
        const SparseOperator H = build_hamiltonian(spec, sector);
        const Eigen::MatrixXcd Hd = to_dense(H);
        const StateVector psi0 = ripple_state(sector, static_cast<std::size_t>(H.dim()));

        const std::vector<StateVector> traj = evolve(H, psi0, grid, 1e-12);
        REQUIRE(traj.size() == static_cast<std::size_t>(grid.num_points));

        for (int i = 0; i < grid.num_points; ++i) {
            const double t = grid.time_at(i);
            const Eigen::MatrixXcd U = (cplx(0.0, -t) * Hd).exp();
            const Eigen::VectorXcd ref = U * as_eigen(psi0);
            const double err = (as_eigen(traj[static_cast<std::size_t>(i)]) - ref).norm();
            CHECK(err < 1e-9);
            CHECK(traj[static_cast<std::size_t>(i)].t == doctest::Approx(t));
        }
    }
}

TEST_CASE("non-hermitian decay model matches the dense exponential") {
    SystemSpec spec = small_spec(4);
    spec.lattice.cavity_decay = 0.02;
    spec.atoms[0].decay = 0.05;
    spec.atoms[1].decay = 0.03;

    const SparseOperator H = build_effective_hamiltonian(spec, 2);
    REQUIRE(!H.hermitian);
    const Eigen::MatrixXcd Hd = to_dense(H);
    const StateVector psi0 = ripple_state(2, static_cast<std::size_t>(H.dim()));

    const TimeGrid grid = TimeGrid::with_spacing(6.0, 1.5);
    const std::vector<StateVector> traj = evolve(H, psi0, grid, 1e-12);
    for (int i = 0; i < grid.num_points; ++i) {
        const Eigen::VectorXcd ref =
            Eigen::MatrixXcd((cplx(0.0, -grid.time_at(i)) * Hd).exp()) * as_eigen(psi0);
        CHECK((as_eigen(traj[static_cast<std::size_t>(i)]) - ref).norm() < 1e-9);
    }
    // norm decays strictly once loss is on
    CHECK(traj.back().norm2() < traj.front().norm2());
}

TEST_CASE("norm is conserved to 1e-8 over a long hermitian run") {
    // dim 62 > krylov_dim, so this genuinely exercises adaptive restarts
    SystemSpec spec = small_spec(60);
    const SparseOperator H = build_hamiltonian(spec, 1);
    StateVector psi0 = StateVector::basis_state(1, 0, static_cast<std::size_t>(H.dim()));

    const std::vector<StateVector> traj = evolve(H, psi0, TimeGrid::with_spacing(300.0, 3.0), 1e-10);
    CHECK(propagation_norm_report(traj) < 1e-8);
}

TEST_CASE("uniform loss gives the analytic envelope") {
    SUBCASE("photon loss only") {
        SystemSpec spec;
        spec.lattice.num_sites = 3;
        spec.lattice.cavity_decay = 0.4;  // photon states decay, atoms detached (g = 0)
        spec.atoms[0].omega = 0.9;
        spec.atoms[0].points = {{0, 0.0}};
        spec.atoms[1].omega = -0.4;
        spec.atoms[1].points = {{1, 0.0}};
        const SparseOperator H = build_effective_hamiltonian(spec, 1);
        const Basis basis(3, 1);
        StateVector psi0 =
            StateVector::basis_state(1, basis.index_of(BasisState::one_photon(0, 0, 1)), basis.size());

        for (const StateVector& s : evolve(H, psi0, TimeGrid::with_spacing(10.0, 0.5), 1e-12)) {
            // the photon block is closed under hopping, so ||psi||^2 = exp(-Gamma_c t)
            CHECK(std::abs(s.norm2() - std::exp(-0.4 * s.t)) < 1e-8);
        }
    }
    SUBCASE("atomic loss counts excitation quanta") {
        SystemSpec spec;
        spec.lattice.num_sites = 2;
        spec.atoms[0].omega = 0.5;
        spec.atoms[0].anharmonicity = -0.3;
        spec.atoms[0].decay = 0.12;
        spec.atoms[0].points = {{0, 0.0}};
        spec.atoms[1].omega = -0.2;
        spec.atoms[1].points = {{1, 0.0}};
        const SparseOperator H = build_effective_hamiltonian(spec, 2);
        const Basis basis(2, 2);
        StateVector psi0 =
            StateVector::basis_state(2, basis.index_of(BasisState::atoms(2, 0)), basis.size());

        for (const StateVector& s : evolve(H, psi0, TimeGrid::with_spacing(8.0, 1.0), 1e-12)) {
            // |20> is an eigenstate at g = 0 and carries two quanta
            CHECK(std::abs(s.norm2() - std::exp(-2.0 * 0.12 * s.t)) < 1e-8);
        }
    }
}

TEST_CASE("decoupled atom accumulates exactly its transition phase") {
    SystemSpec spec;
    spec.lattice.num_sites = 4;
    spec.atoms[0].omega = 0.73;
    spec.atoms[0].points = {{0, 0.0}};
    spec.atoms[1].omega = -0.21;
    spec.atoms[1].points = {{1, 0.0}};
    const SparseOperator H = build_hamiltonian(spec, 1);
    const Basis basis(4, 1);
    const std::size_t i10 = basis.index_of(BasisState::atoms(1, 0));
    StateVector psi0 = StateVector::basis_state(1, i10, basis.size());

    // eigenstate start exercises the invariant-subspace (breakdown) path
    for (const StateVector& s : evolve(H, psi0, TimeGrid::with_spacing(5.0, 0.25), 1e-12)) {
        const cplx expect = std::exp(cplx(0.0, -0.73 * s.t));
        CHECK(std::abs(s.amp[i10] - expect) < 1e-10);
    }
}

TEST_CASE("t = 0 sample hands the input back bit for bit") {
    const SystemSpec spec = small_spec(5);
    const SparseOperator H = build_hamiltonian(spec, 1);

    // deliberately unnormalized
    StateVector psi0;
    psi0.sector = 1;
    psi0.amp.assign(static_cast<std::size_t>(H.dim()), cplx(0.0));
    psi0.amp[0] = cplx(2.0, -1.0);
    psi0.amp[3] = cplx(0.0, 0.5);

    const std::vector<StateVector> traj = evolve(H, psi0, TimeGrid::with_spacing(1.0, 0.5), 1e-10);
    REQUIRE(traj[0].amp.size() == psi0.amp.size());
    for (std::size_t i = 0; i < psi0.amp.size(); ++i) CHECK(traj[0].amp[i] == psi0.amp[i]);
    CHECK(traj[0].t == 0.0);

    // linearity: the propagator is a linear map
    StateVector half = psi0;
    for (auto& a : half.amp) a *= cplx(0.5, 0.0);
    const std::vector<StateVector> htraj = evolve(H, half, TimeGrid::with_spacing(1.0, 0.5), 1e-10);
    for (std::size_t i = 0; i < psi0.amp.size(); ++i)
        CHECK(std::abs(htraj.back().amp[i] * 2.0 - traj.back().amp[i]) < 1e-9);
}

TEST_CASE("propagation composes in time") {
    const SystemSpec spec = small_spec(6);
    const SparseOperator H = build_hamiltonian(spec, 2);
    const StateVector psi0 = ripple_state(2, static_cast<std::size_t>(H.dim()));

    const std::vector<StateVector> whole = evolve(H, psi0, TimeGrid::with_spacing(9.0, 4.5), 1e-12);
    const std::vector<StateVector> first = evolve(H, psi0, TimeGrid::with_spacing(4.5, 4.5), 1e-12);
    const std::vector<StateVector> second =
        evolve(H, first.back(), TimeGrid::with_spacing(4.5, 4.5), 1e-12);

    REQUIRE(whole.back().amp.size() == second.back().amp.size());
    double err = 0.0;
    for (std::size_t i = 0; i < whole.back().amp.size(); ++i)
        err = std::max(err, std::abs(whole.back().amp[i] - second.back().amp[i]));
    CHECK(err < 1e-9);
}

TEST_CASE("streaming samples agree with materialized states") {
    const SystemSpec spec = small_spec(8);
    const SparseOperator H = build_hamiltonian(spec, 1);
    const StateVector psi0 = ripple_state(1, static_cast<std::size_t>(H.dim()));
    const TimeGrid grid = TimeGrid::with_spacing(4.0, 0.4);

    EvolveOptions opt;
    opt.tol = 1e-11;
    int seen = 0;
    evolve_cb(H, psi0, grid, opt, [&](const Sample& s) {
        CHECK(s.index() == seen);
        CHECK(s.t() == doctest::Approx(grid.time_at(s.index())));
        StateVector full;
        s.materialize(full);
        CHECK(full.t == doctest::Approx(s.t()));
        CHECK(s.norm2() == doctest::Approx(full.norm2()).epsilon(1e-12));
        for (std::size_t row : {std::size_t(0), std::size_t(3), full.dim() - 1})
            CHECK(std::abs(s.amp(row) - full.amp[row]) < 1e-12);
        ++seen;
    });
    CHECK(seen == grid.num_points);
}

TEST_CASE("zero input stays zero without dividing by zero") {
    const SystemSpec spec = small_spec(5);
    const SparseOperator H = build_hamiltonian(spec, 1);
    StateVector psi0;
    psi0.sector = 1;
    psi0.amp.assign(static_cast<std::size_t>(H.dim()), cplx(0.0));

    const std::vector<StateVector> traj = evolve(H, psi0, TimeGrid::with_spacing(2.0, 0.5), 1e-10);
    for (const StateVector& s : traj) CHECK(s.norm2() == 0.0);
}

TEST_CASE("propagation guardrails") {
    const SystemSpec spec = small_spec(60);  // dim > krylov_dim, no single-step shortcut
    const SparseOperator H = build_hamiltonian(spec, 1);
    const StateVector psi0 = ripple_state(1, static_cast<std::size_t>(H.dim()));
    const TimeGrid grid = TimeGrid::with_spacing(10.0, 1.0);

    SUBCASE("step budget") {
        EvolveOptions opt;
        opt.max_steps = 1;
        CHECK_THROWS_AS(evolve_cb(H, psi0, grid, opt, [](const Sample&) {}), convergence_error);
    }
    SUBCASE("tolerance must be positive") {
        EvolveOptions opt;
        opt.tol = 0.0;
        CHECK_THROWS_AS(evolve_cb(H, psi0, grid, opt, [](const Sample&) {}), config_error);
    }
    SUBCASE("dimension mismatch") {
        StateVector bad;
        bad.sector = 1;
        bad.amp.assign(3, cplx(1.0));
        CHECK_THROWS_AS(evolve(H, bad, grid), error);
    }
}
