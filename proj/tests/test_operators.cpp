#include "doctest.h"

#include "gacz/operators.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <sstream>
#include <vector>

using namespace gacz;

namespace {

// Independent dense oracle built from occupation-number bookkeeping: states
// are (n1, n2, photon occupations), and every term is applied with textbook
// ladder factors. No shared code with the CSR builder.
struct OccState {
    int n1 = 0, n2 = 0;
    std::vector<int> occ;

    bool operator<(const OccState& o) const {
        if (n1 != o.n1) return n1 < o.n1;
        if (n2 != o.n2) return n2 < o.n2;
        return occ < o.occ;
    }
};

BasisState to_basis_state(const OccState& s) {
    int total = 0, first = -1, second = -1;
    for (std::size_t j = 0; j < s.occ.size(); ++j) {
        for (int c = 0; c < s.occ[j]; ++c) {
            if (first < 0)
                first = static_cast<int>(j);
            else
                second = static_cast<int>(j);
            ++total;
        }
    }
    if (total == 0) return BasisState::atoms(s.n1, s.n2);
    if (total == 1) return BasisState::one_photon(s.n1, s.n2, first);
    return BasisState::two_photon(first, second);
}

Eigen::MatrixXcd dense_oracle(const SystemSpec& spec, int sector, bool effective) {
    const int n = spec.lattice.num_sites;
    const Basis basis(n, sector);
    const auto dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

    const auto occ_of = [&](std::size_t idx) {
        const BasisState b = basis.state_at(idx);
        OccState s;
        s.n1 = b.n1;
        s.n2 = b.n2;
        s.occ.assign(n, 0);
        if (b.kind == BasisState::Kind::OnePhoton) s.occ[b.j] += 1;
        if (b.kind == BasisState::Kind::TwoPhoton) {
            s.occ[b.j] += 1;
            s.occ[b.k] += 1;
        }
        return s;
    };

    const auto add = [&](std::size_t col, const OccState& row_state, cplx amp) {
        const std::size_t row = basis.index_of(to_basis_state(row_state));
        h(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += amp;
    };

    const double J = spec.lattice.hopping;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const OccState s = occ_of(i);

        const auto atom_energy = [&](int m, int nq) {
            const AtomSpec& a = spec.atoms[m];
            if (nq == 0) return 0.0;
            if (nq == 1) return a.omega;
            return 2.0 * a.omega + a.anharmonicity;
        };
        double diag = atom_energy(0, s.n1) + atom_energy(1, s.n2);
        cplx diag_c = diag;
        if (effective) {
            int photons = 0;
            for (int c : s.occ) photons += c;
            const double rate = spec.atoms[0].decay * s.n1 + spec.atoms[1].decay * s.n2 +
                                spec.lattice.cavity_decay * photons;
            diag_c += cplx(0.0, -0.5 * rate);
        }
        add(i, s, diag_c);

        // hopping: -J sum_j (a_{j+1}^dag a_j + a_j^dag a_{j+1})
        for (int j = 0; j < n; ++j) {
            if (s.occ[j] == 0) continue;
            for (int dir : {-1, +1}) {
                const int j2 = j + dir;
                if (j2 < 0 || j2 >= n) continue;
                OccState t = s;
                const double amp = std::sqrt(t.occ[j]) * std::sqrt(t.occ[j2] + 1);
                t.occ[j] -= 1;
                t.occ[j2] += 1;
                add(i, t, -J * amp);
            }
        }

        // couplings: g_p (sigma_m^+ a_x + sigma_m^- a_x^dag), ladder
        // element sqrt(nq + 1) on the atom side
        for (int m = 0; m < 2; ++m) {
            const int nq = m == 0 ? s.n1 : s.n2;
            for (const CouplingPoint& p : spec.atoms[m].points) {
                if (nq < 2 && s.occ[p.site] > 0) {  // absorb
                    OccState t = s;
                    const double amp = std::sqrt(nq + 1) * std::sqrt(t.occ[p.site]);
                    t.occ[p.site] -= 1;
                    (m == 0 ? t.n1 : t.n2) += 1;
                    add(i, t, p.strength * amp);
                }
                if (nq > 0) {  // emit
                    OccState t = s;
                    const double amp = std::sqrt(nq) * std::sqrt(t.occ[p.site] + 1);
                    t.occ[p.site] += 1;
                    (m == 0 ? t.n1 : t.n2) -= 1;
                    add(i, t, p.strength * amp);
                }
            }
        }
    }
    return h;
}

Eigen::MatrixXcd to_dense(const SparseOperator& op) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(op.dim(), op.dim());
    for (int i = 0; i < op.dim(); ++i)
        for (int q = op.mat.ptr[i]; q < op.mat.ptr[i + 1]; ++q) h(i, op.mat.col[q]) += op.mat.val[q];
    return h;
}

SystemSpec oracle_spec(int n) {
    SystemSpec s;
    s.lattice.num_sites = n;
    s.lattice.cavity_decay = 0.0;
    s.atoms[0] = {0.17, -0.34, 0.0, {{0, 0.1}, {1, 0.197}, {2, 0.1}}};
    s.atoms[1] = {-0.17, -0.67, 0.0, {{1, 0.1}, {3, 0.21}}};
    return s;
}

} // namespace

TEST_CASE("hamiltonian matches the occupation-number oracle") {
    for (int n : {4, 5, 6}) {
        const SystemSpec spec = oracle_spec(n);
        for (int sector : {1, 2}) {
            const SparseOperator op = build_hamiltonian(spec, sector);
            REQUIRE(op.dim() == static_cast<int>(sector_dimension(n, sector)));
            CHECK(op.hermitian);
            const Eigen::MatrixXcd a = to_dense(op);
            const Eigen::MatrixXcd b = dense_oracle(spec, sector, false);
            CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
}

TEST_CASE("effective hamiltonian adds the decay diagonal") {
    SystemSpec spec = oracle_spec(5);
    spec.atoms[0].decay = 1.6e-5;
    spec.atoms[1].decay = 3.0e-5;
    spec.lattice.cavity_decay = 8.0e-5;
    for (int sector : {1, 2}) {
        const SparseOperator op = build_effective_hamiltonian(spec, sector);
        CHECK_FALSE(op.hermitian);
        const Eigen::MatrixXcd a = to_dense(op);
        const Eigen::MatrixXcd b = dense_oracle(spec, sector, true);
        CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
    }
    // zero rates keep the plain Hamiltonian and the hermitian flag
    spec.atoms[0].decay = spec.atoms[1].decay = 0.0;
    spec.lattice.cavity_decay = 0.0;
    CHECK(build_effective_hamiltonian(spec, 2).hermitian);
}

TEST_CASE("hamiltonian is hermitian with sorted csr rows") {
    const SystemSpec spec = oracle_spec(30);
    const SparseOperator op = build_hamiltonian(spec, 2);
    std::map<std::pair<int, int>, cplx> entries;
    for (int i = 0; i < op.dim(); ++i) {
        int prev = -1;
        for (int q = op.mat.ptr[i]; q < op.mat.ptr[i + 1]; ++q) {
            CHECK(op.mat.col[q] > prev);
            prev = op.mat.col[q];
            entries[{i, op.mat.col[q]}] = op.mat.val[q];
        }
    }
    for (const auto& [key, val] : entries) {
        const auto mirror = entries.find({key.second, key.first});
        REQUIRE(mirror != entries.end());
        CHECK(std::abs(val - std::conj(mirror->second)) <= 1e-15);
    }
}

TEST_CASE("sector 0 is the trivial vacuum block") {
    const SparseOperator op = build_hamiltonian(oracle_spec(6), 0);
    CHECK(op.dim() == 1);
    CHECK(to_dense(op).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coo dump is row col re im") {
    SystemSpec s;
    s.lattice.num_sites = 2;
    s.atoms[0] = {1.5, -2.0, 0.0, {{0, 0.3}}};
    s.atoms[1] = {-1.5, -1.0, 0.0, {{1, 0.2}}};
    const SparseOperator op = build_hamiltonian(s, 1);
    std::ostringstream os;
    dump_coo(op, os);
    std::istringstream in(os.str());
    int row, col, count = 0;
    double re, im;
    std::map<std::pair<int, int>, cplx> seen;
    while (in >> row >> col >> re >> im) {
        seen[{row, col}] = cplx(re, im);
        ++count;
    }
    CHECK(count == static_cast<int>(op.mat.nnz()));
    CHECK(seen.at({0, 0}) == cplx(1.5, 0.0));   // |10> energy
    CHECK(seen.at({0, 2}) == cplx(0.3, 0.0));   // |10> <-> |00>|0>
    CHECK(seen.at({2, 3}) == cplx(-1.0, 0.0));  // hopping
}
