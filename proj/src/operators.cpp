#include "gacz/operators.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <tuple>

namespace gacz {
namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

class Builder {
public:
    explicit Builder(std::size_t dim) : n_(dim) {}

    void add(std::size_t i, std::size_t j, cplx v) { trip_.push_back({i, j, v}); }

    // Hermitian pair: v at (i,j) and conj(v) at (j,i).
    void add_sym(std::size_t i, std::size_t j, cplx v) {
        add(i, j, v);
        add(j, i, std::conj(v));
    }

    Csr finish() {
        std::sort(trip_.begin(), trip_.end(), [](const Trip& a, const Trip& b) {
            return std::tie(a.i, a.j) < std::tie(b.i, b.j);
        });
        Csr m;
        m.n = static_cast<int>(n_);
        m.ptr.assign(n_ + 1, 0);
        for (std::size_t t = 0; t < trip_.size();) {
            std::size_t u = t;
            cplx acc = 0.0;
            while (u < trip_.size() && trip_[u].i == trip_[t].i && trip_[u].j == trip_[t].j)
                acc += trip_[u++].v;
            if (acc != 0.0) {
                m.col.push_back(static_cast<int>(trip_[t].j));
                m.val.push_back(acc);
                ++m.ptr[trip_[t].i + 1];
            }
            t = u;
        }
        for (std::size_t i = 0; i < n_; ++i) m.ptr[i + 1] += m.ptr[i];
        return m;
    }

private:
    struct Trip {
        std::size_t i, j;
        cplx v;
    };
    std::size_t n_;
    std::vector<Trip> trip_;
};

void add_photon_hopping_one(const Basis& b, double J, std::size_t base, Builder& out) {
    // one-photon block starting at `base`: |..>|j> <-> |..>|j+1>, amplitude -J
    const int N = b.num_sites();
    for (int j = 0; j + 1 < N; ++j)
        out.add_sym(base + static_cast<std::size_t>(j), base + static_cast<std::size_t>(j) + 1, -J);
}

void add_photon_hopping_two(const Basis& b, double J, Builder& out) {
    // |jk> (j<=k) -> move either photon one site; entering or leaving a
    // doubly occupied site scales by sqrt(2) (a^dag sqrt factors).
    const int N = b.num_sites();
    for (int j = 0; j < N; ++j) {
        for (int k = j; k < N; ++k) {
            const std::size_t src = b.two_photon_index(j, k);
            auto hop = [&](int ja, int ka) {
                if (ja < 0 || ka >= N) return;  // open boundaries
                // canonical target
                const int tj = std::min(ja, ka), tk = std::max(ja, ka);
                double amp = -J;
                if (j == k) amp *= kSqrt2;    // leaving |jj>
                if (tj == tk) amp *= kSqrt2;  // entering |jj>
                out.add(src, b.two_photon_index(tj, tk), amp);
            };
            // move the photon at k rightward, the photon at j leftward; the
            // mirror moves are generated when visiting the neighbouring state,
            // so emit all four directed moves here instead of add_sym.
            hop(j, k + 1);
            hop(j - 1, k);
            if (j != k) {  // distinct photons: also move the inner edges
                hop(j + 1, k);
                hop(j, k - 1);
            }
        }
    }
}

void add_couplings_sector2(const SystemSpec& spec, const Basis& b, Builder& out) {
    const int N = b.num_sites();
    const std::size_t i20 = 0, i11 = 1, i02 = 2;
    const auto i10 = [&](int j) { return 3 + static_cast<std::size_t>(j); };
    const auto i01 = [&](int j) { return 3 + static_cast<std::size_t>(N + j); };

    for (const CouplingPoint& p : spec.atoms[0].points) {
        const int x = p.site;
        const double g = p.strength;
        out.add_sym(i20, i10(x), kSqrt2 * g);  // |2>->|1> ladder carries sqrt(2)
        out.add_sym(i11, i01(x), g);
        for (int j = 0; j < N; ++j) {
            const double boson = (x == j) ? kSqrt2 : 1.0;  // photon added on top of |j>
            out.add_sym(i10(j), b.two_photon_index(std::min(x, j), std::max(x, j)), g * boson);
        }
    }
    for (const CouplingPoint& p : spec.atoms[1].points) {
        const int x = p.site;
        const double g = p.strength;
        out.add_sym(i02, i01(x), kSqrt2 * g);
        out.add_sym(i11, i10(x), g);
        for (int j = 0; j < N; ++j) {
            const double boson = (x == j) ? kSqrt2 : 1.0;
            out.add_sym(i01(j), b.two_photon_index(std::min(x, j), std::max(x, j)), g * boson);
        }
    }
}

} // namespace

SparseOperator build_hamiltonian(const SystemSpec& spec, int sector) {
    spec.validate();
    const int N = spec.lattice.num_sites;
    const double J = spec.lattice.hopping;
    const double w1 = spec.atoms[0].omega, w2 = spec.atoms[1].omega;
    Basis b(N, sector);
    Builder out(b.size());

    if (sector == 0) {
        // single vacuum state, zero energy in the rotating frame
    } else if (sector == 1) {
        out.add(0, 0, w1);
        out.add(1, 1, w2);
        add_photon_hopping_one(b, J, 2, out);
        for (const CouplingPoint& p : spec.atoms[0].points)
            out.add_sym(0, 2 + static_cast<std::size_t>(p.site), p.strength);
        for (const CouplingPoint& p : spec.atoms[1].points)
            out.add_sym(1, 2 + static_cast<std::size_t>(p.site), p.strength);
    } else {
        out.add(0, 0, 2.0 * w1 + spec.atoms[0].anharmonicity);
        out.add(1, 1, w1 + w2);
        out.add(2, 2, 2.0 * w2 + spec.atoms[1].anharmonicity);
        for (int j = 0; j < N; ++j) {
            out.add(3 + static_cast<std::size_t>(j), 3 + static_cast<std::size_t>(j), w1);
            out.add(3 + static_cast<std::size_t>(N + j), 3 + static_cast<std::size_t>(N + j), w2);
        }
        add_photon_hopping_one(b, J, 3, out);
        add_photon_hopping_one(b, J, 3 + static_cast<std::size_t>(N), out);
        add_photon_hopping_two(b, J, out);
        add_couplings_sector2(spec, b, out);
    }

    SparseOperator op;
    op.mat = out.finish();
    op.hermitian = true;
    op.sector = sector;
    return op;
}

SparseOperator build_effective_hamiltonian(const SystemSpec& spec, int sector) {
    SparseOperator op = build_hamiltonian(spec, sector);
    const double gq = spec.atoms[0].decay;  // both atoms share Gamma_q per the model
    const double gq2 = spec.atoms[1].decay;
    const double gc = spec.lattice.cavity_decay;
    if (gq == 0.0 && gq2 == 0.0 && gc == 0.0) return op;

    Basis b(spec.lattice.num_sites, sector);
    // -i/2 * (Gamma_q1 * n_atom1 + Gamma_q2 * n_atom2 + Gamma_c * n_photons)
    Builder extra(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        const BasisState s = b.state_at(i);
        const int nph = s.kind == BasisState::Kind::OnePhoton   ? 1
                        : s.kind == BasisState::Kind::TwoPhoton ? 2
                                                                : 0;
        const double rate = gq * s.n1 + gq2 * s.n2 + gc * nph;
        if (rate != 0.0) extra.add(i, i, cplx(0.0, -0.5 * rate));
    }
    Csr d = extra.finish();
    // merge: both matrices are CSR with sorted columns; d is diagonal
    Builder merged(b.size());
    for (int i = 0; i < op.mat.n; ++i)
        for (int p = op.mat.ptr[i]; p < op.mat.ptr[i + 1]; ++p)
            merged.add(static_cast<std::size_t>(i), static_cast<std::size_t>(op.mat.col[p]),
                       op.mat.val[p]);
    for (int i = 0; i < d.n; ++i)
        for (int p = d.ptr[i]; p < d.ptr[i + 1]; ++p)
            merged.add(static_cast<std::size_t>(i), static_cast<std::size_t>(d.col[p]), d.val[p]);
    op.mat = merged.finish();
    op.hermitian = false;
    return op;
}

void dump_coo(const SparseOperator& op, std::ostream& os) {
    for (int i = 0; i < op.mat.n; ++i)
        for (int p = op.mat.ptr[i]; p < op.mat.ptr[i + 1]; ++p)
            os << i << ' ' << op.mat.col[p] << ' ' << op.mat.val[p].real() << ' '
               << op.mat.val[p].imag() << '\n';
}

} // namespace gacz
