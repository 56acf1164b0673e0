#include "gacz/hilbert.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace gacz {

void LatticeSpec::validate() const {
    if (num_sites < 2)
        throw config_error("lattice needs at least 2 sites, got " + std::to_string(num_sites));
    if (!(hopping > 0.0))
        throw config_error("hopping J must be positive");
    if (cavity_decay < 0.0)
        throw config_error("cavity decay rate must be >= 0");
}

void SystemSpec::validate() const {
    lattice.validate();
    for (int m = 0; m < 2; ++m) {
        const AtomSpec& a = atoms[m];
        if (a.decay < 0.0)
            throw config_error("atom " + std::to_string(m + 1) + " decay rate must be >= 0");
        if (a.points.empty())
            throw config_error("atom " + std::to_string(m + 1) + " needs at least one coupling point");
        std::vector<int> sites;
        for (const CouplingPoint& p : a.points) {
            if (p.site < 0 || p.site >= lattice.num_sites)
                throw config_error("atom " + std::to_string(m + 1) + " coupling point at site " +
                                   std::to_string(p.site + 1) + " outside lattice of " +
                                   std::to_string(lattice.num_sites) + " sites");
            sites.push_back(p.site);
        }
        std::sort(sites.begin(), sites.end());
        if (std::adjacent_find(sites.begin(), sites.end()) != sites.end())
            throw config_error("atom " + std::to_string(m + 1) + " has duplicate coupling-point sites");
    }
}

BasisState BasisState::atoms(int n1, int n2) {
    BasisState s;
    s.kind = Kind::AtomsOnly;
    s.n1 = n1;
    s.n2 = n2;
    return s;
}

BasisState BasisState::one_photon(int n1, int n2, int j) {
    BasisState s;
    s.kind = Kind::OnePhoton;
    s.n1 = n1;
    s.n2 = n2;
    s.j = j;
    return s;
}

BasisState BasisState::two_photon(int j, int k) {
    BasisState s;
    s.kind = Kind::TwoPhoton;
    s.j = std::min(j, k);
    s.k = std::max(j, k);
    return s;
}

std::size_t sector_dimension(int num_sites, int sector) {
    const std::size_t N = static_cast<std::size_t>(num_sites);
    switch (sector) {
        case 0: return 1;
        case 1: return N + 2;
        case 2: return 3 + 2 * N + N * (N + 1) / 2;
        default:
            throw unsupported_sector_error("sector " + std::to_string(sector) +
                                           " not supported (three-level atoms cap sectors at 2)");
    }
}

Basis::Basis(int num_sites, int sector) : N_(num_sites), sector_(sector) {
    if (num_sites < 1)
        throw config_error("basis needs at least one lattice site");
    size_ = sector_dimension(num_sites, sector);  // throws on bad sector
}

std::size_t Basis::two_photon_index(int j, int k) const {
    // Row-major upper triangle: offset of row j is j*N - j(j-1)/2.
    const std::size_t J = static_cast<std::size_t>(j), K = static_cast<std::size_t>(k);
    const std::size_t N = static_cast<std::size_t>(N_);
    return 3 + 2 * N + J * N - J * (J - 1) / 2 + (K - J);
}

BasisState Basis::state_at(std::size_t index) const {
    if (index >= size_)
        throw not_found_error("basis index " + std::to_string(index) + " out of range");
    const std::size_t N = static_cast<std::size_t>(N_);
    switch (sector_) {
        case 0:
            return BasisState::atoms(0, 0);
        case 1:
            if (index == 0) return BasisState::atoms(1, 0);
            if (index == 1) return BasisState::atoms(0, 1);
            return BasisState::one_photon(0, 0, static_cast<int>(index - 2));
        default: {  // sector 2
            if (index == 0) return BasisState::atoms(2, 0);
            if (index == 1) return BasisState::atoms(1, 1);
            if (index == 2) return BasisState::atoms(0, 2);
            if (index < 3 + N) return BasisState::one_photon(1, 0, static_cast<int>(index - 3));
            if (index < 3 + 2 * N) return BasisState::one_photon(0, 1, static_cast<int>(index - 3 - N));
            // Invert the triangular layout by scanning rows; size is O(N)
            // but this path only serves diagnostics and tests.
            std::size_t rem = index - (3 + 2 * N);
            for (int j = 0; j < N_; ++j) {
                const std::size_t row = static_cast<std::size_t>(N_ - j);
                if (rem < row) return BasisState::two_photon(j, j + static_cast<int>(rem));
                rem -= row;
            }
            throw not_found_error("two-photon index decode failed");  // unreachable
        }
    }
}

std::size_t Basis::index_of(const BasisState& s) const {
    const std::size_t N = static_cast<std::size_t>(N_);
    auto bad = [&]() -> std::size_t {
        throw not_found_error("state does not belong to sector " + std::to_string(sector_));
    };
    if (s.n1 < 0 || s.n2 < 0) return bad();
    const int total = s.n1 + s.n2 + (s.kind == BasisState::Kind::OnePhoton ? 1 : 0) +
                      (s.kind == BasisState::Kind::TwoPhoton ? 2 : 0);
    if (total != sector_) return bad();

    switch (s.kind) {
        case BasisState::Kind::AtomsOnly:
            if (sector_ == 0) return 0;
            if (sector_ == 1) return s.n1 == 1 ? 0 : 1;
            if (s.n1 == 2) return 0;
            if (s.n1 == 1) return 1;
            return 2;
        case BasisState::Kind::OnePhoton: {
            if (s.j < 0 || s.j >= N_) return bad();
            if (sector_ == 1) return 2 + static_cast<std::size_t>(s.j);
            if (sector_ != 2) return bad();
            if (s.n1 == 1 && s.n2 == 0) return 3 + static_cast<std::size_t>(s.j);
            if (s.n1 == 0 && s.n2 == 1) return 3 + N + static_cast<std::size_t>(s.j);
            return bad();
        }
        case BasisState::Kind::TwoPhoton: {
            if (sector_ != 2 || s.j < 0 || s.k >= N_) return bad();
            const int j = std::min(s.j, s.k), k = std::max(s.j, s.k);
            return two_photon_index(j, k);
        }
    }
    return bad();
}

std::vector<BasisState> enumerate_basis(const SystemSpec& spec, int sector) {
    spec.validate();
    Basis b(spec.lattice.num_sites, sector);
    std::vector<BasisState> out;
    out.reserve(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out.push_back(b.state_at(i));
    return out;
}

std::size_t index_of(const BasisState& s, const Basis& basis) { return basis.index_of(s); }

} // namespace gacz
