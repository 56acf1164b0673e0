#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "gacz/errors.hpp"

namespace gacz {

// All energies are in units of the hopping J, all times in 1/J.
// The frame rotates at the cavity frequency, so band_center is kept only
// as metadata and never enters matrix elements.

struct LatticeSpec {
    int num_sites = 0;          // N
    double hopping = 1.0;       // J, the global energy unit
    double band_center = 0.0;   // omega_c, 0 in the rotating frame
    double cavity_decay = 0.0;  // Gamma_c >= 0

    void validate() const;
};

struct CouplingPoint {
    int site = 0;           // 0-based internally; printed 1-based
    double strength = 0.0;  // g at this point, units of J
};

struct AtomSpec {
    double omega = 0.0;          // transition frequency relative to band center
    double anharmonicity = 0.0;  // alpha
    double decay = 0.0;          // Gamma_q >= 0
    std::vector<CouplingPoint> points;
};

struct SystemSpec {
    LatticeSpec lattice;
    std::array<AtomSpec, 2> atoms;

    // Throws config_error on out-of-range sites, duplicate coupling
    // points within one atom, or negative decay rates.
    void validate() const;
};

// One element of a fixed-excitation basis. Photon pairs are stored
// canonically with j <= k (|jk> and |kj> are the same bosonic state).
struct BasisState {
    enum class Kind { AtomsOnly, OnePhoton, TwoPhoton };
    Kind kind = Kind::AtomsOnly;
    int n1 = 0, n2 = 0;  // atomic excitation numbers
    int j = -1, k = -1;  // photon site(s); TwoPhoton keeps j <= k

    static BasisState atoms(int n1, int n2);
    static BasisState one_photon(int n1, int n2, int j);
    static BasisState two_photon(int j, int k);  // canonicalizes order

    bool operator==(const BasisState&) const = default;
};

// Index layout (deterministic across runs/platforms):
//   sector 2: |20>, |11>, |02>, then |10>|j> (j asc), |01>|j>, then
//             |jk> with (j,k) lexicographic, j <= k
//   sector 1: |10>, |01>, then |00>|j> (j asc)
//   sector 0: |00>
// Sizes: 3 + 2N + N(N+1)/2, N + 2, 1.
class Basis {
public:
    Basis(int num_sites, int sector);  // throws unsupported_sector_error

    int sector() const { return sector_; }
    int num_sites() const { return N_; }
    std::size_t size() const { return size_; }

    BasisState state_at(std::size_t index) const;
    std::size_t index_of(const BasisState& s) const;  // O(1); throws not_found_error

    // Closed-form index of the canonical |jk>, j <= k, within sector 2.
    std::size_t two_photon_index(int j, int k) const;

private:
    int N_;
    int sector_;
    std::size_t size_;
};

std::size_t sector_dimension(int num_sites, int sector);

// Spec-level entry point: full enumeration in basis order.
std::vector<BasisState> enumerate_basis(const SystemSpec& spec, int sector);
std::size_t index_of(const BasisState& s, const Basis& basis);

} // namespace gacz
