#pragma once

#include <iosfwd>

#include "gacz/hilbert.hpp"
#include "gacz/kernels.hpp"

namespace gacz {

struct SparseOperator {
    Csr mat;
    bool hermitian = true;
    int sector = 0;

    int dim() const { return mat.n; }
};

// Projected Hamiltonian in the given excitation sector (0, 1 or 2), in
// the rotating frame (cavity frequency dropped). Diagonal: atomic
// energies (|20> -> 2*w1+a1, |11> -> w1+w2, |02> -> 2*w2+a2, single
// atomic excitation -> its omega, photons -> 0). Off-diagonal:
//   - nearest-neighbour hopping -J with open boundaries; moving a photon
//     onto/off a doubly occupied site picks up the bosonic sqrt(2)
//   - atom-photon exchange g at each coupling point; the |1>global<->|2> leg
//     carries sqrt(2) from the ladder matrix elements, and creating a
//     photon where one already sits carries another sqrt(2)
SparseOperator build_hamiltonian(const SystemSpec& spec, int sector);

// Same plus the quantum-jump-free decay diagonal: -i*Gamma_q/2 per atomic
// excitation quantum and -i*Gamma_c/2 per photon. Clears the hermitian
// flag whenever any rate is nonzero.
SparseOperator build_effective_hamiltonian(const SystemSpec& spec, int sector);

// Coordinate-format text dump (row col re im per line) for cross-language
// oracle diffing.
void dump_coo(const SparseOperator& op, std::ostream& os);

} // namespace gacz
