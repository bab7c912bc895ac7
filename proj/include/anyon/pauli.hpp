#pragma once

#include <cassert>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace anyon {

// Pauli operator with an explicit phase prefactor:
//
//     P = i^phase * X^x * Z^z
//
// where bit j-1 of the masks corresponds to qubit j (qubits are 1-based in
// every public interface). X factors stand to the left of Z factors on each
// qubit. Majorana fermion operators map onto this form through the
// Jordan-Wigner transformation below; products, commutation checks and
// Hermiticity are all O(1) bit operations.
struct PauliString {
    int n = 0;           // number of qubits (<= 64)
    unsigned phase = 0;  // exponent of i, kept reduced mod 4
    std::uint64_t x = 0; // X support
    std::uint64_t z = 0; // Z support

    static PauliString identity(int n_qubits) { return PauliString{n_qubits, 0, 0, 0}; }

    bool is_identity() const { return x == 0 && z == 0 && phase == 0; }

    // P is Hermitian iff phase == popcount(x & z) (mod 2): each qubit with
    // both X and Z set contributes one anticommuting swap under dagger.
    bool is_hermitian() const {
        return ((phase ^ static_cast<unsigned>(std::popcount(x & z))) & 1u) == 0;
    }

    bool commutes(const PauliString& o) const {
        int cross = std::popcount(x & o.z) + std::popcount(z & o.x);
        return (cross & 1) == 0;
    }

    PauliString operator*(const PauliString& o) const {
        assert(n == o.n);
        PauliString r;
        r.n = n;
        r.phase = (phase + o.phase + 2u * (static_cast<unsigned>(std::popcount(z & o.x)) & 1u)) & 3u;
        r.x = x ^ o.x;
        r.z = z ^ o.z;
        return r;
    }

    PauliString adjoint() const {
        PauliString r = *this;
        r.phase = (4u - phase + 2u * (static_cast<unsigned>(std::popcount(x & z)) & 1u)) & 3u;
        return r;
    }

    PauliString negated() const {
        PauliString r = *this;
        r.phase = (phase + 2u) & 3u;
        return r;
    }

    PauliString times_i() const {
        PauliString r = *this;
        r.phase = (phase + 1u) & 3u;
        return r;
    }

    bool operator==(const PauliString& o) const = default;

    // Human-readable form, e.g. "-i YIXZ" (qubit 1 first). The displayed
    // phase absorbs the -i per Y so that letters are the usual Pauli matrices.
    std::string str() const;
};

// Jordan-Wigner image of Majorana mode operators (modes are 1-based, two per
// qubit). Mode 2j-1 acts as X on qubit j with a Z tail on qubits 1..j-1;
// mode 2j acts as Y on qubit j with the same tail. All images are Hermitian,
// square to the identity and pairwise anticommute.
PauliString jordan_wigner(int mode, int n_qubits);

// Ordered operator product c_{m1} c_{m2} ... c_{mk}; order matters because
// distinct modes anticommute. Repeated modes cancel per c^2 = 1.
PauliString majorana_monomial(const std::vector<int>& modes, int n_qubits);

// Fusion-channel observable of a mode pair: -i c_p c_q. Eigenvalue +1 on the
// vacuum channel of the pair (p, q) in its natural orientation p < q.
PauliString pair_fusion_observable(int p, int q, int n_qubits);

// Plain ordered quartet product c_p c_q c_r c_s (Hermitian for distinct modes).
PauliString quartet_observable(int p, int q, int r, int s, int n_qubits);

// Same x/z support with the phase reduced to the unique value in {0, 1} that
// keeps the operator Hermitian. This is the sign-free representative used
// when projecting onto a monomial without a caller-specified orientation.
PauliString hermitian_canonical(const PauliString& p);

// The same operator on a wider register, with qubit j relocated to qubit
// j + qubit_offset. For fermionic operators this is the block relocation of
// an even-parity product, whose Jordan-Wigner tail cancels below the block.
PauliString embed_at(const PauliString& p, int n_qubits, int qubit_offset);

// Inverse of majorana_monomial up to phase: recovers the increasing mode list
// and the residual i^phase relative to the ascending-order product.
struct MajoranaDecomposition {
    std::vector<int> modes;  // strictly increasing
    unsigned phase = 0;      // p == i^phase * majorana_monomial(modes)
};
MajoranaDecomposition decode_majorana(const PauliString& p);

} // namespace anyon
