#pragma once

#include "anyon/pauli.hpp"
#include "anyon/rng.hpp"

#include <vector>

namespace anyon {

// Stabilizer tableau of a pure state: n independent, pairwise commuting
// Hermitian Pauli generators on n qubits (2n Majorana modes). Elementary
// braids, double exchanges and pi/4 monomial exponents act by conjugation;
// fusion-channel measurements act by generator replacement. This engine is
// exact and polynomial-size; the dense statevector engine cross-checks it.
class StabilizerTableau {
public:
    // |0...0>: each mode pair (2j-1, 2j) fused to the vacuum channel.
    static StabilizerTableau vacuum(int n_modes);

    // Builds a tableau from explicit generators; they must be Hermitian,
    // pairwise commuting, independent and one per qubit.
    static StabilizerTableau from_generators(std::vector<PauliString> generators);

    int n_qubits() const { return static_cast<int>(rows_.size()); }
    int n_modes() const { return 2 * n_qubits(); }
    const std::vector<PauliString>& rows() const { return rows_; }

    // Counterclockwise exchange of modes p and q: B = (1 - c_p c_q)/sqrt(2).
    // Conjugation sends c_p -> c_q and c_q -> -c_p.
    void apply_braid(int p, int q, bool inverse = false);

    // Braid applied twice: c_p -> -c_p, c_q -> -c_q (a phase gate on the pair).
    void apply_double_exchange(int p, int q);

    // exp(+i pi/4 h) for Hermitian Pauli h (h^2 = I), e.g. a quartet
    // monomial rotation. inverse applies exp(-i pi/4 h).
    void apply_exp_pi4(const PauliString& h, bool inverse = false);

    // Applies a Pauli operator as a unitary correction (global phase is not
    // tracked): generators anticommuting with it flip sign.
    void apply_pauli(const PauliString& p);

    // +1 or -1 when o (or -o) lies in the stabilizer group, 0 when the
    // measurement outcome would be random.
    int expectation(const PauliString& o) const;

    struct MeasureResult {
        int bit = 0;             // outcome bit t, eigenvalue (-1)^t
        double prob = 1.0;       // probability of this branch
        bool deterministic = true;
    };

    // Projective measurement of a Hermitian Pauli observable.
    MeasureResult measure(const PauliString& o, SplitMix64& rng);

    // Forces the outcome (branch enumeration). A deterministic mismatch
    // returns prob 0 and leaves the state untouched.
    MeasureResult measure_forced(const PauliString& o, int bit);

    // In-place unique row-reduced form over the (x|z) bit columns with exact
    // sign tracking; equal states have identical canonical rows.
    void canonicalize();
    std::vector<PauliString> canonical_rows() const;

    bool same_state(const StabilizerTableau& o) const;

private:
    explicit StabilizerTableau(std::vector<PauliString> rows) : rows_(std::move(rows)) {}

    std::vector<PauliString> rows_;
};

} // namespace anyon
