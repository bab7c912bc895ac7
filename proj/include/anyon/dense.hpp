#pragma once

#include "anyon/pauli.hpp"
#include "anyon/rng.hpp"
#include "anyon/tableau.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace anyon {

using cplx = std::complex<double>;

// Dense statevector engine. Exact up to floating point, exponential in the
// qubit count, capped at 14 qubits (16384 amplitudes); it serves as the
// ground-truth oracle for the stabilizer engine and for protocols that leave
// the Clifford orbit (pi/8 phases, magic states).
class DenseState {
public:
    static constexpr int kMaxQubits = 14;

    static DenseState vacuum(int n_modes);
    static DenseState basis(int n_qubits, std::uint64_t bits);

    int n_qubits() const { return n_; }
    int n_modes() const { return 2 * n_; }
    std::uint64_t dim() const { return 1ull << n_; }
    const std::vector<cplx>& amps() const { return a_; }
    std::vector<cplx>& amps() { return a_; }

    void apply_pauli(const PauliString& p); // psi <- P psi
    void apply_braid(int p, int q, bool inverse = false);
    void apply_double_exchange(int p, int q);
    void apply_exp_pi4(const PauliString& h, bool inverse = false); // exp(+-i pi/4 h), h^2 = I
    // exp(s * pi/4 * c_p c_q), s = +-1: the "real" pair exponent (M^2 = -1).
    void apply_exp_real(int p, int q, int sign);

    // exp(-i * angle * H) where H is the sign-free Hermitian representative
    // of the ordered mode monomial (hermitian_canonical). At angle pi/4 the
    // quadratic case reproduces an elementary braid up to orientation.
    void apply_mode_exponent(const std::vector<int>& modes, double angle);

    void add_scaled(const DenseState& o, cplx c); // psi += c * o
    void scale(cplx c);

    double norm2() const;
    void normalize();
    cplx inner(const DenseState& o) const;      // <this | o>
    double fidelity(const DenseState& o) const; // |<this|o>|^2 (states assumed normalized)

    struct MeasureResult {
        int bit = 0;
        double prob = 1.0;
        bool deterministic = false;
    };
    MeasureResult measure(const PauliString& o, SplitMix64& rng);
    // Forced branch; prob 0 leaves the state untouched.
    MeasureResult measure_forced(const PauliString& o, int bit);
    double expectation(const PauliString& o) const; // real part of <psi|O|psi>

    // Schmidt rank across the bipartition (qubits in mask) vs (rest),
    // counting singular values above tol relative to the largest.
    int schmidt_rank(std::uint64_t qubit_mask, double tol = 1e-10) const;

private:
    DenseState(int n, std::vector<cplx> a) : n_(n), a_(std::move(a)) {}

    int n_ = 0;
    std::vector<cplx> a_;
};

// Expands a stabilizer state by projecting basis seeds; deterministic
// (first seed of nonzero norm, scanned in increasing order).
DenseState tableau_to_dense(const StabilizerTableau& t);

// Tensor product with `low` on the low-order qubits (modes 1..2k) and
// `high` above it (modes 2k+1..).
DenseState tensor_product(const DenseState& low, const DenseState& high);

} // namespace anyon
