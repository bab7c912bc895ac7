#include "anyon/dense.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace anyon {

namespace {
const cplx kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
constexpr double kSqrtHalf = 0.70710678118654752440;
} // namespace

DenseState DenseState::vacuum(int n_modes) {
    assert(n_modes >= 2 && n_modes % 2 == 0 && n_modes <= 2 * kMaxQubits);
    return basis(n_modes / 2, 0);
}

DenseState DenseState::basis(int n_qubits, std::uint64_t bits) {
    assert(n_qubits >= 1 && n_qubits <= kMaxQubits);
    std::vector<cplx> a(1ull << n_qubits, cplx(0, 0));
    a[bits] = 1.0;
    return DenseState(n_qubits, std::move(a));
}

void DenseState::apply_pauli(const PauliString& p) {
    assert(p.n == n_);
    std::vector<cplx> out(a_.size());
    cplx ph = kPhase[p.phase & 3];
    for (std::uint64_t b = 0; b < a_.size(); ++b) {
        cplx v = ph * a_[b];
        if (std::popcount(b & p.z) & 1)
            v = -v;
        out[b ^ p.x] = v;
    }
    a_ = std::move(out);
}

void DenseState::apply_braid(int p, int q, bool inverse) {
    DenseState m = *this;
    m.apply_pauli(majorana_monomial({p, q}, n_));
    // B = (1 - c_p c_q)/sqrt(2); the inverse flips the sign of the monomial.
    scale(kSqrtHalf);
    add_scaled(m, inverse ? kSqrtHalf : -kSqrtHalf);
}

void DenseState::apply_double_exchange(int p, int q) {
    // B^2 = -c_p c_q exactly.
    apply_pauli(majorana_monomial({p, q}, n_));
    scale(-1.0);
}

void DenseState::apply_exp_pi4(const PauliString& h, bool inverse) {
    assert(h.is_hermitian());
    DenseState m = *this;
    m.apply_pauli(h);
    scale(kSqrtHalf);
    add_scaled(m, cplx(0, inverse ? -kSqrtHalf : kSqrtHalf));
}

void DenseState::apply_exp_real(int p, int q, int sign) {
    assert(sign == 1 || sign == -1);
    DenseState m = *this;
    m.apply_pauli(majorana_monomial({p, q}, n_));
    scale(kSqrtHalf);
    add_scaled(m, sign * kSqrtHalf);
}

void DenseState::apply_mode_exponent(const std::vector<int>& modes, double angle) {
    PauliString h = hermitian_canonical(majorana_monomial(modes, n_));
    DenseState m = *this;
    m.apply_pauli(h);
    scale(std::cos(angle));
    add_scaled(m, cplx(0, -std::sin(angle)));
}

void DenseState::add_scaled(const DenseState& o, cplx c) {
    assert(o.n_ == n_);
    for (std::uint64_t b = 0; b < a_.size(); ++b)
        a_[b] += c * o.a_[b];
}

void DenseState::scale(cplx c) {
    for (cplx& v : a_)
        v *= c;
}

double DenseState::norm2() const {
    double s = 0;
    for (const cplx& v : a_)
        s += std::norm(v);
    return s;
}

void DenseState::normalize() {
    double n2 = norm2();
    assert(n2 > 0);
    scale(1.0 / std::sqrt(n2));
}

cplx DenseState::inner(const DenseState& o) const {
    assert(o.n_ == n_);
    cplx s(0, 0);
    for (std::uint64_t b = 0; b < a_.size(); ++b)
        s += std::conj(a_[b]) * o.a_[b];
    return s;
}

double DenseState::fidelity(const DenseState& o) const { return std::norm(inner(o)); }

double DenseState::expectation(const PauliString& o) const {
    DenseState m = *this;
    m.apply_pauli(o);
    return inner(m).real();
}

DenseState::MeasureResult DenseState::measure(const PauliString& o, SplitMix64& rng) {
    double e = expectation(o);
    double p0 = std::clamp(0.5 * (1.0 + e), 0.0, 1.0);
    int bit = rng.uniform() < p0 ? 0 : 1;
    return measure_forced(o, bit);
}

DenseState::MeasureResult DenseState::measure_forced(const PauliString& o, int bit) {
    assert(o.is_hermitian());
    DenseState m = *this;
    m.apply_pauli(o);
    double sgn = bit ? -1.0 : 1.0;
    DenseState proj = *this;
    proj.scale(0.5);
    proj.add_scaled(m, 0.5 * sgn);
    double p = proj.norm2();
    if (p < 1e-24)
        return MeasureResult{bit, 0.0, true};
    proj.scale(1.0 / std::sqrt(p));
    a_ = std::move(proj.a_);
    bool det = p > 1.0 - 1e-12;
    return MeasureResult{bit, p, det};
}

int DenseState::schmidt_rank(std::uint64_t qubit_mask, double tol) const {
    // Scatter amplitudes into a (rows = masked qubits) x (cols = rest) matrix.
    int ra = std::popcount(qubit_mask);
    int rb = n_ - ra;
    assert(ra > 0 && rb > 0);
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(1ll << ra, 1ll << rb);
    for (std::uint64_t b = 0; b < a_.size(); ++b) {
        std::uint64_t r = 0, c = 0;
        int ri = 0, ci = 0;
        for (int qb = 0; qb < n_; ++qb) {
            bool bit = (b >> qb) & 1;
            if ((qubit_mask >> qb) & 1) {
                r |= std::uint64_t(bit) << ri++;
            } else {
                c |= std::uint64_t(bit) << ci++;
            }
        }
        mat(static_cast<long>(r), static_cast<long>(c)) = a_[b];
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mat);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0)
        return 0;
    double top = sv(0);
    if (top <= 0)
        return 0;
    int rank = 0;
    for (long i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * top)
            ++rank;
    return rank;
}

DenseState tensor_product(const DenseState& low, const DenseState& high) {
    int n = low.n_qubits() + high.n_qubits();
    assert(n <= DenseState::kMaxQubits);
    DenseState out = DenseState::basis(n, 0);
    out.amps()[0] = 0;
    for (std::uint64_t h = 0; h < high.dim(); ++h) {
        if (high.amps()[h] == cplx(0, 0))
            continue;
        for (std::uint64_t l = 0; l < low.dim(); ++l)
            out.amps()[(h << low.n_qubits()) | l] = high.amps()[h] * low.amps()[l];
    }
    return out;
}

DenseState tableau_to_dense(const StabilizerTableau& t) {
    int n = t.n_qubits();
    assert(n <= DenseState::kMaxQubits);
    for (std::uint64_t seed = 0; seed < (1ull << n); ++seed) {
        DenseState psi = DenseState::basis(n, seed);
        for (const PauliString& g : t.rows()) {
            DenseState m = psi;
            m.apply_pauli(g);
            psi.scale(0.5);
            psi.add_scaled(m, 0.5);
        }
        if (psi.norm2() > 1e-9) {
            psi.normalize();
            return psi;
        }
    }
    assert(false && "stabilizer group has empty +1 eigenspace");
    return DenseState::basis(n, 0);
}

} // namespace anyon
