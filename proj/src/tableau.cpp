#include "anyon/tableau.hpp"

#include <algorithm>

namespace anyon {

namespace {

// Column c of the GF(2) row space: x bits first, then z bits.
inline bool col_bit(const PauliString& p, int c) {
    int n = p.n;
    return c < n ? ((p.x >> c) & 1) : ((p.z >> (c - n)) & 1);
}

} // namespace

StabilizerTableau StabilizerTableau::vacuum(int n_modes) {
    assert(n_modes >= 2 && n_modes % 2 == 0 && n_modes <= 64);
    int nq = n_modes / 2;
    std::vector<PauliString> rows;
    rows.reserve(nq);
    for (int j = 1; j <= nq; ++j)
        rows.push_back(pair_fusion_observable(2 * j - 1, 2 * j, nq));
    return StabilizerTableau(std::move(rows));
}

StabilizerTableau StabilizerTableau::from_generators(std::vector<PauliString> generators) {
    assert(!generators.empty());
    for (std::size_t i = 0; i < generators.size(); ++i) {
        assert(generators[i].n == static_cast<int>(generators.size()));
        assert(generators[i].is_hermitian());
        for (std::size_t j = i + 1; j < generators.size(); ++j)
            assert(generators[i].commutes(generators[j]));
    }
    StabilizerTableau t(std::move(generators));
    t.canonicalize(); // asserts full rank, i.e. independence
    return t;
}

void StabilizerTableau::apply_braid(int p, int q, bool inverse) {
    // B g B^dag = -(c_p c_q) g for anticommuting g; the inverse drops the sign.
    PauliString m = majorana_monomial({p, q}, n_qubits());
    for (PauliString& g : rows_) {
        if (g.commutes(m))
            continue;
        g = m * g;
        if (!inverse)
            g.phase = (g.phase + 2u) & 3u;
        assert(g.is_hermitian());
    }
}

void StabilizerTableau::apply_double_exchange(int p, int q) {
    apply_braid(p, q);
    apply_braid(p, q);
}

void StabilizerTableau::apply_exp_pi4(const PauliString& h, bool inverse) {
    assert(h.is_hermitian());
    // exp(i pi/4 h) g exp(-i pi/4 h) = -i g h for anticommuting g.
    for (PauliString& g : rows_) {
        if (g.commutes(h))
            continue;
        g = g * h;
        g.phase = (g.phase + (inverse ? 1u : 3u)) & 3u;
        assert(g.is_hermitian());
    }
}

void StabilizerTableau::apply_pauli(const PauliString& p) {
    assert(p.n == n_qubits());
    for (PauliString& g : rows_)
        if (!g.commutes(p))
            g.phase = (g.phase + 2u) & 3u;
}

int StabilizerTableau::expectation(const PauliString& o) const {
    assert(o.is_hermitian() && o.n == n_qubits());
    for (const PauliString& g : rows_)
        if (!g.commutes(o))
            return 0;
    // o commutes with the full group of a pure state, so +-o is a product of
    // generators. Reduce o's bit pattern against an echelonized copy.
    std::vector<PauliString> work = canonical_rows();
    int n2 = 2 * n_qubits();
    PauliString acc = PauliString::identity(n_qubits());
    std::size_t next = 0;
    for (int c = 0; c < n2 && next < work.size(); ++c) {
        if (!col_bit(work[next], c))
            continue; // not a pivot column of the echelon form
        if (col_bit(o, c) != col_bit(acc, c))
            acc = acc * work[next];
        ++next;
    }
    assert(acc.x == o.x && acc.z == o.z);
    unsigned d = (o.phase - acc.phase + 4u) & 3u;
    assert(d == 0 || d == 2);
    return d == 0 ? 1 : -1;
}

StabilizerTableau::MeasureResult StabilizerTableau::measure(const PauliString& o,
                                                            SplitMix64& rng) {
    assert(o.is_hermitian() && o.n == n_qubits());
    std::vector<int> anti;
    for (int i = 0; i < n_qubits(); ++i)
        if (!rows_[i].commutes(o))
            anti.push_back(i);
    if (anti.empty()) {
        int val = expectation(o);
        return MeasureResult{val < 0 ? 1 : 0, 1.0, true};
    }
    int a = anti[0];
    for (std::size_t i = 1; i < anti.size(); ++i)
        rows_[anti[i]] = rows_[anti[i]] * rows_[a];
    int bit = rng.bernoulli(0.5) ? 1 : 0;
    rows_[a] = bit ? o.negated() : o;
    return MeasureResult{bit, 0.5, false};
}

StabilizerTableau::MeasureResult StabilizerTableau::measure_forced(const PauliString& o,
                                                                   int bit) {
    assert(o.is_hermitian() && o.n == n_qubits());
    std::vector<int> anti;
    for (int i = 0; i < n_qubits(); ++i)
        if (!rows_[i].commutes(o))
            anti.push_back(i);
    if (anti.empty()) {
        int val = expectation(o);
        int det = val < 0 ? 1 : 0;
        if (det != bit)
            return MeasureResult{bit, 0.0, true};
        return MeasureResult{bit, 1.0, true};
    }
    int a = anti[0];
    for (std::size_t i = 1; i < anti.size(); ++i)
        rows_[anti[i]] = rows_[anti[i]] * rows_[a];
    rows_[a] = bit ? o.negated() : o;
    return MeasureResult{bit, 0.5, false};
}

void StabilizerTableau::canonicalize() {
    int n2 = 2 * n_qubits();
    std::size_t rank = 0;
    for (int c = 0; c < n2 && rank < rows_.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows_.size() && !col_bit(rows_[pivot], c))
            ++pivot;
        if (pivot == rows_.size())
            continue;
        std::swap(rows_[rank], rows_[pivot]);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (i != rank && col_bit(rows_[i], c))
                rows_[i] = rows_[i] * rows_[rank];
        ++rank;
    }
    assert(rank == rows_.size());
}

std::vector<PauliString> StabilizerTableau::canonical_rows() const {
    StabilizerTableau t = *this;
    t.canonicalize();
    return t.rows_;
}

bool StabilizerTableau::same_state(const StabilizerTableau& o) const {
    return canonical_rows() == o.canonical_rows();
}

} // namespace anyon
