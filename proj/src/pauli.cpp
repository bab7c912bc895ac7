#include "anyon/pauli.hpp"

#include <algorithm>

namespace anyon {

std::string PauliString::str() const {
    // XZ on one qubit is -iY, so converting letters to {I,X,Y,Z} shifts the
    // displayed phase down by one per Y.
    unsigned shown = (phase + 3u * (static_cast<unsigned>(std::popcount(x & z)) & 3u)) & 3u;
    static const char* prefix[4] = {"+", "+i", "-", "-i"};
    std::string s = prefix[shown];
    s += ' ';
    for (int q = 0; q < n; ++q) {
        bool xb = (x >> q) & 1, zb = (z >> q) & 1;
        s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    return s;
}

PauliString jordan_wigner(int mode, int n_qubits) {
    assert(mode >= 1 && mode <= 2 * n_qubits);
    int j = (mode + 1) / 2; // carrying qubit, 1-based
    std::uint64_t head = 1ull << (j - 1);
    std::uint64_t tail = head - 1;
    if (mode & 1)
        return PauliString{n_qubits, 0, head, tail};
    return PauliString{n_qubits, 1, head, tail | head};
}

PauliString majorana_monomial(const std::vector<int>& modes, int n_qubits) {
    PauliString p = PauliString::identity(n_qubits);
    for (int m : modes)
        p = p * jordan_wigner(m, n_qubits);
    return p;
}

PauliString pair_fusion_observable(int p, int q, int n_qubits) {
    assert(p != q);
    PauliString o = majorana_monomial({p, q}, n_qubits);
    o.phase = (o.phase + 3u) & 3u; // multiply by -i
    assert(o.is_hermitian());
    return o;
}

PauliString quartet_observable(int p, int q, int r, int s, int n_qubits) {
    PauliString o = majorana_monomial({p, q, r, s}, n_qubits);
    assert(o.is_hermitian());
    return o;
}

PauliString hermitian_canonical(const PauliString& p) {
    PauliString r = p;
    r.phase = static_cast<unsigned>(std::popcount(p.x & p.z)) & 1u;
    return r;
}

PauliString embed_at(const PauliString& p, int n_qubits, int qubit_offset) {
    assert(qubit_offset >= 0 && p.n + qubit_offset <= n_qubits);
    PauliString r;
    r.n = n_qubits;
    r.phase = p.phase;
    r.x = p.x << qubit_offset;
    r.z = p.z << qubit_offset;
    return r;
}

MajoranaDecomposition decode_majorana(const PauliString& p) {
    MajoranaDecomposition d;
    // Walk qubits from the top. A mode on qubit j' > j contributes a Z tail
    // at qubit j, so the parity t of modes already seen untwists z bits.
    unsigned t = 0;
    for (int j = p.n; j >= 1; --j) {
        unsigned zb = (p.z >> (j - 1)) & 1u;
        unsigned xb = (p.x >> (j - 1)) & 1u;
        unsigned b = zb ^ t;      // mode 2j present
        unsigned a = xb ^ b;      // mode 2j-1 present
        if (b)
            d.modes.push_back(2 * j);
        if (a)
            d.modes.push_back(2 * j - 1);
        t ^= a ^ b;
    }
    std::reverse(d.modes.begin(), d.modes.end());
    PauliString rebuilt = majorana_monomial(d.modes, p.n);
    assert(rebuilt.x == p.x && rebuilt.z == p.z);
    d.phase = (p.phase - rebuilt.phase + 4u) & 3u;
    return d;
}

} // namespace anyon
