#include "anyon/pauli.hpp"

#include <doctest.h>

using namespace anyon;

TEST_CASE("jordan-wigner images act as the documented Pauli operators") {
    // Mode 1 -> X on qubit 1, mode 2 -> Y on qubit 1, mode 3 -> Z tail + X.
    PauliString c1 = jordan_wigner(1, 2);
    CHECK(c1.phase == 0);
    CHECK(c1.x == 0b01);
    CHECK(c1.z == 0b00);

    PauliString c2 = jordan_wigner(2, 2);
    CHECK(c2.phase == 1); // i * XZ = Y
    CHECK(c2.x == 0b01);
    CHECK(c2.z == 0b01);
    CHECK(c2.str() == "+ YI");

    PauliString c3 = jordan_wigner(3, 2);
    CHECK(c3.phase == 0);
    CHECK(c3.x == 0b10);
    CHECK(c3.z == 0b01);
    CHECK(c3.str() == "+ ZX");
}

TEST_CASE("mode operators are hermitian, square to identity, anticommute") {
    const int nq = 4;
    for (int p = 1; p <= 2 * nq; ++p) {
        PauliString cp = jordan_wigner(p, nq);
        CHECK(cp.is_hermitian());
        CHECK((cp * cp).is_identity());
        for (int q = p + 1; q <= 2 * nq; ++q)
            CHECK(!cp.commutes(jordan_wigner(q, nq)));
    }
}

TEST_CASE("monomials carry the fermionic phase bookkeeping") {
    PauliString m12 = majorana_monomial({1, 2}, 2);
    CHECK(m12.phase == 1); // c1 c2 = i Z1
    CHECK(m12.x == 0);
    CHECK(m12.z == 0b01);

    PauliString m1234 = majorana_monomial({1, 2, 3, 4}, 2);
    CHECK(m1234.phase == 2); // c1 c2 c3 c4 = -Z1 Z2
    CHECK(m1234.x == 0);
    CHECK(m1234.z == 0b11);

    // Reordering a pair flips the sign.
    CHECK(majorana_monomial({2, 1}, 2) == m12.negated());
    // Repeated modes cancel.
    CHECK(majorana_monomial({3, 3}, 2).is_identity());
}

TEST_CASE("fusion-channel pair observable is -i c_p c_q") {
    // -i c1 c2 = Z1: vacuum channel of the first pair has eigenvalue +1.
    PauliString o = pair_fusion_observable(1, 2, 2);
    CHECK(o.phase == 0);
    CHECK(o.x == 0);
    CHECK(o.z == 0b01);
    CHECK(o.is_hermitian());

    // Non-adjacent pair keeps the fusion orientation, not the sign-free one.
    PauliString o13 = pair_fusion_observable(1, 3, 2);
    CHECK(o13.phase == 3);
    PauliString canon = hermitian_canonical(majorana_monomial({1, 3}, 2));
    CHECK(canon.phase == 1);
    CHECK(canon == o13.negated());
}

TEST_CASE("quartet observable is the plain ordered product") {
    PauliString o = quartet_observable(1, 2, 3, 4, 2);
    CHECK(o == majorana_monomial({1, 2, 3, 4}, 2));
    CHECK(o.is_hermitian());
    // On 4 qubits with a Z tail through uninvolved modes.
    CHECK(quartet_observable(1, 2, 5, 6, 4).is_hermitian());
}

TEST_CASE("product phase convention matches operator composition") {
    const int nq = 3;
    // (c1 c2)(c2 c3) = c1 c3.
    PauliString lhs = majorana_monomial({1, 2}, nq) * majorana_monomial({2, 3}, nq);
    CHECK(lhs == majorana_monomial({1, 3}, nq));
    // Adjoint of anti-hermitian pair product flips the order.
    PauliString m = majorana_monomial({2, 5}, nq);
    CHECK(m.adjoint() == majorana_monomial({5, 2}, nq));
}

TEST_CASE("decode recovers the mode list and residual phase") {
    const int nq = 5;
    SUBCASE("simple pairs") {
        auto d = decode_majorana(majorana_monomial({1, 4}, nq));
        CHECK(d.modes == std::vector<int>{1, 4});
        CHECK(d.phase == 0);
    }
    SUBCASE("with a sign") {
        auto d = decode_majorana(majorana_monomial({7, 2, 9}, nq));
        CHECK(d.modes == std::vector<int>{2, 7, 9});
        CHECK(d.phase == 2); // one swap sorts (7,2,9) -> (2,7,9), costing -1
        PauliString rebuilt = majorana_monomial(d.modes, nq);
        rebuilt.phase = (rebuilt.phase + d.phase) & 3u;
        CHECK(rebuilt == majorana_monomial({7, 2, 9}, nq));
    }
    SUBCASE("random monomials round-trip") {
        for (int trial = 0; trial < 64; ++trial) {
            std::vector<int> modes;
            for (int m = 1; m <= 2 * nq; ++m)
                if ((trial * 2654435761u + m * 40503u) % 3 == 0)
                    modes.push_back(((m * 7) % (2 * nq)) + 1);
            // dedupe preserving first occurrence
            std::vector<int> uniq;
            for (int m : modes) {
                bool dup = false;
                for (int u : uniq)
                    dup |= (u == m);
                if (!dup)
                    uniq.push_back(m);
            }
            PauliString p = majorana_monomial(uniq, nq);
            auto d = decode_majorana(p);
            PauliString rebuilt = majorana_monomial(d.modes, nq);
            rebuilt.phase = (rebuilt.phase + d.phase) & 3u;
            CHECK(rebuilt == p);
            for (std::size_t i = 1; i < d.modes.size(); ++i)
                CHECK(d.modes[i - 1] < d.modes[i]);
        }
    }
}

TEST_CASE("block embedding relocates even products without tails") {
    CHECK(embed_at(pair_fusion_observable(1, 2, 2), 4, 2) ==
          pair_fusion_observable(5, 6, 4));
    CHECK(embed_at(pair_fusion_observable(1, 4, 2), 4, 2) ==
          pair_fusion_observable(5, 8, 4));
    CHECK(embed_at(majorana_monomial({1, 2, 3, 4}, 2), 4, 2) ==
          majorana_monomial({5, 6, 7, 8}, 4));
    // Offset zero widens the register but keeps low-block content.
    CHECK(embed_at(pair_fusion_observable(1, 2, 2), 4, 0) ==
          pair_fusion_observable(1, 2, 4));
}
