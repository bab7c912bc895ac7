#include "anyon/protocols.hpp"

#include "anyon/a8.hpp"
#include "anyon/groups.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

using namespace anyon;

namespace {

constexpr double kTol = 1e-10;

DenseState plus_state() { return encode_logical(std::sqrt(0.5), std::sqrt(0.5)); }

DenseState generic_two_qubit() {
    DenseState st = DenseState::vacuum(4);
    st.amps() = {cplx(0.8, 0.0), cplx(0.0, 0.36), cplx(-0.3, 0.1), cplx(0.25, 0.31)};
    st.normalize();
    return st;
}

std::vector<int> unpack_bits(int value, int count) {
    std::vector<int> bits(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) bits[static_cast<std::size_t>(j)] = (value >> j) & 1;
    return bits;
}

} // namespace

TEST_CASE("logical operators close under the pauli algebra") {
    const int nq = 2;
    CHECK(logical_z(nq) * logical_x(nq) == logical_y(nq).times_i());
    CHECK(logical_z(nq).commutes(logical_code_check(nq)));
    CHECK(logical_x(nq).commutes(logical_code_check(nq)));
    CHECK(!logical_z(nq).commutes(logical_x(nq)));

    // Offset copies act on their own quartet and commute with the first.
    CHECK(logical_z(4, 4) * logical_x(4, 4) == logical_y(4, 4).times_i());
    CHECK(logical_z(4).commutes(logical_x(4, 4)));

    const DenseState zero = encode_logical(1.0, 0.0);
    const DenseState one = encode_logical(0.0, 1.0);
    CHECK(zero.expectation(logical_z(nq)) == doctest::Approx(1.0));
    CHECK(one.expectation(logical_z(nq)) == doctest::Approx(-1.0));
    CHECK(zero.expectation(logical_code_check(nq)) == doctest::Approx(1.0));
    CHECK(one.expectation(logical_code_check(nq)) == doctest::Approx(1.0));

    DenseState flipped = zero;
    flipped.apply_pauli(logical_x(nq));
    CHECK(flipped.fidelity(one) == doctest::Approx(1.0));
}

TEST_CASE("hadamard braid word exchanges the logical axes") {
    DenseState st = encode_logical(1.0, 0.0);
    apply_braid_word(st, logical_hadamard_word());
    CHECK(std::abs(st.expectation(logical_x(2)) - 1.0) < kTol);

    DenseState plus = plus_state();
    apply_braid_word(plus, logical_hadamard_word());
    CHECK(plus.fidelity(encode_logical(1.0, 0.0)) == doctest::Approx(1.0));

    // Word followed by its inverse is the identity.
    DenseState probe = generic_two_qubit();
    DenseState copy = probe;
    apply_braid_word(probe, logical_hadamard_word());
    apply_braid_word(probe, logical_hadamard_word(), true);
    CHECK(std::abs(probe.inner(copy) - cplx(1.0, 0.0)) < kTol);
}

TEST_CASE("a8 preparation via the quartic exponent is deterministic and exact") {
    // The braid-prepared pairing puts (1,7), (2,8), (3,5), (4,6) into the
    // vacuum channel.
    StabilizerTableau paired = StabilizerTableau::vacuum(8);
    apply_braid_word(paired, braid_word_for(SignedPerm::from_table(
                                 {{1, 1}, {7, 1}, {2, 1}, {8, 1}, {3, 1}, {5, 1}, {4, 1}, {6, 1}})));
    CHECK(paired.expectation(pair_fusion_observable(1, 7, 4)) == 1);
    CHECK(paired.expectation(pair_fusion_observable(2, 8, 4)) == 1);
    CHECK(paired.expectation(pair_fusion_observable(3, 5, 4)) == 1);
    CHECK(paired.expectation(pair_fusion_observable(4, 6, 4)) == 1);

    const StabilizerTableau st = prepare_a8_from_exponent();
    CHECK(st.same_state(octet_syndrome_tableau(0)));
    CHECK(tableau_to_dense(st).fidelity(octet_ancilla_state()) == doctest::Approx(1.0));

    // The raw braid+exponent output lands one half twist away from the
    // target: checks 2 and 3 and the quartic c1c3c6c8 already hold, while
    // check 1 comes out inverted until the (2,3) exchange repairs it.
    StabilizerTableau raw = StabilizerTableau::vacuum(8);
    apply_braid_word(raw, braid_word_for(SignedPerm::from_table(
                              {{1, 1}, {7, 1}, {2, 1}, {8, 1}, {3, 1}, {5, 1}, {4, 1}, {6, 1}})));
    raw.apply_exp_pi4(majorana_monomial({1, 2, 3, 6}, 4));
    CHECK(raw.expectation(octet_check(2)) == 1);
    CHECK(raw.expectation(octet_check(3)) == 1);
    CHECK(raw.expectation(majorana_monomial({1, 3, 6, 8}, 4)) == 1);
    CHECK(raw.expectation(octet_check(1)) == -1);
    // On the repaired state that quartic flips sign: the target group holds
    // the negated monomial, the product of all three checks with the parity.
    CHECK(octet_check(1) * octet_check(2) * octet_check(3) * octet_parity() ==
          majorana_monomial({1, 3, 6, 8}, 4).negated());
    CHECK(st.expectation(majorana_monomial({1, 3, 6, 8}, 4)) == -1);
}

TEST_CASE("a8 preparation via a quartet measurement repairs both outcomes") {
    for (int bit = 0; bit < 2; ++bit) {
        const PreparedA8 p = prepare_a8_from_quartet(bit);
        CHECK(p.prob == doctest::Approx(0.5));
        CHECK(p.quartet_bit == bit);
        CHECK(p.state.same_state(octet_syndrome_tableau(0)));
        CHECK(tableau_to_dense(p.state).fidelity(octet_ancilla_state()) ==
              doctest::Approx(1.0));
    }
    SplitMix64 rng(7);
    const PreparedA8 sampled = prepare_a8_from_quartet(rng);
    CHECK(sampled.state.same_state(octet_syndrome_tableau(0)));
}

TEST_CASE("teleported quartet measurement reproduces projective statistics") {
    const PauliString quartet = majorana_monomial({1, 2, 3, 4}, 2);

    // Both pairs in the vacuum channel: the quartet monomial evaluates to -1,
    // so only even-parity branches survive and the reported bit is 1.
    for (int t = 0; t < 16; ++t) {
        const auto bits = unpack_bits(t, 4);
        DenseState st = with_a8_ancilla(DenseState::basis(2, 0));
        MeasurementDriver drv(bits);
        const TeleportedMeasurement tm = measure_quartet_teleported(st, drv);
        const int parity = bits[0] ^ bits[1] ^ bits[2] ^ bits[3];
        if (parity == 0) {
            CHECK(drv.branch_prob == doctest::Approx(1.0 / 8.0));
            CHECK(tm.bit == 1);
        } else {
            CHECK(drv.branch_prob == doctest::Approx(0.0));
        }
    }

    // Equal superposition of the two quartet eigenspaces: every branch shows
    // up with probability 1/16.
    DenseState half = DenseState::vacuum(4);
    half.amps()[0b00] = std::sqrt(0.5);
    half.amps()[0b01] = std::sqrt(0.5);
    REQUIRE(std::abs(half.expectation(quartet)) < kTol);
    for (int t : {0, 1, 6, 15}) {
        DenseState st = with_a8_ancilla(half);
        MeasurementDriver drv(unpack_bits(t, 4));
        const TeleportedMeasurement tm = measure_quartet_teleported(st, drv);
        CHECK(drv.branch_prob == doctest::Approx(1.0 / 16.0));
        const int parity = __builtin_popcount(static_cast<unsigned>(t)) & 1;
        CHECK(tm.bit == (parity ^ 1));
    }

    // Generic input: branch probabilities split the eigenspace weight across
    // the eight outcome strings of each parity class and the output lands on
    // the last two qubits next to a reset register.
    const DenseState input = generic_two_qubit();
    const double even_weight = 0.5 * (1.0 - input.expectation(quartet));
    for (int t = 0; t < 16; ++t) {
        const auto bits = unpack_bits(t, 4);
        DenseState st = with_a8_ancilla(input);
        MeasurementDriver drv(bits);
        const TeleportedMeasurement tm = measure_quartet_teleported(st, drv);
        const int parity = bits[0] ^ bits[1] ^ bits[2] ^ bits[3];
        const double expected = (parity == 0 ? even_weight : 1.0 - even_weight) / 8.0;
        CHECK(std::abs(drv.branch_prob - expected) < kTol);
        CHECK(tm.bit == (parity ^ 1));

        DenseState projected = input;
        DenseState flipped = input;
        flipped.apply_pauli(quartet);
        projected.add_scaled(flipped, parity == 0 ? -1.0 : 1.0);
        projected.scale(0.5);
        projected.normalize();
        const DenseState ref = tensor_product(DenseState::basis(4, 0), projected);
        CHECK(st.fidelity(ref) > 1.0 - kTol);
    }
}

TEST_CASE("uncorrected teleport branches match the labeled reference states") {
    const DenseState input = generic_two_qubit();
    const PauliString quartet = majorana_monomial({1, 2, 3, 4}, 2);

    DenseState shuffled = with_a8_ancilla(input);
    apply_braid_word(shuffled, quartet_reshuffle_word());

    for (int t : {0b0000, 0b0011, 0b0101, 0b0001, 0b0111}) {
        const auto bits = unpack_bits(t, 4);
        DenseState st = shuffled;
        for (int j = 0; j < 4; ++j)
            st.measure_forced(pair_fusion_observable(2 * j + 1, 2 * j + 2, 6),
                              bits[static_cast<std::size_t>(j)]);

        const int parity = bits[0] ^ bits[1] ^ bits[2] ^ bits[3];
        DenseState projected = input;
        DenseState flipped = input;
        flipped.apply_pauli(quartet);
        projected.add_scaled(flipped, parity == 0 ? -1.0 : 1.0);
        projected.scale(0.5);
        projected.normalize();
        DenseState ref = tensor_product(DenseState::basis(4, 0), projected);

        std::vector<int> modes;
        for (int j = 0; j < 4; ++j)
            if (bits[static_cast<std::size_t>(j)]) modes.push_back(2 * (j + 1));
        for (int j = 0; j < 4; ++j)
            if (bits[static_cast<std::size_t>(j)]) modes.push_back(9 + j);
        if (!modes.empty()) ref.apply_pauli(majorana_monomial(modes, 6));

        CHECK(st.fidelity(ref) > 1.0 - kTol);
    }
}

TEST_CASE("embedded quartet measurement equals reshuffle plus pair readout") {
    const DenseState workspace = with_a8_ancilla(generic_two_qubit());
    for (int t : {0, 3, 5, 9, 15}) {
        const auto bits = unpack_bits(t, 4);

        DenseState direct = workspace;
        MeasurementDriver drv_a(bits);
        const TeleportedMeasurement tm_a = measure_quartet_teleported(direct, drv_a);

        DenseState embedded = workspace;
        MeasurementDriver drv_b(bits);
        const TeleportedMeasurement tm_b = measure_quartet_linked(
            embedded, {1, 2, 3, 4}, {5, 6, 7, 8, 9, 10, 11, 12}, drv_b);
        apply_braid_word(embedded, quartet_reshuffle_word());

        CHECK(tm_a.bit == tm_b.bit);
        CHECK(std::abs(drv_a.branch_prob - drv_b.branch_prob) < kTol);
        if (drv_a.branch_prob > kTol)
            CHECK(std::abs(embedded.inner(direct) - cplx(1.0, 0.0)) < kTol);
    }

    // Content relocation: a quartet eigenstate teleports unchanged onto the
    // back half of the octet while every spent pair fuses definitely.
    DenseState st = with_a8_ancilla(DenseState::basis(2, 0b01));
    SplitMix64 rng(11);
    MeasurementDriver drv(rng);
    ResourceTally tally;
    const TeleportedMeasurement tm =
        measure_quartet_linked(st, {1, 2, 3, 4}, {5, 6, 7, 8, 9, 10, 11, 12}, drv, &tally);
    CHECK(tm.bit == 0); // eigenvalue +1 input
    CHECK(std::abs(st.expectation(pair_fusion_observable(9, 10, 6)) + 1.0) < kTol);
    CHECK(std::abs(st.expectation(pair_fusion_observable(11, 12, 6)) - 1.0) < kTol);
    for (int j = 0; j < 4; ++j)
        CHECK(std::abs(std::abs(st.expectation(pair_fusion_observable(j + 1, j + 5, 6))) -
                       1.0) < kTol);
    CHECK(tally.a8_states == 1);
    CHECK(tally.pair_measurements == 4);
}

TEST_CASE("quartic exponent from measurements matches the direct unitary") {
    DenseState base = tensor_product(generic_two_qubit(), DenseState::vacuum(2));
    DenseState ref = base;
    ref.apply_exp_pi4(majorana_monomial({1, 2, 3, 4}, 3));

    for (int z = 0; z < 2; ++z)
        for (int y = 0; y < 2; ++y) {
            DenseState st = base;
            MeasurementDriver drv({z, y});
            ExponentPlan plan;
            plan.tuple = {1, 2, 3, 4};
            plan.ancilla = {5, 6};
            ResourceTally tally;
            const ExponentOutcome out = apply_quartic_exponent(st, plan, drv, &tally);
            CHECK(std::abs(drv.branch_prob - 0.25) < kTol);
            // Phase-exact: the corrected branch equals the unitary itself.
            CHECK(std::abs(st.inner(ref) - cplx(1.0, 0.0)) < kTol);
            CHECK(std::abs(st.expectation(pair_fusion_observable(5, 6, 3)) - 1.0) < kTol);
            CHECK(out.tuple_after == std::array<int, 4>{1, 2, 3, 4});
            CHECK(tally.quartet_measurements == 1);
            CHECK(tally.pair_measurements == 1);
        }

    // Tuple order carries the sign of the exponent: swapping two labels
    // implements the inverse rotation.
    DenseState inv_ref = base;
    inv_ref.apply_exp_pi4(majorana_monomial({1, 2, 3, 4}, 3), true);
    DenseState st = base;
    MeasurementDriver drv({0, 0});
    ExponentPlan plan;
    plan.tuple = {2, 1, 3, 4};
    plan.ancilla = {5, 6};
    apply_quartic_exponent(st, plan, drv);
    CHECK(std::abs(st.inner(inv_ref) - cplx(1.0, 0.0)) < kTol);
}

TEST_CASE("direct controlled-z is exact including the global phase") {
    for (int b = 0; b < 4; ++b) {
        std::array<cplx, 4> amps{};
        amps[static_cast<std::size_t>(b)] = 1.0;
        DenseState st = encode_logical_pair(amps);
        apply_controlled_z_direct(st);
        const double sign = b == 3 ? -1.0 : 1.0;
        CHECK(std::abs(st.inner(encode_logical_pair(amps)) - cplx(sign, 0.0)) < kTol);
    }

    // It entangles the plus-plus product state.
    const std::array<cplx, 4> plus{0.5, 0.5, 0.5, 0.5};
    DenseState st = encode_logical_pair(plus);
    CHECK(st.schmidt_rank(0b0011) == 1);
    apply_controlled_z_direct(st);
    CHECK(st.schmidt_rank(0b0011) == 2);
}

TEST_CASE("teleported controlled-z reproduces the direct gate branch by branch") {
    const std::array<std::array<cplx, 4>, 3> inputs{{
        {cplx(0.5, 0.0), cplx(0.5, 0.0), cplx(0.5, 0.0), cplx(0.5, 0.0)},
        {cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(1.0, 0.0)},
        {cplx(0.5, 0.0), cplx(0.0, 0.5), cplx(-0.5, 0.0), cplx(0.35, 0.35)},
    }};
    for (const auto& amps : inputs) {
        DenseState ref = encode_logical_pair(amps);
        ref.normalize();
        apply_controlled_z_direct(ref);
        for (int branch : {0, 7, 18, 31}) {
            DenseState st = controlled_z_workspace(amps);
            st.normalize();
            MeasurementDriver drv(unpack_bits(branch, 5));
            const TeleportedCz out = apply_controlled_z_teleported(st, drv);
            CHECK(std::abs(drv.branch_prob - 1.0 / 32.0) < kTol);
            CHECK(teleported_cz_fidelity(std::move(st), out, ref) > 1.0 - kTol);
        }
    }

    // Resource ledger for one sampled run.
    SplitMix64 rng(3);
    MeasurementDriver drv(rng);
    ResourceTally tally;
    DenseState st = controlled_z_workspace({cplx(0.5, 0.0), cplx(0.5, 0.0), cplx(0.5, 0.0),
                                            cplx(0.5, 0.0)});
    apply_controlled_z_teleported(st, drv, &tally);
    CHECK(tally.a8_states == 1);
    CHECK(tally.a4_states == 0);
    CHECK(tally.pair_measurements == 5);
    CHECK(tally.quartet_measurements == 0);
    CHECK(tally.braids >= 3);
}

TEST_CASE("pi/8 injection applies the phase gate and recycles the ancilla") {
    // Mismatched readouts never happen.
    {
        DenseState st = tensor_product(plus_state(), a4_state());
        MeasurementDriver drv({0, 1});
        inject_pi8(st, drv);
        CHECK(drv.branch_prob == doctest::Approx(0.0));
    }

    // Double application turns |+> into (|0> + i|1>)/sqrt(2).
    const cplx ii(0.0, 1.0);
    DenseState st = tensor_product(plus_state(), a4_state());
    SplitMix64 rng(5);
    MeasurementDriver drv(rng);
    ResourceTally tally;
    InjectionOutcome oc = inject_pi8(st, drv, &tally);
    CHECK(oc.ancilla_bit == oc.joint_bit);
    CHECK(tally.a4_states == 1);

    DenseState data = DenseState::vacuum(4);
    const std::uint64_t anc = oc.ancilla_bit ? 0b11u : 0b00u;
    for (std::uint64_t k = 0; k < 4; ++k)
        data.amps()[k] = st.amps()[k | (anc << 2)];
    REQUIRE(data.norm2() == doctest::Approx(1.0));

    DenseState again = tensor_product(data, a4_state());
    MeasurementDriver drv2(rng);
    oc = inject_pi8(again, drv2);
    DenseState out = DenseState::vacuum(4);
    const std::uint64_t anc2 = oc.ancilla_bit ? 0b11u : 0b00u;
    for (std::uint64_t k = 0; k < 4; ++k)
        out.amps()[k] = again.amps()[k | (anc2 << 2)];
    CHECK(out.fidelity(encode_logical(std::sqrt(0.5), ii * std::sqrt(0.5))) ==
          doctest::Approx(1.0));
}

TEST_CASE("dephased ancillas degrade the injected gate linearly") {
    const std::array<cplx, 2> plus{std::sqrt(0.5), std::sqrt(0.5)};
    CHECK(injection_infidelity(plus, 0.0) < kTol);
    // The plus state is maximally sensitive: infidelity = eps exactly.
    CHECK(injection_infidelity(plus, 0.01) == doctest::Approx(0.01).epsilon(1e-9));
    CHECK(injection_infidelity(plus, 0.05) == doctest::Approx(0.05).epsilon(1e-9));

    // Linearity in the mixture weight holds for any input.
    const std::array<cplx, 2> skew{cplx(0.6, 0.0), cplx(0.0, 0.8)};
    CHECK(injection_infidelity(skew, 0.0) < kTol);
    const double unit = injection_infidelity(skew, 0.01) / 0.01;
    CHECK(injection_infidelity(skew, 0.05) == doctest::Approx(0.05 * unit).epsilon(1e-9));
}

TEST_CASE("clean-ancilla gate teleportation is exact for arbitrary inputs") {
    const std::array<std::array<cplx, 2>, 4> inputs{{
        {cplx(1.0, 0.0), cplx(0.0, 0.0)},
        {cplx(0.0, 0.0), cplx(1.0, 0.0)},
        {cplx(0.6, 0.0), cplx(0.0, 0.8)},
        {cplx(0.3, -0.4), cplx(0.5, 0.70710678118654752)},
    }};
    for (const auto& in : inputs) CHECK(injection_infidelity(in, 0.0) < kTol);
}

TEST_CASE("protocol verification reports are exhaustive and exact") {
    const auto reports = verify_protocols("all");
    REQUIRE(reports.size() == 6);
    const std::array<const char*, 6> names{"o3-o1", "o2-o1", "o1-o2",
                                           "o2-o3", "cz",    "inject-t"};
    const std::array<std::size_t, 6> branch_counts{1, 2, 16, 4, 32, 2};
    for (std::size_t i = 0; i < reports.size(); ++i) {
        CAPTURE(reports[i].name);
        CHECK(reports[i].name == names[i]);
        CHECK(reports[i].branches.size() == branch_counts[i]);
        CHECK(reports[i].min_fidelity > 1.0 - kTol);
        CHECK(reports[i].max_prob_error < kTol);
        double total = 0.0;
        for (const auto& b : reports[i].branches) total += b.prob;
        CHECK(total == doctest::Approx(1.0));
    }

    CHECK(verify_protocols("cz").size() == 1);
    CHECK_THROWS_AS(verify_protocols("bogus"), std::invalid_argument);
}

TEST_CASE("measurement driver guards its forced bit list") {
    DenseState st = encode_logical(1.0, 0.0);
    MeasurementDriver drv({0});
    drv.measure(st, logical_z(2));
    CHECK_THROWS_AS(drv.measure(st, logical_z(2)), std::logic_error);
}
