#include "anyon/protocols.hpp"

#include "anyon/a8.hpp"
#include "anyon/groups.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace anyon {

namespace {

constexpr double kPi = 3.14159265358979323846;

cplx eighth_turn() { return {std::cos(kPi / 4), std::sin(kPi / 4)}; }

} // namespace

PauliString logical_z(int n_qubits, int base_mode) {
    return pair_fusion_observable(base_mode + 1, base_mode + 2, n_qubits);
}

PauliString logical_x(int n_qubits, int base_mode) {
    return pair_fusion_observable(base_mode + 2, base_mode + 3, n_qubits);
}

PauliString logical_y(int n_qubits, int base_mode) {
    // sigma_z sigma_x = i sigma_y fixes the orientation: +i c1 c3.
    return pair_fusion_observable(base_mode + 1, base_mode + 3, n_qubits).negated();
}

PauliString logical_code_check(int n_qubits, int base_mode) {
    return majorana_monomial(
               {base_mode + 1, base_mode + 2, base_mode + 3, base_mode + 4}, n_qubits)
        .negated();
}

DenseState encode_logical(cplx amp0, cplx amp1) {
    DenseState st = DenseState::vacuum(4);
    st.amps()[0b00] = amp0;
    st.amps()[0b11] = amp1;
    return st;
}

DenseState encode_logical_pair(const std::array<cplx, 4>& amps) {
    DenseState st = DenseState::vacuum(8);
    st.amps()[0b0000] = amps[0];
    st.amps()[0b0011] = amps[1];
    st.amps()[0b1100] = amps[2];
    st.amps()[0b1111] = amps[3];
    return st;
}

DenseState a4_state() {
    const double r = 1.0 / std::sqrt(2.0);
    return encode_logical(r, r * eighth_turn());
}

std::vector<std::pair<int, int>> logical_hadamard_word(int base_mode) {
    return {{base_mode + 1, base_mode + 2},
            {base_mode + 2, base_mode + 3},
            {base_mode + 1, base_mode + 2}};
}

void apply_braid_word(DenseState& st, const std::vector<std::pair<int, int>>& word,
                      bool inverse) {
    if (!inverse) {
        for (const auto& [p, q] : word) st.apply_braid(p, q);
    } else {
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            st.apply_braid(it->first, it->second, true);
    }
}

void apply_braid_word(StabilizerTableau& st, const std::vector<std::pair<int, int>>& word,
                      bool inverse) {
    if (!inverse) {
        for (const auto& [p, q] : word) st.apply_braid(p, q);
    } else {
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            st.apply_braid(it->first, it->second, true);
    }
}

int MeasurementDriver::measure(DenseState& st, const PauliString& o) {
    DenseState::MeasureResult res;
    if (rng != nullptr) {
        res = st.measure(o, *rng);
    } else {
        if (cursor >= forced.size())
            throw std::logic_error("measurement driver: forced bit list exhausted");
        res = st.measure_forced(o, forced[cursor++]);
    }
    branch_prob *= res.prob;
    bits.push_back(res.bit);
    return res.bit;
}

// --------------------------------------------------------------------------
// a8 preparation
// --------------------------------------------------------------------------

namespace {

// Pairing (1,7)(2,8)(3,5)(4,6): vacuum stabilizers become
// (-i c1 c7, -i c2 c8, -i c3 c5, -i c4 c6).
const std::vector<std::pair<int, int>>& exponent_prep_word() {
    static const std::vector<std::pair<int, int>> word = braid_word_for(SignedPerm::from_table(
        {{1, 1}, {7, 1}, {2, 1}, {8, 1}, {3, 1}, {5, 1}, {4, 1}, {6, 1}}));
    return word;
}

// Pairing with alternating orientations: (-i c1 c5, +i c2 c6, -i c3 c7, +i c4 c8).
const std::vector<std::pair<int, int>>& quartet_prep_word() {
    static const std::vector<std::pair<int, int>> word = braid_word_for(SignedPerm::from_table(
        {{1, 1}, {5, 1}, {2, -1}, {6, 1}, {3, 1}, {7, 1}, {4, -1}, {8, 1}}));
    return word;
}

} // namespace

StabilizerTableau prepare_a8_from_exponent() {
    StabilizerTableau st = StabilizerTableau::vacuum(8);
    apply_braid_word(st, exponent_prep_word());
    st.apply_exp_pi4(majorana_monomial({1, 2, 3, 6}, 4));
    // The exponent leaves one stabilizer orientation off; a half twist on
    // (2,3) lands exactly on the reference state.
    st.apply_double_exchange(2, 3);
    return st;
}

namespace {

PreparedA8 finish_quartet_preparation(StabilizerTableau st,
                                      StabilizerTableau::MeasureResult res) {
    assert(res.prob > 0.0 && !res.deterministic);
    if (res.bit == 0) st.apply_double_exchange(4, 8);
    return {std::move(st), res.bit, res.prob};
}

} // namespace

PreparedA8 prepare_a8_from_quartet(int quartet_bit) {
    StabilizerTableau st = StabilizerTableau::vacuum(8);
    apply_braid_word(st, quartet_prep_word());
    auto res = st.measure_forced(quartet_observable(5, 6, 7, 8, 4), quartet_bit);
    return finish_quartet_preparation(std::move(st), res);
}

PreparedA8 prepare_a8_from_quartet(SplitMix64& rng) {
    StabilizerTableau st = StabilizerTableau::vacuum(8);
    apply_braid_word(st, quartet_prep_word());
    auto res = st.measure(quartet_observable(5, 6, 7, 8, 4), rng);
    return finish_quartet_preparation(std::move(st), res);
}

// --------------------------------------------------------------------------
// Teleported quartet measurement
// --------------------------------------------------------------------------

std::vector<std::pair<int, int>> quartet_reshuffle_word() {
    // 7-cycle (2 4 8 7 6 3 5), no orientation flips: moves the linking
    // observables -i c1 c5, +i c2 c6, -i c3 c7, +i c4 c8 onto the pairs
    // (1,2),(3,4),(5,6),(7,8) while fixing the output modes 9..12.
    static const std::vector<std::pair<int, int>> word = braid_word_for(SignedPerm::from_table(
        {{1, 1}, {4, 1}, {5, 1}, {8, 1}, {2, 1}, {3, 1}, {6, 1}, {7, 1},
         {9, 1}, {10, 1}, {11, 1}, {12, 1}}));
    return word;
}

DenseState with_a8_ancilla(const DenseState& input) {
    assert(input.n_modes() == 4);
    return tensor_product(input, octet_ancilla_state());
}

TeleportedMeasurement measure_quartet_teleported(DenseState& st, MeasurementDriver& drv,
                                                 ResourceTally* tally) {
    assert(st.n_modes() == 12);
    const int n = st.n_qubits();
    const auto word = quartet_reshuffle_word();
    apply_braid_word(st, word);

    static constexpr std::array<std::pair<int, int>, 4> kPairs{
        {{1, 2}, {3, 4}, {5, 6}, {7, 8}}};
    static constexpr std::array<std::pair<int, int>, 4> kFixes{
        {{2, 9}, {4, 10}, {6, 11}, {8, 12}}};

    TeleportedMeasurement out;
    int parity = 0;
    long fix_braids = 0;
    for (int j = 0; j < 4; ++j) {
        const int bit = drv.measure(st, pair_fusion_observable(kPairs[j].first, kPairs[j].second, n));
        out.pair_bits[j] = bit;
        parity ^= bit;
        if (bit) {
            st.apply_double_exchange(kFixes[j].first, kFixes[j].second);
            fix_braids += 2;
        }
    }
    out.bit = parity ^ 1;
    if (tally) {
        tally->a8_states += 1;
        tally->pair_measurements += 4;
        tally->braids += static_cast<long>(word.size()) + fix_braids;
    }
    return out;
}

TeleportedMeasurement measure_quartet_linked(DenseState& st, const std::array<int, 4>& tuple,
                                             const std::array<int, 8>& octet,
                                             MeasurementDriver& drv, ResourceTally* tally) {
    const int n = st.n_qubits();
    TeleportedMeasurement out;
    int parity = 0;
    for (int j = 0; j < 4; ++j) {
        PauliString m = pair_fusion_observable(tuple[j], octet[j], n);
        if (j % 2 == 1) m = m.negated(); // alternating linking orientation
        const int bit = drv.measure(st, m);
        out.pair_bits[j] = bit;
        parity ^= bit;
    }
    long fix_braids = 0;
    const std::array<std::pair<int, int>, 4> fixes{{{octet[0], octet[4]},
                                                    {tuple[1], octet[5]},
                                                    {octet[2], octet[6]},
                                                    {tuple[3], octet[7]}}};
    for (int j = 0; j < 4; ++j)
        if (out.pair_bits[j]) {
            st.apply_double_exchange(fixes[j].first, fixes[j].second);
            fix_braids += 2;
        }
    out.bit = parity ^ 1;
    if (tally) {
        tally->a8_states += 1;
        tally->pair_measurements += 4;
        tally->braids += fix_braids;
    }
    return out;
}

// --------------------------------------------------------------------------
// Quartic exponent from quartet measurements
// --------------------------------------------------------------------------

ExponentOutcome apply_quartic_exponent(DenseState& st, const ExponentPlan& plan,
                                       MeasurementDriver& drv, ResourceTally* tally) {
    const int n = st.n_qubits();
    const int a = plan.tuple[0], b = plan.tuple[1], c = plan.tuple[2], d = plan.tuple[3];
    const auto [e, f] = plan.ancilla;

    ExponentOutcome out;
    int a2 = a, b2 = b, d2 = d, e2 = e;
    if (plan.octet) {
        TeleportedMeasurement tm =
            measure_quartet_linked(st, {a, b, d, e}, *plan.octet, drv, tally);
        out.quartet_bit = tm.bit;
        out.teleport_bits = tm.pair_bits;
        a2 = (*plan.octet)[4];
        b2 = (*plan.octet)[5];
        d2 = (*plan.octet)[6];
        e2 = (*plan.octet)[7];
    } else {
        out.quartet_bit = drv.measure(st, quartet_observable(a, b, d, e, n));
        if (tally) tally->quartet_measurements += 1;
    }

    out.pair_bit = drv.measure(st, pair_fusion_observable(c, e2, n));
    if (tally) tally->pair_measurements += 1;

    st.apply_exp_real(c, f, out.pair_bit == 0 ? 1 : -1);
    if (tally) tally->braids += 1;
    if (out.pair_bit != out.quartet_bit) {
        st.apply_pauli(majorana_monomial({a2, b2, c, d2}, n).times_i());
        if (tally) tally->braids += 4; // two half twists realize the flip
    }

    out.tuple_after = {a2, b2, c, d2};
    out.ancilla_after = {e2, f};
    return out;
}

// --------------------------------------------------------------------------
// Controlled-Z
// --------------------------------------------------------------------------

void apply_controlled_z_direct(DenseState& st, ResourceTally* tally) {
    st.apply_braid(3, 4);
    st.apply_braid(5, 6);
    st.apply_exp_pi4(majorana_monomial({3, 4, 5, 6}, st.n_qubits()), true);
    st.scale(eighth_turn());
    if (tally) {
        tally->braids += 2;
        tally->quartic_exponents += 1;
    }
}

DenseState controlled_z_workspace(const std::array<cplx, 4>& amps) {
    DenseState with_octet = tensor_product(encode_logical_pair(amps), octet_ancilla_state());
    return tensor_product(with_octet, DenseState::vacuum(2));
}

TeleportedCz apply_controlled_z_teleported(DenseState& st, MeasurementDriver& drv,
                                           ResourceTally* tally) {
    assert(st.n_modes() == 18);
    st.apply_braid(3, 4);
    st.apply_braid(5, 6);
    if (tally) tally->braids += 2;

    ExponentPlan plan;
    plan.tuple = {4, 3, 5, 6}; // exp(+i pi/4 c4 c3 c5 c6) = exp(-i pi/4 c3 c4 c5 c6)
    plan.ancilla = {17, 18};
    plan.octet = std::array<int, 8>{9, 10, 11, 12, 13, 14, 15, 16};
    const ExponentOutcome eo = apply_quartic_exponent(st, plan, drv, tally);
    st.scale(eighth_turn());

    TeleportedCz out;
    out.pair_bits = eo.teleport_bits;
    out.quartet_bit = eo.quartet_bit;
    out.exponent_pair_bit = eo.pair_bit;
    // Teleport tuple was (4,3,6,17) with content landing on 13..16; mode 5
    // never moved. Carrier orientation follows the original pair order.
    out.carriers = {{{1, 2}, {14, 13}, {5, 15}, {7, 8}}};
    out.junk = {{{4, 9}, {3, 10}, {6, 11}, {17, 12}, {16, 18}}};
    return out;
}

// --------------------------------------------------------------------------
// pi/8 gate injection
// --------------------------------------------------------------------------

InjectionOutcome inject_pi8(DenseState& st, MeasurementDriver& drv, ResourceTally* tally) {
    assert(st.n_modes() == 8);
    const int n = st.n_qubits();
    InjectionOutcome out;

    // sigma_z^A sigma_z^B = (-i c1 c2)(-i c5 c6) = -c1 c2 c5 c6.
    out.joint_bit = drv.measure(st, majorana_monomial({1, 2, 5, 6}, n).negated());

    const auto h = logical_hadamard_word(4);
    apply_braid_word(st, h, true);
    apply_controlled_z_direct(st, tally);
    apply_braid_word(st, h, false);

    out.ancilla_bit = drv.measure(st, pair_fusion_observable(5, 6, n));
    if (out.ancilla_bit == 1) st.apply_braid(1, 2);

    if (tally) {
        tally->a4_states += 1;
        tally->quartet_measurements += 1;
        tally->pair_measurements += 1;
        tally->braids += static_cast<long>(2 * h.size()) + (out.ancilla_bit == 1 ? 1 : 0);
    }
    return out;
}

double injection_infidelity(const std::array<cplx, 2>& input, double eps) {
    DenseState target = encode_logical(input[0], input[1] * eighth_turn());
    target.normalize();

    double fid = 0.0;
    for (int variant = 0; variant < 2; ++variant) {
        const double weight = variant == 0 ? 1.0 - eps : eps;
        if (weight == 0.0) continue;
        DenseState ancilla = a4_state();
        if (variant == 1) ancilla.apply_pauli(logical_z(2));
        for (int o1 = 0; o1 < 2; ++o1)
            for (int o2 = 0; o2 < 2; ++o2) {
                DenseState st = tensor_product(encode_logical(input[0], input[1]), ancilla);
                MeasurementDriver drv({o1, o2});
                const InjectionOutcome oc = inject_pi8(st, drv);
                if (drv.branch_prob <= 0.0) continue;
                DenseState ref = tensor_product(
                    target, DenseState::basis(2, oc.ancilla_bit ? 0b11u : 0b00u));
                fid += weight * drv.branch_prob * st.fidelity(ref);
            }
    }
    return 1.0 - fid;
}

// --------------------------------------------------------------------------
// Verification reports
// --------------------------------------------------------------------------

namespace {

std::string bit_label(const char* prefix, const std::vector<int>& bits) {
    std::string s = prefix;
    for (int b : bits) s += static_cast<char>('0' + b);
    return s;
}

ProtocolReport report_o3_o1() {
    ProtocolReport r;
    r.name = "o3-o1";
    const DenseState got = tableau_to_dense(prepare_a8_from_exponent());
    const double f = got.fidelity(octet_ancilla_state());
    r.min_fidelity = f;
    r.max_prob_error = 0.0;
    r.branches.push_back({"deterministic", 1.0, f});
    return r;
}

ProtocolReport report_o2_o1() {
    ProtocolReport r;
    r.name = "o2-o1";
    r.min_fidelity = 1.0;
    for (int bit = 0; bit < 2; ++bit) {
        const PreparedA8 p = prepare_a8_from_quartet(bit);
        const double f = tableau_to_dense(p.state).fidelity(octet_ancilla_state());
        r.min_fidelity = std::min(r.min_fidelity, f);
        r.max_prob_error = std::max(r.max_prob_error, std::abs(p.prob - 0.5));
        r.branches.push_back({bit_label("quartet=", {bit}), p.prob, f});
    }
    return r;
}

DenseState probe_input_state() {
    DenseState st = DenseState::vacuum(4);
    st.amps() = {cplx(0.8, 0.0), cplx(0.0, 0.36), cplx(-0.3, 0.1), cplx(0.25, 0.31)};
    st.normalize();
    return st;
}

ProtocolReport report_o1_o2() {
    ProtocolReport r;
    r.name = "o1-o2";
    r.min_fidelity = 1.0;

    const DenseState input = probe_input_state();
    const PauliString quartet = majorana_monomial({1, 2, 3, 4}, 2);
    const double even_weight = 0.5 * (1.0 - input.expectation(quartet));

    for (int t = 0; t < 16; ++t) {
        const std::vector<int> bits{t & 1, (t >> 1) & 1, (t >> 2) & 1, (t >> 3) & 1};
        DenseState st = with_a8_ancilla(input);
        MeasurementDriver drv(bits);
        const TeleportedMeasurement tm = measure_quartet_teleported(st, drv);
        const int parity = bits[0] ^ bits[1] ^ bits[2] ^ bits[3];
        const double expected =
            (parity == 0 ? even_weight : 1.0 - even_weight) / 8.0;
        r.max_prob_error = std::max(r.max_prob_error, std::abs(drv.branch_prob - expected));
        if (drv.branch_prob <= 1e-15) continue;

        DenseState projected = input;
        DenseState flipped = input;
        flipped.apply_pauli(quartet);
        projected.add_scaled(flipped, parity == 0 ? -1.0 : 1.0);
        projected.scale(0.5);
        projected.normalize();
        DenseState ref = tensor_product(DenseState::basis(4, 0), projected);
        const double f = st.fidelity(ref);
        r.min_fidelity = std::min(r.min_fidelity, f);
        r.branches.push_back(
            {bit_label("t=", bits) + (tm.bit ? " quartet=1" : " quartet=0"), drv.branch_prob, f});
    }
    return r;
}

ProtocolReport report_o2_o3() {
    ProtocolReport r;
    r.name = "o2-o3";
    r.min_fidelity = 1.0;

    DenseState base = tensor_product(probe_input_state(), DenseState::vacuum(2));
    DenseState ref = base;
    ref.apply_exp_pi4(majorana_monomial({1, 2, 3, 4}, 3));

    for (int z = 0; z < 2; ++z)
        for (int y = 0; y < 2; ++y) {
            DenseState st = base;
            MeasurementDriver drv({z, y});
            ExponentPlan plan;
            plan.tuple = {1, 2, 3, 4};
            plan.ancilla = {5, 6};
            apply_quartic_exponent(st, plan, drv);
            const double f = st.fidelity(ref);
            r.min_fidelity = std::min(r.min_fidelity, f);
            r.max_prob_error = std::max(r.max_prob_error, std::abs(drv.branch_prob - 0.25));
            r.branches.push_back({bit_label("zy=", {z, y}), drv.branch_prob, f});
        }
    return r;
}

} // namespace

// Builds the signed relabeling that sends carrier pairs to modes 1..8 and
// junk pairs to 9..18, applies it, and strips the junk register.
double teleported_cz_fidelity(DenseState st, const TeleportedCz& out,
                              const DenseState& reference_pair) {
    std::vector<std::pair<int, int>> table(18, {0, 1});
    int next = 1;
    auto assign = [&](std::pair<int, int> pr) {
        table[static_cast<std::size_t>(pr.first - 1)] = {next++, 1};
        table[static_cast<std::size_t>(pr.second - 1)] = {next++, 1};
    };
    for (const auto& pr : out.carriers) assign(pr);
    for (const auto& pr : out.junk) assign(pr);
    apply_braid_word(st, braid_word_for(SignedPerm::from_table(table)));

    std::uint64_t junk_bits = 0;
    for (int j = 0; j < 5; ++j) {
        const double e =
            st.expectation(pair_fusion_observable(9 + 2 * j, 10 + 2 * j, st.n_qubits()));
        assert(std::abs(std::abs(e) - 1.0) < 1e-9);
        if (e < 0.0) junk_bits |= 1ull << j;
    }
    const DenseState ref = tensor_product(reference_pair, DenseState::basis(5, junk_bits));
    return st.fidelity(ref);
}

namespace {

ProtocolReport report_cz() {
    ProtocolReport r;
    r.name = "cz";
    r.min_fidelity = 1.0;

    const std::array<cplx, 4> amps{cplx(0.5, 0.0), cplx(0.5, 0.0), cplx(0.5, 0.0),
                                   cplx(0.5, 0.0)};
    DenseState ref = encode_logical_pair(amps);
    apply_controlled_z_direct(ref);

    for (int branch = 0; branch < 32; ++branch) {
        const std::vector<int> bits{branch & 1, (branch >> 1) & 1, (branch >> 2) & 1,
                                    (branch >> 3) & 1, (branch >> 4) & 1};
        DenseState st = controlled_z_workspace(amps);
        MeasurementDriver drv(bits);
        const TeleportedCz out = apply_controlled_z_teleported(st, drv);
        r.max_prob_error = std::max(r.max_prob_error, std::abs(drv.branch_prob - 1.0 / 32.0));
        const double f = teleported_cz_fidelity(std::move(st), out, ref);
        r.min_fidelity = std::min(r.min_fidelity, f);
        r.branches.push_back({bit_label("tttt y=", bits), drv.branch_prob, f});
    }
    return r;
}

ProtocolReport report_inject_t() {
    ProtocolReport r;
    r.name = "inject-t";
    r.min_fidelity = 1.0;

    const cplx a(0.6, 0.0), b(0.0, 0.8);
    DenseState target = encode_logical(a, b * eighth_turn());
    target.normalize();

    for (int o1 = 0; o1 < 2; ++o1) {
        DenseState st = tensor_product(encode_logical(a, b), a4_state());
        MeasurementDriver drv({o1, o1});
        const InjectionOutcome oc = inject_pi8(st, drv);
        const DenseState ref =
            tensor_product(target, DenseState::basis(2, oc.ancilla_bit ? 0b11u : 0b00u));
        const double f = st.fidelity(ref);
        r.min_fidelity = std::min(r.min_fidelity, f);
        r.max_prob_error = std::max(r.max_prob_error, std::abs(drv.branch_prob - 0.5));
        r.branches.push_back({bit_label("joint=", {oc.joint_bit}), drv.branch_prob, f});
    }
    return r;
}

} // namespace

std::vector<ProtocolReport> verify_protocols(const std::string& which) {
    struct Entry {
        const char* name;
        ProtocolReport (*build)();
    };
    static constexpr Entry kEntries[] = {
        {"o3-o1", report_o3_o1}, {"o2-o1", report_o2_o1},   {"o1-o2", report_o1_o2},
        {"o2-o3", report_o2_o3}, {"cz", report_cz},         {"inject-t", report_inject_t},
    };
    std::vector<ProtocolReport> reports;
    for (const Entry& e : kEntries)
        if (which == "all" || which == e.name) reports.push_back(e.build());
    if (reports.empty()) throw std::invalid_argument("unknown protocol selector: " + which);
    return reports;
}

} // namespace anyon
