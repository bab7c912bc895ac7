#pragma once

#include "anyon/dense.hpp"
#include "anyon/pauli.hpp"
#include "anyon/rng.hpp"
#include "anyon/tableau.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace anyon {

// ---------------------------------------------------------------------------
// Logical qubits. One qubit lives on four consecutive modes base+1..base+4
// with sigma_z = -i c1 c2, sigma_x = -i c2 c3 and the code condition
// -c1c2c3c4 = +1; |0> puts both pairs in the vacuum channel, |1> fuses both.
// ---------------------------------------------------------------------------
PauliString logical_z(int n_qubits, int base_mode = 0);
PauliString logical_x(int n_qubits, int base_mode = 0);
PauliString logical_y(int n_qubits, int base_mode = 0);
PauliString logical_code_check(int n_qubits, int base_mode = 0);

// amp0 |0>_L + amp1 |1>_L on four modes (amplitudes taken as given).
DenseState encode_logical(cplx amp0, cplx amp1);
// Two logical qubits on eight modes; amps[b] multiplies |b&1>_A |b>>1>_B.
DenseState encode_logical_pair(const std::array<cplx, 4>& amps);
// (|0>_L + e^{i pi/4} |1>_L) / sqrt(2): the ancilla that buys a pi/8 gate.
DenseState a4_state();
// Three-letter braid word acting as the logical Hadamard (up to phase);
// conjugation swaps logical sigma_z and sigma_x.
std::vector<std::pair<int, int>> logical_hadamard_word(int base_mode = 0);

// Applies a braid word in list order (inverse: reversed list, inverted
// letters). Shared by protocol executors and tests.
void apply_braid_word(DenseState& st, const std::vector<std::pair<int, int>>& word,
                      bool inverse = false);
void apply_braid_word(StabilizerTableau& st, const std::vector<std::pair<int, int>>& word,
                      bool inverse = false);

// Elementary-operation ledger: braids, fusion measurements and magic-state
// withdrawals consumed by the executors.
struct ResourceTally {
    long braids = 0;
    long pair_measurements = 0;
    long quartet_measurements = 0;
    long quartic_exponents = 0;
    long a8_states = 0;
    long a4_states = 0;
};

// Measurement driver: either samples outcomes through an rng or replays a
// forced bit list (branch-by-branch analysis). Tracks the branch probability.
struct MeasurementDriver {
    SplitMix64* rng = nullptr;
    std::vector<int> forced;
    std::size_t cursor = 0;
    double branch_prob = 1.0;
    std::vector<int> bits;

    explicit MeasurementDriver(SplitMix64& r) : rng(&r) {}
    explicit MeasurementDriver(std::vector<int> bits_to_force)
        : forced(std::move(bits_to_force)) {}

    int measure(DenseState& st, const PauliString& o);
};

// ---------------------------------------------------------------------------
// Ancilla preparation routes (eight modes each, output fixed by a tableau).
// ---------------------------------------------------------------------------

// Braid-prepared pairing followed by the quartic exponent
// exp(+i pi/4 c1 c2 c3 c6) and a half twist on (2,3); deterministic.
StabilizerTableau prepare_a8_from_exponent();

// Braid-prepared pairing followed by a quartet measurement on (5,6,7,8);
// both outcomes occur with probability 1/2 and both are repaired to the
// target state (outcome 0 needs a half twist on (4,8)).
struct PreparedA8 {
    StabilizerTableau state;
    int quartet_bit = 0;
    double prob = 0.5;
};
PreparedA8 prepare_a8_from_quartet(int quartet_bit);
PreparedA8 prepare_a8_from_quartet(SplitMix64& rng);

// ---------------------------------------------------------------------------
// Teleported quartet measurement: a non-destructive measurement of
// c1 c2 c3 c4 that consumes one a8 ancilla and only uses braids and pair
// fusions. Standalone layout: input on modes 1..4, a8 on modes 5..12.
// The reshuffle braid word maps the four linking observables onto the pairs
// (1,2),(3,4),(5,6),(7,8); outcome-controlled double exchanges
// (2,9),(4,10),(6,11),(8,12) return the register to the reference state and
// the input content ends up on modes 9..12.
// ---------------------------------------------------------------------------
std::vector<std::pair<int, int>> quartet_reshuffle_word();

struct TeleportedMeasurement {
    int bit = 0; // 1 <=> eigenvalue -1 of the ordered quartet monomial
    std::array<int, 4> pair_bits{};
};

// input (4 modes) tensor a8 -> the 12-mode standalone workspace.
DenseState with_a8_ancilla(const DenseState& input);

TeleportedMeasurement measure_quartet_teleported(DenseState& st, MeasurementDriver& drv,
                                                 ResourceTally* tally = nullptr);

// Embedded form on arbitrary mode tuples (no physical reshuffle): measures
// the ordered product c_{t1} c_{t2} c_{t3} c_{t4}, consuming the a8 held on
// `octet`. Afterwards the tuple content sits on octet[4..7] and each
// (tuple[j], octet[j]) is a spent ancilla pair in a definite fusion state.
TeleportedMeasurement measure_quartet_linked(DenseState& st, const std::array<int, 4>& tuple,
                                             const std::array<int, 8>& octet,
                                             MeasurementDriver& drv,
                                             ResourceTally* tally = nullptr);

// ---------------------------------------------------------------------------
// Quartic exponent from quartet measurements: applies
// exp(+i pi/4 c_a c_b c_c c_d) exactly, global phase included, using one
// fresh pair (e,f) in |0> (returned to |0>), one quartet measurement of
// c_a c_b c_d c_e and one pair fusion of (c,e). All four outcome branches
// occur with probability 1/4 and are repaired by braid-level corrections.
// ---------------------------------------------------------------------------
struct ExponentPlan {
    std::array<int, 4> tuple;                 // (a,b,c,d)
    std::pair<int, int> ancilla;              // (e,f), prepared in |0>
    std::optional<std::array<int, 8>> octet;  // set: quartet measured via teleport
};
struct ExponentOutcome {
    int quartet_bit = 0;
    int pair_bit = 0;
    std::array<int, 4> teleport_bits{}; // set when the quartet went through an a8
    std::array<int, 4> tuple_after{};
    std::pair<int, int> ancilla_after{};
};
ExponentOutcome apply_quartic_exponent(DenseState& st, const ExponentPlan& plan,
                                       MeasurementDriver& drv, ResourceTally* tally = nullptr);

// ---------------------------------------------------------------------------
// Controlled-Z on two logical qubits, A on modes 1..4 and B on modes 5..8.
// ---------------------------------------------------------------------------

// Direct route: e^{i pi/4} exp(-i pi/4 c3c4c5c6) B(3,4) B(5,6); exact.
void apply_controlled_z_direct(DenseState& st, ResourceTally* tally = nullptr);

// Measurement-only route on an 18-mode workspace: logical pair on 1..8, one
// a8 on 9..16, one fresh pair (17,18). The logical carriers move; `carriers`
// lists the mode pair holding each original logical pair afterwards
// (orientation-sensitive) and `junk` the five spent pairs.
struct TeleportedCz {
    std::array<int, 4> pair_bits{};
    int quartet_bit = 0;
    int exponent_pair_bit = 0;
    std::array<std::pair<int, int>, 4> carriers{};
    std::array<std::pair<int, int>, 5> junk{};
};
TeleportedCz apply_controlled_z_teleported(DenseState& st, MeasurementDriver& drv,
                                           ResourceTally* tally = nullptr);
// logical pair (8 modes) tensor a8 tensor |0> pair -> 18-mode workspace.
DenseState controlled_z_workspace(const std::array<cplx, 4>& amps);
// Routes the carriers back to modes 1..8, reads the spent pairs out and
// compares the logical content against `reference_pair` (8 modes).
double teleported_cz_fidelity(DenseState st, const TeleportedCz& out,
                              const DenseState& reference_pair);

// ---------------------------------------------------------------------------
// pi/8 gate injection: data qubit on modes 1..4, one a4 on modes 5..8.
// Measures sigma_z x sigma_z, applies a controlled flip onto the ancilla,
// reads the ancilla out and applies the phase twist B(1,2) on outcome 1.
// Afterwards the data qubit carries diag(1, e^{i pi/4}) psi (up to a global
// phase) and the ancilla sits in |o,o> for the reported bit o.
// ---------------------------------------------------------------------------
struct InjectionOutcome {
    int joint_bit = 0;
    int ancilla_bit = 0; // equals joint_bit on every nonzero branch
};
InjectionOutcome inject_pi8(DenseState& st, MeasurementDriver& drv,
                            ResourceTally* tally = nullptr);

// Output infidelity of the injected gate when the ancilla is dephased:
// rho = (1-eps) |a4><a4| + eps Z|a4><a4|Z, input amp0|0>+amp1|1>.
double injection_infidelity(const std::array<cplx, 2>& input, double eps);

// ---------------------------------------------------------------------------
// Verification reports for the CLI and the acceptance harness.
// ---------------------------------------------------------------------------
struct BranchStat {
    std::string outcome;
    double prob = 0.0;
    double fidelity = 0.0;
};
struct ProtocolReport {
    std::string name;
    double min_fidelity = 0.0;
    double max_prob_error = 0.0;
    std::vector<BranchStat> branches;
};
// which: all | o3-o1 | o2-o1 | o1-o2 | o2-o3 | cz | inject-t.
// Throws std::invalid_argument on an unknown selector.
std::vector<ProtocolReport> verify_protocols(const std::string& which = "all");

} // namespace anyon
