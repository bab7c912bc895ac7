#pragma once

#include "anyon/circuit.hpp"
#include "anyon/dense.hpp"
#include "anyon/groups.hpp"
#include "anyon/tableau.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace anyon {

// ---------------------------------------------------------------------------
// The protected octet
//
// Eight modes carry the ancilla used to mediate quartet measurements. Its
// code space is cut out by three commuting checks and the total parity; a
// 3-bit syndrome s = (s1<<2)|(s2<<1)|s3 labels the eight codewords, and the
// purification flow below drives a noisy mixture toward syndrome 0.
// ---------------------------------------------------------------------------

// Check operators: which = 1, 2, 3 selects -c1c2c5c6, -c2c3c6c7, -c1c2c3c4
// on modes base_mode+1 .. base_mode+8 of an n_qubits register.
PauliString octet_check(int which, int n_qubits = 4, int base_mode = 0);

// Total parity c1 c2 ... c8 of the octet (Hermitian as written).
PauliString octet_parity(int n_qubits = 4, int base_mode = 0);

// Codeword with syndrome s: the +1/-1 eigenstate pattern (-1)^{s_i} of the
// three checks inside the +1 parity sector. Syndrome 0 is the ancilla
// itself, (|0000> + |1111>)/sqrt(2) in fusion-pair coordinates.
DenseState octet_syndrome_state(int syndrome);
inline DenseState octet_ancilla_state() { return octet_syndrome_state(0); }

// Same state as a stabilizer tableau (it is a stabilizer state).
StabilizerTableau octet_syndrome_tableau(int syndrome);

// Reads the syndrome off a tableau whose modes base_mode+1..base_mode+8
// carry a codeword (all three checks must be deterministic).
int octet_syndrome_of(const StabilizerTableau& st, int base_mode = 0);

// Codeword weights |<Psi_s|psi>|^2 of an 8-mode state.
std::array<double, 8> codeword_overlaps(const DenseState& st);

// ---------------------------------------------------------------------------
// Syndrome relabelings realized by braids
// ---------------------------------------------------------------------------

// One letter of a braid word; inverse selects the clockwise exchange.
struct BraidLetter {
    int p = 0;
    int q = 0;
    bool inverse = false;
};

// The "whirl": a 6-braid word on the octet that permutes the syndromes as a
// 7-cycle with 0 fixed. Applying it m times (m uniform over 0..6) scrambles
// any fixed contaminant across all nonzero syndromes.
const std::vector<BraidLetter>& whirl_word();
int whirl_syndrome(int s);
BraidCircuit whirl_circuit();

// Cyclic relabeling of the three checks (order 3): conjugation maps check 1
// to check 2 to check 3 to check 1 and fixes the parity. On syndromes:
// (s1,s2,s3) -> (s3,s1,s2).
const SignedPerm& cyclic_shift_perm();
std::vector<BraidLetter> cyclic_shift_word();
int cyclic_shift_syndrome(int s);
BraidCircuit cyclic_shift_circuit();

// ---------------------------------------------------------------------------
// Syndrome-distribution flow
//
// A purification round consumes eight copies in a binary tree of checksum
// comparisons (three stages, one per check). Each comparison measures the
// four pair fusions linking two copies, accepts when the checksum of the
// four bits is even, and merges the syndromes of the survivors. The kernel
// is templated so exact-rational audits can instantiate it.
// ---------------------------------------------------------------------------

using SyndromeDist = std::array<double, 8>;

// Independent contamination eps on each check: P(s) = prod_i eps^{s_i}(1-eps)^{1-s_i}.
SyndromeDist bimodal_distribution(double eps);

// Dephasing map: collapses a state onto the codeword mixture given its
// overlap weights. Throws std::invalid_argument on negative or unnormalized
// input; idempotent on its own output.
SyndromeDist dephase(const SyndromeDist& overlaps);

// Distribution-level whirl: p(0) is kept and the nonzero syndromes are
// averaged over the 7-cycle, producing the standard bimodal form.
SyndromeDist whirl(const SyndromeDist& d);

// Unnormalized merge of one comparison stage. fixed_mask (1, 2 or 4) is the
// bit the stage compares: branches with (r^s)&mask set are discarded, the
// rest merge to u = ((r^s) & ~mask) | (r & mask). Entries sum to the
// acceptance probability when p and q are normalized.
template <class Real>
std::array<Real, 8> checksum_stage(const std::array<Real, 8>& p,
                                   const std::array<Real, 8>& q, int fixed_mask) {
    std::array<Real, 8> out{};
    for (int r = 0; r < 8; ++r)
        for (int s = 0; s < 8; ++s) {
            if ((r ^ s) & fixed_mask)
                continue;
            int u = ((r ^ s) & (7 ^ fixed_mask)) | (r & fixed_mask);
            out[u] += p[r] * q[s];
        }
    return out;
}

struct FlowPoint {
    double eps_out = 0;     // contamination 1 - P(syndrome 0) of the output
    double acceptance = 0;  // probability that every comparison accepted
    SyndromeDist dist{};    // normalized output distribution
};

// One comparison stage applied to two bimodal copies.
FlowPoint elementary_flow(double eps, int fixed_mask = 1);

// One comparison stage applied to two arbitrary distributions. Throws
// std::domain_error when every branch rejects (zero acceptance).
FlowPoint elementary_flow(const SyndromeDist& d1, const SyndromeDist& d2,
                          int fixed_mask = 1);

// Full round: stages with masks 1, 2, 4 chained over the 8-copy tree.
// acceptance is the joint acceptance of all seven comparisons; eps_out is
// quadratically suppressed (the linear term cancels; eps_out -> (48/49) eps^2
// for small eps), which is what makes the iteration converge below threshold.
FlowPoint full_round_flow(double eps);
FlowPoint full_round_flow(const SyndromeDist& input);

// Largest contamination the round still improves: the unique fixed point of
// eps -> full_round_flow(eps).eps_out on (0, 1/2).
double purification_threshold();

// ---------------------------------------------------------------------------
// Purification schedule and yield
// ---------------------------------------------------------------------------

struct ScheduleLevel {
    double eps_in = 0;      // contamination entering this round
    double acceptance = 0;  // joint acceptance of the round at that eps
};

struct PurificationSchedule {
    int rounds = 0;                     // k
    std::vector<ScheduleLevel> levels;  // size k, level 0 first
    double eps_final = 0;               // contamination after k rounds
    double ancilla_count = 1;           // naive copies: 8^k / prod acceptance
};

// Rounds needed to purify eps0 down to eps_target and the naive input count
// n0 = 8^k prod_j acceptance_j^{-1} (expected copies per output when every
// failed comparison only wastes its own pair of copies).
PurificationSchedule purification_schedule(double eps0, double eps_target);

// The same naive count for a fixed number of rounds.
double naive_input_count(double eps0, int rounds);

// ---------------------------------------------------------------------------
// Inventory Monte Carlo
//
// The naive count ignores batching: a physical inventory groups copies into
// rigid trees of eight, a whole tree aborts when any of its seven
// comparisons fails, and survivors are regrouped at the next level (a
// remainder below eight is discarded). monte_carlo_yield estimates the
// probability that n0 level-0 copies yield at least one level-k survivor;
// exact_yield evaluates the same chain by dynamic programming.
// ---------------------------------------------------------------------------

struct YieldEstimate {
    double success_prob = 0;
    double std_error = 0;
    long long trials = 0;
};

YieldEstimate monte_carlo_yield(double eps0, int rounds, long long n0,
                                long long trials, std::uint64_t seed,
                                int threads = 1);

double exact_yield(double eps0, int rounds, long long n0);

// Smallest n0 (a multiple of eight) whose Monte-Carlo success estimate
// reaches 1/2, and the closed-form count 8^k prod acceptance^{-1} it is
// compared against.
struct YieldSolveResult {
    long long n_half = 0;
    double naive_count = 0;
    double success_at_n_half = 0;
};

YieldSolveResult solve_half_yield(double eps0, int rounds, long long trials,
                                  std::uint64_t seed, int threads = 1);

// ---------------------------------------------------------------------------
// The elementary comparison circuit
//
// Sixteen modes: copy A on modes 1..8, copy B on modes 9..16. A braid word
// routes the four linking pair fusions onto directly measurable pairs; the
// four outcome bits t1..t4 form the checksum, and two conditional double
// exchanges fold the outcome-dependent byproduct back into the codeword.
// On acceptance (t1^t2^t3^t4 = 0) the surviving octet sits on modes 1..8
// with syndrome u1 = r1^s1, u2 = r2^s2, u3 = r3 and the measured pairs
// factor out as |t1 t2 t3 t4>.
// ---------------------------------------------------------------------------

SignedPerm elementary_round_perm();
std::vector<std::pair<int, int>> elementary_round_word();
BraidCircuit elementary_round_circuit();

inline bool elementary_round_accepts(int t1, int t2, int t3, int t4) {
    return ((t1 ^ t2 ^ t3 ^ t4) & 1) == 0;
}
inline int merged_syndrome(int r, int s) { return ((r ^ s) & 6) | (r & 1); }

// Executes one comparison on two 8-mode codeword tableaux. On acceptance the
// surviving octet sits on modes 1..8 of `state` with the merged syndrome; a
// rejected branch carries no syndrome claim (syndrome stays -1).
struct ElementaryRoundResult {
    bool accepted = false;
    int syndrome = -1;
    std::array<int, 4> bits{};
    StabilizerTableau state;
};
ElementaryRoundResult run_elementary_round(const StabilizerTableau& a,
                                           const StabilizerTableau& b, SplitMix64& rng);

} // namespace anyon
