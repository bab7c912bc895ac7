#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace anyon {

// ---------------------------------------------------------------------------
// Fifteen-coordinate distillation code for pi/8 phase ancillas
//
// Coordinates carry the labels 1..15; check m (m = 0..3) supports every
// coordinate whose label has bit m set, so each check touches eight
// coordinates. The X-type span of the four checks, together with the Z-type
// span of the checks and their pairwise intersections, stabilizes a single
// logical qubit, and the transversal pi/8 rotation preserves the code space.
// Distillation runs the syndrome measurement on fifteen noisy phase
// ancillas; the postselected branch suppresses Z contamination cubically.
// ---------------------------------------------------------------------------

// Support masks of the four checks over coordinate bits 0..14.
const std::array<std::uint16_t, 4>& check_supports();

// GF(2) span of the check supports: 16 words, one empty and fifteen of
// weight eight.
const std::vector<std::uint16_t>& x_check_span();

// Span of the checks and their pairwise intersections (rank 10, 1024 words,
// all weights even). These are exactly the even-weight undetected patterns.
const std::vector<std::uint16_t>& z_check_span();

// Patterns with even overlap with every check: 2048 words. The odd-weight
// half flips the logical qubit undetected; the lightest has weight three.
const std::vector<std::uint16_t>& undetected_patterns();

int coordinate_weight(std::uint16_t pattern);

// 4-bit syndrome of a Z-contamination pattern; a single flipped coordinate
// reports its own label.
int code_syndrome(std::uint16_t pattern);

int min_logical_weight();            // 3
int logical_count_at_weight(int w);  // 35 at weight 3

// Weight residues mod 8 across x_check_span (or its all-ones complement
// coset). Residues {0} and {7} are what let the transversal pi/8 rotation
// act as a clean logical gate up to one recovery rotation.
std::vector<int> phase_residues(bool complement);

// ---------------------------------------------------------------------------
// Distillation maps
// ---------------------------------------------------------------------------

struct DistillStep {
    double eps_out = 0;     // contamination of the output, conditioned on accept
    double acceptance = 0;  // probability of the trivial syndrome
};

// Postselected step at independent Z-noise rate eps per input: output error
// B_odd/B and acceptance 2^-10 B, with B the undetected-pattern mass.
// Cubic suppression: eps_out -> 35 eps^3 for small eps.
DistillStep distill_step(double eps);

// The acceptance probability two independent ways (cross-checking oracles):
// the closed form 2^-14 (1 + 15 (1 - 2 eps)^8), and the stabilizer-group
// sum of single-site brackets.
double distill_acceptance_closed_form(double eps);
double distill_acceptance_group_sum(double eps);

// Decode-and-correct step: the syndrome names one coordinate to flip back,
// acceptance is 1, and the output error collects every pattern whose
// corrected form is an odd undetected pattern (105 eps^2 + ... small-eps).
DistillStep error_corrected_step(double eps);

// Fixed point of the postselected step on (0, 1/2): contamination above it
// gets worse instead of better.
double distillation_threshold();

// ---------------------------------------------------------------------------
// Schedule
// ---------------------------------------------------------------------------

struct DistillLevel {
    double eps_in = 0;
    double acceptance = 0;
};

struct DistillSchedule {
    int rounds = 0;
    std::vector<DistillLevel> levels;  // size rounds, level 0 first
    double eps_final = 0;
    double input_count = 1;  // 15^rounds raw ancillas per output
};

// Iterates the postselected step until eps_target is reached.
DistillSchedule distillation_schedule(double eps0, double eps_target);

} // namespace anyon
