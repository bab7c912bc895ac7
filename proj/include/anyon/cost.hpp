#pragma once

#include <vector>

namespace anyon {

// ---------------------------------------------------------------------------
// Elementary-operation budget for a circuit of N gates
//
// Every cost below is counted in elementary operations: one braid, one pair
// fusion measurement, or one raw-ancilla preparation. A circuit of N gates
// needs each gate accurate to delta = 1/N, which sets two nested schedules:
//
//   * a8 purification depth. A joint quartet measurement (the workhorse
//     behind every controlled phase) consumes one purified 8-anyon ancilla.
//     Raw copies at eps0_a8 are refined by comparison rounds; the round map
//     squares the error, so reaching a target t takes ~log2(log t / log eps0)
//     rounds and 8^depth / prod(acceptance) raw copies.
//
//   * a4 distillation depth. pi/8 ancillas are distilled 15 -> 1 per level
//     with cubic error reduction; a target of delta takes ~log3(log delta /
//     log eps0) levels and 15^depth raw copies. Level k's syndrome
//     measurements only need ancillas as clean as that level's own output
//     error, so each level carries its own a8 schedule.
//
// Depths are smoothed to real numbers by interpolating in log(-log eps)
// between the exact iterates of the two flow maps; this removes the
// staircase that integer schedules would imprint on the totals while
// keeping every pinned iterate exact. Block counts at fractional depth
// kappa are 15^(kappa-1-k) for level k, so the deepest level always runs
// O(1) blocks and the bottom level 15^(kappa-1).
// ---------------------------------------------------------------------------

// One distillation layer of the schedule. Layer 0 consumes the rawest
// ancillas; the last layer delivers the final gate-ready output.
struct CostLevel {
    int level = 0;        // position in the schedule, 0 = bottom
    double eps_in = 0;    // pi/8 ancilla error entering the layer
    double eps_out = 0;   // error the layer delivers; also its a8 target
    double blocks = 0;    // smoothed count of 15-copy blocks
    double a8_copies = 0; // raw 8-anyon copies per purified ancilla here
    double joint_ops = 0; // elementary ops per joint measurement, ancilla included
    double ops = 0;       // M_k: total elementary operations of the layer
};

struct CostReport {
    double n = 0;           // circuit size N
    double delta = 0;       // per-gate budget 1/N
    double depth_a4 = 0;    // smoothed distillation depth kappa
    double depth_a8 = 0;    // smoothed purification depth at budget delta
    double raw_a4 = 0;      // 15^kappa: raw pi/8 ancillas per output
    double cz_gate_ops = 0; // one controlled-Z at budget delta
    double t_gate_ops = 0;  // one pi/8 gate: full distillation plus injection
    double total_ops = 0;   // M_tot: sum of level ops
    double top_share = 0;   // deepest layer's fraction of total_ops
    std::vector<CostLevel> levels;
};

// Smoothed raw-copy count for one purified 8-anyon ancilla at target
// contamination t, starting from raw copies at eps0. Returns 1 when the raw
// error already meets the target. Throws std::domain_error when eps0 is at
// or above the purification threshold, or when t is not in (0, 1).
double a8_copy_count(double eps0, double target);

// Full budget for a circuit of n gates (n >= 2) built from raw ancillas at
// the given error rates; both must sit strictly below their thresholds.
// Model constants (operations per comparison, per joint measurement, per
// block) are derived from the actual braid words and check supports, and
// shift totals only by constant factors; the growth in n comes entirely
// from the two flow maps.
CostReport cost_model(double n, double eps0_a4 = 0.1, double eps0_a8 = 0.1);

// Least-squares slope of log(total_ops) against log(log n) over a geometric
// grid of points in [n_min, n_max]; approaches 3 for large n.
double cost_slope(double n_min, double n_max, int points,
                  double eps0_a4 = 0.1, double eps0_a8 = 0.1);

// Least-squares slope of log(raw copy count 15^k) against log(-log eps_k)
// across the integer distillation schedule: the efficiency exponent of the
// 15 -> 1 code, approaching log3(15) ~ 2.465.
double a4_count_exponent(double eps0 = 0.01);

} // namespace anyon
