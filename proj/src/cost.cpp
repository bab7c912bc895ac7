#include "anyon/cost.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "anyon/a4.hpp"
#include "anyon/a8.hpp"
#include "anyon/protocols.hpp"

namespace anyon {

namespace {

// Interpolation coordinate: both flow maps step log(-log eps) by a nearly
// constant amount (log 2 for the quadratic a8 round, log 3 for the cubic a4
// level), so linear interpolation here matches the integer schedules exactly
// at the iterates and stays monotone between them.
double lam(double eps) { return std::log(-std::log(eps)); }

struct Schedule {
    std::vector<double> eps;  // iterates, eps[0] = raw input error
    double depth = 0;         // fractional round count reaching the target
};

// Iterates `step` from eps0 until the target is met, then interpolates the
// fractional depth between the bracketing iterates.
template <typename Step>
Schedule fractional_schedule(double eps0, double target, Step step,
                             const char* what) {
    if (!(target > 0) || !(target < 1))
        throw std::domain_error(std::string(what) + ": target outside (0, 1)");
    Schedule s;
    s.eps.push_back(eps0);
    while (s.eps.back() > target) {
        if (s.eps.size() > 64)
            throw std::domain_error(std::string(what) +
                                    ": iteration does not converge");
        double next = step(s.eps.back());
        if (!(next < s.eps.back()))
            throw std::domain_error(std::string(what) +
                                    ": error rate not contracting");
        s.eps.push_back(next);
    }
    const int k = static_cast<int>(s.eps.size()) - 1;
    if (k == 0) return s;  // raw copies already meet the target
    s.depth = (k - 1) + (lam(target) - lam(s.eps[k - 1])) /
                            (lam(s.eps[k]) - lam(s.eps[k - 1]));
    return s;
}

struct A8Cost {
    double copies = 0;
    double depth = 0;
};

A8Cost a8_cost(double eps0, double target) {
    if (!(eps0 > 0) || eps0 >= purification_threshold())
        throw std::domain_error("a8 cost: raw error at or above threshold");
    if (target >= eps0) return {1.0, 0.0};
    Schedule s = fractional_schedule(
        eps0, target, [](double e) { return full_round_flow(e).eps_out; },
        "a8 cost");
    // 8 copies per round, divided by the joint acceptance of each round the
    // copy passes through; the last round participates fractionally.
    double ln_copies = s.depth * std::log(8.0);
    for (std::size_t i = 0; i + 1 < s.eps.size(); ++i) {
        double weight = std::min(1.0, s.depth - static_cast<double>(i));
        ln_copies += weight * std::log(1.0 / full_round_flow(s.eps[i]).acceptance);
    }
    return {std::exp(ln_copies), s.depth};
}

// --- model constants, derived from the concrete constructions -------------

// Elementary operations one raw a8 copy is responsible for: preparation,
// its half of a comparison (braid word, four fusions, two conditional
// exchanges), and one relabeling pass between rounds.
double ops_per_copy() {
    static const double v = 1.0 +
                            (static_cast<double>(elementary_round_word().size()) + 4.0 + 4.0) / 2.0 +
                            static_cast<double>(whirl_word().size());
    return v;
}

// Elementary operations of one teleported joint measurement beyond the
// ancilla itself: the reshuffle route, four fusions, and up to four
// double-exchange corrections.
double ops_per_joint() {
    static const double v =
        static_cast<double>(quartet_reshuffle_word().size()) + 4.0 + 8.0;
    return v;
}

// Joint parity measurements per 15-copy distillation block: a weight-w
// stabilizer is chained from w-1 pairwise measurements; the generators are
// the four checks in both bases plus the six pairwise intersections.
double joints_per_block() {
    static const double v = [] {
        const auto& checks = check_supports();
        double total = 0;
        for (int b = 0; b < 2; ++b)
            for (auto m : checks) total += std::popcount(m) - 1;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                total += std::popcount(static_cast<unsigned>(checks[i] & checks[j])) - 1;
        return total;
    }();
    return v;
}

// Fixed per-block overhead: fifteen raw pi/8 preparations with their
// Clifford routing, plus the recovery rotation.
constexpr double kBlockFixed = 15.0 * 8.0 + 8.0;

// Controlled-Z beyond the joint measurement: carrier braids, the ancilla
// fusion, and the conditional quartic correction.
constexpr double kCzExtra = 8.0;

// Injection beyond its controlled-Z: the joint quartet readout, basis
// changes, and the conditional recovery exchange.
constexpr double kInjectExtra = 10.0;

} // namespace

double a8_copy_count(double eps0, double target) {
    return a8_cost(eps0, target).copies;
}

CostReport cost_model(double n, double eps0_a4, double eps0_a8) {
    if (!(n >= 2.0))
        throw std::domain_error("cost model: need at least two gates");
    if (!(eps0_a4 > 0) || eps0_a4 >= distillation_threshold())
        throw std::domain_error("cost model: a4 error at or above threshold");
    if (!(eps0_a8 > 0) || eps0_a8 >= purification_threshold())
        throw std::domain_error("cost model: a8 error at or above threshold");

    CostReport r;
    r.n = n;
    r.delta = 1.0 / n;

    Schedule a4 = fractional_schedule(
        eps0_a4, r.delta, [](double e) { return distill_step(e).eps_out; },
        "cost model");
    r.depth_a4 = a4.depth;
    r.raw_a4 = std::pow(15.0, a4.depth);

    const int rounds = static_cast<int>(std::ceil(a4.depth));
    for (int k = 0; k < rounds; ++k) {
        CostLevel lvl;
        lvl.level = k;
        lvl.eps_in = a4.eps[k];
        // Interior levels hand the next level its exact iterate; the deepest
        // level stops at the gate budget itself.
        lvl.eps_out = (k + 1 < rounds) ? a4.eps[k + 1] : r.delta;
        lvl.blocks = std::pow(15.0, a4.depth - 1.0 - k);
        lvl.a8_copies = a8_cost(eps0_a8, lvl.eps_out).copies;
        lvl.joint_ops = ops_per_joint() + lvl.a8_copies * ops_per_copy();
        lvl.ops = lvl.blocks * (kBlockFixed + joints_per_block() * lvl.joint_ops);
        r.levels.push_back(lvl);
        r.total_ops += lvl.ops;
    }
    r.top_share = r.levels.empty() ? 0.0 : r.levels.back().ops / r.total_ops;

    A8Cost gate = a8_cost(eps0_a8, r.delta);
    r.depth_a8 = gate.depth;
    r.cz_gate_ops = ops_per_joint() + gate.copies * ops_per_copy() + kCzExtra;
    r.t_gate_ops = r.total_ops + r.cz_gate_ops + kInjectExtra;
    return r;
}

double cost_slope(double n_min, double n_max, int points, double eps0_a4,
                  double eps0_a8) {
    if (points < 2 || !(n_min >= 2.0) || !(n_max > n_min))
        throw std::domain_error("cost slope: bad grid");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < points; ++i) {
        double t = static_cast<double>(i) / (points - 1);
        double n = n_min * std::pow(n_max / n_min, t);
        double x = std::log(std::log(n));
        double y = std::log(cost_model(n, eps0_a4, eps0_a8).total_ops);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (points * sxy - sx * sy) / (points * sxx - sx * sx);
}

double a4_count_exponent(double eps0) {
    // Integer schedule points (15^k raw copies, error eps_k); fit
    // log(15^k) against log(-log eps_k), skipping the transient first level
    // and stopping before the iterates leave double range.
    std::vector<double> xs, ys;
    double eps = eps0;
    for (int k = 1; k <= 16; ++k) {
        eps = distill_step(eps).eps_out;
        if (eps < 1e-290) break;
        if (k >= 2) {
            xs.push_back(lam(eps));
            ys.push_back(k * std::log(15.0));
        }
    }
    if (xs.size() < 2)
        throw std::domain_error("a4 exponent: schedule too shallow");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace anyon
