#include "anyon/a4.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace anyon {

int coordinate_weight(std::uint16_t pattern) { return std::popcount(pattern); }

const std::array<std::uint16_t, 4>& check_supports() {
    static const std::array<std::uint16_t, 4> supports = [] {
        std::array<std::uint16_t, 4> v{};
        for (int m = 0; m < 4; ++m)
            for (int label = 1; label <= 15; ++label)
                if ((label >> m) & 1)
                    v[m] |= static_cast<std::uint16_t>(1u << (label - 1));
        return v;
    }();
    return supports;
}

const std::vector<std::uint16_t>& x_check_span() {
    static const std::vector<std::uint16_t> span = [] {
        std::vector<std::uint16_t> out;
        for (int bits = 0; bits < 16; ++bits) {
            std::uint16_t w = 0;
            for (int m = 0; m < 4; ++m)
                if ((bits >> m) & 1)
                    w ^= check_supports()[m];
            out.push_back(w);
        }
        return out;
    }();
    return span;
}

const std::vector<std::uint16_t>& z_check_span() {
    static const std::vector<std::uint16_t> span = [] {
        std::vector<std::uint16_t> gens(check_supports().begin(), check_supports().end());
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                gens.push_back(check_supports()[a] & check_supports()[b]);
        std::vector<std::uint16_t> out;
        out.reserve(1u << gens.size());
        for (unsigned bits = 0; bits < (1u << gens.size()); ++bits) {
            std::uint16_t w = 0;
            for (std::size_t m = 0; m < gens.size(); ++m)
                if ((bits >> m) & 1)
                    w ^= gens[m];
            out.push_back(w);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }();
    return span;
}

int code_syndrome(std::uint16_t pattern) {
    int s = 0;
    for (int m = 0; m < 4; ++m)
        s |= (std::popcount(static_cast<unsigned>(pattern & check_supports()[m])) & 1)
             << m;
    return s;
}

const std::vector<std::uint16_t>& undetected_patterns() {
    static const std::vector<std::uint16_t> patterns = [] {
        std::vector<std::uint16_t> out;
        for (unsigned e = 0; e < (1u << 15); ++e)
            if (code_syndrome(static_cast<std::uint16_t>(e)) == 0)
                out.push_back(static_cast<std::uint16_t>(e));
        return out;
    }();
    return patterns;
}

int min_logical_weight() {
    static const int w = [] {
        int best = 15;
        for (std::uint16_t e : undetected_patterns())
            if (coordinate_weight(e) % 2 == 1)
                best = std::min(best, coordinate_weight(e));
        return best;
    }();
    return w;
}

int logical_count_at_weight(int w) {
    int count = 0;
    for (std::uint16_t e : undetected_patterns())
        if (coordinate_weight(e) % 2 == 1 && coordinate_weight(e) == w)
            ++count;
    return count;
}

std::vector<int> phase_residues(bool complement) {
    std::vector<int> residues;
    for (std::uint16_t w : x_check_span()) {
        std::uint16_t word = complement ? static_cast<std::uint16_t>(w ^ 0x7fffu) : w;
        int r = coordinate_weight(word) % 8;
        if (std::find(residues.begin(), residues.end(), r) == residues.end())
            residues.push_back(r);
    }
    std::sort(residues.begin(), residues.end());
    return residues;
}

namespace {

// eps^w (1-eps)^(15-w) for w = 0..15.
std::array<double, 16> mass_table(double eps) {
    std::array<double, 16> t{};
    for (int w = 0; w <= 15; ++w)
        t[w] = std::pow(eps, w) * std::pow(1.0 - eps, 15 - w);
    return t;
}

} // namespace

DistillStep distill_step(double eps) {
    if (!(eps >= 0.0) || !(eps <= 1.0))
        throw std::domain_error("distill_step: contamination outside [0, 1]");
    const auto mass = mass_table(eps);
    double total = 0, odd = 0;
    for (std::uint16_t e : undetected_patterns()) {
        double m = mass[coordinate_weight(e)];
        total += m;
        if (coordinate_weight(e) % 2 == 1)
            odd += m;
    }
    DistillStep step;
    step.eps_out = odd / total;
    step.acceptance = total / 1024.0; // 2^-10 B
    return step;
}

double distill_acceptance_closed_form(double eps) {
    double t = 1.0 - 2.0 * eps;
    double t2 = t * t, t4 = t2 * t2;
    return (1.0 + 15.0 * t4 * t4) / 16384.0;
}

double distill_acceptance_group_sum(double eps) {
    // 2^-14 sum over the stabilizer group of the per-site brackets: a site
    // under X contributes (1-2 eps)/sqrt(2), a site under XZ an extra -i,
    // and a site under plain Z kills the term; the Z-span weights are even,
    // so every surviving term is real.
    double sum = 0;
    const double bx = (1.0 - 2.0 * eps) / std::sqrt(2.0);
    for (std::uint16_t alpha : x_check_span()) {
        double xpart = std::pow(bx, coordinate_weight(alpha));
        double inner = 0;
        for (std::uint16_t beta : z_check_span()) {
            if (beta & ~alpha)
                continue;
            inner += (coordinate_weight(beta) / 2) % 2 ? -1.0 : 1.0;
        }
        sum += xpart * inner;
    }
    return sum / 16384.0;
}

DistillStep error_corrected_step(double eps) {
    if (!(eps >= 0.0) || !(eps <= 1.0))
        throw std::domain_error("error_corrected_step: contamination outside [0, 1]");
    const auto mass = mass_table(eps);
    double bad = 0;
    for (unsigned e = 0; e < (1u << 15); ++e) {
        int s = code_syndrome(static_cast<std::uint16_t>(e));
        unsigned corrected = s ? (e ^ (1u << (s - 1))) : e;
        if (std::popcount(corrected) % 2 == 1)
            bad += mass[std::popcount(e)];
    }
    return {bad, 1.0};
}

double distillation_threshold() {
    static const double cached = [] {
        double lo = 0.01, hi = 0.45;
        assert(distill_step(lo).eps_out < lo);
        assert(distill_step(hi).eps_out > hi);
        while (hi - lo > 1e-13) {
            double mid = 0.5 * (lo + hi);
            (distill_step(mid).eps_out < mid ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }();
    return cached;
}

DistillSchedule distillation_schedule(double eps0, double eps_target) {
    if (!(eps0 >= 0.0) || !(eps0 < 0.5) || !(eps_target > 0.0))
        throw std::domain_error("distillation_schedule: bad contamination");
    DistillSchedule sched;
    sched.eps_final = eps0;
    if (eps0 <= eps_target || eps0 == 0.0)
        return sched;
    if (eps0 >= distillation_threshold())
        throw std::domain_error(
            "distillation_schedule: contamination at or above threshold");
    double eps = eps0;
    while (eps > eps_target && sched.rounds < 64) {
        DistillStep step = distill_step(eps);
        sched.levels.push_back({eps, step.acceptance});
        eps = step.eps_out;
        sched.input_count *= 15.0;
        ++sched.rounds;
    }
    sched.eps_final = eps;
    return sched;
}

} // namespace anyon
