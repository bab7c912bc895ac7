#include "anyon/a8.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

namespace anyon {

PauliString octet_check(int which, int n_qubits, int base_mode) {
    assert(which >= 1 && which <= 3);
    const int b = base_mode;
    std::vector<int> modes;
    switch (which) {
    case 1: modes = {b + 1, b + 2, b + 5, b + 6}; break;
    case 2: modes = {b + 2, b + 3, b + 6, b + 7}; break;
    default: modes = {b + 1, b + 2, b + 3, b + 4}; break;
    }
    return majorana_monomial(modes, n_qubits).negated();
}

PauliString octet_parity(int n_qubits, int base_mode) {
    std::vector<int> modes;
    modes.reserve(8);
    for (int m = 1; m <= 8; ++m)
        modes.push_back(base_mode + m);
    return majorana_monomial(modes, n_qubits);
}

DenseState octet_syndrome_state(int syndrome) {
    assert(syndrome >= 0 && syndrome < 8);
    const PauliString gens[4] = {octet_check(1), octet_check(2), octet_check(3),
                                 octet_parity()};
    const int bits[4] = {(syndrome >> 2) & 1, (syndrome >> 1) & 1, syndrome & 1, 0};
    // Project a basis seed with (I + (-1)^{b_i} G_i)/2; the first seed the
    // product does not annihilate fixes a deterministic phase convention.
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        DenseState v = DenseState::basis(4, seed);
        for (int i = 0; i < 4; ++i) {
            DenseState w = v;
            w.apply_pauli(gens[i]);
            v.add_scaled(w, bits[i] ? -1.0 : 1.0);
            v.scale(0.5);
        }
        if (v.norm2() > 1e-9) {
            v.normalize();
            return v;
        }
    }
    assert(false && "octet projector annihilated every basis seed");
    return DenseState::basis(4, 0);
}

StabilizerTableau octet_syndrome_tableau(int syndrome) {
    assert(syndrome >= 0 && syndrome < 8);
    std::vector<PauliString> rows = {octet_check(1), octet_check(2), octet_check(3),
                                     octet_parity()};
    for (int i = 0; i < 3; ++i)
        if ((syndrome >> (2 - i)) & 1)
            rows[i] = rows[i].negated();
    return StabilizerTableau::from_generators(std::move(rows));
}

int octet_syndrome_of(const StabilizerTableau& st, int base_mode) {
    int s = 0;
    for (int i = 1; i <= 3; ++i) {
        const int e = st.expectation(octet_check(i, st.n_qubits(), base_mode));
        assert(e != 0); // syndrome is only defined on codewords
        s = (s << 1) | (e < 0 ? 1 : 0);
    }
    return s;
}

std::array<double, 8> codeword_overlaps(const DenseState& st) {
    assert(st.n_modes() == 8);
    std::array<double, 8> p{};
    for (int s = 0; s < 8; ++s)
        p[static_cast<std::size_t>(s)] = st.fidelity(octet_syndrome_state(s));
    return p;
}

const std::vector<BraidLetter>& whirl_word() {
    // Three commuting-pair layers; each layer swaps the roles of two checks,
    // and the composite permutes the nonzero syndromes as a 7-cycle.
    static const std::vector<BraidLetter> word = {
        {2, 3, false}, {6, 7, true},  // checks 1 <-> 2
        {1, 2, true},  {3, 4, false}, // checks 2 <-> 3
        {1, 5, false}, {2, 6, false}, // checks 3 <-> 1
    };
    return word;
}

int whirl_syndrome(int s) {
    static constexpr int kCycle[8] = {0, 3, 7, 4, 5, 6, 2, 1};
    assert(s >= 0 && s < 8);
    return kCycle[s];
}

namespace {

BraidCircuit circuit_from_letters(const std::vector<BraidLetter>& word) {
    BraidCircuit c(8);
    for (const BraidLetter& l : word) {
        if (l.inverse)
            c.braid_inverse(l.p, l.q);
        else
            c.braid(l.p, l.q);
    }
    return c;
}

} // namespace

BraidCircuit whirl_circuit() { return circuit_from_letters(whirl_word()); }

const SignedPerm& cyclic_shift_perm() {
    static const SignedPerm perm = SignedPerm::from_table({
        {6, 1}, {2, 1}, {1, 1}, {5, 1}, {7, -1}, {3, 1}, {4, -1}, {8, 1}});
    return perm;
}

std::vector<BraidLetter> cyclic_shift_word() {
    std::vector<BraidLetter> out;
    for (auto [p, q] : braid_word_for(cyclic_shift_perm()))
        out.push_back({p, q, false});
    return out;
}

int cyclic_shift_syndrome(int s) {
    assert(s >= 0 && s < 8);
    return ((s & 1) << 2) | (((s >> 2) & 1) << 1) | ((s >> 1) & 1);
}

BraidCircuit cyclic_shift_circuit() { return circuit_from_letters(cyclic_shift_word()); }

SyndromeDist bimodal_distribution(double eps) {
    SyndromeDist d{};
    d[0] = 1.0 - eps;
    for (int s = 1; s < 8; ++s)
        d[s] = eps / 7.0;
    return d;
}

SyndromeDist dephase(const SyndromeDist& overlaps) {
    double total = 0;
    for (double v : overlaps) {
        if (v < -1e-12)
            throw std::invalid_argument("dephase: negative codeword weight");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("dephase: codeword weights must sum to one");
    SyndromeDist out{};
    for (int s = 0; s < 8; ++s)
        out[s] = std::max(overlaps[s], 0.0) / total;
    return out;
}

SyndromeDist whirl(const SyndromeDist& d) {
    double rest = 0;
    for (int s = 1; s < 8; ++s)
        rest += d[s];
    SyndromeDist out{};
    out[0] = d[0];
    for (int s = 1; s < 8; ++s)
        out[s] = rest / 7.0;
    return out;
}

namespace {

FlowPoint flow_point_from(const SyndromeDist& unnormalized) {
    FlowPoint fp;
    double z = 0;
    for (double v : unnormalized)
        z += v;
    fp.acceptance = z;
    if (z <= 0)
        throw std::domain_error("checksum flow: zero acceptance");
    double tail = 0;
    for (int s = 7; s > 0; --s) {
        fp.dist[s] = unnormalized[s] / z;
        tail += unnormalized[s];
    }
    fp.dist[0] = unnormalized[0] / z;
    // Summing the nonzero-syndrome mass directly keeps full relative
    // precision once the contamination drops below the ulp of 1, where
    // 1 - dist[0] would cancel to zero.
    fp.eps_out = tail / z;
    return fp;
}

} // namespace

FlowPoint elementary_flow(double eps, int fixed_mask) {
    SyndromeDist p = bimodal_distribution(eps);
    return flow_point_from(checksum_stage(p, p, fixed_mask));
}

FlowPoint elementary_flow(const SyndromeDist& d1, const SyndromeDist& d2, int fixed_mask) {
    return flow_point_from(checksum_stage(d1, d2, fixed_mask));
}

FlowPoint full_round_flow(const SyndromeDist& input) {
    SyndromeDist d = checksum_stage(input, input, 1);
    d = checksum_stage(d, d, 2);
    d = checksum_stage(d, d, 4);
    return flow_point_from(d);
}

FlowPoint full_round_flow(double eps) {
    return full_round_flow(bimodal_distribution(eps));
}

double purification_threshold() {
    static const double cached = [] {
        double lo = 0.01, hi = 0.499;
        assert(full_round_flow(lo).eps_out < lo);
        assert(full_round_flow(hi).eps_out > hi);
        while (hi - lo > 1e-13) {
            double mid = 0.5 * (lo + hi);
            (full_round_flow(mid).eps_out < mid ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }();
    return cached;
}

double naive_input_count(double eps0, int rounds) {
    double eps = eps0, count = 1.0;
    for (int j = 0; j < rounds; ++j) {
        FlowPoint fp = full_round_flow(eps);
        count *= 8.0 / fp.acceptance;
        eps = fp.eps_out;
    }
    return count;
}

PurificationSchedule purification_schedule(double eps0, double eps_target) {
    if (!(eps0 >= 0.0) || !(eps0 < 1.0) || !(eps_target > 0.0))
        throw std::domain_error("purification_schedule: bad contamination");
    PurificationSchedule sched;
    sched.eps_final = eps0;
    if (eps0 <= eps_target || eps0 == 0.0)
        return sched; // already pure enough: zero rounds, one copy
    if (eps0 >= purification_threshold())
        throw std::domain_error(
            "purification_schedule: contamination at or above threshold");

    // Quadratic contraction eps -> ~c eps^2 squares c*eps each round, so the
    // round count satisfies 2^k ~ log(c eps_target)/log(c eps0); start there
    // and extend if the exact iteration falls short of the target.
    const double c = 48.0 / 49.0;
    double ratio = std::log(c * eps_target) / std::log(c * eps0);
    int k = std::max(1, static_cast<int>(std::ceil(std::log2(ratio) - 1e-12)));
    for (;; ++k) {
        sched.levels.clear();
        double eps = eps0, count = 1.0;
        for (int j = 0; j < k; ++j) {
            FlowPoint fp = full_round_flow(eps);
            sched.levels.push_back({eps, fp.acceptance});
            count *= 8.0 / fp.acceptance;
            eps = fp.eps_out;
        }
        if (eps <= eps_target || k >= 64) {
            sched.rounds = k;
            sched.eps_final = eps;
            sched.ancilla_count = count;
            return sched;
        }
    }
}

namespace {

// One comparison of the checksum tree: reject on a mismatched compared bit,
// otherwise merge the syndromes.
inline bool compare_merge(int r, int s, int mask, int& u) {
    if ((r ^ s) & mask)
        return false;
    u = ((r ^ s) & (7 ^ mask)) | (r & mask);
    return true;
}

// A rigid tree of eight consecutive copies; all seven comparisons must
// accept or the whole tree is discarded. Returns the survivor syndrome or -1.
inline int run_tree(const std::uint8_t* c) {
    int a[4], b[2], u;
    for (int i = 0; i < 4; ++i)
        if (!compare_merge(c[2 * i], c[2 * i + 1], 1, a[i]))
            return -1;
    for (int i = 0; i < 2; ++i)
        if (!compare_merge(a[2 * i], a[2 * i + 1], 2, b[i]))
            return -1;
    if (!compare_merge(b[0], b[1], 4, u))
        return -1;
    return u;
}

inline int whirl_power(int s, int m) {
    for (int i = 0; i < m; ++i)
        s = whirl_syndrome(s);
    return s;
}

long long run_yield_trials(double eps0, int rounds, long long n0, long long t_begin,
                           long long t_end, std::uint64_t seed) {
    long long successes = 0;
    std::vector<std::uint8_t> cur, next;
    cur.reserve(static_cast<std::size_t>(n0));
    for (long long t = t_begin; t < t_end; ++t) {
        SplitMix64 rng(derive_stream(seed, static_cast<std::uint64_t>(t)));
        cur.clear();
        for (long long i = 0; i < n0; ++i)
            cur.push_back(rng.uniform() < eps0
                              ? static_cast<std::uint8_t>(1 + rng.below(7))
                              : std::uint8_t{0});
        for (int j = 0; j < rounds && !cur.empty(); ++j) {
            next.clear();
            std::size_t groups = cur.size() / 8; // remainder below 8 is discarded
            for (std::size_t g = 0; g < groups; ++g) {
                int u = run_tree(&cur[8 * g]);
                // A uniform whirl power is applied to every output slot, so
                // survivor contamination is uniform over nonzero syndromes.
                int m = static_cast<int>(rng.below(7));
                if (u >= 0)
                    next.push_back(static_cast<std::uint8_t>(whirl_power(u, m)));
            }
            cur.swap(next);
        }
        if (rounds == 0 ? n0 >= 1 : !cur.empty())
            ++successes;
    }
    return successes;
}

} // namespace

YieldEstimate monte_carlo_yield(double eps0, int rounds, long long n0,
                                long long trials, std::uint64_t seed, int threads) {
    if (!(eps0 >= 0.0) || !(eps0 < 1.0) || rounds < 0 || n0 < 0 || trials <= 0)
        throw std::domain_error("monte_carlo_yield: bad arguments");
    threads = static_cast<int>(std::clamp<long long>(threads, 1, trials));
    long long successes = 0;
    if (threads == 1) {
        successes = run_yield_trials(eps0, rounds, n0, 0, trials, seed);
    } else {
        // Trials own derived streams, so the partition does not affect the sum.
        std::vector<long long> part(threads, 0);
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) {
            long long b = trials * i / threads, e = trials * (i + 1) / threads;
            pool.emplace_back([&part, i, eps0, rounds, n0, b, e, seed] {
                part[i] = run_yield_trials(eps0, rounds, n0, b, e, seed);
            });
        }
        for (auto& th : pool)
            th.join();
        for (long long p : part)
            successes += p;
    }
    YieldEstimate est;
    est.trials = trials;
    est.success_prob = static_cast<double>(successes) / static_cast<double>(trials);
    est.std_error =
        std::sqrt(std::max(0.0, est.success_prob * (1.0 - est.success_prob) /
                                    static_cast<double>(trials)));
    return est;
}

double exact_yield(double eps0, int rounds, long long n0) {
    if (!(eps0 >= 0.0) || !(eps0 < 1.0) || rounds < 0 || n0 < 0)
        throw std::domain_error("exact_yield: bad arguments");
    // Tree survivals at one level are independent Bernoulli(acceptance)
    // draws, so the survivor count follows a binomial-floor chain:
    // m_{j+1} ~ Binomial(floor(m_j / 8), acceptance_j).
    std::vector<double> dist(static_cast<std::size_t>(n0) + 1, 0.0);
    dist[static_cast<std::size_t>(n0)] = 1.0;
    double eps = eps0;
    for (int j = 0; j < rounds; ++j) {
        FlowPoint fp = full_round_flow(eps);
        double z = fp.acceptance;
        std::size_t gmax = (dist.size() - 1) / 8;
        std::vector<double> next(gmax + 1, 0.0);
        for (std::size_t m = 0; m < dist.size(); ++m) {
            if (dist[m] == 0.0)
                continue;
            std::size_t g = m / 8;
            if (z >= 1.0) {
                next[g] += dist[m];
                continue;
            }
            if (z <= 0.0) {
                next[0] += dist[m];
                continue;
            }
            // Binomial(g, z) row in log space: the tails underflow to zero
            // harmlessly instead of wiping out the whole row.
            const double lz = std::log(z), l1z = std::log1p(-z);
            const double lg = std::lgamma(static_cast<double>(g) + 1.0);
            for (std::size_t cnt = 0; cnt <= g; ++cnt) {
                double lp = lg - std::lgamma(static_cast<double>(cnt) + 1.0) -
                            std::lgamma(static_cast<double>(g - cnt) + 1.0) +
                            static_cast<double>(cnt) * lz +
                            static_cast<double>(g - cnt) * l1z;
                next[cnt] += dist[m] * std::exp(lp);
            }
        }
        dist.swap(next);
        eps = fp.eps_out;
    }
    return 1.0 - dist[0];
}

YieldSolveResult solve_half_yield(double eps0, int rounds, long long trials,
                                  std::uint64_t seed, int threads) {
    if (rounds < 1)
        throw std::domain_error("solve_half_yield: needs at least one round");
    YieldSolveResult res;
    res.naive_count = naive_input_count(eps0, rounds);

    std::map<long long, double> cache;
    auto estimate = [&](long long groups) {
        auto it = cache.find(groups);
        if (it != cache.end())
            return it->second;
        // A per-size stream keeps every evaluation reproducible on its own.
        double p = monte_carlo_yield(eps0, rounds, 8 * groups, trials,
                                     derive_stream(seed, static_cast<std::uint64_t>(groups)),
                                     threads)
                       .success_prob;
        cache.emplace(groups, p);
        return p;
    };

    long long lo = 0; // zero inputs never succeed
    long long hi = std::max<long long>(1, std::llround(res.naive_count / 8.0));
    while (estimate(hi) < 0.5) {
        lo = hi;
        hi *= 2;
        if (hi > (1ll << 28))
            throw std::domain_error("solve_half_yield: bracketing failed");
    }
    while (hi - lo > 1) {
        long long mid = lo + (hi - lo) / 2;
        (estimate(mid) >= 0.5 ? hi : lo) = mid;
    }
    res.n_half = 8 * hi;
    res.success_at_n_half = estimate(hi);
    return res;
}

SignedPerm elementary_round_perm() {
    // Copy A sits on modes 1..8, copy B on 9..16. The routing brings A's
    // second half next to B's first half for the four fusion measurements
    // (pairs (9,10), (11,12), (13,14), (15,16) afterwards) and parks B's
    // second half on modes 5..8, where the surviving octet is reassembled.
    return SignedPerm::from_table({
        {1, 1}, {2, 1}, {3, 1}, {4, 1},     // A first half stays put
        {9, 1}, {11, 1}, {13, 1}, {15, 1},  // A second half: measurement slots
        {10, 1}, {12, 1}, {14, 1}, {16, 1}, // B first half: their partners
        {5, 1}, {6, 1}, {7, 1}, {8, 1},     // B second half: output octet
    });
}

std::vector<std::pair<int, int>> elementary_round_word() {
    return braid_word_for(elementary_round_perm());
}

BraidCircuit elementary_round_circuit() {
    BraidCircuit c(16);
    for (auto [p, q] : elementary_round_word())
        c.braid(p, q);
    c.measure_pair(9, 10).measure_pair(11, 12).measure_pair(13, 14).measure_pair(15, 16);
    // Outcome-dependent byproducts fold back into the codeword with two
    // conditional double exchanges; afterwards the survivor syndrome is
    // u = (r1^s1, r2^s2, r3) on every accepted branch.
    c.cond_double_exchange(BitExpr::parse("t1^t2^1"), 2, 3);
    c.cond_double_exchange(BitExpr::parse("t2^t3^1"), 1, 2);
    return c;
}

ElementaryRoundResult run_elementary_round(const StabilizerTableau& a,
                                           const StabilizerTableau& b, SplitMix64& rng) {
    assert(a.n_modes() == 8 && b.n_modes() == 8);
    std::vector<PauliString> rows;
    rows.reserve(8);
    for (const PauliString& r : a.rows())
        rows.push_back(embed_at(r, 8, 0));
    for (const PauliString& r : b.rows())
        rows.push_back(embed_at(r, 8, 4));
    ElementaryRoundResult out{false, -1, {},
                              StabilizerTableau::from_generators(std::move(rows))};
    const RunResult run = run_circuit(elementary_round_circuit(), out.state, rng);
    for (int j = 0; j < 4; ++j)
        out.bits[static_cast<std::size_t>(j)] = run.outcomes[static_cast<std::size_t>(j)].bit;
    out.accepted = elementary_round_accepts(out.bits[0], out.bits[1], out.bits[2], out.bits[3]);
    if (out.accepted)
        out.syndrome = octet_syndrome_of(out.state);
    return out;
}

} // namespace anyon
