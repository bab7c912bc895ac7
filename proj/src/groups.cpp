#include "anyon/groups.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <set>
#include <stdexcept>

namespace anyon {

SignedPerm SignedPerm::identity(int n_modes) {
    SignedPerm p;
    p.target.resize(n_modes);
    p.sign.assign(n_modes, 1);
    for (int i = 0; i < n_modes; ++i)
        p.target[i] = i + 1;
    return p;
}

SignedPerm SignedPerm::braid_generator(int p, int q, int n_modes) {
    SignedPerm g = identity(n_modes);
    g.target[p - 1] = q;
    g.target[q - 1] = p;
    g.sign[q - 1] = -1;
    return g;
}

SignedPerm SignedPerm::from_table(const std::vector<std::pair<int, int>>& table) {
    SignedPerm g;
    g.target.reserve(table.size());
    g.sign.reserve(table.size());
    for (const auto& [t, s] : table) {
        g.target.push_back(t);
        g.sign.push_back(s);
    }
    return g;
}

SignedPerm SignedPerm::then(const SignedPerm& g) const {
    assert(n_modes() == g.n_modes());
    SignedPerm h;
    h.target.resize(target.size());
    h.sign.resize(target.size());
    for (std::size_t j = 0; j < target.size(); ++j) {
        int mid = target[j];
        h.target[j] = g.target[mid - 1];
        h.sign[j] = sign[j] * g.sign[mid - 1];
    }
    return h;
}

SignedPerm SignedPerm::inverse() const {
    SignedPerm h;
    h.target.resize(target.size());
    h.sign.resize(target.size());
    for (std::size_t j = 0; j < target.size(); ++j) {
        h.target[target[j] - 1] = static_cast<int>(j) + 1;
        h.sign[target[j] - 1] = sign[j];
    }
    return h;
}

bool SignedPerm::is_identity() const {
    for (std::size_t j = 0; j < target.size(); ++j)
        if (target[j] != static_cast<int>(j) + 1 || sign[j] != 1)
            return false;
    return true;
}

PauliString conjugate_by_braid(const PauliString& g, int p, int q, bool inverse) {
    PauliString m = majorana_monomial({p, q}, g.n);
    if (g.commutes(m))
        return g;
    PauliString r = m * g;
    if (!inverse)
        r.phase = (r.phase + 2u) & 3u;
    return r;
}

PauliString conjugate_by_word(const PauliString& g,
                              const std::vector<std::pair<int, int>>& word, bool inverse) {
    PauliString r = g;
    // Word entries act on states in list order, so U = B_k ... B_1 and
    // U g U^dag peels off B_1 first.
    if (!inverse) {
        for (const auto& [p, q] : word)
            r = conjugate_by_braid(r, p, q, false);
    } else {
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            r = conjugate_by_braid(r, it->first, it->second, true);
    }
    return r;
}

std::size_t braid_image_order(int n_modes) {
    std::vector<SignedPerm> gens;
    for (int p = 1; p <= n_modes; ++p)
        for (int q = p + 1; q <= n_modes; ++q)
            gens.push_back(SignedPerm::braid_generator(p, q, n_modes));
    auto key = [](const SignedPerm& g) {
        std::vector<int> k;
        k.reserve(2 * g.target.size());
        for (std::size_t j = 0; j < g.target.size(); ++j) {
            k.push_back(g.target[j]);
            k.push_back(g.sign[j]);
        }
        return k;
    };
    std::set<std::vector<int>> seen;
    std::vector<SignedPerm> frontier{SignedPerm::identity(n_modes)};
    seen.insert(key(frontier[0]));
    while (!frontier.empty()) {
        std::vector<SignedPerm> next;
        for (const SignedPerm& f : frontier)
            for (const SignedPerm& g : gens) {
                SignedPerm h = f.then(g);
                if (seen.insert(key(h)).second)
                    next.push_back(h);
            }
        frontier = std::move(next);
    }
    return seen.size();
}

std::vector<std::pair<int, int>> braid_word_for(const SignedPerm& g) {
    int n = g.n_modes();
    SignedPerm cur = SignedPerm::identity(n);
    std::vector<std::pair<int, int>> word;
    auto apply_gen = [&](int p, int q) {
        word.emplace_back(p, q);
        for (int j = 0; j < n; ++j) {
            if (cur.target[j] == p) {
                cur.target[j] = q;
            } else if (cur.target[j] == q) {
                cur.target[j] = p;
                cur.sign[j] = -cur.sign[j];
            }
        }
    };
    // Route contents into place, then repair signs with double exchanges.
    for (int t = 1; t <= n; ++t) {
        int j = 0;
        while (j < n && g.target[j] != t)
            ++j;
        assert(j < n && "not a permutation");
        int tc = cur.target[j];
        if (tc != t)
            apply_gen(tc, t);
    }
    std::vector<int> bad;
    for (int j = 0; j < n; ++j)
        if (cur.sign[j] != g.sign[j])
            bad.push_back(j);
    if (bad.size() % 2 != 0)
        throw std::invalid_argument(
            "signed permutation with odd sign parity is not a braid image");
    for (std::size_t i = 0; i + 1 < bad.size(); i += 2) {
        int pa = g.target[bad[i]], pb = g.target[bad[i + 1]];
        apply_gen(pa, pb);
        apply_gen(pa, pb);
    }
    assert(cur == g);
    return word;
}

namespace {

using Key = std::vector<std::pair<long long, long long>>;

Key state_key(const DenseState& v) {
    const std::vector<cplx>& a = v.amps();
    std::size_t idx = 0;
    while (idx < a.size() && std::abs(a[idx]) <= 1e-6)
        ++idx;
    assert(idx < a.size());
    cplx rot = std::abs(a[idx]) / a[idx];
    Key k;
    k.reserve(a.size());
    for (const cplx& x : a) {
        cplx w = x * rot;
        k.emplace_back(std::llround(w.real() * 1e8), std::llround(w.imag() * 1e8));
    }
    return k;
}

} // namespace

std::size_t braid_orbit_size(const DenseState& initial) {
    int n_modes = initial.n_modes();
    std::vector<std::pair<int, int>> gens;
    for (int p = 1; p <= n_modes; ++p)
        for (int q = p + 1; q <= n_modes; ++q)
            gens.emplace_back(p, q);
    std::set<Key> seen;
    std::vector<DenseState> frontier{initial};
    seen.insert(state_key(initial));
    while (!frontier.empty()) {
        std::vector<DenseState> next;
        for (const DenseState& v : frontier)
            for (const auto& [p, q] : gens) {
                DenseState w = v;
                w.apply_braid(p, q);
                if (seen.insert(state_key(w)).second)
                    next.push_back(w);
            }
        frontier = std::move(next);
    }
    return seen.size();
}

std::size_t single_qubit_clifford_count() {
    // Braids on 4 modes preserve the even-parity sector {|00>, |11>} of the
    // two carrying qubits; collect their distinct 2x2 actions up to phase.
    using Mat = Eigen::Matrix4cd;
    std::vector<Mat> gens;
    for (auto [p, q] : {std::pair{1, 2}, std::pair{2, 3}, std::pair{3, 4}}) {
        Mat m;
        for (int col = 0; col < 4; ++col) {
            DenseState e = DenseState::basis(2, col);
            e.apply_braid(p, q);
            for (int row = 0; row < 4; ++row)
                m(row, col) = e.amps()[row];
        }
        gens.push_back(m);
    }
    auto key = [](const Mat& u) {
        cplx b[4] = {u(0, 0), u(0, 3), u(3, 0), u(3, 3)};
        int arg = 0;
        for (int i = 1; i < 4; ++i)
            if (std::abs(b[i]) > std::abs(b[arg]))
                arg = i;
        cplx rot = std::abs(b[arg]) / b[arg];
        std::vector<std::pair<long long, long long>> k;
        for (const cplx& x : b) {
            cplx w = x * rot;
            k.emplace_back(std::llround(w.real() * 1e8), std::llround(w.imag() * 1e8));
        }
        return k;
    };
    std::set<std::vector<std::pair<long long, long long>>> seen;
    std::vector<Mat> frontier{Mat::Identity()};
    seen.insert(key(frontier[0]));
    while (!frontier.empty()) {
        std::vector<Mat> next;
        for (const Mat& u : frontier)
            for (const Mat& g : gens) {
                Mat w = g * u;
                if (seen.insert(key(w)).second)
                    next.push_back(w);
            }
        frontier = std::move(next);
    }
    return seen.size();
}

} // namespace anyon
