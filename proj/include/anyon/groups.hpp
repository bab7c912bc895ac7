#pragma once

#include "anyon/dense.hpp"
#include "anyon/pauli.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace anyon {

// Signed permutation of Majorana modes: mode m maps to sign(m) * target(m).
// Braid conjugation acts on mode operators exactly this way, so the image of
// the braid group in the mode picture is a signed-permutation group.
struct SignedPerm {
    std::vector<int> target; // target[m-1] in 1..n
    std::vector<int> sign;   // sign[m-1] in {+1,-1}

    static SignedPerm identity(int n_modes);
    // Elementary braid B_{p,q}: c_p -> c_q, c_q -> -c_p.
    static SignedPerm braid_generator(int p, int q, int n_modes);
    // From a 1-based table m -> (target, sign).
    static SignedPerm from_table(const std::vector<std::pair<int, int>>& table);

    int n_modes() const { return static_cast<int>(target.size()); }
    SignedPerm then(const SignedPerm& g) const; // apply *this first, then g
    SignedPerm inverse() const;
    bool is_identity() const;
    bool operator==(const SignedPerm&) const = default;
};

// Conjugates a Pauli operator by a single elementary braid: B g B^dagger
// (inverse applies B^dagger g B). Used for symbolic operator-flow checks.
PauliString conjugate_by_braid(const PauliString& g, int p, int q, bool inverse = false);
PauliString conjugate_by_word(const PauliString& g,
                              const std::vector<std::pair<int, int>>& word,
                              bool inverse = false);

// Order of the signed-permutation image of the braid group on n modes
// (BFS over all elementary generators).
std::size_t braid_image_order(int n_modes);

// Braid word (list of forward exchanges) whose signed-permutation image
// equals g. Greedy routing, then pairs of double exchanges repair signs;
// a signed perm is realizable iff its sign mismatches come in pairs.
std::vector<std::pair<int, int>> braid_word_for(const SignedPerm& g);

// Orbit of a state under all elementary braids, counting states up to global
// phase (first significant amplitude rotated positive, grid-rounded).
std::size_t braid_orbit_size(const DenseState& initial);

// Distinct logical single-qubit actions (up to phase) that braiding four
// modes induces on the even-parity sector: the single-qubit Clifford group.
std::size_t single_qubit_clifford_count();

} // namespace anyon
