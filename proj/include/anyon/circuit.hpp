#pragma once

#include "anyon/dense.hpp"
#include "anyon/tableau.hpp"

#include <optional>
#include <string>
#include <vector>

namespace anyon {

// XOR formula over earlier measurement outcomes, e.g. "t1^t2^1". Terms are
// 1-based measurement indices in circuit order plus an optional constant.
struct BitExpr {
    std::vector<int> terms;
    int constant = 0;

    static BitExpr parse(const std::string& text);
    int eval(const std::vector<int>& bits) const;
    std::string str() const;
};

struct Instruction {
    enum class Kind { Braid, BraidInverse, MeasurePair, MeasureQuartet };

    Kind kind = Kind::Braid;
    std::vector<int> modes;        // 2 modes (braid/pair) or 4 (quartet)
    std::optional<BitExpr> cond;   // run only when the formula evaluates to 1
};

// A measurement-assisted braiding circuit on n Majorana modes. The JSON form
// is {"n_modes": N, "ops": [...]} with ops "braid", "braid_inverse",
// "measure_pair", "measure_quartet", and conditioned braids "cbraid" /
// "cbraid_inverse" carrying a "cond" formula.
struct BraidCircuit {
    int n_modes = 0;
    std::vector<Instruction> instructions;

    explicit BraidCircuit(int modes = 0) : n_modes(modes) {}

    BraidCircuit& braid(int p, int q);
    BraidCircuit& braid_inverse(int p, int q);
    BraidCircuit& double_exchange(int p, int q);
    BraidCircuit& measure_pair(int p, int q);
    BraidCircuit& measure_quartet(int p, int q, int r, int s);
    BraidCircuit& cond_braid(const BitExpr& cond, int p, int q);
    BraidCircuit& cond_braid_inverse(const BitExpr& cond, int p, int q);
    BraidCircuit& cond_double_exchange(const BitExpr& cond, int p, int q);

    int count_measurements() const;

    static BraidCircuit from_json(const std::string& text);
    static BraidCircuit from_json_file(const std::string& path);
    std::string to_json() const;

    void validate() const; // throws std::invalid_argument on malformed input
};

struct OutcomeRecord {
    int index = 0;          // 1-based measurement index
    std::string observable; // e.g. "pair(2,3)"
    int bit = 0;
};

std::string outcome_log(const std::vector<OutcomeRecord>& outcomes);

struct RunResult {
    std::vector<OutcomeRecord> outcomes;
    double prob = 1.0; // probability of the sampled branch
};

RunResult run_circuit(const BraidCircuit& c, StabilizerTableau& state, SplitMix64& rng);
RunResult run_circuit(const BraidCircuit& c, DenseState& state, SplitMix64& rng);

// Forced-outcome runs for branch-by-branch comparison; prob is 0 when the
// forced bit string is inconsistent with the state.
RunResult run_circuit_forced(const BraidCircuit& c, StabilizerTableau& state,
                             const std::vector<int>& bits);
RunResult run_circuit_forced(const BraidCircuit& c, DenseState& state,
                             const std::vector<int>& bits);

template <class State>
struct Branch {
    std::vector<int> bits;
    double prob = 1.0;
    State state;
    std::vector<OutcomeRecord> outcomes;
};

// All measurement branches with probability above min_prob, in lexicographic
// bit order.
std::vector<Branch<DenseState>> enumerate_branches(const BraidCircuit& c,
                                                   const DenseState& initial,
                                                   double min_prob = 1e-12);
std::vector<Branch<StabilizerTableau>> enumerate_branches(const BraidCircuit& c,
                                                          const StabilizerTableau& initial,
                                                          double min_prob = 1e-12);

// Random measurement-assisted circuit for cross-validation fuzzing; bounds
// the number of measurements so branch enumeration stays tractable.
BraidCircuit random_circuit(int n_modes, int n_instructions, int max_measurements,
                            SplitMix64& rng);

} // namespace anyon
