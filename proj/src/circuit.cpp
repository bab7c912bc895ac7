#include "anyon/circuit.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace anyon {

using nlohmann::json;

BitExpr BitExpr::parse(const std::string& text) {
    BitExpr e;
    std::string token;
    auto flush = [&](const std::string& tok) {
        if (tok.empty())
            throw std::invalid_argument("empty term in bit formula: " + text);
        if (tok == "0")
            return;
        if (tok == "1") {
            e.constant ^= 1;
            return;
        }
        if (tok[0] != 't')
            throw std::invalid_argument("bad term '" + tok + "' in bit formula: " + text);
        std::size_t pos = 0;
        int idx = 0;
        try {
            idx = std::stoi(tok.substr(1), &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad term '" + tok + "' in bit formula: " + text);
        }
        if (pos + 1 != tok.size() || idx < 1)
            throw std::invalid_argument("bad term '" + tok + "' in bit formula: " + text);
        e.terms.push_back(idx);
    };
    for (char ch : text) {
        if (ch == ' ')
            continue;
        if (ch == '^') {
            flush(token);
            token.clear();
        } else {
            token += ch;
        }
    }
    flush(token);
    return e;
}

int BitExpr::eval(const std::vector<int>& bits) const {
    int v = constant;
    for (int t : terms) {
        if (t > static_cast<int>(bits.size()))
            throw std::out_of_range("bit formula references future outcome t" +
                                    std::to_string(t));
        v ^= bits[t - 1] & 1;
    }
    return v;
}

std::string BitExpr::str() const {
    std::string s;
    for (int t : terms) {
        if (!s.empty())
            s += '^';
        s += 't' + std::to_string(t);
    }
    if (constant || s.empty()) {
        if (!s.empty())
            s += '^';
        s += constant ? '1' : '0';
    }
    return s;
}

namespace {

Instruction make(Instruction::Kind k, std::vector<int> modes,
                 std::optional<BitExpr> cond = std::nullopt) {
    return Instruction{k, std::move(modes), std::move(cond)};
}

} // namespace

BraidCircuit& BraidCircuit::braid(int p, int q) {
    instructions.push_back(make(Instruction::Kind::Braid, {p, q}));
    return *this;
}
BraidCircuit& BraidCircuit::braid_inverse(int p, int q) {
    instructions.push_back(make(Instruction::Kind::BraidInverse, {p, q}));
    return *this;
}
BraidCircuit& BraidCircuit::double_exchange(int p, int q) { return braid(p, q).braid(p, q); }
BraidCircuit& BraidCircuit::measure_pair(int p, int q) {
    instructions.push_back(make(Instruction::Kind::MeasurePair, {p, q}));
    return *this;
}
BraidCircuit& BraidCircuit::measure_quartet(int p, int q, int r, int s) {
    instructions.push_back(make(Instruction::Kind::MeasureQuartet, {p, q, r, s}));
    return *this;
}
BraidCircuit& BraidCircuit::cond_braid(const BitExpr& cond, int p, int q) {
    instructions.push_back(make(Instruction::Kind::Braid, {p, q}, cond));
    return *this;
}
BraidCircuit& BraidCircuit::cond_braid_inverse(const BitExpr& cond, int p, int q) {
    instructions.push_back(make(Instruction::Kind::BraidInverse, {p, q}, cond));
    return *this;
}
BraidCircuit& BraidCircuit::cond_double_exchange(const BitExpr& cond, int p, int q) {
    return cond_braid(cond, p, q).cond_braid(cond, p, q);
}

int BraidCircuit::count_measurements() const {
    int m = 0;
    for (const Instruction& ins : instructions)
        m += (ins.kind == Instruction::Kind::MeasurePair ||
              ins.kind == Instruction::Kind::MeasureQuartet);
    return m;
}

void BraidCircuit::validate() const {
    if (n_modes < 2 || n_modes % 2 != 0 || n_modes > 64)
        throw std::invalid_argument("n_modes must be even and in [2, 64]");
    int seen_measurements = 0;
    for (const Instruction& ins : instructions) {
        std::size_t want =
            ins.kind == Instruction::Kind::MeasureQuartet ? 4 : 2;
        if (ins.modes.size() != want)
            throw std::invalid_argument("instruction has wrong mode count");
        for (std::size_t i = 0; i < ins.modes.size(); ++i) {
            int m = ins.modes[i];
            if (m < 1 || m > n_modes)
                throw std::invalid_argument("mode index out of range: " + std::to_string(m));
            for (std::size_t j = i + 1; j < ins.modes.size(); ++j)
                if (ins.modes[j] == m)
                    throw std::invalid_argument("repeated mode in instruction");
        }
        if (ins.cond) {
            for (int t : ins.cond->terms)
                if (t > seen_measurements)
                    throw std::invalid_argument(
                        "condition references future outcome t" + std::to_string(t));
        }
        seen_measurements += (ins.kind == Instruction::Kind::MeasurePair ||
                              ins.kind == Instruction::Kind::MeasureQuartet);
    }
}

BraidCircuit BraidCircuit::from_json(const std::string& text) {
    json j = json::parse(text);
    BraidCircuit c(j.at("n_modes").get<int>());
    for (const json& op : j.at("ops")) {
        std::string name = op.at("op").get<std::string>();
        if (name == "braid" || name == "braid_inverse") {
            Instruction::Kind k = name == "braid" ? Instruction::Kind::Braid
                                                  : Instruction::Kind::BraidInverse;
            c.instructions.push_back(
                make(k, {op.at("p").get<int>(), op.at("q").get<int>()}));
        } else if (name == "cbraid" || name == "cbraid_inverse") {
            Instruction::Kind k = name == "cbraid" ? Instruction::Kind::Braid
                                                   : Instruction::Kind::BraidInverse;
            c.instructions.push_back(
                make(k, {op.at("p").get<int>(), op.at("q").get<int>()},
                     BitExpr::parse(op.at("cond").get<std::string>())));
        } else if (name == "measure_pair") {
            c.instructions.push_back(make(Instruction::Kind::MeasurePair,
                                          {op.at("p").get<int>(), op.at("q").get<int>()}));
        } else if (name == "measure_quartet") {
            std::vector<int> modes = op.at("modes").get<std::vector<int>>();
            c.instructions.push_back(make(Instruction::Kind::MeasureQuartet, std::move(modes)));
        } else {
            throw std::invalid_argument("unknown op '" + name + "'");
        }
    }
    c.validate();
    return c;
}

BraidCircuit BraidCircuit::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open circuit file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

std::string BraidCircuit::to_json() const {
    json ops = json::array();
    for (const Instruction& ins : instructions) {
        json op;
        switch (ins.kind) {
        case Instruction::Kind::Braid:
            op["op"] = ins.cond ? "cbraid" : "braid";
            op["p"] = ins.modes[0];
            op["q"] = ins.modes[1];
            break;
        case Instruction::Kind::BraidInverse:
            op["op"] = ins.cond ? "cbraid_inverse" : "braid_inverse";
            op["p"] = ins.modes[0];
            op["q"] = ins.modes[1];
            break;
        case Instruction::Kind::MeasurePair:
            op["op"] = "measure_pair";
            op["p"] = ins.modes[0];
            op["q"] = ins.modes[1];
            break;
        case Instruction::Kind::MeasureQuartet:
            op["op"] = "measure_quartet";
            op["modes"] = ins.modes;
            break;
        }
        if (ins.cond)
            op["cond"] = ins.cond->str();
        ops.push_back(op);
    }
    json j;
    j["n_modes"] = n_modes;
    j["ops"] = ops;
    return j.dump(2);
}

std::string outcome_log(const std::vector<OutcomeRecord>& outcomes) {
    std::string s;
    for (const OutcomeRecord& r : outcomes)
        s += std::to_string(r.index) + "," + r.observable + "," + std::to_string(r.bit) + "\n";
    return s;
}

namespace {

std::string observable_label(const Instruction& ins) {
    if (ins.kind == Instruction::Kind::MeasurePair)
        return "pair(" + std::to_string(ins.modes[0]) + "," + std::to_string(ins.modes[1]) + ")";
    std::string s = "quartet(";
    for (std::size_t i = 0; i < ins.modes.size(); ++i)
        s += (i ? "," : "") + std::to_string(ins.modes[i]);
    return s + ")";
}

PauliString observable_of(const Instruction& ins, int n_qubits) {
    if (ins.kind == Instruction::Kind::MeasurePair)
        return pair_fusion_observable(ins.modes[0], ins.modes[1], n_qubits);
    return quartet_observable(ins.modes[0], ins.modes[1], ins.modes[2], ins.modes[3], n_qubits);
}

// One generic executor for both engines and both sampling modes.
template <class State>
RunResult run_impl(const BraidCircuit& c, State& state, SplitMix64* rng,
                   const std::vector<int>* forced) {
    c.validate();
    assert(state.n_modes() == c.n_modes);
    RunResult res;
    std::vector<int> bits;
    for (const Instruction& ins : c.instructions) {
        if (ins.cond && ins.cond->eval(bits) == 0)
            continue;
        switch (ins.kind) {
        case Instruction::Kind::Braid:
            state.apply_braid(ins.modes[0], ins.modes[1], false);
            break;
        case Instruction::Kind::BraidInverse:
            state.apply_braid(ins.modes[0], ins.modes[1], true);
            break;
        case Instruction::Kind::MeasurePair:
        case Instruction::Kind::MeasureQuartet: {
            PauliString o = observable_of(ins, state.n_qubits());
            typename State::MeasureResult m;
            if (forced) {
                int idx = static_cast<int>(bits.size());
                if (idx >= static_cast<int>(forced->size()))
                    throw std::out_of_range("forced bit string too short");
                m = state.measure_forced(o, (*forced)[idx]);
            } else {
                m = state.measure(o, *rng);
            }
            res.prob *= m.prob;
            bits.push_back(m.bit);
            res.outcomes.push_back(OutcomeRecord{static_cast<int>(bits.size()),
                                                 observable_label(ins), m.bit});
            if (res.prob == 0.0)
                return res; // dead branch: stop early
            break;
        }
        }
    }
    return res;
}

template <class State>
std::vector<Branch<State>> enumerate_impl(const BraidCircuit& c, const State& initial,
                                          double min_prob) {
    c.validate();
    struct Frame {
        State state;
        std::size_t ip;
        std::vector<int> bits;
        double prob;
        std::vector<OutcomeRecord> outcomes;
    };
    std::vector<Frame> done;
    std::vector<Frame> stack;
    stack.push_back(Frame{initial, 0, {}, 1.0, {}});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        bool dead = false;
        while (f.ip < c.instructions.size()) {
            const Instruction& ins = c.instructions[f.ip];
            if (ins.cond && ins.cond->eval(f.bits) == 0) {
                ++f.ip;
                continue;
            }
            if (ins.kind == Instruction::Kind::Braid ||
                ins.kind == Instruction::Kind::BraidInverse) {
                f.state.apply_braid(ins.modes[0], ins.modes[1],
                                    ins.kind == Instruction::Kind::BraidInverse);
                ++f.ip;
                continue;
            }
            PauliString o = observable_of(ins, f.state.n_qubits());
            // Fork: push bit 1 branch, continue with bit 0 in this frame.
            Frame other = f;
            auto m1 = other.state.measure_forced(o, 1);
            other.prob *= m1.prob;
            other.bits.push_back(1);
            other.outcomes.push_back(OutcomeRecord{static_cast<int>(other.bits.size()),
                                                   observable_label(ins), 1});
            other.ip = f.ip + 1;
            if (other.prob > min_prob)
                stack.push_back(std::move(other));

            auto m0 = f.state.measure_forced(o, 0);
            f.prob *= m0.prob;
            f.bits.push_back(0);
            f.outcomes.push_back(OutcomeRecord{static_cast<int>(f.bits.size()),
                                               observable_label(ins), 0});
            ++f.ip;
            if (f.prob <= min_prob) {
                dead = true;
                break;
            }
        }
        if (!dead)
            done.push_back(std::move(f));
    }
    std::vector<Branch<State>> out;
    out.reserve(done.size());
    for (Frame& f : done)
        out.push_back(Branch<State>{std::move(f.bits), f.prob, std::move(f.state),
                                    std::move(f.outcomes)});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.bits < b.bits;
    });
    return out;
}

} // namespace

RunResult run_circuit(const BraidCircuit& c, StabilizerTableau& state, SplitMix64& rng) {
    return run_impl(c, state, &rng, nullptr);
}
RunResult run_circuit(const BraidCircuit& c, DenseState& state, SplitMix64& rng) {
    return run_impl(c, state, &rng, nullptr);
}
RunResult run_circuit_forced(const BraidCircuit& c, StabilizerTableau& state,
                             const std::vector<int>& bits) {
    return run_impl(c, state, nullptr, &bits);
}
RunResult run_circuit_forced(const BraidCircuit& c, DenseState& state,
                             const std::vector<int>& bits) {
    return run_impl(c, state, nullptr, &bits);
}

std::vector<Branch<DenseState>> enumerate_branches(const BraidCircuit& c,
                                                   const DenseState& initial, double min_prob) {
    return enumerate_impl(c, initial, min_prob);
}
std::vector<Branch<StabilizerTableau>> enumerate_branches(const BraidCircuit& c,
                                                          const StabilizerTableau& initial,
                                                          double min_prob) {
    return enumerate_impl(c, initial, min_prob);
}

BraidCircuit random_circuit(int n_modes, int n_instructions, int max_measurements,
                            SplitMix64& rng) {
    BraidCircuit c(n_modes);
    int measurements = 0;
    auto pick_mode = [&]() { return 1 + static_cast<int>(rng.below(n_modes)); };
    auto pick_distinct = [&](int k) {
        std::vector<int> m;
        while (static_cast<int>(m.size()) < k) {
            int v = pick_mode();
            bool dup = false;
            for (int u : m)
                dup |= (u == v);
            if (!dup)
                m.push_back(v);
        }
        return m;
    };
    for (int i = 0; i < n_instructions; ++i) {
        int kind = rng.below(measurements < max_measurements ? 5 : 3);
        switch (kind) {
        case 0:
        case 1: {
            std::vector<int> m = pick_distinct(2);
            if (kind == 0)
                c.braid(m[0], m[1]);
            else
                c.braid_inverse(m[0], m[1]);
            break;
        }
        case 2: {
            std::vector<int> m = pick_distinct(2);
            if (measurements > 0 && rng.bernoulli(0.5)) {
                BitExpr e;
                e.terms.push_back(1 + static_cast<int>(rng.below(measurements)));
                e.constant = rng.below(2);
                c.cond_braid(e, m[0], m[1]);
            } else {
                c.braid(m[0], m[1]);
            }
            break;
        }
        case 3: {
            std::vector<int> m = pick_distinct(2);
            c.measure_pair(m[0], m[1]);
            ++measurements;
            break;
        }
        case 4: {
            std::vector<int> m = pick_distinct(4);
            c.measure_quartet(m[0], m[1], m[2], m[3]);
            ++measurements;
            break;
        }
        }
    }
    return c;
}

} // namespace anyon
