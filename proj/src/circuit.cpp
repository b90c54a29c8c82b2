#include <quantasp/circuit.hpp>

namespace quantasp {

Signal QbfCircuit::add(GateKind kind, std::vector<Signal> inputs) {
    gates.push_back({kind, std::move(inputs)});
    return {true, static_cast<std::uint32_t>(gates.size() - 1), false};
}

void QbfCircuit::validate() const {
    std::vector<bool> seen(num_vars + 1, false);
    for (const auto& b : prefix) {
        for (auto v : b.vars) {
            if (v == 0 || v > num_vars) {
                throw FormatError("quantified variable " + std::to_string(v) + " out of range");
            }
            if (seen[v]) {
                throw FormatError("variable " + std::to_string(v) + " quantified twice");
            }
            seen[v] = true;
        }
    }
    auto check = [&](const Signal& s, std::size_t limit) {
        if (s.gate ? s.index >= limit : (s.index == 0 || s.index > num_vars)) {
            throw FormatError(std::string(s.gate ? "gate" : "variable") + " reference " + std::to_string(s.index) +
                              " is undefined");
        }
    };
    for (std::size_t g = 0; g < gates.size(); ++g) {
        for (const auto& s : gates[g].inputs) {
            check(s, g);
        }
    }
    check(output, gates.size());
}

std::vector<std::uint32_t> quantified_vars(const Prefix& prefix) {
    std::vector<std::uint32_t> out;
    for (const auto& b : prefix) {
        out.insert(out.end(), b.vars.begin(), b.vars.end());
    }
    return out;
}

Prefix normalize_prefix(Prefix prefix) {
    Prefix out;
    for (auto& b : prefix) {
        if (b.vars.empty()) {
            continue;
        }
        if (!out.empty() && out.back().quantifier == b.quantifier) {
            out.back().vars.insert(out.back().vars.end(), b.vars.begin(), b.vars.end());
        } else {
            out.push_back(std::move(b));
        }
    }
    return out;
}

} // namespace quantasp
