#include <quantasp/formats.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace quantasp {

std::string to_string(QbfFormat f) { return f == QbfFormat::Qcir ? "qcir" : "qdimacs"; }

QbfFormat parse_format(std::string_view s) {
    if (s == "qcir") {
        return QbfFormat::Qcir;
    }
    if (s == "qdimacs") {
        return QbfFormat::Qdimacs;
    }
    throw FormatError("unknown format '" + std::string(s) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> out;
    while (!text.empty()) {
        auto nl = text.find('\n');
        out.push_back(text.substr(0, nl));
        if (nl == std::string_view::npos) {
            break;
        }
        text.remove_prefix(nl + 1);
    }
    return out;
}

long long to_int(std::string_view s, std::size_t line) {
    s              = trim(s);
    long long v    = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw FormatError("line " + std::to_string(line) + ": expected an integer, got '" + std::string(s) + "'");
    }
    return v;
}

std::vector<long long> int_list(std::string_view s, std::size_t line) {
    std::vector<long long> out;
    s = trim(s);
    if (s.empty()) {
        return out;
    }
    while (true) {
        auto comma = s.find(',');
        out.push_back(to_int(s.substr(0, comma), line));
        if (comma == std::string_view::npos) {
            break;
        }
        s.remove_prefix(comma + 1);
    }
    return out;
}

} // namespace

void emit_qcir(const QbfCircuit& c, std::ostream& out) {
    auto id = [&](const Signal& s) {
        long long v = s.gate ? static_cast<long long>(c.num_vars) + s.index + 1 : s.index;
        return s.negated ? -v : v;
    };
    auto list = [&](const auto& xs, auto f) {
        bool first = true;
        for (const auto& x : xs) {
            out << (first ? "" : ",") << f(x);
            first = false;
        }
    };
    out << "#QCIR-G14\n";
    for (const auto& b : c.prefix) {
        if (b.vars.empty()) {
            continue;
        }
        out << (b.quantifier == Quantifier::Exists ? "exists(" : "forall(");
        list(b.vars, [](std::uint32_t v) { return v; });
        out << ")\n";
    }
    out << "output(" << id(c.output) << ")\n";
    for (std::size_t g = 0; g < c.gates.size(); ++g) {
        out << (c.num_vars + g + 1) << " = " << (c.gates[g].kind == GateKind::And ? "and(" : "or(");
        list(c.gates[g].inputs, id);
        out << ")\n";
    }
}

std::string emit_qcir(const QbfCircuit& c) {
    std::ostringstream s;
    emit_qcir(c, s);
    return s.str();
}

QbfCircuit parse_qcir(std::string_view text) {
    QbfCircuit                   c;
    std::map<long long, std::uint32_t> gate_index;
    std::optional<long long>     output;
    std::size_t                  output_line = 0;
    long long                    max_var = 0, first_gate = 0;
    struct RawGate {
        GateKind               kind;
        std::vector<long long> inputs;
        std::size_t            line;
    };
    std::vector<RawGate> raw;
    auto                 lines = split_lines(text);
    for (std::size_t k = 0; k < lines.size(); ++k) {
        auto line = trim(lines[k]);
        auto no   = k + 1;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        auto open  = line.find('(');
        auto close = line.rfind(')');
        if (open == std::string_view::npos || close == std::string_view::npos || close < open ||
            !trim(line.substr(close + 1)).empty()) {
            throw FormatError("line " + std::to_string(no) + ": malformed statement");
        }
        auto args = int_list(line.substr(open + 1, close - open - 1), no);
        auto eq   = line.find('=');
        if (eq != std::string_view::npos && eq < open) {
            auto id = to_int(line.substr(0, eq), no);
            auto op = trim(line.substr(eq + 1, open - eq - 1));
            if (id <= 0) {
                throw FormatError("line " + std::to_string(no) + ": gate id must be positive");
            }
            if (op != "and" && op != "or") {
                throw FormatError("line " + std::to_string(no) + ": unsupported gate type '" + std::string(op) + "'");
            }
            if (gate_index.contains(id)) {
                throw FormatError("line " + std::to_string(no) + ": gate " + std::to_string(id) + " redefined");
            }
            if (raw.empty()) {
                first_gate = id;
            }
            gate_index[id] = static_cast<std::uint32_t>(raw.size());
            raw.push_back({op == "and" ? GateKind::And : GateKind::Or, std::move(args), no});
            continue;
        }
        auto word = trim(line.substr(0, open));
        if (word == "output") {
            if (args.size() != 1 || output) {
                throw FormatError("line " + std::to_string(no) + ": bad output statement");
            }
            output      = args[0];
            output_line = no;
        } else if (word == "exists" || word == "forall" || word == "free") {
            if (!raw.empty() || output) {
                throw FormatError("line " + std::to_string(no) + ": quantifier after output/gates");
            }
            QuantBlock b{word == "forall" ? Quantifier::Forall : Quantifier::Exists, {}};
            for (auto v : args) {
                if (v <= 0) {
                    throw FormatError("line " + std::to_string(no) + ": bad variable " + std::to_string(v));
                }
                max_var = std::max(max_var, v);
                b.vars.push_back(static_cast<std::uint32_t>(v));
            }
            if (word == "free") {
                c.prefix.insert(c.prefix.begin(), std::move(b));
            } else {
                c.prefix.push_back(std::move(b));
            }
        } else {
            throw FormatError("line " + std::to_string(no) + ": unknown statement '" + std::string(word) + "'");
        }
    }
    if (!output) {
        throw FormatError("missing output statement");
    }
    for (const auto& g : raw) {
        for (auto x : g.inputs) {
            if (!gate_index.contains(std::llabs(x))) {
                max_var = std::max(max_var, std::llabs(x));
            }
        }
    }
    if (!gate_index.contains(std::llabs(*output))) {
        max_var = std::max(max_var, std::llabs(*output));
    }
    c.num_vars = static_cast<std::uint32_t>(raw.empty() ? max_var : std::max(max_var, first_gate - 1));
    auto signal = [&](long long x, std::size_t line, std::size_t limit) {
        auto a = std::llabs(x);
        if (a == 0) {
            throw FormatError("line " + std::to_string(line) + ": literal 0");
        }
        if (auto it = gate_index.find(a); it != gate_index.end()) {
            if (it->second >= limit) {
                throw FormatError("line " + std::to_string(line) + ": gate " + std::to_string(a) +
                                  " used before its definition");
            }
            return Signal{true, it->second, x < 0};
        }
        if (a > static_cast<long long>(c.num_vars)) {
            throw FormatError("line " + std::to_string(line) + ": identifier " + std::to_string(a) +
                              " collides with the gate range");
        }
        return Signal::var(static_cast<std::uint32_t>(a), x < 0);
    };
    for (std::size_t g = 0; g < raw.size(); ++g) {
        std::vector<Signal> in;
        for (auto x : raw[g].inputs) {
            in.push_back(signal(x, raw[g].line, g));
        }
        c.gates.push_back({raw[g].kind, std::move(in)});
    }
    c.output = signal(*output, output_line, raw.size());
    c.validate();
    return c;
}

void emit_qdimacs(const PrenexCnf& f, std::ostream& out) {
    out << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
    for (const auto& b : normalize_prefix(f.prefix)) {
        out << (b.quantifier == Quantifier::Exists ? 'e' : 'a');
        for (auto v : b.vars) {
            out << ' ' << v;
        }
        out << " 0\n";
    }
    for (const auto& c : f.clauses) {
        for (auto l : c) {
            out << l << ' ';
        }
        out << "0\n";
    }
}

std::string emit_qdimacs(const PrenexCnf& f) {
    std::ostringstream s;
    emit_qdimacs(f, s);
    return s.str();
}

PrenexCnf parse_qdimacs(std::string_view text) {
    PrenexCnf   f;
    bool        header = false;
    std::size_t declared_clauses = 0;
    Clause      current;
    auto        lines = split_lines(text);
    for (std::size_t k = 0; k < lines.size(); ++k) {
        auto line = trim(lines[k]);
        auto no   = k + 1;
        if (line.empty() || line.front() == 'c') {
            continue;
        }
        std::istringstream in{std::string(line)};
        if (line.front() == 'p') {
            std::string p, cnf;
            long long   v = -1, c = -1;
            in >> p >> cnf >> v >> c;
            if (header || cnf != "cnf" || v < 0 || c < 0 || in.fail()) {
                throw FormatError("line " + std::to_string(no) + ": bad problem line");
            }
            header           = true;
            f.num_vars       = static_cast<std::uint32_t>(v);
            declared_clauses = static_cast<std::size_t>(c);
            continue;
        }
        if (!header) {
            throw FormatError("line " + std::to_string(no) + ": missing problem line");
        }
        if (line.front() == 'e' || line.front() == 'a') {
            if (!f.clauses.empty() || !current.empty()) {
                throw FormatError("line " + std::to_string(no) + ": quantifier line after clauses");
            }
            char      q;
            long long v;
            in >> q;
            QuantBlock b{q == 'a' ? Quantifier::Forall : Quantifier::Exists, {}};
            bool       closed = false;
            while (in >> v) {
                if (v == 0) {
                    closed = true;
                    break;
                }
                if (v < 0 || v > f.num_vars) {
                    throw FormatError("line " + std::to_string(no) + ": bad variable " + std::to_string(v));
                }
                b.vars.push_back(static_cast<std::uint32_t>(v));
            }
            if (!closed) {
                throw FormatError("line " + std::to_string(no) + ": quantifier line not terminated by 0");
            }
            if (!f.prefix.empty() && f.prefix.back().quantifier == b.quantifier) {
                throw FormatError("line " + std::to_string(no) + ": consecutive blocks with the same quantifier");
            }
            f.prefix.push_back(std::move(b));
            continue;
        }
        long long v;
        while (in >> v) {
            if (v == 0) {
                f.clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            if (std::llabs(v) > f.num_vars) {
                throw FormatError("line " + std::to_string(no) + ": literal " + std::to_string(v) + " out of range");
            }
            current.push_back(static_cast<CnfLit>(v));
        }
        if (!in.eof()) {
            throw FormatError("line " + std::to_string(no) + ": unexpected token");
        }
    }
    if (!header) {
        throw FormatError("missing problem line");
    }
    if (!current.empty()) {
        throw FormatError("last clause not terminated by 0");
    }
    if (f.clauses.size() != declared_clauses) {
        throw FormatError("clause count mismatch: header says " + std::to_string(declared_clauses) + ", found " +
                          std::to_string(f.clauses.size()));
    }
    return f;
}

PrenexCnf prenex_cnf(const QbfCircuit& c) {
    PrenexCnf f;
    f.prefix   = c.prefix;
    f.num_vars = c.num_vars + static_cast<std::uint32_t>(c.gates.size());
    auto lit   = [&](const Signal& s) {
        auto v = static_cast<CnfLit>(s.gate ? c.num_vars + s.index + 1 : s.index);
        return s.negated ? -v : v;
    };
    // bit 0: needed positively, bit 1: needed negatively
    std::vector<std::uint8_t> polarity(c.gates.size(), 0);
    if (c.output.gate) {
        polarity[c.output.index] = c.output.negated ? 2 : 1;
    }
    for (auto g = c.gates.size(); g-- > 0;) {
        for (const auto& in : c.gates[g].inputs) {
            if (in.gate) {
                auto p = polarity[g];
                polarity[in.index] |= in.negated ? static_cast<std::uint8_t>(((p & 1) << 1) | ((p & 2) >> 1)) : p;
            }
        }
    }
    std::vector<std::uint32_t> selectors;
    for (std::size_t g = 0; g < c.gates.size(); ++g) {
        if (polarity[g] == 0) {
            continue;
        }
        auto        s      = static_cast<CnfLit>(c.num_vars + g + 1);
        const auto& gate   = c.gates[g];
        bool        is_and = gate.kind == GateKind::And;
        selectors.push_back(static_cast<std::uint32_t>(s));
        // s -> gate
        if (polarity[g] & 1) {
            if (is_and) {
                for (const auto& in : gate.inputs) {
                    f.clauses.push_back({-s, lit(in)});
                }
            } else {
                Clause cl{-s};
                for (const auto& in : gate.inputs) {
                    cl.push_back(lit(in));
                }
                f.clauses.push_back(std::move(cl));
            }
        }
        // gate -> s
        if (polarity[g] & 2) {
            if (is_and) {
                Clause cl{s};
                for (const auto& in : gate.inputs) {
                    cl.push_back(-lit(in));
                }
                f.clauses.push_back(std::move(cl));
            } else {
                for (const auto& in : gate.inputs) {
                    f.clauses.push_back({s, -lit(in)});
                }
            }
        }
    }
    f.clauses.push_back({lit(c.output)});
    if (!selectors.empty()) {
        if (!f.prefix.empty() && f.prefix.back().quantifier == Quantifier::Exists) {
            auto& vars = f.prefix.back().vars;
            vars.insert(vars.end(), selectors.begin(), selectors.end());
        } else {
            f.prefix.push_back({Quantifier::Exists, std::move(selectors)});
        }
    }
    return f;
}

QbfCircuit to_circuit(const PrenexCnf& f) {
    QbfCircuit c;
    c.prefix   = f.prefix;
    c.num_vars = f.num_vars;
    std::vector<Signal> clauses;
    for (const auto& cl : f.clauses) {
        std::vector<Signal> lits;
        for (auto l : cl) {
            lits.push_back(Signal::lit(l));
        }
        clauses.push_back(c.add_or(std::move(lits)));
    }
    c.output = c.add_and(std::move(clauses));
    return c;
}

} // namespace quantasp
