#include <quantasp/stream.hpp>

#include <algorithm>
#include <cstdio>
#include <memory>
#include <ostream>

namespace quantasp {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};

/// Anonymous spool file, removed on close.
class Spool {
public:
    Spool()
        : f_(std::tmpfile()) {
        if (!f_) {
            throw Error("cannot create a temporary spool file");
        }
    }

    long tell() const { return std::ftell(f_.get()); }
    void seek(long off) const {
        if (std::fseek(f_.get(), off, SEEK_SET) != 0) {
            throw Error("spool file seek failed");
        }
    }
    void rewind() const { seek(0); }

    template <typename T>
    void put(const T& v) {
        if (std::fwrite(&v, sizeof(T), 1, f_.get()) != 1) {
            throw Error("spool file write failed");
        }
    }
    template <typename T>
    T get() const {
        T v{};
        if (std::fread(&v, sizeof(T), 1, f_.get()) != 1) {
            throw Error("spool file read failed");
        }
        return v;
    }

private:
    std::unique_ptr<std::FILE, FileCloser> f_;
};

// Gate record: kind (u8), arity (u32), then per input index (u32) and
// flags (u8: 1 = gate, 2 = negated).
class GateSpool {
public:
    Signal add(GateKind kind, const std::vector<Signal>& inputs) {
        offsets_.push_back(spool_.tell());
        spool_.put(static_cast<std::uint8_t>(kind));
        spool_.put(static_cast<std::uint32_t>(inputs.size()));
        for (const auto& s : inputs) {
            spool_.put(s.index);
            spool_.put(static_cast<std::uint8_t>((s.gate ? 1 : 0) | (s.negated ? 2 : 0)));
        }
        return {true, static_cast<std::uint32_t>(offsets_.size() - 1), false};
    }

    std::size_t size() const { return offsets_.size(); }

    Gate read(std::size_t g) const {
        spool_.seek(offsets_[g]);
        return next();
    }

    void rewind() const { spool_.rewind(); }

    Gate next() const {
        Gate g;
        g.kind = static_cast<GateKind>(spool_.get<std::uint8_t>());
        auto n = spool_.get<std::uint32_t>();
        g.inputs.reserve(n);
        for (std::uint32_t k = 0; k < n; ++k) {
            auto idx   = spool_.get<std::uint32_t>();
            auto flags = spool_.get<std::uint8_t>();
            g.inputs.push_back({(flags & 1) != 0, idx, (flags & 2) != 0});
        }
        return g;
    }

private:
    Spool             spool_;
    std::vector<long> offsets_;
};

template <typename Xs, typename F>
void comma_list(std::ostream& out, const Xs& xs, F f) {
    bool first = true;
    for (const auto& x : xs) {
        out << (first ? "" : ",") << f(x);
        first = false;
    }
}

void qcir_prefix(std::ostream& out, const Prefix& prefix) {
    out << "#QCIR-G14\n";
    for (const auto& b : prefix) {
        if (b.vars.empty()) {
            continue;
        }
        out << (b.quantifier == Quantifier::Exists ? "exists(" : "forall(");
        comma_list(out, b.vars, [](std::uint32_t v) { return v; });
        out << ")\n";
    }
}

void qdimacs_prefix(std::ostream& out, const Prefix& prefix) {
    for (const auto& b : normalize_prefix(prefix)) {
        out << (b.quantifier == Quantifier::Exists ? 'e' : 'a');
        for (auto v : b.vars) {
            out << ' ' << v;
        }
        out << " 0\n";
    }
}

} // namespace

CompileStats compile_to_stream(const QuantifiedProgram& qp, const EncodeOptions& opts, QbfFormat format,
                               std::ostream& out) {
    GateSpool     gates;
    MatrixBuilder matrix([&](GateKind k, std::vector<Signal> in) { return gates.add(k, in); });
    auto          res    = encode_levels(qp, opts, true, [&](LevelEncoding&& level) { matrix.add_level(level); });
    Signal        output = matrix.finish(res.terms);
    Prefix        prefix = std::move(res.prefix);
    if (!res.report.constant_result && !res.gate_vars.empty()) {
        prefix.push_back({Quantifier::Exists, res.gate_vars});
    }

    CompileStats stats;
    stats.report      = std::move(res.report);
    stats.matrix_vars = res.num_vars;
    stats.gates       = gates.size();
    const auto nv     = static_cast<long long>(res.num_vars);

    if (format == QbfFormat::Qcir) {
        auto id = [&](const Signal& s) {
            long long v = s.gate ? nv + s.index + 1 : s.index;
            return s.negated ? -v : v;
        };
        qcir_prefix(out, prefix);
        out << "output(" << id(output) << ")\n";
        gates.rewind();
        for (std::size_t g = 0; g < gates.size(); ++g) {
            auto gate = gates.next();
            out << (nv + static_cast<long long>(g) + 1) << " = " << (gate.kind == GateKind::And ? "and(" : "or(");
            comma_list(out, gate.inputs, id);
            out << ")\n";
        }
        stats.num_vars = res.num_vars;
        return stats;
    }

    // Polarity-aware Tseytin, as prenex_cnf: parents first to collect
    // polarities, then children first to write the clauses.
    auto lit = [&](const Signal& s) { return s.gate ? nv + s.index + 1 : static_cast<long long>(s.index); };
    auto slit = [&](const Signal& s) { return s.negated ? -lit(s) : lit(s); };
    std::vector<std::uint8_t> polarity(gates.size(), 0);
    if (output.gate) {
        polarity[output.index] = output.negated ? 2 : 1;
    }
    std::uint64_t clauses = 1;
    for (auto g = gates.size(); g-- > 0;) {
        if (polarity[g] == 0) {
            continue;
        }
        auto gate = gates.read(g);
        auto p    = polarity[g];
        for (const auto& in : gate.inputs) {
            if (in.gate) {
                polarity[in.index] |= in.negated ? static_cast<std::uint8_t>(((p & 1) << 1) | ((p & 2) >> 1)) : p;
            }
        }
        bool is_and = gate.kind == GateKind::And;
        if (p & 1) {
            clauses += is_and ? gate.inputs.size() : 1;
        }
        if (p & 2) {
            clauses += is_and ? 1 : gate.inputs.size();
        }
    }
    std::vector<std::uint32_t> selectors;
    for (std::size_t g = 0; g < gates.size(); ++g) {
        if (polarity[g] != 0) {
            selectors.push_back(static_cast<std::uint32_t>(nv + static_cast<long long>(g) + 1));
        }
    }
    stats.tseytin_vars = static_cast<std::uint32_t>(selectors.size());
    stats.num_vars     = res.num_vars + static_cast<std::uint32_t>(gates.size());
    stats.clauses      = clauses;
    if (!selectors.empty()) {
        if (!prefix.empty() && prefix.back().quantifier == Quantifier::Exists) {
            auto& vars = prefix.back().vars;
            vars.insert(vars.end(), selectors.begin(), selectors.end());
        } else {
            prefix.push_back({Quantifier::Exists, std::move(selectors)});
        }
    }
    out << "p cnf " << stats.num_vars << " " << clauses << "\n";
    qdimacs_prefix(out, prefix);
    gates.rewind();
    for (std::size_t g = 0; g < gates.size(); ++g) {
        auto gate = gates.next();
        auto p    = polarity[g];
        if (p == 0) {
            continue;
        }
        auto s      = nv + static_cast<long long>(g) + 1;
        bool is_and = gate.kind == GateKind::And;
        if (p & 1) {
            if (is_and) {
                for (const auto& in : gate.inputs) {
                    out << -s << ' ' << slit(in) << " 0\n";
                }
            } else {
                out << -s << ' ';
                for (const auto& in : gate.inputs) {
                    out << slit(in) << ' ';
                }
                out << "0\n";
            }
        }
        if (p & 2) {
            if (is_and) {
                out << s << ' ';
                for (const auto& in : gate.inputs) {
                    out << -slit(in) << ' ';
                }
                out << "0\n";
            } else {
                for (const auto& in : gate.inputs) {
                    out << s << ' ' << -slit(in) << " 0\n";
                }
            }
        }
    }
    out << slit(output) << " 0\n";
    return stats;
}

CompileStats compile_cnf_to_stream(const QuantifiedProgram& qp, EncodingMode mode, QbfFormat format,
                                   std::ostream& out, const LoopOptions& loops) {
    auto trivial = trivial_levels(qp);
    for (std::size_t i = 1; i <= qp.size(); ++i) {
        if (qp.level(i).quantifier == Quantifier::Forall &&
            std::find(trivial.begin(), trivial.end(), i) == trivial.end()) {
            throw ProgramError("direct CNF encoding needs trivial universal levels; level " + std::to_string(i) +
                               " is not");
        }
    }
    Spool         spool;
    std::uint64_t count = 0;
    auto          put   = [&](const Clause& c) {
        spool.put(static_cast<std::uint32_t>(c.size()));
        for (auto l : c) {
            spool.put(l);
        }
        ++count;
    };
    auto res = encode_levels(qp, {.mode = mode, .omit_trivial = true, .loops = loops}, false,
                             [&](LevelEncoding&& level) {
                                 for (const auto& c : level.clauses) {
                                     put(c);
                                 }
                             });
    if (res.report.pruned_at) {
        put({});
    }
    auto next = [&] {
        Clause c(spool.get<std::uint32_t>());
        for (auto& l : c) {
            l = spool.get<CnfLit>();
        }
        return c;
    };

    CompileStats stats;
    stats.report      = std::move(res.report);
    stats.matrix_vars = res.num_vars;
    stats.num_vars    = res.num_vars;
    spool.rewind();
    if (format == QbfFormat::Qdimacs) {
        stats.clauses = count;
        out << "p cnf " << res.num_vars << " " << count << "\n";
        qdimacs_prefix(out, res.prefix);
        for (std::uint64_t k = 0; k < count; ++k) {
            for (auto l : next()) {
                out << l << ' ';
            }
            out << "0\n";
        }
        return stats;
    }
    const auto nv = static_cast<std::uint64_t>(res.num_vars);
    stats.gates   = count + 1;
    qcir_prefix(out, res.prefix);
    out << "output(" << (nv + count + 1) << ")\n";
    for (std::uint64_t k = 0; k < count; ++k) {
        out << (nv + k + 1) << " = or(";
        comma_list(out, next(), [](CnfLit l) { return l; });
        out << ")\n";
    }
    out << (nv + count + 1) << " = and(";
    bool first = true;
    for (std::uint64_t k = 0; k < count; ++k) {
        out << (first ? "" : ",") << (nv + k + 1);
        first = false;
    }
    out << ")\n";
    return stats;
}

} // namespace quantasp
