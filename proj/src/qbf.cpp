#include <quantasp/gc.hpp>
#include <quantasp/qbf.hpp>
#include <quantasp/wellfounded.hpp>

#include <algorithm>

namespace quantasp {

namespace {

/// Walks G_1 ... G_{n+1} over a private copy of the program, keeping the
/// union of the lower levels' well-founded models.
class LevelWalker {
public:
    LevelWalker(const QuantifiedProgram& qp, EncodingMode mode)
        : qp_(qp.clone())
        , mode_(mode) {}

    const QuantifiedProgram& program() const { return qp_; }
    std::shared_ptr<SymbolTable> table() const { return qp_.symbols_ptr(); }

    Program intermediate(std::size_t i) const {
        const auto& upper = qp_.program_at(i);
        Program     g(qp_.symbols_ptr());
        g.append(upper);
        if (i > 1) {
            auto lower = prefix_union(qp_, std::min(i - 1, qp_.size()));
            g.append(mode_ == EncodingMode::WellFounded ? wf_choice_interface(lower, upper, w_lower_)
                                                        : choice_interface(lower, upper));
        }
        return g;
    }

    struct Step {
        Program               normal;
        bool                  trivially_incoherent = false;
        PartialInterpretation model; // WF mode only
    };

    /// Desugared (and, in WF mode, residualized) G_i. Levels must be visited in order.
    Step step(std::size_t i) {
        auto d = desugar(intermediate(i));
        if (mode_ == EncodingMode::Base) {
            return {std::move(d), false, {}};
        }
        auto wf = well_founded_model(d);
        for (auto a : wf.model.base()) {
            if (wf.model.decided(a)) {
                w_lower_.set(a, wf.model.value(a));
            }
        }
        return {std::move(wf.residual), wf.trivially_incoherent, std::move(wf.model)};
    }

private:
    QuantifiedProgram     qp_;
    EncodingMode          mode_;
    PartialInterpretation w_lower_;
};

std::vector<Clause> globalize(const CnfFormula& cnf, SymbolTable& table) {
    std::vector<std::uint32_t> map(cnf.num_vars() + 1, 0);
    for (std::size_t v = 1; v <= cnf.num_vars(); ++v) {
        const auto& var = cnf.var(static_cast<CnfLit>(v));
        map[v]          = (var.aux ? table.fresh(var.name, AtomKind::BodyAux) : var.atom) + 1;
    }
    std::vector<Clause> out;
    out.reserve(cnf.clauses().size());
    for (const auto& c : cnf.clauses()) {
        Clause g;
        g.reserve(c.size());
        for (auto l : c) {
            auto v = static_cast<CnfLit>(map[static_cast<std::size_t>(std::abs(l))]);
            g.push_back(l < 0 ? -v : v);
        }
        out.push_back(std::move(g));
    }
    return out;
}

} // namespace

Program build_intermediate(const QuantifiedProgram& qp, std::size_t i, EncodingMode mode) {
    if (i < 1 || i > qp.size() + 1) {
        throw ProgramError("build_intermediate: level " + std::to_string(i) + " out of range");
    }
    LevelWalker walk(qp, mode);
    if (mode == EncodingMode::Base) {
        return walk.intermediate(i);
    }
    for (std::size_t j = 1; j < i; ++j) {
        walk.step(j);
    }
    return walk.step(i).normal;
}

std::vector<WfLevel> well_founded_levels(const QuantifiedProgram& qp) {
    LevelWalker          walk(qp, EncodingMode::WellFounded);
    std::vector<WfLevel> out;
    for (std::size_t i = 1; i <= qp.size() + 1; ++i) {
        auto q    = i <= qp.size() ? qp.level(i).quantifier : Quantifier::Exists;
        auto step = walk.step(i);
        out.push_back({i, q, std::move(step.model), std::move(step.normal), step.trivially_incoherent, walk.table()});
    }
    return out;
}

std::vector<std::size_t> trivial_levels(const QuantifiedProgram& qp) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i <= qp.size(); ++i) {
        if (check_trivial(qp, i).syntactically_trivial) {
            out.push_back(i);
        }
    }
    return out;
}

LevelPipelineResult encode_levels(const QuantifiedProgram& qp, const EncodeOptions& opts, bool gate_vars,
                                  const std::function<void(LevelEncoding&&)>& sink) {
    LevelWalker         walk(qp, opts.mode);
    auto&               table = *walk.table();
    LevelPipelineResult res;
    res.symbols = walk.table();
    std::vector<bool> quantified;
    auto mark = [&](std::uint32_t v) {
        if (quantified.size() <= v) {
            quantified.resize(v + 1, false);
        }
        bool fresh    = !quantified[v];
        quantified[v] = true;
        return fresh;
    };
    std::vector<std::size_t> trivial;
    if (opts.omit_trivial) {
        trivial = trivial_levels(walk.program());
    }
    const auto n = qp.size();
    for (std::size_t i = 1; i <= n + 1; ++i) {
        auto q = i <= n ? walk.program().level(i).quantifier : Quantifier::Exists;
        LevelReport rep{i, q};
        rep.trivial = std::find(trivial.begin(), trivial.end(), i) != trivial.end();
        if (rep.trivial) {
            auto       ext = ext_atoms(walk.program(), i);
            QuantBlock block{q, {}};
            for (auto a : ext) {
                if (mark(a + 1)) {
                    block.vars.push_back(a + 1);
                }
            }
            rep.vars = ext.size();
            if (!block.vars.empty()) {
                res.prefix.push_back(std::move(block));
            }
            if (opts.mode == EncodingMode::WellFounded) {
                walk.step(i); // keeps the lower well-founded model complete
            }
            res.report.levels.push_back(rep);
            continue;
        }
        auto step = walk.step(i);
        auto cnf  = cnf_encode(step.normal, opts.loops);
        rep.clauses  = cnf.clauses().size();
        rep.vars     = cnf.num_vars();
        rep.aux_vars = cnf.aux_vars().size();
        bool incoherent = opts.mode == EncodingMode::WellFounded && opts.prune &&
                          (step.trivially_incoherent ||
                           bounded_incoherence_check(cnf, opts.incoherence_limit) == Verdict::True);
        if (incoherent) {
            rep.pruned           = true;
            res.report.pruned_at = i;
            res.report.levels.push_back(rep);
            res.terms.push_back({q, 0, true, q == Quantifier::Forall});
            break;
        }
        LevelEncoding level{i, q, globalize(cnf, table), 0};
        QuantBlock    block{q, {}};
        for (const auto& c : level.clauses) {
            for (auto l : c) {
                auto v = static_cast<std::uint32_t>(std::abs(l));
                if (mark(v)) {
                    block.vars.push_back(v);
                }
            }
        }
        std::sort(block.vars.begin(), block.vars.end());
        if (!block.vars.empty()) {
            res.prefix.push_back(std::move(block));
        }
        if (gate_vars) {
            level.phi = table.fresh(std::string(kGatePrefix) + std::to_string(i), AtomKind::Gate) + 1;
            res.gate_vars.push_back(level.phi);
        }
        res.terms.push_back({q, level.phi, false, false});
        res.report.levels.push_back(rep);
        sink(std::move(level));
    }
    if (res.report.pruned_at && res.terms.size() == 1) {
        res.report.constant_result = res.terms.front().value;
        res.prefix.clear();
    }
    res.num_vars = static_cast<std::uint32_t>(table.size());
    return res;
}

void MatrixBuilder::add_level(const LevelEncoding& level) {
    std::vector<Signal> clauses;
    clauses.reserve(level.clauses.size());
    for (const auto& c : level.clauses) {
        std::vector<Signal> lits;
        lits.reserve(c.size());
        for (auto l : c) {
            lits.push_back(Signal::lit(l));
        }
        clauses.push_back(add_(GateKind::Or, std::move(lits)));
    }
    auto cnf = add_(GateKind::And, std::move(clauses));
    auto phi = Signal::var(level.phi);
    auto to  = add_(GateKind::Or, {!phi, cnf});
    auto fro = add_(GateKind::Or, {phi, !cnf});
    equivalences_.push_back(add_(GateKind::And, {to, fro}));
}

Signal MatrixBuilder::finish(const std::vector<PhiTerm>& terms) {
    if (terms.empty()) {
        return add_(GateKind::And, {});
    }
    auto leaf = [&](const PhiTerm& t) {
        return t.is_constant ? add_(t.value ? GateKind::And : GateKind::Or, {}) : Signal::var(t.phi);
    };
    if (terms.size() == 1 && terms.front().is_constant) {
        return leaf(terms.front());
    }
    Signal acc = leaf(terms.back());
    for (auto k = terms.size() - 1; k-- > 0;) {
        auto phi = Signal::var(terms[k].phi);
        acc      = terms[k].quantifier == Quantifier::Forall ? add_(GateKind::Or, {!phi, acc})
                                                             : add_(GateKind::And, {phi, acc});
    }
    auto inputs = equivalences_;
    inputs.push_back(acc);
    return add_(GateKind::And, std::move(inputs));
}

Encoding build_circuit(const QuantifiedProgram& qp, const EncodeOptions& opts) {
    Encoding      out;
    auto&         circuit = out.circuit;
    MatrixBuilder matrix([&](GateKind k, std::vector<Signal> in) { return circuit.add(k, std::move(in)); });
    auto          res = encode_levels(qp, opts, true, [&](LevelEncoding&& level) { matrix.add_level(level); });
    circuit.output    = matrix.finish(res.terms);
    circuit.prefix    = std::move(res.prefix);
    if (!res.report.constant_result) {
        std::vector<std::uint32_t> phis = res.gate_vars;
        if (!phis.empty()) {
            circuit.prefix.push_back({Quantifier::Exists, phis});
        }
        circuit.gate_vars = std::move(phis);
    }
    circuit.num_vars = res.num_vars;
    out.report       = std::move(res.report);
    out.symbols      = std::move(res.symbols);
    return out;
}

Encoding build_phi(const QuantifiedProgram& qp, const LoopOptions& loops) {
    return build_circuit(qp, {.mode = EncodingMode::Base, .loops = loops});
}

Encoding build_phi_wf(const QuantifiedProgram& qp, const EncodeOptions& opts) {
    auto o = opts;
    o.mode = EncodingMode::WellFounded;
    return build_circuit(qp, o);
}

Encoding build_phi_k(const QuantifiedProgram& qp, const LoopOptions& loops) {
    return build_circuit(qp, {.mode = EncodingMode::Base, .omit_trivial = true, .loops = loops});
}

CnfEncoding build_phi_k_cnf(const QuantifiedProgram& qp, EncodingMode mode, const LoopOptions& loops) {
    auto trivial = trivial_levels(qp);
    for (std::size_t i = 1; i <= qp.size(); ++i) {
        if (qp.level(i).quantifier == Quantifier::Forall &&
            std::find(trivial.begin(), trivial.end(), i) == trivial.end()) {
            throw ProgramError("direct CNF encoding needs trivial universal levels; level " + std::to_string(i) +
                               " is not");
        }
    }
    CnfEncoding out;
    auto        res = encode_levels(qp, {.mode = mode, .omit_trivial = true, .loops = loops}, false,
                                    [&](LevelEncoding&& level) {
                                 for (auto& c : level.clauses) {
                                     out.qbf.clauses.push_back(std::move(c));
                                 }
                             });
    if (res.report.pruned_at) {
        out.qbf.clauses.push_back({}); // only existential levels are checked, so the constant is false
    }
    out.qbf.prefix   = std::move(res.prefix);
    out.qbf.num_vars = res.num_vars;
    out.report       = std::move(res.report);
    out.symbols      = std::move(res.symbols);
    return out;
}

} // namespace quantasp
