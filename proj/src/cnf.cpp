#include <quantasp/cnf.hpp>

#include <algorithm>
#include <bit>
#include <cstdlib>

namespace quantasp {

CnfLit CnfFormula::atom_var(AtomId a, const std::string& name) {
    if (auto it = atom_vars_.find(a); it != atom_vars_.end()) {
        return it->second;
    }
    vars_.push_back({a, false, name});
    auto v        = static_cast<CnfLit>(vars_.size());
    atom_vars_[a] = v;
    return v;
}

CnfLit CnfFormula::new_aux(const std::string& name) {
    vars_.push_back({0, true, name});
    return static_cast<CnfLit>(vars_.size());
}

CnfLit CnfFormula::find_atom(AtomId a) const {
    auto it = atom_vars_.find(a);
    return it == atom_vars_.end() ? 0 : it->second;
}

void CnfFormula::add_clause(Clause c) {
    std::sort(c.begin(), c.end(), [](CnfLit x, CnfLit y) {
        return std::abs(x) != std::abs(y) ? std::abs(x) < std::abs(y) : x < y;
    });
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (std::size_t i = 1; i < c.size(); ++i) {
        if (c[i] == -c[i - 1]) {
            return;
        }
    }
    if (seen_.insert(c).second) {
        clauses_.push_back(std::move(c));
    }
}

bool CnfFormula::has_empty_clause() const {
    return std::any_of(clauses_.begin(), clauses_.end(), [](const Clause& c) { return c.empty(); });
}

std::vector<CnfLit> CnfFormula::aux_vars() const {
    std::vector<CnfLit> out;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i].aux) {
            out.push_back(static_cast<CnfLit>(i + 1));
        }
    }
    return out;
}

namespace {

struct Encoder {
    const Program&                                 p;
    CnfFormula&                                    cnf;
    std::map<AtomId, std::vector<std::size_t>>     rules_of; // head -> rule indices
    std::map<std::pair<AtomId, std::size_t>, CnfLit> body_aux; // (head, j) -> var

    Encoder(const Program& prog, CnfFormula& f)
        : p(prog)
        , cnf(f) {
        for (std::size_t k = 0; k < p.rules().size(); ++k) {
            rules_of[p.rules()[k].head_atom()].push_back(k);
        }
    }

    CnfLit lit(const Literal& l) {
        auto v = cnf.atom_var(l.atom, p.symbols().name(l.atom));
        return l.positive ? v : -v;
    }

    // Self-referential constraint atoms: every rule for x has `not x` in its body.
    bool is_constraint_atom(AtomId x) const {
        if (p.symbols().kind(x) != AtomKind::Constraint) {
            return false;
        }
        auto it = rules_of.find(x);
        if (it == rules_of.end()) {
            return false;
        }
        for (auto k : it->second) {
            const auto& b = p.rules()[k].body();
            if (std::find(b.begin(), b.end(), neg(x)) == b.end()) {
                return false;
            }
        }
        return true;
    }

    // Literal standing for body j (1-based) of `head`, creating an aux when
    // the body has several literals. Returns 0 for an empty body (⊤).
    CnfLit body_lit(AtomId head, std::size_t j) {
        const auto& r = p.rules()[rules_of[head][j - 1]];
        if (r.body().empty()) {
            return 0;
        }
        if (r.body().size() == 1) {
            return lit(r.body()[0]);
        }
        auto key = std::make_pair(head, j);
        if (auto it = body_aux.find(key); it != body_aux.end()) {
            return it->second;
        }
        std::vector<CnfLit> ls;
        for (const auto& l : r.body()) {
            ls.push_back(lit(l));
        }
        auto t = cnf.new_aux(std::string(kAuxPrefix) + p.symbols().name(head) + "_" + std::to_string(j));
        body_aux[key] = t;
        Clause back{t};
        for (auto l : ls) {
            cnf.add_clause({-t, l});
            back.push_back(-l);
        }
        cnf.add_clause(std::move(back));
        return t;
    }
};

} // namespace

CnfFormula clark_completion(const Program& p) {
    if (!p.is_normal()) {
        throw ProgramError("clark_completion: program must be desugared (normal rules only)");
    }
    CnfFormula cnf;
    Encoder    enc(p, cnf);
    for (auto a : herbrand_base(p)) {
        if (enc.is_constraint_atom(a)) {
            cnf.mark_eliminated(a);
        }
    }
    for (auto a : herbrand_base(p)) {
        if (cnf.eliminated_atoms().contains(a)) {
            for (auto k : enc.rules_of[a]) {
                Clause c;
                for (const auto& l : p.rules()[k].body()) {
                    if (l != neg(a)) {
                        c.push_back(-enc.lit(l));
                    }
                }
                cnf.add_clause(std::move(c));
            }
            continue;
        }
        auto v  = enc.lit(pos(a));
        auto it = enc.rules_of.find(a);
        if (it == enc.rules_of.end()) {
            cnf.add_clause({-v});
            continue;
        }
        const auto& idx = it->second;
        bool has_fact = std::any_of(idx.begin(), idx.end(), [&](std::size_t k) { return p.rules()[k].body().empty(); });
        if (has_fact) {
            cnf.add_clause({v});
            continue;
        }
        if (idx.size() == 1) {
            const auto& r = p.rules()[idx[0]];
            Clause      back{v};
            for (const auto& l : r.body()) {
                auto x = enc.lit(l);
                cnf.add_clause({-v, x});
                back.push_back(-x);
            }
            cnf.add_clause(std::move(back));
            continue;
        }
        Clause forward{-v};
        for (std::size_t j = 1; j <= idx.size(); ++j) {
            auto t = enc.body_lit(a, j);
            forward.push_back(t);
            cnf.add_clause({v, -t});
        }
        cnf.add_clause(std::move(forward));
    }
    // Eliminated atoms that other rules mention still need a (false) variable.
    for (const auto& r : p.rules()) {
        for (const auto& l : r.body()) {
            if (cnf.eliminated_atoms().contains(l.atom) && r.head_atom() != l.atom) {
                cnf.add_clause({-enc.lit(pos(l.atom))});
            }
        }
    }
    return cnf;
}

namespace {

DependencyGraph positive_graph(const Program& p, const AtomSet& skip) {
    DependencyGraph g;
    for (const auto& r : p.rules()) {
        if (skip.contains(r.head_atom())) {
            continue;
        }
        g.nodes.insert(r.head_atom());
        for (const auto& l : r.body()) {
            if (l.positive && !skip.contains(l.atom)) {
                g.nodes.insert(l.atom);
                g.edges.push_back({l.atom, r.head_atom(), false});
            }
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

bool strongly_connected(const std::vector<AtomId>& atoms, std::uint32_t mask,
                        const std::vector<std::vector<std::size_t>>& succ) {
    std::size_t n     = atoms.size();
    std::size_t first = 0;
    while (!(mask >> first & 1U)) {
        ++first;
    }
    auto reach = [&](bool forward) {
        std::uint32_t seen = 1U << first;
        std::vector<std::size_t> stack{first};
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (std::size_t y = 0; y < n; ++y) {
                bool arc = forward ? std::find(succ[x].begin(), succ[x].end(), y) != succ[x].end()
                                   : std::find(succ[y].begin(), succ[y].end(), x) != succ[y].end();
                if (arc && (mask >> y & 1U) && !(seen >> y & 1U)) {
                    seen |= 1U << y;
                    stack.push_back(y);
                }
            }
        }
        return seen == mask;
    };
    if (!reach(true) || !reach(false)) {
        return false;
    }
    if (std::popcount(mask) == 1) { // a singleton is a loop only with a self-arc
        return std::find(succ[first].begin(), succ[first].end(), first) != succ[first].end();
    }
    return true;
}

std::vector<AtomSet> loops_of(const Program& p, const AtomSet& skip, const LoopOptions& opts) {
    auto                 g = positive_graph(p, skip);
    std::vector<AtomSet> out;
    for (const auto& comp : g.components()) {
        std::vector<AtomId> atoms(comp.begin(), comp.end());
        std::sort(atoms.begin(), atoms.end());
        std::vector<std::vector<std::size_t>> succ(atoms.size());
        bool                                  cyclic = false;
        auto index = [&](AtomId a) -> std::ptrdiff_t {
            auto it = std::lower_bound(atoms.begin(), atoms.end(), a);
            return it != atoms.end() && *it == a ? it - atoms.begin() : -1;
        };
        for (const auto& e : g.edges) {
            auto x = index(e.from), y = index(e.to);
            if (x >= 0 && y >= 0) {
                succ[static_cast<std::size_t>(x)].push_back(static_cast<std::size_t>(y));
                cyclic = true;
            }
        }
        if (!cyclic) {
            continue;
        }
        if (atoms.size() > opts.max_scc_size) {
            std::string names;
            for (auto a : atoms) {
                names += (names.empty() ? "" : ", ") + p.symbols().name(a);
            }
            throw LoopBoundError("non-tight component too large (" + std::to_string(atoms.size()) + " atoms > " +
                                 std::to_string(opts.max_scc_size) + "): {" + names + "}");
        }
        std::uint32_t full = (1U << atoms.size()) - 1;
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            if (strongly_connected(atoms, mask, succ)) {
                AtomSet l;
                for (std::size_t i = 0; i < atoms.size(); ++i) {
                    if (mask >> i & 1U) {
                        l.insert(atoms[i]);
                    }
                }
                out.push_back(std::move(l));
            }
        }
    }
    return out;
}

} // namespace

std::vector<AtomSet> enumerate_loops(const Program& p, const LoopOptions& opts) {
    return loops_of(p, {}, opts);
}

CnfFormula loop_formulas(const Program& p, CnfFormula cnf, const LoopOptions& opts) {
    if (!p.is_normal()) {
        throw ProgramError("loop_formulas: program must be desugared (normal rules only)");
    }
    Encoder enc(p, cnf);
    // Reuse body variables the completion already introduced.
    for (std::size_t i = 0; i < cnf.vars().size(); ++i) {
        const auto& v = cnf.vars()[i];
        if (!v.aux) {
            continue;
        }
        auto rest = v.name.substr(kAuxPrefix.size());
        auto cut  = rest.rfind('_');
        if (auto head = p.symbols().find(rest.substr(0, cut))) {
            enc.body_aux[{*head, std::stoul(rest.substr(cut + 1))}] = static_cast<CnfLit>(i + 1);
        }
    }
    for (const auto& loop : loops_of(p, cnf.eliminated_atoms(), opts)) {
        Clause support;
        bool   unconditional = false;
        for (auto a : loop) {
            const auto& idx = enc.rules_of[a];
            for (std::size_t j = 1; j <= idx.size(); ++j) {
                const auto& r        = p.rules()[idx[j - 1]];
                bool        external = std::none_of(r.body().begin(), r.body().end(), [&](const Literal& l) {
                    return l.positive && loop.contains(l.atom);
                });
                if (!external) {
                    continue;
                }
                auto t = enc.body_lit(a, j);
                if (t == 0) {
                    unconditional = true;
                    break;
                }
                support.push_back(t);
            }
            if (unconditional) {
                break;
            }
        }
        if (unconditional) {
            continue;
        }
        for (auto a : loop) {
            Clause c = support;
            c.push_back(-enc.lit(pos(a)));
            cnf.add_clause(std::move(c));
        }
    }
    return cnf;
}

CnfFormula cnf_encode(const Program& p, const LoopOptions& opts) {
    return loop_formulas(p, clark_completion(p), opts);
}

namespace {

class Dpll {
public:
    explicit Dpll(const CnfFormula& f)
        : cnf_(f)
        , value_(f.num_vars() + 1, 0) {}

    // false on conflict
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& c : cnf_.clauses()) {
                CnfLit unassigned = 0;
                int    open       = 0;
                bool   sat        = false;
                for (auto l : c) {
                    auto v = value(l);
                    if (v > 0) {
                        sat = true;
                        break;
                    }
                    if (v == 0) {
                        ++open;
                        unassigned = l;
                    }
                }
                if (sat) {
                    continue;
                }
                if (open == 0) {
                    return false;
                }
                if (open == 1) {
                    assign(unassigned);
                    changed = true;
                }
            }
        }
        return true;
    }

    bool solve() {
        auto saved = value_;
        if (!propagate()) {
            value_ = saved;
            return false;
        }
        std::size_t v = 1;
        while (v < value_.size() && value_[v] != 0) {
            ++v;
        }
        if (v == value_.size()) {
            return true;
        }
        for (int sign : {1, -1}) {
            auto before = value_;
            assign(sign * static_cast<CnfLit>(v));
            if (solve()) {
                return true;
            }
            value_ = before;
        }
        value_ = saved;
        return false;
    }

private:
    int  value(CnfLit l) const { return l > 0 ? value_[static_cast<std::size_t>(l)] : -value_[static_cast<std::size_t>(-l)]; }
    void assign(CnfLit l) { value_[static_cast<std::size_t>(std::abs(l))] = l > 0 ? 1 : -1; }

    const CnfFormula& cnf_;
    std::vector<int>  value_;
};

} // namespace

Verdict bounded_incoherence_check(const CnfFormula& cnf, std::size_t limit) {
    Dpll d(cnf);
    if (!d.propagate()) {
        return Verdict::True;
    }
    if (cnf.num_vars() > limit) {
        return Verdict::Unknown;
    }
    return Dpll(cnf).solve() ? Verdict::False : Verdict::True;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::True: return "TRUE";
        case Verdict::False: return "FALSE";
        case Verdict::Unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

} // namespace quantasp
