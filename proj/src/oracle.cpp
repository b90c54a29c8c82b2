#include <quantasp/oracle.hpp>

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace quantasp {

namespace {

using Mask = std::uint64_t;

struct CompiledRule {
    RuleKind kind;
    Mask     head = 0;
    Mask     pos  = 0;
    Mask     neg  = 0;
};

struct Compiled {
    std::vector<AtomId>       atoms; // bit i <-> atoms[i]
    std::vector<CompiledRule> rules;
    Mask                      forced_true  = 0;
    Mask                      forced_false = 0;
    Mask                      free         = 0;

    Mask bit(AtomId a) const {
        auto it = std::lower_bound(atoms.begin(), atoms.end(), a);
        return Mask{1} << (it - atoms.begin());
    }

    AtomSet to_set(Mask m) const {
        AtomSet out;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (m >> i & 1U) {
                out.insert(atoms[i]);
            }
        }
        return out;
    }
};

Compiled compile(const Program& p) {
    Compiled c;
    auto     base = herbrand_base(p);
    if (base.size() > 64) {
        throw BudgetError("oracle: more than 64 atoms");
    }
    c.atoms.assign(base.begin(), base.end());
    Mask head_atoms = 0;
    for (const auto& r : p.rules()) {
        CompiledRule cr{r.kind()};
        for (auto a : r.head()) {
            cr.head |= c.bit(a);
        }
        for (const auto& l : r.body()) {
            (l.positive ? cr.pos : cr.neg) |= c.bit(l.atom);
        }
        head_atoms |= cr.head;
        if (r.kind() == RuleKind::Normal && r.body().empty()) {
            c.forced_true |= cr.head;
        }
        if (r.kind() == RuleKind::Constraint && r.body().size() == 1 && r.body()[0].positive) {
            c.forced_false |= cr.pos;
        }
        c.rules.push_back(cr);
    }
    Mask all = base.size() == 64 ? ~Mask{0} : (Mask{1} << base.size()) - 1;
    c.forced_false |= all & ~head_atoms;
    c.free = head_atoms & ~c.forced_true & ~c.forced_false;
    return c;
}

bool satisfies(const Compiled& c, Mask m) {
    for (const auto& r : c.rules) {
        bool body = (r.pos & ~m) == 0 && (r.neg & m) == 0;
        if (!body) {
            continue;
        }
        if (r.kind == RuleKind::Constraint || (r.kind == RuleKind::Normal && (r.head & m) == 0)) {
            return false;
        }
    }
    return true;
}

// Positive reduct P^M as (head, pos) pairs.
std::vector<std::pair<Mask, Mask>> reduct(const Compiled& c, Mask m) {
    std::vector<std::pair<Mask, Mask>> out;
    for (const auto& r : c.rules) {
        if (r.kind == RuleKind::Constraint || (r.neg & m) != 0) {
            continue;
        }
        Mask h = r.kind == RuleKind::Choice ? (r.head & m) : r.head;
        for (Mask rest = h; rest != 0; rest &= rest - 1) {
            out.emplace_back(rest & -rest, r.pos);
        }
    }
    return out;
}

Mask least_model(const std::vector<std::pair<Mask, Mask>>& pos) {
    Mask m       = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [h, b] : pos) {
            if ((b & ~m) == 0 && (h & ~m) != 0) {
                m |= h;
                changed = true;
            }
        }
    }
    return m;
}

bool models_positive(const std::vector<std::pair<Mask, Mask>>& pos, Mask m) {
    return std::all_of(pos.begin(), pos.end(), [&](const auto& r) { return (r.second & ~m) != 0 || (r.first & m) != 0; });
}

bool minimal_by_subsets(const std::vector<std::pair<Mask, Mask>>& pos, Mask m) {
    if (!models_positive(pos, m)) {
        return false;
    }
    if (m == 0) {
        return true;
    }
    // every proper subset of m, including the empty set
    for (Mask s = (m - 1) & m;; s = (s - 1) & m) {
        if (models_positive(pos, s)) {
            return false;
        }
        if (s == 0) {
            break;
        }
    }
    return true;
}

bool stable(const Compiled& c, Mask m) {
    if (!satisfies(c, m)) {
        return false;
    }
    auto red = reduct(c, m);
    bool lm  = least_model(red) == m;
    if (std::popcount(m) <= 12) {
        bool sub = minimal_by_subsets(red, m);
        if (sub != lm) {
            throw std::logic_error("oracle: minimality checks disagree");
        }
    }
    return lm;
}

std::vector<Mask> enumerate(const Compiled& c, const OracleOptions& opts, std::uint64_t* steps) {
    auto nfree = static_cast<std::size_t>(std::popcount(c.free));
    if (nfree > opts.max_free_atoms) {
        throw BudgetError("oracle: " + std::to_string(nfree) + " free atoms exceed the bound of " +
                          std::to_string(opts.max_free_atoms));
    }
    std::uint64_t count = std::uint64_t{1} << nfree;
    if (steps != nullptr) {
        *steps += count;
        if (*steps > opts.budget) {
            throw BudgetError("oracle: step budget of " + std::to_string(opts.budget) + " exceeded");
        }
    }
    std::vector<Mask> out;
    // Walk all subsets of the free atoms.
    Mask s = 0;
    for (std::uint64_t k = 0; k < count; ++k) {
        Mask m = c.forced_true | s;
        if (stable(c, m)) {
            out.push_back(m);
        }
        s = (s - c.free) & c.free;
    }
    return out;
}

std::vector<AtomSet> answer_sets(const Program& p, const OracleOptions& opts, std::uint64_t* steps) {
    auto                 c = compile(p);
    std::vector<AtomSet> out;
    for (auto m : enumerate(c, opts, steps)) {
        out.push_back(c.to_set(m));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Coherence of □_i P_i ... □_n P_n : C where `current` already contains the
// fixing of the outer levels.
bool coherent_from(const QuantifiedProgram& qp, std::size_t i, const Program& current, const OracleOptions& opts,
                   std::uint64_t* steps) {
    bool exists = qp.level(i).quantifier == Quantifier::Exists;
    auto base   = herbrand_base(current);
    for (const auto& m : answer_sets(current, opts, steps)) {
        Program next = i == qp.size() ? qp.constraint() : qp.level(i + 1).program;
        next.append(fix(current, PartialInterpretation::total(base, m)));
        bool ok = i == qp.size() ? !answer_sets(next, opts, steps).empty()
                                 : coherent_from(qp, i + 1, next, opts, steps);
        if (ok == exists) {
            return exists;
        }
    }
    return !exists;
}

} // namespace

AnswerSetCollection answer_sets_bruteforce(const Program& p, const OracleOptions& opts) {
    return {herbrand_base(p), answer_sets(p, opts, nullptr)};
}

bool is_answer_set(const Program& p, const AtomSet& m) {
    auto c = compile(p);
    Mask x = 0;
    for (auto a : m) {
        if (!std::binary_search(c.atoms.begin(), c.atoms.end(), a)) {
            return false;
        }
        x |= c.bit(a);
    }
    return stable(c, x);
}

bool coherence_bruteforce(const QuantifiedProgram& qp, const OracleOptions& opts) {
    std::uint64_t steps = 0;
    return coherent_from(qp, 1, qp.level(1).program, opts, &steps);
}

std::vector<AtomSet> quantified_answer_sets(const QuantifiedProgram& qp, const OracleOptions& opts) {
    std::vector<AtomSet> out;
    if (qp.level(1).quantifier != Quantifier::Exists) {
        return out;
    }
    std::uint64_t steps = 0;
    const auto&   p1    = qp.level(1).program;
    auto          base  = herbrand_base(p1);
    for (const auto& m : answer_sets(p1, opts, &steps)) {
        Program next = qp.size() == 1 ? qp.constraint() : qp.level(2).program;
        next.append(fix(p1, PartialInterpretation::total(base, m)));
        bool ok = qp.size() == 1 ? !answer_sets(next, opts, &steps).empty() : coherent_from(qp, 2, next, opts, &steps);
        if (ok) {
            out.push_back(m);
        }
    }
    return out;
}

} // namespace quantasp
