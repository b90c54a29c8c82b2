#include <quantasp/gc.hpp>
#include <quantasp/oracle.hpp>

#include <algorithm>

namespace quantasp {

AtomSet ext_atoms(const QuantifiedProgram& qp, std::size_t i) {
    const auto& pi = qp.program_at(i);
    AtomSet     later;
    for (std::size_t j = i + 1; j <= qp.size() + 1; ++j) {
        auto shared = interface_atoms(pi, qp.program_at(j));
        later.insert(shared.begin(), shared.end());
    }
    AtomSet out;
    for (auto a : heads(pi)) {
        if (later.contains(a)) {
            out.insert(a);
        }
    }
    return out;
}

namespace {

bool only_empty_choices(const Program& p) {
    return std::all_of(p.rules().begin(), p.rules().end(),
                       [](const Rule& r) { return r.kind() == RuleKind::Choice && r.body().empty(); });
}

} // namespace

TrivialityReport check_trivial(const QuantifiedProgram& qp, std::size_t i) {
    TrivialityReport rep;
    rep.level        = i;
    rep.ext_atoms    = ext_atoms(qp, i);
    rep.interface_ok = true;
    const auto& pi   = qp.program_at(i);
    for (std::size_t j = 1; j < i; ++j) {
        const auto& pj     = qp.program_at(j);
        auto        shared = interface_atoms(pi, pj);
        auto        f      = facts(pj);
        if (!std::includes(f.begin(), f.end(), shared.begin(), shared.end())) {
            rep.interface_ok = false;
        }
    }
    auto h = heads(pi);
    rep.syntactically_trivial = rep.interface_ok && only_empty_choices(pi) &&
                                std::includes(h.begin(), h.end(), rep.ext_atoms.begin(), rep.ext_atoms.end());
    return rep;
}

bool semantically_trivial(const QuantifiedProgram& qp, std::size_t i) {
    auto ext = ext_atoms(qp, i);
    if (ext.size() > 16) {
        throw BudgetError("semantically_trivial: too many exported atoms");
    }
    std::set<AtomSet> seen;
    for (const auto& m : answer_sets_bruteforce(qp.program_at(i)).models) {
        AtomSet proj;
        std::set_intersection(m.begin(), m.end(), ext.begin(), ext.end(), std::inserter(proj, proj.end()));
        seen.insert(std::move(proj));
    }
    return seen.size() == (std::size_t{1} << ext.size());
}

std::variant<GcSplit, NotGc> split_guess_check(const Program& p) {
    Program guess(p.symbols_ptr());
    Program check(p.symbols_ptr());
    for (const auto& r : p.rules()) {
        if (r.kind() == RuleKind::Choice) {
            if (!r.body().empty()) {
                return NotGc{"choice rule with a non-empty body: guess rules must be bodiless"};
            }
            guess.add(r);
        } else {
            check.add(r);
        }
    }
    if (!is_stratified(check)) {
        return NotGc{"check part is not stratified"};
    }
    auto gb = herbrand_base(guess);
    for (auto a : heads(check)) {
        if (gb.contains(a)) {
            return NotGc{"check rule defines guessed atom '" + p.symbols().name(a) + "'"};
        }
    }
    return GcSplit{std::move(guess), std::move(check), std::nullopt};
}

namespace {

void require_fresh(AtomId u, const Program& p) {
    if (herbrand_base(p).contains(u)) {
        throw GcError("atom '" + p.symbols().name(u) + "' is not fresh");
    }
}

} // namespace

Program tau(AtomId u, const GcSplit& split) {
    require_fresh(u, split.check);
    require_fresh(u, split.guess);
    Program out(split.check.symbols_ptr());
    for (const auto& r : split.check.rules()) {
        if (r.kind() == RuleKind::Constraint) {
            out.add(Rule::normal(u, {r.body().begin(), r.body().end()}));
        } else {
            out.add(r);
        }
    }
    return out;
}

Program rho(AtomId u, const Program& p) {
    require_fresh(u, p);
    Program out(p.symbols_ptr());
    for (const auto& r : p.rules()) {
        out.add(r.with_body_literal(neg(u)));
    }
    return out;
}

Program sigma(AtomId u, const GcSplit& split, const Program& next) {
    auto out = tau(u, split);
    out.append(rho(u, next));
    return out;
}

QuantifiedProgram gc_rewrite_level(const QuantifiedProgram& qp, std::size_t i) {
    if (i < 1 || i > qp.size()) {
        throw GcError("level " + std::to_string(i) + " out of range");
    }
    if (qp.level(i).quantifier != Quantifier::Forall) {
        throw GcError("level " + std::to_string(i) + " is not universal");
    }
    auto copy  = qp.clone();
    auto split = split_guess_check(copy.level(i).program);
    if (auto* bad = std::get_if<NotGc>(&split)) {
        throw GcError("level " + std::to_string(i) + " is not Guess&Check: " + bad->reason);
    }
    auto& gc = std::get<GcSplit>(split);
    auto  n  = copy.size();
    for (std::size_t j = 1; j < i; ++j) {
        auto earlier = herbrand_base(copy.level(j).program);
        for (auto a : heads(gc.check)) {
            if (earlier.contains(a)) {
                throw GcError("level " + std::to_string(i) + ": atom '" + copy.symbols().name(a) +
                              "' of the check part already occurs at level " + std::to_string(j));
            }
        }
    }
    AtomSet moved;
    auto    guessed = herbrand_base(gc.guess);
    for (auto a : herbrand_base(gc.check)) {
        if (!guessed.contains(a)) {
            moved.insert(a);
        }
    }
    for (std::size_t j = i + 1; j <= n + 1; ++j) {
        auto later = heads(copy.program_at(j));
        for (auto a : moved) {
            if (later.contains(a)) {
                throw GcError("level " + std::to_string(i) + ": atom '" + copy.symbols().name(a) +
                              "' of the check part is redefined at " +
                              (j == n + 1 ? std::string("the constraint program") : "level " + std::to_string(j)));
            }
        }
    }
    auto u        = copy.symbols().fresh_unsat(i);
    gc.unsat_atom = u;

    auto               table = copy.symbols_ptr();
    std::vector<Level> levels = copy.levels();
    Program            constraint = copy.constraint();
    levels[i - 1].program = gc.guess;
    if (i == n) {
        constraint = sigma(u, gc, constraint);
    } else {
        levels[i].program = sigma(u, gc, levels[i].program);
        if (i == n - 1) {
            constraint = rho(u, constraint);
        } else {
            levels[i + 1].program.add(Rule::constraint({pos(u)}));
        }
    }
    return QuantifiedProgram(table, std::move(levels), std::move(constraint));
}

bool is_gc_program(const QuantifiedProgram& qp, std::string* why) {
    auto fail = [&](std::string msg) {
        if (why != nullptr) {
            *why = std::move(msg);
        }
        return false;
    };
    for (std::size_t i = 1; i <= qp.size(); ++i) {
        if (i > 1 && qp.level(i).quantifier == qp.level(i - 1).quantifier) {
            return fail("levels " + std::to_string(i - 1) + " and " + std::to_string(i) + " share a quantifier");
        }
        if (qp.level(i).quantifier == Quantifier::Forall) {
            auto split = split_guess_check(qp.level(i).program);
            if (auto* bad = std::get_if<NotGc>(&split)) {
                return fail("level " + std::to_string(i) + ": " + bad->reason);
            }
        }
    }
    return true;
}

QuantifiedProgram gc_chain(const QuantifiedProgram& qp) {
    std::string why;
    if (!is_gc_program(qp, &why)) {
        throw GcError("not a Guess&Check program: " + why);
    }
    auto out = qp.clone();
    for (std::size_t i = 1; i <= out.size(); ++i) {
        if (out.level(i).quantifier == Quantifier::Forall) {
            out = gc_rewrite_level(out, i);
        }
    }
    return out;
}

} // namespace quantasp
