#include <quantasp/wellfounded.hpp>

#include <cstdint>
#include <deque>

namespace quantasp {

namespace {

void require_normal(const Program& p, const char* who) {
    if (!p.is_normal()) {
        throw ProgramError(std::string(who) + ": program must be desugared (normal rules only)");
    }
}

bool body_true(const Rule& r, const PartialInterpretation& i) {
    for (const auto& l : r.body()) {
        if (!i.literal_true(l)) {
            return false;
        }
    }
    return true;
}

bool body_false(const Rule& r, const PartialInterpretation& i) {
    for (const auto& l : r.body()) {
        if (i.literal_false(l)) {
            return true;
        }
    }
    return false;
}

} // namespace

AtomSet tp_step(const Program& p, const PartialInterpretation& i) {
    require_normal(p, "tp_step");
    AtomSet out;
    for (const auto& r : p.rules()) {
        if (body_true(r, i)) {
            out.insert(r.head_atom());
        }
    }
    return out;
}

AtomSet greatest_unfounded(const Program& p, const PartialInterpretation& i) {
    require_normal(p, "greatest_unfounded");
    const auto& rules = p.rules();
    // missing[r] = positive body atoms of r not yet known to be supported.
    std::vector<std::size_t>              missing(rules.size(), 0);
    std::map<AtomId, std::vector<std::size_t>> watch;
    std::deque<std::size_t>               ready;
    for (std::size_t k = 0; k < rules.size(); ++k) {
        if (body_false(rules[k], i)) {
            missing[k] = SIZE_MAX;
            continue;
        }
        for (const auto& l : rules[k].body()) {
            if (l.positive) {
                ++missing[k];
                watch[l.atom].push_back(k);
            }
        }
        if (missing[k] == 0) {
            ready.push_back(k);
        }
    }
    AtomSet supported;
    while (!ready.empty()) {
        auto k = ready.front();
        ready.pop_front();
        auto a = rules[k].head_atom();
        if (!supported.insert(a).second) {
            continue;
        }
        if (auto it = watch.find(a); it != watch.end()) {
            for (auto w : it->second) {
                if (missing[w] != SIZE_MAX && --missing[w] == 0) {
                    ready.push_back(w);
                }
            }
        }
    }
    AtomSet out;
    for (auto a : herbrand_base(p)) {
        if (!supported.contains(a)) {
            out.insert(a);
        }
    }
    return out;
}

Program residual(const Program& p, const PartialInterpretation& w) {
    Program out(p.symbols_ptr());
    for (const auto& r : p.rules()) {
        if (body_false(r, w)) {
            continue;
        }
        std::vector<Literal> body;
        for (const auto& l : r.body()) {
            if (!w.literal_true(l)) {
                body.push_back(l);
            }
        }
        switch (r.kind()) {
            case RuleKind::Normal: out.add(Rule::normal(r.head_atom(), std::move(body))); break;
            case RuleKind::Choice: out.add(Rule::choice({r.head().begin(), r.head().end()}, std::move(body))); break;
            case RuleKind::Constraint: out.add(Rule::constraint(std::move(body))); break;
        }
    }
    return out;
}

WfResult well_founded_model(const Program& p) {
    require_normal(p, "well_founded_model");
    auto                  base = herbrand_base(p);
    PartialInterpretation current(base);
    bool                  inconsistent = false;
    for (;;) {
        auto t = tp_step(p, current);
        auto u = greatest_unfounded(p, current);
        PartialInterpretation next(base);
        for (auto a : t) {
            next.set(a, Truth::True);
        }
        for (auto a : u) {
            if (t.contains(a)) {
                inconsistent = true;
                continue;
            }
            next.set(a, Truth::False);
        }
        if (next == current) {
            break;
        }
        current = std::move(next);
    }
    WfResult out{current, residual(p, current), inconsistent};
    return out;
}

Program choice_interface(const Program& lower, const Program& upper) {
    return wf_choice_interface(lower, upper, PartialInterpretation());
}

Program wf_choice_interface(const Program& lower, const Program& upper, const PartialInterpretation& w_lower) {
    Program             out(upper.symbols_ptr());
    auto                shared  = interface_atoms(lower, upper);
    auto                defined = heads(upper);
    std::vector<AtomId> open;
    std::vector<Rule>   rest;
    for (auto a : shared) {
        switch (w_lower.value(a)) {
            case Truth::Undef: open.push_back(a); break;
            case Truth::True: rest.push_back(Rule::normal(a)); break;
            case Truth::False:
                if (defined.contains(a)) {
                    rest.push_back(Rule::constraint({pos(a)}));
                }
                break;
        }
    }
    if (!open.empty()) {
        out.add(Rule::choice(std::move(open)));
    }
    for (auto& r : rest) {
        out.add(std::move(r));
    }
    return out;
}

} // namespace quantasp
