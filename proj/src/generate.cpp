#include <quantasp/generate.hpp>

#include <algorithm>

namespace quantasp {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool coin(std::mt19937_64& rng, double p) {
    return std::bernoulli_distribution(p)(rng);
}

std::vector<Literal> body(std::mt19937_64& rng, const std::vector<AtomId>& pool, std::size_t max_len, double p_neg,
                          std::size_t min_len = 0) {
    std::vector<Literal> out;
    if (pool.empty()) {
        return out;
    }
    auto len = min_len + pick(rng, max_len - min_len + 1);
    for (std::size_t k = 0; k < len; ++k) {
        out.push_back({pool[pick(rng, pool.size())], !coin(rng, p_neg)});
    }
    return out;
}

std::vector<AtomId> intern_all(SymbolTable& t, const std::string& stem, std::size_t n) {
    std::vector<AtomId> out;
    for (std::size_t k = 1; k <= n; ++k) {
        out.push_back(t.intern(stem + std::to_string(k)));
    }
    return out;
}

void add_random_rule(std::mt19937_64& rng, Program& p, const std::vector<AtomId>& own,
                     const std::vector<AtomId>& outer, const std::vector<AtomId>& pool, const RandomOptions& o) {
    double r = std::uniform_real_distribution<double>(0, 1)(rng);
    if (r < o.p_constraint) {
        p.add(Rule::constraint(body(rng, pool, o.max_body, o.p_negative, 1)));
        return;
    }
    if (r < o.p_constraint + o.p_choice) {
        std::vector<AtomId> atoms;
        auto                n = 1 + pick(rng, std::min<std::size_t>(3, own.size()));
        for (std::size_t k = 0; k < n; ++k) {
            atoms.push_back(own[pick(rng, own.size())]);
        }
        p.add(Rule::choice(std::move(atoms), coin(rng, 0.5) ? std::vector<Literal>{}
                                                             : body(rng, pool, 2, o.p_negative)));
        return;
    }
    AtomId head = (!outer.empty() && coin(rng, o.p_outer_head)) ? outer[pick(rng, outer.size())]
                                                                 : own[pick(rng, own.size())];
    p.add(Rule::normal(head, body(rng, pool, o.max_body, o.p_negative)));
}

Program stratified_constraint(std::mt19937_64& rng, const std::shared_ptr<SymbolTable>& table,
                              const std::vector<AtomId>& lower, const RandomOptions& o) {
    Program c(table);
    if (o.constraint_rules == 0 || lower.empty()) {
        return c;
    }
    auto heads = intern_all(*table, "k", 2);
    auto n     = pick(rng, o.constraint_rules + 1);
    for (std::size_t k = 0; k < n; ++k) {
        // negation only on lower atoms, positive references to C heads allowed
        auto b = body(rng, lower, o.max_body, o.p_negative, 1);
        if (coin(rng, 0.25)) {
            b.push_back(pos(heads[pick(rng, heads.size())]));
        }
        if (coin(rng, 0.3)) {
            c.add(Rule::normal(heads[pick(rng, heads.size())], std::move(b)));
        } else {
            c.add(Rule::constraint(std::move(b)));
        }
    }
    return c;
}

} // namespace

QuantifiedProgram random_quantified_program(std::mt19937_64& rng, const RandomOptions& o) {
    auto table = std::make_shared<SymbolTable>();
    auto n     = o.min_levels + pick(rng, o.max_levels - o.min_levels + 1);
    std::vector<Level>  levels;
    std::vector<AtomId> seen;
    for (std::size_t i = 1; i <= n; ++i) {
        auto own  = intern_all(*table, std::string(1, static_cast<char>('a' + i - 1)), o.atoms_per_level);
        auto pool = seen;
        pool.insert(pool.end(), own.begin(), own.end());
        Program p(table);
        auto    rules = 1 + pick(rng, o.rules_per_level);
        for (std::size_t k = 0; k < rules; ++k) {
            add_random_rule(rng, p, own, seen, pool, o);
        }
        levels.push_back({coin(rng, 0.5) ? Quantifier::Exists : Quantifier::Forall, std::move(p)});
        seen = std::move(pool);
    }
    auto c = stratified_constraint(rng, table, seen, o);
    return QuantifiedProgram(table, std::move(levels), std::move(c));
}

Program random_program(std::mt19937_64& rng, std::size_t atoms, std::size_t rules, const RandomOptions& o) {
    auto    table = std::make_shared<SymbolTable>();
    auto    own   = intern_all(*table, "p", atoms);
    Program p(table);
    for (std::size_t k = 0; k < rules; ++k) {
        add_random_rule(rng, p, own, {}, own, o);
    }
    return p;
}

namespace {

Program gc_level(std::mt19937_64& rng, const std::shared_ptr<SymbolTable>& table, const std::string& stem,
                 const std::vector<AtomId>& outer, std::size_t guess_atoms, std::size_t check_rules,
                 const RandomOptions& o) {
    Program p(table);
    auto    guess = intern_all(*table, stem + "g", guess_atoms);
    auto    check = intern_all(*table, stem + "h", 2);
    p.add(Rule::choice(guess));
    auto base = outer;
    base.insert(base.end(), guess.begin(), guess.end());
    for (std::size_t k = 0; k < check_rules; ++k) {
        // negation on guess/outer atoms only keeps the check part stratified
        auto b = body(rng, base, o.max_body, o.p_negative, 1);
        if (coin(rng, 0.3)) {
            b.push_back(pos(check[pick(rng, check.size())]));
        }
        if (coin(rng, 0.4)) {
            p.add(Rule::constraint(std::move(b)));
        } else {
            p.add(Rule::normal(check[pick(rng, check.size())], std::move(b)));
        }
    }
    return p;
}

} // namespace

Program random_gc_level(std::mt19937_64& rng, std::size_t guess_atoms, std::size_t check_rules,
                        const RandomOptions& o) {
    return gc_level(rng, std::make_shared<SymbolTable>(), "", {}, guess_atoms, check_rules, o);
}

QuantifiedProgram random_gc_program(std::mt19937_64& rng, const RandomOptions& o) {
    auto table = std::make_shared<SymbolTable>();
    auto n     = o.min_levels + pick(rng, o.max_levels - o.min_levels + 1);
    auto q     = coin(rng, 0.5) ? Quantifier::Exists : Quantifier::Forall;
    std::vector<Level>  levels;
    std::vector<AtomId> seen;
    for (std::size_t i = 1; i <= n; ++i) {
        std::string stem(1, static_cast<char>('a' + i - 1));
        Program     p(table);
        if (q == Quantifier::Forall) {
            p = gc_level(rng, table, stem, seen, 2 + pick(rng, 2), 1 + pick(rng, 4), o);
        } else {
            auto own  = intern_all(*table, stem, 3);
            auto pool = seen;
            pool.insert(pool.end(), own.begin(), own.end());
            auto rules = 1 + pick(rng, o.rules_per_level);
            for (std::size_t k = 0; k < rules; ++k) {
                add_random_rule(rng, p, own, {}, pool, o);
            }
        }
        auto b = herbrand_base(p);
        for (auto a : b) {
            if (std::find(seen.begin(), seen.end(), a) == seen.end()) {
                seen.push_back(a);
            }
        }
        levels.push_back({q, std::move(p)});
        q = q == Quantifier::Exists ? Quantifier::Forall : Quantifier::Exists;
    }
    auto c = stratified_constraint(rng, table, seen, o);
    return QuantifiedProgram(table, std::move(levels), std::move(c));
}

QbfCircuit random_circuit(std::mt19937_64& rng, std::uint32_t max_vars) {
    QbfCircuit c;
    c.num_vars = 1 + static_cast<std::uint32_t>(pick(rng, max_vars));
    std::vector<std::uint32_t> order(c.num_vars);
    for (std::uint32_t v = 0; v < c.num_vars; ++v) {
        order[v] = v + 1;
    }
    std::shuffle(order.begin(), order.end(), rng);
    auto quantified = order.size();
    for (std::size_t k = 0; k < quantified;) {
        auto len = std::min(quantified - k, 1 + pick(rng, 4));
        QuantBlock b{coin(rng, 0.5) ? Quantifier::Exists : Quantifier::Forall, {}};
        b.vars.assign(order.begin() + static_cast<std::ptrdiff_t>(k), order.begin() + static_cast<std::ptrdiff_t>(k + len));
        std::sort(b.vars.begin(), b.vars.end());
        c.prefix.push_back(std::move(b));
        k += len;
    }
    auto gates = 1 + pick(rng, 12);
    for (std::size_t g = 0; g < gates; ++g) {
        if (coin(rng, 0.05)) {
            c.constant(coin(rng, 0.5));
            continue;
        }
        std::vector<Signal> in;
        auto width = 1 + pick(rng, 4);
        for (std::size_t k = 0; k < width; ++k) {
            Signal s = (g > 0 && coin(rng, 0.4))
                           ? Signal{true, static_cast<std::uint32_t>(pick(rng, g)), false}
                           : Signal::var(1 + static_cast<std::uint32_t>(pick(rng, c.num_vars)));
            s.negated = coin(rng, 0.4);
            in.push_back(s);
        }
        c.add(coin(rng, 0.5) ? GateKind::And : GateKind::Or, std::move(in));
    }
    c.output = Signal{true, static_cast<std::uint32_t>(gates - 1), coin(rng, 0.2)};
    return c;
}

} // namespace quantasp
