#include <quantasp/program.hpp>

#include <algorithm>
#include <cctype>
#include <functional>

namespace quantasp {

namespace {

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

template <class T>
std::vector<T> unique_stable(std::vector<T> xs) {
    std::vector<T> out;
    out.reserve(xs.size());
    for (auto& x : xs) {
        if (std::find(out.begin(), out.end(), x) == out.end()) {
            out.push_back(std::move(x));
        }
    }
    return out;
}

} // namespace

bool is_reserved_name(std::string_view name) {
    return starts_with(name, kChoicePrefix) || starts_with(name, kAuxPrefix) || starts_with(name, kUnsatPrefix) ||
           starts_with(name, kGatePrefix);
}

AtomKind kind_from_name(std::string_view name) {
    if (starts_with(name, kChoicePrefix)) {
        return AtomKind::ChoiceComplement;
    }
    if (starts_with(name, kUnsatPrefix)) {
        return AtomKind::Unsat;
    }
    if (starts_with(name, kGatePrefix)) {
        return AtomKind::Gate;
    }
    if (starts_with(name, kAuxPrefix)) {
        return all_digits(name.substr(kAuxPrefix.size())) ? AtomKind::Constraint : AtomKind::BodyAux;
    }
    return AtomKind::User;
}

/////////////////////////////////////////////////////////////////////////////////////////
// SymbolTable
/////////////////////////////////////////////////////////////////////////////////////////
AtomId SymbolTable::add(std::string name, AtomKind kind) {
    auto id = static_cast<AtomId>(names_.size());
    index_.emplace(name, id);
    names_.push_back(std::move(name));
    kinds_.push_back(kind);
    return id;
}

AtomId SymbolTable::intern(std::string_view name) {
    if (auto it = index_.find(std::string(name)); it != index_.end()) {
        return it->second;
    }
    return add(std::string(name), kind_from_name(name));
}

std::optional<AtomId> SymbolTable::find(std::string_view name) const {
    if (auto it = index_.find(std::string(name)); it != index_.end()) {
        return it->second;
    }
    return std::nullopt;
}

AtomId SymbolTable::fresh(const std::string& base, AtomKind kind) {
    if (!index_.contains(base)) {
        return add(base, kind);
    }
    for (std::size_t k = 1;; ++k) {
        auto candidate = base + "_" + std::to_string(k);
        if (!index_.contains(candidate)) {
            return add(std::move(candidate), kind);
        }
    }
}

AtomId SymbolTable::fresh_choice_complement(AtomId of) {
    return fresh(std::string(kChoicePrefix) + name(of), AtomKind::ChoiceComplement);
}

AtomId SymbolTable::fresh_constraint() {
    for (;;) {
        auto candidate = std::string(kAuxPrefix) + std::to_string(next_constraint_++);
        if (!index_.contains(candidate)) {
            return add(std::move(candidate), AtomKind::Constraint);
        }
    }
}

AtomId SymbolTable::fresh_unsat(std::size_t level) {
    return fresh(std::string(kUnsatPrefix) + std::to_string(level), AtomKind::Unsat);
}

/////////////////////////////////////////////////////////////////////////////////////////
// Rule
/////////////////////////////////////////////////////////////////////////////////////////
Rule::Rule(RuleKind k, std::vector<AtomId> h, std::vector<Literal> b)
    : kind_(k)
    , head_(unique_stable(std::move(h)))
    , body_(unique_stable(std::move(b))) {}

Rule Rule::normal(AtomId head, std::vector<Literal> body) {
    return Rule(RuleKind::Normal, {head}, std::move(body));
}

Rule Rule::choice(std::vector<AtomId> atoms, std::vector<Literal> body) {
    if (atoms.empty()) {
        throw ProgramError("choice rule with empty head");
    }
    return Rule(RuleKind::Choice, std::move(atoms), std::move(body));
}

Rule Rule::constraint(std::vector<Literal> body) {
    return Rule(RuleKind::Constraint, {}, std::move(body));
}

bool Rule::has_negative_body() const {
    return std::any_of(body_.begin(), body_.end(), [](const Literal& l) { return !l.positive; });
}

std::size_t Rule::positive_size() const {
    return static_cast<std::size_t>(std::count_if(body_.begin(), body_.end(), [](const Literal& l) { return l.positive; }));
}

Rule Rule::with_body_literal(Literal extra) const {
    auto body = body_;
    body.push_back(extra);
    return Rule(kind_, head_, std::move(body));
}

/////////////////////////////////////////////////////////////////////////////////////////
// Program
/////////////////////////////////////////////////////////////////////////////////////////
Program::Program()
    : symbols_(std::make_shared<SymbolTable>()) {}

Program::Program(std::shared_ptr<SymbolTable> symbols, std::vector<Rule> rules)
    : symbols_(std::move(symbols))
    , rules_(std::move(rules)) {
    if (!symbols_) {
        throw ProgramError("program without symbol table");
    }
}

void Program::append(const Program& other) {
    rules_.insert(rules_.end(), other.rules_.begin(), other.rules_.end());
}

bool Program::is_normal() const {
    return std::all_of(rules_.begin(), rules_.end(), [](const Rule& r) { return r.kind() == RuleKind::Normal; });
}

bool same_rules(const Program& a, const Program& b) {
    if (a.size() != b.size()) {
        return false;
    }
    const auto& sa = a.symbols();
    const auto& sb = b.symbols();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& ra = a.rules()[i];
        const auto& rb = b.rules()[i];
        if (ra.kind() != rb.kind() || ra.head().size() != rb.head().size() || ra.body().size() != rb.body().size()) {
            return false;
        }
        for (std::size_t k = 0; k < ra.head().size(); ++k) {
            if (sa.name(ra.head()[k]) != sb.name(rb.head()[k])) {
                return false;
            }
        }
        for (std::size_t k = 0; k < ra.body().size(); ++k) {
            const auto& la = ra.body()[k];
            const auto& lb = rb.body()[k];
            if (la.positive != lb.positive || sa.name(la.atom) != sb.name(lb.atom)) {
                return false;
            }
        }
    }
    return true;
}

AtomSet herbrand_base(const Program& p) {
    AtomSet base;
    for (const auto& r : p.rules()) {
        base.insert(r.head().begin(), r.head().end());
        for (const auto& l : r.body()) {
            base.insert(l.atom);
        }
    }
    return base;
}

AtomSet heads(const Program& p) {
    AtomSet out;
    for (const auto& r : p.rules()) {
        out.insert(r.head().begin(), r.head().end());
    }
    return out;
}

AtomSet facts(const Program& p) {
    AtomSet out;
    for (const auto& r : p.rules()) {
        if (r.is_fact()) {
            out.insert(r.head_atom());
        }
    }
    return out;
}

AtomSet interface_atoms(const Program& p, const Program& q) {
    auto bp = herbrand_base(p);
    auto bq = herbrand_base(q);
    AtomSet out;
    std::set_intersection(bp.begin(), bp.end(), bq.begin(), bq.end(), std::inserter(out, out.end()));
    return out;
}

Program desugar(const Program& p) {
    if (p.is_normal()) {
        return p;
    }
    auto&                    table = p.symbols();
    std::map<AtomId, AtomId> complement;
    std::vector<Rule>        out;
    for (const auto& r : p.rules()) {
        switch (r.kind()) {
            case RuleKind::Normal: out.push_back(r); break;
            case RuleKind::Constraint: {
                auto x    = table.fresh_constraint();
                auto body = std::vector<Literal>(r.body().begin(), r.body().end());
                body.push_back(neg(x));
                out.push_back(Rule::normal(x, std::move(body)));
                break;
            }
            case RuleKind::Choice: {
                for (auto a : r.head()) {
                    auto [it, inserted] = complement.try_emplace(a, 0);
                    if (inserted) {
                        it->second = table.fresh_choice_complement(a);
                    }
                    std::vector<Literal> body{neg(it->second)};
                    body.insert(body.end(), r.body().begin(), r.body().end());
                    out.push_back(Rule::normal(a, std::move(body)));
                    if (inserted) {
                        out.push_back(Rule::normal(it->second, {neg(a)}));
                    }
                }
                break;
            }
        }
    }
    return Program(p.symbols_ptr(), std::move(out));
}

/////////////////////////////////////////////////////////////////////////////////////////
// Dependency graph
/////////////////////////////////////////////////////////////////////////////////////////
DependencyGraph dependency_graph(const Program& p) {
    DependencyGraph g;
    g.nodes = herbrand_base(p);
    std::set<DependencyEdge> edges;
    const auto&              table = p.symbols();
    for (const auto& r : p.rules()) {
        for (auto h : r.head()) {
            bool constraint_atom = table.kind(h) == AtomKind::Constraint;
            for (const auto& l : r.body()) {
                if (constraint_atom && !l.positive && l.atom == h) {
                    continue;
                }
                edges.insert({l.atom, h, !l.positive});
            }
            if (r.kind() == RuleKind::Choice) {
                edges.insert({h, h, true});
            }
        }
    }
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

std::vector<std::vector<AtomId>> DependencyGraph::components() const {
    // Iterative Tarjan.
    std::map<AtomId, std::vector<AtomId>> succ;
    for (const auto& e : edges) {
        succ[e.from].push_back(e.to);
    }
    std::map<AtomId, std::size_t> index, low;
    std::set<AtomId>              on_stack;
    std::vector<AtomId>           stack;
    std::vector<std::vector<AtomId>> out;
    std::size_t                   counter = 0;

    struct Frame {
        AtomId      node;
        std::size_t next;
    };
    for (auto root : nodes) {
        if (index.contains(root)) {
            continue;
        }
        std::vector<Frame> work{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack.insert(root);
        while (!work.empty()) {
            auto&       f  = work.back();
            const auto& ss = succ[f.node];
            if (f.next < ss.size()) {
                auto w = ss[f.next++];
                if (!index.contains(w)) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack.insert(w);
                    work.push_back({w, 0});
                } else if (on_stack.contains(w)) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
                continue;
            }
            auto v = f.node;
            work.pop_back();
            if (!work.empty()) {
                low[work.back().node] = std::min(low[work.back().node], low[v]);
            }
            if (low[v] == index[v]) {
                std::vector<AtomId> comp;
                AtomId              w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack.erase(w);
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                out.push_back(std::move(comp));
            }
        }
    }
    return out;
}

bool is_stratified(const Program& p) {
    auto                     g = dependency_graph(p);
    std::map<AtomId, std::size_t> comp_of;
    auto                     comps = g.components();
    for (std::size_t c = 0; c < comps.size(); ++c) {
        for (auto a : comps[c]) {
            comp_of[a] = c;
        }
    }
    return std::none_of(g.edges.begin(), g.edges.end(),
                        [&](const DependencyEdge& e) { return e.negative && comp_of[e.from] == comp_of[e.to]; });
}

/////////////////////////////////////////////////////////////////////////////////////////
// PartialInterpretation
/////////////////////////////////////////////////////////////////////////////////////////
PartialInterpretation::PartialInterpretation(AtomSet base)
    : base_(std::move(base)) {}

PartialInterpretation PartialInterpretation::total(const AtomSet& base, const AtomSet& true_atoms) {
    PartialInterpretation out(base);
    for (auto a : base) {
        out.values_[a] = true_atoms.contains(a) ? Truth::True : Truth::False;
    }
    return out;
}

Truth PartialInterpretation::value(AtomId a) const {
    auto it = values_.find(a);
    return it == values_.end() ? Truth::Undef : it->second;
}

void PartialInterpretation::set(AtomId a, Truth t) {
    base_.insert(a);
    if (t == Truth::Undef) {
        values_.erase(a);
    } else {
        values_[a] = t;
    }
}

bool PartialInterpretation::is_total() const {
    return std::all_of(base_.begin(), base_.end(), [&](AtomId a) { return decided(a); });
}

AtomSet PartialInterpretation::true_atoms() const {
    AtomSet out;
    for (const auto& [a, t] : values_) {
        if (t == Truth::True) {
            out.insert(a);
        }
    }
    return out;
}

AtomSet PartialInterpretation::false_atoms() const {
    AtomSet out;
    for (const auto& [a, t] : values_) {
        if (t == Truth::False) {
            out.insert(a);
        }
    }
    return out;
}

bool PartialInterpretation::literal_true(const Literal& l) const {
    auto v = value(l.atom);
    return l.positive ? v == Truth::True : v == Truth::False;
}

bool PartialInterpretation::literal_false(const Literal& l) const {
    auto v = value(l.atom);
    return l.positive ? v == Truth::False : v == Truth::True;
}

Program fix(const Program& p, const PartialInterpretation& model) {
    Program out(p.symbols_ptr());
    for (auto a : herbrand_base(p)) {
        switch (model.value(a)) {
            case Truth::True: out.add(Rule::normal(a)); break;
            case Truth::False: out.add(Rule::constraint({pos(a)})); break;
            case Truth::Undef: throw ProgramError("fix: model is not total over the program's base");
        }
    }
    return out;
}

/////////////////////////////////////////////////////////////////////////////////////////
// QuantifiedProgram
/////////////////////////////////////////////////////////////////////////////////////////
QuantifiedProgram::QuantifiedProgram(std::shared_ptr<SymbolTable> symbols, std::vector<Level> levels, Program constraint)
    : symbols_(std::move(symbols))
    , levels_(std::move(levels))
    , constraint_(std::move(constraint)) {
    if (levels_.empty()) {
        throw ProgramError("quantified program without quantified levels");
    }
    if (!is_stratified(constraint_)) {
        throw ProgramError("constraint program is not stratified");
    }
}

const Level& QuantifiedProgram::level(std::size_t i) const {
    if (i < 1 || i > levels_.size()) {
        throw ProgramError("level index " + std::to_string(i) + " out of range");
    }
    return levels_[i - 1];
}

const Program& QuantifiedProgram::program_at(std::size_t i) const {
    if (i == levels_.size() + 1) {
        return constraint_;
    }
    return level(i).program;
}

QuantifiedProgram QuantifiedProgram::clone() const {
    auto               table = std::make_shared<SymbolTable>(*symbols_);
    std::vector<Level> levels;
    for (const auto& l : levels_) {
        levels.push_back({l.quantifier, l.program.rebound(table)});
    }
    return QuantifiedProgram(table, std::move(levels), constraint_.rebound(table));
}

Program prefix_union(const QuantifiedProgram& qp, std::size_t i) {
    if (i < 1 || i > qp.size()) {
        throw ProgramError("prefix_union: index " + std::to_string(i) + " out of range");
    }
    Program out(qp.symbols_ptr());
    for (std::size_t j = 1; j <= i; ++j) {
        out.append(qp.level(j).program);
    }
    return out;
}

QuantifiedProgram desugar(const QuantifiedProgram& qp) {
    std::vector<Level> levels;
    for (const auto& l : qp.levels()) {
        levels.push_back({l.quantifier, desugar(l.program)});
    }
    return QuantifiedProgram(qp.symbols_ptr(), std::move(levels), desugar(qp.constraint()));
}

std::string to_string(Quantifier q) {
    return q == Quantifier::Exists ? "exists" : "forall";
}

} // namespace quantasp
