#include <quantasp/eval.hpp>
#include <quantasp/formats.hpp>

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace quantasp {

namespace {

// And-inverter DAG with n-ary And nodes; Or is a negated And.
struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Edge {
    NodePtr node;
    bool    neg = false;

    Edge operator!() const { return {node, !neg}; }
    bool operator==(const Edge& o) const { return node == o.node && neg == o.neg; }
};

enum class Kind : std::uint8_t { True, Var, And };

struct Node {
    Kind              kind = Kind::True;
    std::uint32_t     var  = 0;
    std::vector<Edge> kids;
};

class Graph {
public:
    explicit Graph(std::uint32_t num_vars)
        : true_(std::make_shared<Node>())
        , vars_(num_vars + 1) {}

    Edge constant(bool v) const { return {true_, !v}; }
    bool is_const(const Edge& e) const { return e.node == true_; }
    bool value(const Edge& e) const { return !e.neg; }

    Edge var(std::uint32_t v) {
        if (!vars_[v]) {
            auto n  = std::make_shared<Node>();
            n->kind = Kind::Var;
            n->var  = v;
            vars_[v] = n;
        }
        return {vars_[v], false};
    }

    Edge mk_and(const std::vector<Edge>& in) {
        std::vector<Edge> out;
        out.reserve(in.size());
        std::vector<Edge> stack(in.rbegin(), in.rend());
        while (!stack.empty()) {
            auto e = std::move(stack.back());
            stack.pop_back();
            if (e.node == true_) {
                if (e.neg) {
                    return constant(false);
                }
                continue;
            }
            if (e.node->kind == Kind::And && !e.neg) {
                stack.insert(stack.end(), e.node->kids.rbegin(), e.node->kids.rend());
                continue;
            }
            out.push_back(std::move(e));
        }
        std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
            return a.node != b.node ? a.node.get() < b.node.get() : a.neg < b.neg;
        });
        out.erase(std::unique(out.begin(), out.end()), out.end());
        for (std::size_t i = 1; i < out.size(); ++i) {
            if (out[i].node == out[i - 1].node) {
                return constant(false);
            }
        }
        if (out.empty()) {
            return constant(true);
        }
        if (out.size() == 1) {
            return out.front();
        }
        auto n  = std::make_shared<Node>();
        n->kind = Kind::And;
        n->kids = std::move(out);
        return {n, false};
    }

    Edge mk_or(std::vector<Edge> in) {
        for (auto& e : in) {
            e.neg = !e.neg;
        }
        return !mk_and(in);
    }

    /// f with the assigned variables (val[v] = ±1) replaced by constants.
    Edge substitute(const Edge& f, const std::vector<std::int8_t>& val) {
        std::unordered_map<const Node*, Edge> memo;
        std::function<Edge(const NodePtr&)> rec = [&](const NodePtr& n) -> Edge {
            switch (n->kind) {
                case Kind::True: return {n, false};
                case Kind::Var: return val[n->var] == 0 ? Edge{n, false} : constant(val[n->var] > 0);
                case Kind::And: break;
            }
            if (auto it = memo.find(n.get()); it != memo.end()) {
                return it->second;
            }
            std::vector<Edge> kids;
            kids.reserve(n->kids.size());
            bool changed = false;
            for (const auto& k : n->kids) {
                auto e = rec(k.node);
                e.neg ^= k.neg;
                changed |= !(e.node == k.node && e.neg == k.neg);
                kids.push_back(std::move(e));
            }
            Edge r = changed ? mk_and(kids) : Edge{n, false};
            memo.emplace(n.get(), r);
            return r;
        };
        auto r = rec(f.node);
        r.neg ^= f.neg;
        return r;
    }

private:
    NodePtr              true_;
    std::vector<NodePtr> vars_;
};

std::vector<Edge> conjuncts(const Edge& f) {
    if (f.node->kind == Kind::And && !f.neg) {
        return f.node->kids;
    }
    return {f};
}

std::vector<Edge> disjuncts(const Edge& f) {
    if (f.node->kind == Kind::And && f.neg) {
        std::vector<Edge> out;
        for (const auto& k : f.node->kids) {
            out.push_back(!k);
        }
        return out;
    }
    return {f};
}

/// bit 0: occurs positively, bit 1: negatively
void polarities(const Edge& f, std::vector<std::uint8_t>& pol) {
    std::set<std::pair<const Node*, bool>> seen;
    std::vector<Edge>                      stack{f};
    while (!stack.empty()) {
        auto e = stack.back();
        stack.pop_back();
        if (!seen.insert({e.node.get(), e.neg}).second) {
            continue;
        }
        if (e.node->kind == Kind::Var) {
            pol[e.node->var] |= e.neg ? 2 : 1;
        } else if (e.node->kind == Kind::And) {
            for (const auto& k : e.node->kids) {
                stack.push_back({k.node, k.neg != e.neg});
            }
        }
    }
}

void support(const Edge& f, std::vector<bool>& in) {
    std::unordered_set<const Node*> seen;
    std::vector<const Node*>        stack{f.node.get()};
    while (!stack.empty()) {
        auto n = stack.back();
        stack.pop_back();
        if (!seen.insert(n).second) {
            continue;
        }
        if (n->kind == Kind::Var) {
            in[n->var] = true;
        }
        for (const auto& k : n->kids) {
            stack.push_back(k.node.get());
        }
    }
}

/// Small DPLL with two watched literals and chronological backtracking.
class Dpll {
public:
    explicit Dpll(std::uint32_t num_vars)
        : val_(num_vars + 1, 0)
        , watches_(2 * (num_vars + 1)) {}

    std::uint32_t new_var() {
        val_.push_back(0);
        watches_.resize(watches_.size() + 2);
        return static_cast<std::uint32_t>(val_.size() - 1);
    }

    void add(Clause c) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        if (c.empty()) {
            empty_ = true;
            return;
        }
        if (c.size() == 1) {
            units_.push_back(c[0]);
            return;
        }
        clauses_.push_back(std::move(c));
        auto idx = clauses_.size() - 1;
        watches_[code(clauses_[idx][0])].push_back(idx);
        watches_[code(clauses_[idx][1])].push_back(idx);
    }

    bool solve() {
        if (empty_) {
            return false;
        }
        for (auto u : units_) {
            if (value(u) < 0) {
                return false;
            }
            if (value(u) == 0) {
                assign(u);
            }
        }
        struct Decision {
            std::size_t trail;
            CnfLit      lit;
            bool        flipped;
        };
        std::vector<Decision> decisions;
        std::size_t           next_var = 1;
        for (;;) {
            if (!propagate()) {
                while (!decisions.empty() && decisions.back().flipped) {
                    decisions.pop_back();
                }
                if (decisions.empty()) {
                    return false;
                }
                auto& d = decisions.back();
                undo(d.trail);
                d.flipped = true;
                d.lit     = -d.lit;
                assign(d.lit);
                next_var = 1;
                continue;
            }
            while (next_var < val_.size() && val_[next_var] != 0) {
                ++next_var;
            }
            if (next_var == val_.size()) {
                return true;
            }
            decisions.push_back({trail_.size(), -static_cast<CnfLit>(next_var), false});
            assign(decisions.back().lit);
        }
    }

private:
    static std::size_t code(CnfLit l) { return 2 * static_cast<std::size_t>(std::abs(l)) + (l < 0 ? 1 : 0); }
    int  value(CnfLit l) const { return l > 0 ? val_[static_cast<std::size_t>(l)] : -val_[static_cast<std::size_t>(-l)]; }
    void assign(CnfLit l) {
        val_[static_cast<std::size_t>(std::abs(l))] = static_cast<std::int8_t>(l > 0 ? 1 : -1);
        trail_.push_back(l);
    }
    void undo(std::size_t size) {
        while (trail_.size() > size) {
            val_[static_cast<std::size_t>(std::abs(trail_.back()))] = 0;
            trail_.pop_back();
        }
        qhead_ = std::min(qhead_, size);
    }

    bool propagate() {
        while (qhead_ < trail_.size()) {
            auto  falsified = -trail_[qhead_++];
            auto& ws        = watches_[code(falsified)];
            for (std::size_t k = 0; k < ws.size();) {
                auto& c = clauses_[ws[k]];
                if (c[0] == falsified) {
                    std::swap(c[0], c[1]);
                }
                if (value(c[0]) > 0) {
                    ++k;
                    continue;
                }
                bool moved = false;
                for (std::size_t j = 2; j < c.size(); ++j) {
                    if (value(c[j]) >= 0) {
                        std::swap(c[1], c[j]);
                        watches_[code(c[1])].push_back(ws[k]);
                        ws[k] = ws.back();
                        ws.pop_back();
                        moved = true;
                        break;
                    }
                }
                if (moved) {
                    continue;
                }
                if (value(c[0]) < 0) {
                    qhead_ = trail_.size();
                    return false;
                }
                if (value(c[0]) == 0) {
                    assign(c[0]);
                }
                ++k;
            }
        }
        return true;
    }

    std::vector<std::int8_t>              val_;
    std::vector<std::vector<std::size_t>> watches_;
    std::vector<Clause>                   clauses_;
    std::vector<CnfLit>                   units_;
    std::vector<CnfLit>                   trail_;
    std::size_t                           qhead_ = 0;
    bool                                  empty_ = false;
};

class Solver {
public:
    Solver(Graph& g, const Prefix& prefix, std::uint32_t num_vars, EvalStats& stats)
        : g_(g)
        , num_vars_(num_vars)
        , stats_(stats)
        , block_of_(num_vars + 1, 0)
        , exists_{true} {
        // block 0 collects unquantified variables (outermost existential)
        for (const auto& b : normalize_prefix(prefix)) {
            bool ex = b.quantifier == Quantifier::Exists;
            if (exists_.size() == 1 && ex) {
                for (auto v : b.vars) {
                    block_of_[v] = 0;
                }
                continue;
            }
            exists_.push_back(ex);
            for (auto v : b.vars) {
                block_of_[v] = exists_.size() - 1;
            }
        }
    }

    bool solve(Edge f) {
        std::vector<std::int8_t> val(num_vars_ + 1, 0);
        for (;;) {
            if (g_.is_const(f)) {
                return g_.value(f);
            }
            bool assigned = false;
            for (const auto& c : conjuncts(f)) {
                if (c.node->kind == Kind::Var) {
                    auto v = c.node->var;
                    if (!exists_[block_of_[v]]) {
                        return false;
                    }
                    val[v]   = static_cast<std::int8_t>(c.neg ? -1 : 1);
                    assigned = true;
                }
            }
            if (!assigned) {
                for (const auto& d : disjuncts(f)) {
                    if (d.node->kind == Kind::Var) {
                        auto v = d.node->var;
                        if (exists_[block_of_[v]]) {
                            return true;
                        }
                        val[v]   = static_cast<std::int8_t>(d.neg ? 1 : -1);
                        assigned = true;
                    }
                }
            }
            if (!assigned) {
                std::vector<std::uint8_t> pol(num_vars_ + 1, 0);
                polarities(f, pol);
                for (std::uint32_t v = 1; v <= num_vars_; ++v) {
                    if (pol[v] == 1 || pol[v] == 2) {
                        bool positive = pol[v] == 1;
                        bool ex       = exists_[block_of_[v]];
                        val[v]        = static_cast<std::int8_t>(positive == ex ? 1 : -1);
                        assigned      = true;
                    }
                }
                if (!assigned) {
                    if (auto reduced = drop_equivalences(f, pol)) {
                        f = *reduced;
                        continue;
                    }
                    return branch(f, pol);
                }
            }
            f = g_.substitute(f, val);
            std::fill(val.begin(), val.end(), 0);
        }
    }

private:
    bool innermost_existential(std::uint32_t v) const {
        return block_of_[v] == exists_.size() - 1 && exists_[block_of_[v]];
    }

    // ∃x ((¬x ∨ Y) ∧ (x ∨ ¬Y) ∧ R) = R when x is innermost and occurs nowhere else.
    std::optional<Edge> drop_equivalences(const Edge& f, const std::vector<std::uint8_t>& pol) {
        auto cs = conjuncts(f);
        if (cs.size() < 2) {
            return std::nullopt;
        }
        std::vector<std::vector<bool>> sup(cs.size(), std::vector<bool>(num_vars_ + 1, false));
        for (std::size_t k = 0; k < cs.size(); ++k) {
            support(cs[k], sup[k]);
        }
        std::vector<bool> drop(cs.size(), false);
        bool              any = false;
        for (std::uint32_t x = 1; x <= num_vars_; ++x) {
            if (pol[x] != 3 || !innermost_existential(x)) {
                continue;
            }
            std::vector<std::size_t> where;
            for (std::size_t k = 0; k < cs.size() && where.size() <= 2; ++k) {
                if (sup[k][x]) {
                    where.push_back(k);
                }
            }
            if (where.size() != 2 || drop[where[0]] || drop[where[1]]) {
                continue;
            }
            auto split = [&](const Edge& c) -> std::optional<std::pair<Edge, Edge>> {
                auto ds = disjuncts(c);
                if (ds.size() != 2) {
                    return std::nullopt;
                }
                for (int i = 0; i < 2; ++i) {
                    if (ds[i].node->kind == Kind::Var && ds[i].node->var == x) {
                        return std::make_pair(ds[i], ds[1 - i]);
                    }
                }
                return std::nullopt;
            };
            auto a = split(cs[where[0]]);
            auto b = split(cs[where[1]]);
            if (!a || !b || a->first.neg == b->first.neg || !(a->second == !b->second)) {
                continue;
            }
            std::vector<bool> ys(num_vars_ + 1, false);
            support(a->second, ys);
            if (ys[x]) {
                continue;
            }
            drop[where[0]] = drop[where[1]] = true;
            any                             = true;
        }
        if (!any) {
            return std::nullopt;
        }
        std::vector<Edge> keep;
        for (std::size_t k = 0; k < cs.size(); ++k) {
            if (!drop[k]) {
                keep.push_back(cs[k]);
            }
        }
        return g_.mk_and(keep);
    }

    bool branch(const Edge& f, const std::vector<std::uint8_t>& pol) {
        std::size_t   best = SIZE_MAX;
        std::uint32_t x    = 0;
        for (std::uint32_t v = 1; v <= num_vars_; ++v) {
            if (pol[v] != 0 && block_of_[v] < best) {
                best = block_of_[v];
                x    = v;
            }
        }
        if (best == exists_.size() - 1 && exists_[best]) {
            return sat(f);
        }
        ++stats_.branches;
        std::vector<std::int8_t> val(num_vars_ + 1, 0);
        bool                     ex = exists_[best];
        for (int s : {1, -1}) {
            val[x] = static_cast<std::int8_t>(s);
            bool r = solve(g_.substitute(f, val));
            if (r == ex) {
                return r;
            }
        }
        return !ex;
    }

    bool sat(const Edge& f) {
        ++stats_.sat_calls;
        Dpll                                    d(num_vars_);
        std::unordered_map<const Node*, CnfLit> sel;
        std::function<CnfLit(const Edge&)>      lit = [&](const Edge& e) -> CnfLit {
            CnfLit v;
            if (e.node->kind == Kind::Var) {
                v = static_cast<CnfLit>(e.node->var);
            } else if (auto it = sel.find(e.node.get()); it != sel.end()) {
                v = it->second;
            } else {
                std::vector<CnfLit> kids;
                for (const auto& k : e.node->kids) {
                    kids.push_back(lit(k));
                }
                v = static_cast<CnfLit>(d.new_var());
                sel.emplace(e.node.get(), v);
                Clause back{v};
                for (auto k : kids) {
                    d.add({-v, k});
                    back.push_back(-k);
                }
                d.add(std::move(back));
            }
            return e.neg ? -v : v;
        };
        d.add({lit(f)});
        return d.solve();
    }

    Graph&                   g_;
    std::uint32_t            num_vars_;
    EvalStats&               stats_;
    std::vector<std::size_t> block_of_;
    std::vector<bool>        exists_;
};

Edge to_graph(Graph& g, const QbfCircuit& c) {
    std::vector<Edge> gates;
    gates.reserve(c.gates.size());
    auto sig = [&](const Signal& s) {
        Edge e = s.gate ? gates.at(s.index) : g.var(s.index);
        return s.negated ? !e : e;
    };
    for (const auto& gate : c.gates) {
        std::vector<Edge> in;
        for (const auto& s : gate.inputs) {
            in.push_back(sig(s));
        }
        gates.push_back(gate.kind == GateKind::And ? g.mk_and(in) : g.mk_or(in));
    }
    return sig(c.output);
}

} // namespace

bool eval_qbf(const QbfCircuit& c, const EvalOptions& opts, EvalStats* stats) {
    c.validate();
    Graph             g(c.num_vars);
    auto              f = to_graph(g, c);
    std::vector<bool> sup(c.num_vars + 1, false);
    support(f, sup);
    auto used = static_cast<std::size_t>(std::count(sup.begin(), sup.end(), true));
    if (used > opts.max_vars) {
        throw BudgetError("eval_qbf: " + std::to_string(used) + " variables exceed the bound of " +
                          std::to_string(opts.max_vars));
    }
    EvalStats local;
    Solver    s(g, c.prefix, c.num_vars, stats != nullptr ? *stats : local);
    return s.solve(f);
}

bool eval_qbf(const PrenexCnf& f, const EvalOptions& opts, EvalStats* stats) {
    return eval_qbf(to_circuit(f), opts, stats);
}

bool eval_qbf_naive(const QbfCircuit& c, std::size_t max_vars) {
    c.validate();
    auto prefix = normalize_prefix(c.prefix);
    // free variables first, existentially
    std::vector<bool> quantified(c.num_vars + 1, false);
    for (const auto& b : prefix) {
        for (auto v : b.vars) {
            quantified[v] = true;
        }
    }
    std::vector<std::pair<std::uint32_t, bool>> order; // (var, exists)
    for (std::uint32_t v = 1; v <= c.num_vars; ++v) {
        if (!quantified[v]) {
            order.emplace_back(v, true);
        }
    }
    for (const auto& b : prefix) {
        for (auto v : b.vars) {
            order.emplace_back(v, b.quantifier == Quantifier::Exists);
        }
    }
    if (order.size() > max_vars) {
        throw BudgetError("eval_qbf_naive: too many variables");
    }
    std::vector<bool> val(c.num_vars + 1, false);
    std::vector<bool> gv(c.gates.size());
    auto              evaluate = [&]() {
        auto sig = [&](const Signal& s) { return (s.gate ? gv[s.index] : val[s.index]) != s.negated; };
        for (std::size_t g = 0; g < c.gates.size(); ++g) {
            const auto& gate = c.gates[g];
            bool        r    = gate.kind == GateKind::And;
            for (const auto& s : gate.inputs) {
                if (gate.kind == GateKind::And ? !sig(s) : sig(s)) {
                    r = !r;
                    break;
                }
            }
            gv[g] = r;
        }
        return sig(c.output);
    };
    std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
        if (k == order.size()) {
            return evaluate();
        }
        auto [v, ex] = order[k];
        for (bool b : {false, true}) {
            val[v] = b;
            if (rec(k + 1) == ex) {
                return ex;
            }
        }
        return !ex;
    };
    return rec(0);
}

} // namespace quantasp
