#include <quantasp/features.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

namespace quantasp {

const std::vector<std::string>& FeatureVector::names() {
    static const std::vector<std::string> n{"R",  "A",  "R/A", "(R/A)^2", "(R/A)^3", "A/R", "(A/R)^2",
                                            "(A/R)^3", "R1", "R2", "R3", "PR", "F", "DF",
                                            "NR", "NC", "VF", "VE", "QF", "QE", "QL"};
    return n;
}

double FeatureVector::value(const std::string& name) const {
    for (const auto& [k, v] : values_) {
        if (k == name) {
            return v;
        }
    }
    throw Error("unknown feature '" + name + "'");
}

void FeatureVector::set(const std::string& name, double v) {
    for (auto& [k, old] : values_) {
        if (k == name) {
            old = v;
            return;
        }
    }
    throw Error("unknown feature '" + name + "'");
}

FeatureVector::FeatureVector() {
    for (const auto& n : names()) {
        values_.emplace_back(n, 0.0);
    }
}

std::string FeatureVector::to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : values_) {
        if (std::floor(v) == v && std::abs(v) < 9e15) {
            j[k] = static_cast<std::int64_t>(v);
        } else {
            j[k] = v;
        }
    }
    return j.dump();
}

FeatureVector extract_features(const QuantifiedProgram& original) {
    auto qp = original.clone();

    std::size_t r = 0, r1 = 0, r2 = 0, r3 = 0, pr = 0, f = 0, nr = 0, nc = 0, qf = 0, qe = 0;
    AtomSet     all, forall_atoms, exists_atoms;
    auto        count = [&](const Program& p) {
        for (const auto& rule : p.rules()) {
            nc += rule.kind() == RuleKind::Constraint ? 1 : 0;
        }
        auto d = desugar(p);
        for (const auto& rule : d.rules()) {
            ++r;
            auto len = rule.body().size();
            r1 += len == 1 ? 1 : 0;
            r2 += len == 2 ? 1 : 0;
            r3 += len == 3 ? 1 : 0;
            pr += rule.has_negative_body() ? 0 : 1;
            f += rule.is_fact() ? 1 : 0;
            nr += d.symbols().kind(rule.head_atom()) == AtomKind::Constraint ? 0 : 1;
        }
        auto base = herbrand_base(d);
        all.insert(base.begin(), base.end());
        return base;
    };
    for (const auto& level : qp.levels()) {
        auto base = count(level.program);
        if (level.quantifier == Quantifier::Forall) {
            ++qf;
            forall_atoms.insert(base.begin(), base.end());
        } else {
            ++qe;
            exists_atoms.insert(base.begin(), base.end());
        }
    }
    count(qp.constraint());

    auto   ratio = [](double a, double b) { return b == 0 ? 0.0 : a / b; };
    double R     = static_cast<double>(r);
    double A     = static_cast<double>(all.size());
    double ra    = ratio(R, A);
    double ar    = ratio(A, R);

    FeatureVector out;
    out.set("R", R);
    out.set("A", A);
    out.set("R/A", ra);
    out.set("(R/A)^2", ra * ra);
    out.set("(R/A)^3", ra * ra * ra);
    out.set("A/R", ar);
    out.set("(A/R)^2", ar * ar);
    out.set("(A/R)^3", ar * ar * ar);
    out.set("R1", static_cast<double>(r1));
    out.set("R2", static_cast<double>(r2));
    out.set("R3", static_cast<double>(r3));
    out.set("PR", static_cast<double>(pr));
    out.set("F", static_cast<double>(f));
    out.set("DF", 0);
    out.set("NR", static_cast<double>(nr));
    out.set("NC", static_cast<double>(nc));
    out.set("VF", static_cast<double>(forall_atoms.size()));
    out.set("VE", static_cast<double>(exists_atoms.size()));
    out.set("QF", static_cast<double>(qf));
    out.set("QE", static_cast<double>(qe));
    out.set("QL", static_cast<double>(qf + qe));
    return out;
}

std::vector<SelectionRule> parse_selection_table(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("selection table: ") + e.what());
    }
    if (!doc.is_array()) {
        throw Error("selection table: expected an array");
    }
    std::vector<SelectionRule> out;
    for (const auto& row : doc) {
        if (row.contains("default") && row["default"].is_string()) {
            out.push_back({"", row["default"].get<std::string>(), true});
        } else if (row.contains("when") && row.contains("use") && row["when"].is_string() && row["use"].is_string()) {
            out.push_back({row["when"].get<std::string>(), row["use"].get<std::string>(), false});
        } else {
            throw Error("selection table: row needs \"when\"/\"use\" or \"default\"");
        }
    }
    return out;
}

const std::vector<SelectionRule>& default_selection_table() {
    static const auto table = parse_selection_table(
        R"([{"when":"QF==0","use":"depqbf"},{"when":"QL>=2 && A>=200","use":"rareqs"},{"default":"quabs"}])");
    return table;
}

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\n");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, std::string_view sep) {
    std::vector<std::string> out;
    std::size_t              start = 0;
    for (auto p = s.find(sep); p != std::string_view::npos; p = s.find(sep, start)) {
        out.push_back(trim(s.substr(start, p - start)));
        start = p + sep.size();
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

bool atom_holds(const std::string& cmp, const FeatureVector& f) {
    static const char* ops[] = {"==", "!=", "<=", ">=", "<", ">"};
    for (const char* op : ops) {
        auto p = cmp.find(op);
        if (p == std::string::npos) {
            continue;
        }
        auto        lhs  = trim(std::string_view(cmp).substr(0, p));
        auto        rhs  = trim(std::string_view(cmp).substr(p + std::char_traits<char>::length(op)));
        const char* text = rhs.c_str();
        char*       end  = nullptr;
        double      num  = std::strtod(text, &end);
        if (lhs.empty() || rhs.empty() || end == text || *end != '\0') {
            throw Error("bad comparison '" + cmp + "'");
        }
        double      v = f.value(lhs);
        std::string o = op;
        if (o == "==") return v == num;
        if (o == "!=") return v != num;
        if (o == "<=") return v <= num;
        if (o == ">=") return v >= num;
        if (o == "<") return v < num;
        return v > num;
    }
    throw Error("bad comparison '" + cmp + "'");
}

} // namespace

bool evaluate_predicate(const std::string& when, const FeatureVector& f) {
    auto disjuncts = split(when, "||");
    return std::any_of(disjuncts.begin(), disjuncts.end(), [&](const std::string& d) {
        auto conj = split(d, "&&");
        return std::all_of(conj.begin(), conj.end(), [&](const std::string& c) { return atom_holds(c, f); });
    });
}

std::string select_backend(const FeatureVector& f, const std::vector<SelectionRule>& table) {
    if (table.empty()) {
        throw Error("empty selection table");
    }
    const SelectionRule* fallback = nullptr;
    for (const auto& row : table) {
        if (row.is_default) {
            fallback = fallback != nullptr ? fallback : &row;
        } else if (evaluate_predicate(row.when, f)) {
            return row.use;
        }
    }
    if (fallback == nullptr) {
        throw Error("no selection row matches and no default row exists");
    }
    return fallback->use;
}

} // namespace quantasp
