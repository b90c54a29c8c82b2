#pragma once

#include <quantasp/cnf.hpp>
#include <quantasp/oracle.hpp>
#include <quantasp/textio.hpp>

#include <set>
#include <string>
#include <vector>

namespace qt {

using NameSet = std::set<std::string>;

inline quantasp::Program prog(std::string_view text) { return quantasp::parse_program(text); }

inline NameSet names(const quantasp::AtomSet& s, const quantasp::SymbolTable& t) {
    NameSet out;
    for (auto a : s) {
        out.insert(t.name(a));
    }
    return out;
}

inline std::set<NameSet> names(const std::vector<quantasp::AtomSet>& ms, const quantasp::SymbolTable& t) {
    std::set<NameSet> out;
    for (const auto& m : ms) {
        out.insert(names(m, t));
    }
    return out;
}

/// User-visible answer sets (reserved atoms dropped).
inline std::set<NameSet> answer_sets(const quantasp::Program& p) {
    std::set<NameSet> out;
    for (const auto& m : quantasp::answer_sets_bruteforce(p).models) {
        NameSet s;
        for (auto a : m) {
            if (p.symbols().kind(a) == quantasp::AtomKind::User) {
                s.insert(p.symbols().name(a));
            }
        }
        out.insert(s);
    }
    return out;
}

/// Models of a CNF projected to its non-aux user atoms.
inline std::set<NameSet> cnf_models(const quantasp::CnfFormula& f, const quantasp::SymbolTable& t) {
    std::set<NameSet> out;
    auto              n = f.num_vars();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        bool ok = true;
        for (const auto& c : f.clauses()) {
            bool sat = false;
            for (auto l : c) {
                bool v = (m >> (std::abs(l) - 1)) & 1U;
                sat |= l > 0 ? v : !v;
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            continue;
        }
        NameSet s;
        for (std::size_t v = 1; v <= n; ++v) {
            const auto& var = f.var(static_cast<quantasp::CnfLit>(v));
            if (!var.aux && (m >> (v - 1) & 1U) && t.kind(var.atom) == quantasp::AtomKind::User) {
                s.insert(var.name);
            }
        }
        out.insert(s);
    }
    return out;
}

} // namespace qt
