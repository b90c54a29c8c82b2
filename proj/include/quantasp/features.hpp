#pragma once
// Syntactic program features and a static back-end selection table.

#include <quantasp/program.hpp>

#include <string>
#include <utility>
#include <vector>

namespace quantasp {

/// The 21 features in fixed order: R, A, R/A, (R/A)^2, (R/A)^3, A/R,
/// (A/R)^2, (A/R)^3, R1, R2, R3, PR, F, DF, NR, NC, VF, VE, QF, QE, QL.
class FeatureVector {
public:
    /// Every feature present and zero.
    FeatureVector();

    static const std::vector<std::string>& names();

    double value(const std::string& name) const;
    void   set(const std::string& name, double v);
    const std::vector<std::pair<std::string, double>>& entries() const { return values_; }

    /// One-line JSON object in feature order; integral values print without
    /// a fraction, ratios with up to 17 significant digits.
    std::string to_json() const;

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

private:
    std::vector<std::pair<std::string, double>> values_;
};

/// Counts are taken over every level and C after desugaring, except NC
/// which counts the `:- B` rules as written. Atoms are counted once even
/// when shared by several levels; VF and VE count the atoms of ∀ and ∃
/// levels respectively.
FeatureVector extract_features(const QuantifiedProgram& qp);

struct SelectionRule {
    /// Conjunctions (&&) and disjunctions (||) of `FEATURE op NUMBER` with op
    /// one of == != < <= > >=. Empty for the default row.
    std::string when;
    std::string use;
    bool        is_default = false;
};

/// `[{"when":"QF==0","use":"depqbf"}, ..., {"default":"quabs"}]`
std::vector<SelectionRule> parse_selection_table(const std::string& json_text);
const std::vector<SelectionRule>& default_selection_table();

bool evaluate_predicate(const std::string& when, const FeatureVector& f);

/// First matching row, else the default row. Throws Error on an empty table
/// or when nothing matches and no default exists.
std::string select_backend(const FeatureVector& f, const std::vector<SelectionRule>& table);

} // namespace quantasp
