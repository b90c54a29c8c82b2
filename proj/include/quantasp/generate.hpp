#pragma once
// Seeded random programs for property tests and the bundled corpus.

#include <quantasp/circuit.hpp>
#include <quantasp/program.hpp>

#include <random>

namespace quantasp {

struct RandomOptions {
    std::size_t min_levels       = 1;
    std::size_t max_levels       = 3;
    std::size_t atoms_per_level  = 5;
    std::size_t rules_per_level  = 7;
    std::size_t constraint_rules = 3;
    std::size_t max_body         = 3;
    double      p_negative       = 0.35;
    double      p_choice         = 0.2;
    double      p_constraint     = 0.15;
    /// Chance that a head reuses an atom of an earlier level.
    double      p_outer_head     = 0.1;
};

/// Levels draw heads from their own atoms and bodies from their own and
/// earlier atoms; C is stratified by construction.
QuantifiedProgram random_quantified_program(std::mt19937_64& rng, const RandomOptions& opts = {});

/// A plain program over `atoms` atoms with normal rules, choices and
/// constraints mixed as in RandomOptions.
Program random_program(std::mt19937_64& rng, std::size_t atoms, std::size_t rules, const RandomOptions& opts = {});

/// Alternating quantifiers, every universal level Guess&Check with fresh
/// guess and check atoms.
QuantifiedProgram random_gc_program(std::mt19937_64& rng, const RandomOptions& opts = {});

/// A single Guess&Check program (guess choices plus stratified check).
Program random_gc_level(std::mt19937_64& rng, std::size_t guess_atoms, std::size_t check_rules,
                        const RandomOptions& opts = {});

/// A random closed prenex circuit over at most `max_vars` variables, with
/// shared subgates and the odd constant gate.
QbfCircuit random_circuit(std::mt19937_64& rng, std::uint32_t max_vars = 16);

} // namespace quantasp
