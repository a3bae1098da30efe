#pragma once

// Parameterised catalog of the constructed instances: equilibria, near
// optimal vectors and randomized equilibria with their exact costs.

#include <optional>
#include <string>
#include <vector>

#include "kcof/game.hpp"
#include "kcof/mixed.hpp"

namespace kcof {

struct CatalogParams {
    int k = 1;
    Rational lambda{1, 2};
    Rational epsilon{1, 8};
};

/// Throws Error(Domain) unless k >= 1, 0 < lambda < 1 and 0 < epsilon < 1/4.
void validate_params(const CatalogParams& params);

enum class ExpectedVerdict { PNE, MNE, NotEquilibrium, NearOpt };

const char* to_string(ExpectedVerdict v);

struct ReferenceVector {
    std::string tag;
    bool randomized = false;
    OpinionVector opinions;        // when !randomized
    RandomizedOpinionVector mixed; // when randomized
    Rational expected_cost;        // social cost, or expected social cost
    ExpectedVerdict verdict = ExpectedVerdict::PNE;
};

struct CatalogEntry {
    std::string name;
    GameInstance instance;
    std::vector<ReferenceVector> references;
    std::string notes;
    Rational lambda; // value actually used (some constructions need a smaller one)
    std::optional<std::size_t> expected_pne_count; // k = 1 entries with a known count
    bool expect_no_convergence = false;            // dynamics from s must not settle
    // Three consecutive players whose beliefs violate both small-chain conditions.
    std::optional<PlayerIndex> small_chain_start;
};

/// Entries applicable to params.k, unverified.
std::vector<CatalogEntry> build_catalog(const CatalogParams& params);

struct CheckRow {
    std::string entry;
    std::string quantity;
    std::string expected;
    std::string recomputed;
    bool match = false;
};

struct VerifyOptions {
    std::size_t dynamics_rounds = 1000;
};

/// Recomputes every stored expectation of the entry with the solver modules.
std::vector<CheckRow> verify_entry(const CatalogEntry& entry, const VerifyOptions& options = {});

/// build_catalog followed by verify_entry on each entry; throws
/// Error(Internal) naming the first mismatch.
std::vector<CatalogEntry> catalog(const CatalogParams& params, const VerifyOptions& options = {});

/// The constructions' reference vectors, usable as optimizer starts.
std::vector<OpinionVector> deterministic_references(const CatalogEntry& entry);

} // namespace kcof
