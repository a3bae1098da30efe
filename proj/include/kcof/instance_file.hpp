#pragma once

// JSON instance documents:
//   {"k": 1, "beliefs": ["-21/2", "2.5", ...],
//    "opinions": [...]?, "mixed": [[["opinion", "prob"], ...], ...]?,
//    "labels": [...]?}
// Rationals travel as strings ("p", "p/q" or exact decimals); plain JSON
// integers are accepted on input, floating-point numbers are not.

#include <optional>
#include <string>
#include <vector>

#include "kcof/game.hpp"
#include "kcof/mixed.hpp"

namespace kcof {

struct InstanceFile {
    int k = 1;
    std::vector<Rational> beliefs;
    std::vector<std::string> labels;
    std::optional<OpinionVector> opinions;
    std::optional<RandomizedOpinionVector> mixed;

    /// Validated game (sorted beliefs, n >= k+1).
    GameInstance game() const;
};

/// Parses and validates a document; opinion and mixed vectors must match
/// the number of players and mixed strategies must be proper distributions.
InstanceFile parse_instance(const std::string& json_text);
InstanceFile load_instance(const std::string& path);

std::string to_json(const InstanceFile& file, int indent = 2);

} // namespace kcof
