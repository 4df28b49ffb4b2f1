#pragma once

#include <optional>
#include <string>

#include "defq/contraction.hpp"
#include "defq/dgla.hpp"

namespace defq {

/// Parsed problem description: the algebra over Q, an optional user-supplied
/// contraction, and the default truncation order.
struct ProblemSpec {
    std::string name;
    std::string description;
    int max_degree = 8;
    Dgla algebra;
    std::optional<Contraction> user_contraction;

    bool operator==(const ProblemSpec& o) const;
};

/// Parses the JSON problem format. Rationals are "p/q" strings; brackets are
/// listed once per unordered pair with x <= y. Throws ParseError.
ProblemSpec parse_spec(const std::string& text);
ProblemSpec load_spec_file(const std::string& path);

/// Canonical serialization; parse(serialize(s)) == s.
std::string serialize_spec(const ProblemSpec& s);

}  // namespace defq
