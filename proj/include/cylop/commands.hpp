#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cylop/io.hpp"

namespace cylop {

// Result of a top-level command: a JSON document, a text rendering and
// whether every check passed.
struct CommandResult {
  Json json;
  std::string text;
  bool ok = true;
};

// Loads a builtin or a cooperad file, truncated to cap when cap >= 0.
Cooperad load_truncated(const std::string& spec, int cap);

CommandResult run_validate(const Cooperad& C);
CommandResult run_cohomology(const Cooperad& C, int n, bool weight0);
// Without a derivation a random closed degree-0 Der' derivation is drawn
// from the seed.
CommandResult run_lift(const Cooperad& C, const std::optional<Json>& derivation, std::uint64_t seed);
// The triple is given as a Cyl(C)-algebra structure.
CommandResult run_transport(const Cooperad& C, const Json& triple, const std::optional<Json>& derivation,
                            std::uint64_t seed);
CommandResult run_mc_check(const Cooperad& C, const Json& element);

}  // namespace cylop
