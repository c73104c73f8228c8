#pragma once

#include <filesystem>
#include <string>

#include "fracstab/system.hpp"

namespace fracstab {

/// Parses a JSON system document into a fully validated SystemSpec.
///
/// Schema (matrices row-major as arrays of arrays):
///   {
///     "name": "...", "description": "...",        // optional
///     "q": 0.5, "n": 2, "p": 1,
///     "A0": [[...], [...]],
///     "delays": [ {"tau": 0.3, "A": [[...], [...]]} ],
///     "B0": [[...], [...]],
///     "nonlinearity": {"kind": "zero"}
///       | {"kind": "tanh", "scale": [...]}
///       | {"kind": "sin_plus_offset", "scale": [...], "offset": [...]}
///       | {"kind": "linear", "matrix": [[...]]}
///   }
///
/// Throws ParseError (with the offending line) on malformed JSON and
/// ValidationError naming the field path on invariant violations.
SystemSpec parse_system(const std::string& doc);

/// Loads and parses a system file. Throws IoError with path context.
SystemSpec load_system(const std::filesystem::path& file);

/// Deterministic serialization; parse(serialize(s)) reproduces s exactly
/// (keys sorted, shortest round-trip number text, LF endings).
std::string serialize_system(const SystemSpec& sys);

}  // namespace fracstab
