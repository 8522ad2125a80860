#pragma once

#include <string>

#include <json.hpp>

#include "glab/graphing.hpp"

namespace glab {

// Graphing description loaded from a JSON spec file with fields
// {family, params, deleted_edges, added_edges, degree_bound}.
struct LoadedSpec {
    Graphing graphing;
    std::string family;
    std::string path;
    std::string hash; // FNV-1a of the raw file bytes, hex
};

// FNV-1a 64-bit, lowercase hex
std::string fnv1a_hex(const std::string& bytes);

// builds a graphing from a parsed spec document; throws ValidationError on
// schema problems and DomainError on bad parameters
Graphing graphing_from_json(const nlohmann::json& doc);

// reads, hashes, parses, builds, and validates; throws ValidationError on
// unreadable files, parse errors, or a failing validation report
LoadedSpec load_spec_file(const std::string& path);

} // namespace glab
