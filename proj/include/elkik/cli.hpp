#pragma once

// Command-line front end. Every command builds a JSON document; text
// output is rendered from that document only.

#include "elkik/claims.hpp"

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace elkik::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFalsified = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitWindow = 65;

inline constexpr const char *kSchemaVersion = "1.0";

Json report_json(const claims::ClaimReport &r, bool with_timing);
std::string render_text(const Json &doc);

/// Runs one invocation (args exclude the program name).
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace elkik::cli
