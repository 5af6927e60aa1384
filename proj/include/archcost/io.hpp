#pragma once

#include "archcost/ir.hpp"

#include <string>

namespace archcost {

// Architecture files are UTF-8 JSON, one network per document:
//
//   {
//     "name": "example",
//     "input": {"width": 608, "height": 608, "channels": 3},
//     "stages": [
//       {"kind": "dark", "repeats": 2, "base_channels": 128,
//        "downsample": true, "role": "backbone"},
//       ...
//     ]
//   }
//
// Stage entries accept the optional keys "growth" and "partition_width".
// Unknown keys are an error. Throws SyntaxError for malformed JSON (with
// byte position) and SemanticError for invariant violations.
NetworkSpec parse_spec(const std::string& text);

// Inverse of parse_spec: parse_spec(serialize_spec(s)) == s.
std::string serialize_spec(const NetworkSpec& spec);

NetworkSpec load_spec_file(const std::string& path);

} // namespace archcost
