#pragma once

#include "archcost/ir.hpp"

#include <string>
#include <vector>

namespace archcost {

struct Preset {
    std::string name;
    std::vector<std::string> aliases;
    std::string notes;
    NetworkSpec spec;
};

const std::vector<Preset>& presets();

// Looks up a preset by name or alias. Returns nullptr when unknown.
const Preset* find_preset(const std::string& name);

// Resolves "name", "backbone+neck" compositions, or a file path. Throws
// UsageError when the source is neither a known preset nor a readable file.
NetworkSpec resolve_spec_source(const std::string& source);

} // namespace archcost
