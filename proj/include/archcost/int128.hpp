#pragma once

#include <cstdint>
#include <string>

namespace archcost {

// Cost metrics are exact integer counts. 128-bit intermediates keep the
// arithmetic exact even for very large synthetic networks (e.g. 1536^2
// inputs with multi-thousand channel stages).
using u128 = unsigned __int128;
using i128 = __int128;

std::string to_string(u128 v);
std::string to_string(i128 v);

// Parses a non-negative decimal string. Throws std::invalid_argument on
// malformed input or overflow.
u128 u128_from_string(const std::string& s);

} // namespace archcost
