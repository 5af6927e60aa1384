#include "archcost/int128.hpp"

#include <stdexcept>

namespace archcost {

std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return {out.rbegin(), out.rend()};
}

std::string to_string(i128 v) {
    if (v < 0) return "-" + to_string(static_cast<u128>(-v));
    return to_string(static_cast<u128>(v));
}

u128 u128_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    u128 v = 0;
    constexpr u128 kMax = ~static_cast<u128>(0);
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("malformed integer literal: " + s);
        int digit = c - '0';
        if (v > (kMax - digit) / 10) throw std::invalid_argument("integer literal overflows 128 bits: " + s);
        v = v * 10 + digit;
    }
    return v;
}

} // namespace archcost
