#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace trackstat {

using BigInt = boost::multiprecision::cpp_int;
using u128 = unsigned __int128;

inline BigInt from_u128(u128 v) {
    BigInt out = static_cast<std::uint64_t>(v >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(v);
    return out;
}

}  // namespace trackstat
