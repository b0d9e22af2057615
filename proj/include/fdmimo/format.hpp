// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <charconv>
#include <string>

namespace fdmimo {

/// Shortest decimal text that parses back to the same double.
inline std::string format_number(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

}  // namespace fdmimo
