#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "statcalc/expr.hpp"
#include "statcalc/interval.hpp"

namespace statcalc {

/// A known derivative/antiderivative pair with an interval on which both
/// functions are smooth.
struct DAPairEntry {
    std::string name;    // e.g. "power n=4"
    std::string family;  // one of: power, exp, log, sine, cosine, tangent
    Expr f;
    Expr F;
    Interval verify_interval;
};

/// The six standard pair families. The power family is instantiated at
/// n = 1, 2 and 4, giving eight entries.
inline const std::vector<DAPairEntry>& builtin_da_table() {
    static const std::vector<DAPairEntry> table = [] {
        std::vector<DAPairEntry> t;
        auto add = [&](std::string name, std::string family, std::string_view f, std::string_view F,
                       Interval iv) {
            t.push_back({std::move(name), std::move(family), parse(f), parse(F), iv});
        };
        add("power n=1", "power", "x", "x^2/2", {0.0, 1.0});
        add("power n=2", "power", "x^2", "x^3/3", {0.0, 1.0});
        add("power n=4", "power", "x^4", "x^5/5", {0.0, 1.0});
        add("exp", "exp", "e^x", "e^x", {0.0, 1.0});
        add("log", "log", "1/x", "ln(x)", {0.5, 2.0});
        add("sine", "sine", "cos(x)", "sin(x)", {0.0, 3.0});
        add("cosine", "cosine", "-sin(x)", "cos(x)", {0.0, 3.0});
        add("tangent", "tangent", "sec(x)^2", "tan(x)", {0.0, 1.0});
        return t;
    }();
    return table;
}

inline std::optional<DAPairEntry> find_da_pair(std::string_view name) {
    for (const auto& entry : builtin_da_table())
        if (entry.name == name || (entry.family == name && entry.family != "power")) return entry;
    return std::nullopt;
}

}  // namespace statcalc
