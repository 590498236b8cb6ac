#pragma once

#include <span>
#include <string>

namespace hypflow::detail {

/// "violated at 3 node(s): [4, 5, 6]" with the list truncated after 32 entries.
inline std::string describe_nodes(std::span<const std::size_t> nodes) {
    std::string s = "violated at " + std::to_string(nodes.size()) + " node(s): [";
    constexpr std::size_t kShown = 32;
    for (std::size_t i = 0; i < nodes.size() && i < kShown; ++i) {
        if (i) s += ", ";
        s += std::to_string(nodes[i]);
    }
    if (nodes.size() > kShown) s += ", ...";
    return s + "]";
}

}  // namespace hypflow::detail
