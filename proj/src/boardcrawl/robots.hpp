#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bc {

// Minimal robots.txt rules for one user agent: prefix Allow/Disallow with
// longest-match-wins, Allow winning ties. No rules means everything is
// allowed.
struct RobotsRules {
    std::vector<std::string> disallow;
    std::vector<std::string> allow;

    bool allows(std::string_view path) const;

    // Picks the most specific matching group: an agent token contained in
    // our agent name beats the "*" group.
    static RobotsRules parse(std::string_view body, std::string_view agent);
};

}  // namespace bc
