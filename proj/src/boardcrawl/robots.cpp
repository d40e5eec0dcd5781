#include "boardcrawl/robots.hpp"

#include <sstream>

#include "boardcrawl/encoding.hpp"

namespace bc {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace

bool RobotsRules::allows(std::string_view path) const {
    std::size_t best_disallow = 0;
    bool disallowed = false;
    for (const auto& rule : disallow) {
        if (!rule.empty() && path.rfind(rule, 0) == 0 && rule.size() >= best_disallow) {
            best_disallow = rule.size();
            disallowed = true;
        }
    }
    if (!disallowed) return true;
    for (const auto& rule : allow) {
        if (!rule.empty() && path.rfind(rule, 0) == 0 && rule.size() >= best_disallow) {
            return true;
        }
    }
    return false;
}

RobotsRules RobotsRules::parse(std::string_view body, std::string_view agent) {
    std::string agent_lower = to_lower_ascii(agent);

    RobotsRules specific, wildcard;
    bool group_specific = false, group_wildcard = false;
    bool saw_specific = false;
    bool in_agent_lines = false;

    std::istringstream lines{std::string(body)};
    std::string raw;
    while (std::getline(lines, raw)) {
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) continue;
        std::string key = to_lower_ascii(trim(line.substr(0, colon)));
        std::string value = trim(line.substr(colon + 1));

        if (key == "user-agent") {
            std::string token = to_lower_ascii(value);
            if (!in_agent_lines) {
                group_specific = false;
                group_wildcard = false;
            }
            in_agent_lines = true;
            if (token == "*") {
                group_wildcard = true;
            } else if (!token.empty() && agent_lower.find(token) != std::string::npos) {
                group_specific = true;
                saw_specific = true;
            }
            continue;
        }
        in_agent_lines = false;
        if (key == "disallow") {
            if (group_specific && !value.empty()) specific.disallow.push_back(value);
            if (group_wildcard && !value.empty()) wildcard.disallow.push_back(value);
        } else if (key == "allow") {
            if (group_specific && !value.empty()) specific.allow.push_back(value);
            if (group_wildcard && !value.empty()) wildcard.allow.push_back(value);
        }
    }
    return saw_specific ? specific : wildcard;
}

}  // namespace bc
