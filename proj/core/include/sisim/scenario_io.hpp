#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "sisim/integrator.hpp"

namespace sisim {

/// Scenario rejected at load; `issues` lists every violated constraint.
class ValidationError : public std::runtime_error {
public:
    ValidationError(const std::string& what, std::vector<std::string> issues)
        : std::runtime_error(what), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    std::vector<std::string> issues_;
};

/// All load-time invariant checks: coefficient signs and bounds, the
/// capacity floor, schedule spacing, initial-state and tolerance sanity.
/// Returns an empty list for a valid scenario.
std::vector<std::string> validate_scenario(const Scenario& scenario);

/// Parses and fully validates a scenario document; throws ValidationError
/// with the complete issue list on rejection.
Scenario parse_scenario(const std::string& json_text);

Scenario load_scenario(const std::filesystem::path& path);

/// Serializes a scenario so that parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

} // namespace sisim
