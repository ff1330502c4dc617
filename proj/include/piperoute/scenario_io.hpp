#ifndef PIPEROUTE_SCENARIO_IO_HPP
#define PIPEROUTE_SCENARIO_IO_HPP

#include <stdexcept>
#include <string>

#include "piperoute/scenario.hpp"

namespace piperoute {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Versioned UTF-8 JSON schema; see README for the field layout.
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);

Scenario scenario_from_json_string(const std::string& text);
std::string scenario_to_json_string(const Scenario& scenario);

} // namespace piperoute

#endif
