#ifndef LUMISIM_CONFIG_HPP
#define LUMISIM_CONFIG_HPP

#include <stdexcept>
#include <string>

#include "lumisim/scenario.hpp"

namespace lumisim {

// Schema violation with a path-qualified message, e.g. "grid.cell_size: ...".
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parses and fully validates a scenario from the JSON config format. Unknown
// keys are rejected. Throws ConfigError on any schema or consistency problem.
Scenario parse_config(const std::string& json_text);

// Inverse of parse_config; emits every field, defaults included.
std::string serialize_scenario(const Scenario& sc);

// Field-by-field comparison with a small numeric tolerance (direction vectors
// travel through degrees in the config format).
bool scenario_equivalent(const Scenario& a, const Scenario& b, double tol = 1e-9);

}  // namespace lumisim

#endif  // LUMISIM_CONFIG_HPP
