#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace tiltkit {

/// One acceptance criterion outcome. `seconds` is wall time and is kept out
/// of the JSON rendering so identical seeds give byte-identical reports.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the whole acceptance suite deterministically for a seed. The last
/// entry re-runs the others and compares the serialized reports byte for
/// byte.
std::vector<CriterionResult> run_acceptance_suite(uint64_t seed);

nlohmann::ordered_json suite_to_json(const std::vector<CriterionResult>& results, uint64_t seed);

} // namespace tiltkit
