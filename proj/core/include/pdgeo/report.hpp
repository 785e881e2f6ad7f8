#ifndef PDGEO_REPORT_HPP
#define PDGEO_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pdgeo/defects.hpp"

namespace pdgeo {

// Shared configuration of every randomized run; identical configs give
// byte-identical JSON.
struct RunConfig {
    std::uint64_t seed = 1;
    int retries = 3;
    long height = 7;
    int trials = 20;
    std::string format = "json";  // json | table
};

// Defect report in the documented JSON schema.
std::string defect_report_json(const DefectReport& report);

struct AcceptanceRow {
    std::string name;
    bool passed = false;
    std::string detail;
};

// The full acceptance table: exact reproductions of the defect tables and
// structure theorems at desk scale. Randomized rows run for three seeds
// derived from cfg.seed. Progress lines go to `progress` when given.
std::vector<AcceptanceRow> run_acceptance(const RunConfig& cfg,
                                          std::ostream* progress = nullptr);

// Run a single zero-indexed row of the table (negative: all rows); the row
// order matches run_acceptance.
std::vector<AcceptanceRow> run_acceptance_subset(const RunConfig& cfg,
                                                 std::ostream* progress,
                                                 int only_row);

// The named varieties the table ranges over.
std::vector<std::string> acceptance_catalog();

}  // namespace pdgeo

#endif  // PDGEO_REPORT_HPP
