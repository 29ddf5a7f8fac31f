#pragma once

#include <string>
#include <vector>

#include "segal/corpus.hpp"
#include "segal/verdict.hpp"

namespace segal {

struct CheckRecord {
    std::string name;
    std::string anchor;  // stable name of the statement under test
    bool pass = false;
    std::string note;
    double ms = 0.0;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = true;
    std::vector<CheckRecord> records;
    double ms = 0.0;
};

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;
    bool pass = true;
    json to_json() const;
};

// Runs the whole acceptance corpus; deterministic given the corpus.
AcceptanceReport run_acceptance(const std::vector<CorpusEntry>& corpus);

}  // namespace segal
