// report.hpp — per-condition residual records and the aggregate check report

#pragma once

#include "qsde/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qsde::realizability {

struct ConditionRecord {
    std::string id;     // stable machine id, e.g. "linear.ccr"
    std::string label;  // condition taxonomy label, e.g. "Thm1"
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct RealizabilityReport {
    double tolerance = 0.0;
    std::vector<ConditionRecord> conditions;

    // Recovery is attempted even on failing checks; `certified` is set only
    // when every condition passed.
    std::optional<model::LinearSLH> recovered_linear;
    std::optional<model::BilinearSLH> recovered_bilinear;
    bool certified = false;

    // Output-shape convention a cascade check ran under ("" when not applicable)
    std::string output_shape;

    bool pass() const {
        for (const auto& c : conditions)
            if (!c.pass) return false;
        return true;
    }

    const ConditionRecord* find(const std::string& id) const {
        for (const auto& c : conditions)
            if (c.id == id) return &c;
        return nullptr;
    }

    void add(std::string id, std::string label, double residual) {
        conditions.push_back({std::move(id), std::move(label), residual, tolerance,
                              residual <= tolerance});
    }

    void append(const RealizabilityReport& other) {
        conditions.insert(conditions.end(), other.conditions.begin(), other.conditions.end());
    }
};

using StructureReport = RealizabilityReport;

} // namespace qsde::realizability
