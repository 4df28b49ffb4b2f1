#pragma once

#include <string>
#include <vector>

namespace defq {

struct ValidationIssue {
    std::string check;    // which axiom or identity failed
    std::string witness;  // basis tuple / degree where it failed
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }
    void fail(std::string check, std::string witness, std::string detail = {}) {
        issues.push_back({std::move(check), std::move(witness), std::move(detail)});
    }
    std::string summary() const {
        if (issues.empty())
            return "ok";
        std::string s;
        for (const auto& i : issues) {
            s += i.check + " at " + i.witness;
            if (!i.detail.empty())
                s += " (" + i.detail + ")";
            s += "; ";
        }
        return s;
    }
};

}  // namespace defq
