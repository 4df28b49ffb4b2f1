#pragma once

#include <json.hpp>

#include "defq/pipeline.hpp"

namespace defq {

using ojson = nlohmann::ordered_json;

ojson validation_json(const ValidationReport& rep);
ojson spec_summary_json(const ProblemSpec& spec);

/// Full machine-readable reports. Field order is fixed; repeated runs on the
/// same input are byte-identical.
ojson validate_report(const ProblemSpec& spec, const ValidationReport& algebra_rep,
                      const std::optional<ValidationReport>& contraction_rep);
ojson deform_report(const ProblemSpec& spec, const DeformRun& run);
ojson kuranishi_report(const ProblemSpec& spec, const KuranishiRun& run);

/// Plain-text rendering of a report tree.
std::string render_text(const ojson& j);

}  // namespace defq
