#pragma once

#include "defq/kuranishi.hpp"
#include "defq/spec_io.hpp"

namespace defq {

/// Recovers the Hodge splitting of a validated contraction: boundaries from
/// d, harmonics from nabla, the rest from h d.
ContractionBuild splitting_from_contraction(const Contraction& c);

struct DeformRun {
    int order = 0;
    bool used_user_contraction = false;
    HptEngine engine;
    TwistingCochain tau;
    PerturbedDifferential d;
    ValidationReport identity_report;
    FormalityReport formality;
};

/// Contraction (user-supplied or built), transfer recursion, identity
/// checks, formality. The algebra must already validate.
DeformRun run_deform(const ProblemSpec& spec, int order);

struct KuranishiRun {
    int order = 0;
    bool truncated = false;  // reduce + cut was applied to reach two terms
    Dgla k;
    KuranishiContext ctx;
    KuranishiMaps maps;
    VectorSeries inverse;
    InverseChecks inverse_checks;
    std::vector<VectorSeries> phis;
    KuranishiCoalgebra coalgebra;
    ValidationReport theorem_report;
};

/// Two-term analysis; non-positive input is truncated to degrees -1, -2
/// first.
KuranishiRun run_kuranishi(const ProblemSpec& spec, int order);

}  // namespace defq
