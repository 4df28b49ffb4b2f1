#pragma once

#include "defq/graded.hpp"
#include "defq/validation.hpp"

namespace defq {

/// Strong deformation retract datum between a complex and its homology:
/// pi nabla = id, nabla pi = id - (d h + h d), with full side conditions
/// h nabla = 0, pi h = 0, h h = 0; the small complex carries the zero
/// differential.
struct Contraction {
    ChainComplex big;
    ChainComplex small;   // zero differential
    GradedMap nabla;      // small -> big, degree 0
    GradedMap pi;         // big -> small, degree 0
    GradedMap h;          // big -> big, degree +1
};

/// Per-degree bases of the three summands of the splitting
/// big_j = (d big_{j+1}) + harmonic_j + h(d big_j).
struct HodgeSplitting {
    std::map<int, Matrix> boundaries;
    std::map<int, Matrix> harmonic;
    std::map<int, Matrix> h_image;
};

struct ContractionBuild {
    Contraction contraction;
    HodgeSplitting splitting;
};

/// Deterministic contraction of a finite complex onto its homology. h
/// vanishes on the harmonic and h-image summands and inverts d from the
/// h-image summand onto the boundaries.
ContractionBuild build_contraction(const ChainComplex& c);

/// Exact check of every contraction identity on every degree.
ValidationReport validate_contraction(const Contraction& k);

/// Transport along the suspension: conjugate nabla and pi, flip the sign of
/// h (forced by the sign flip of the differentials).
Contraction suspend_contraction(const Contraction& k);

}  // namespace defq
