#pragma once

#include <map>
#include <utility>

#include "defq/contraction.hpp"
#include "defq/graded.hpp"
#include "defq/validation.hpp"

namespace defq {

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-positive differential graded Lie algebra given by structure constants.
/// Brackets are stored once per unordered basis pair, keyed by the
/// lexicographically smaller label first; the other half is generated by
/// graded antisymmetry.
struct Dgla {
    ChainComplex complex;
    std::map<std::pair<Label, Label>, std::vector<std::pair<Label, Rational>>> bracket;

    /// Throws InvalidInput for unknown labels; canonicalizes the pair order.
    void set_bracket(const Label& x, const Label& y,
                     std::vector<std::pair<Label, Rational>> value);

    /// Degree of a basis label; labels must be globally unique.
    int degree_of(const Label& l) const;

    /// [x, y] for basis vectors, any argument order, as a coordinate vector
    /// in degree deg_x + deg_y.
    Vec bracket_basis(int deg_x, int ix, int deg_y, int iy) const;

    /// Bilinear extension to coordinate vectors.
    Vec bracket_vec(int deg_x, const Vec& x, int deg_y, const Vec& y) const;
};

/// Exact check of every axiom: labels resolve, degrees non-positive, bracket
/// degree-additive, graded antisymmetry, graded Leibniz on all basis pairs,
/// graded Jacobi on all basis triples, d degree -1 with square zero.
/// Violations are reported with the witnessing basis tuple.
ValidationReport validate(const Dgla& g);

/// Quotient by the ideal that is h(d g_k) in degree k and everything below;
/// the result lives in degrees k..0 with degree-k part (d g_{k+1}) + harmonic.
/// Throws InvalidInput when the quotient bracket is not well defined for the
/// given contraction.
Dgla postnikov_stage(const Dgla& g, int k, const ContractionBuild& c);

/// Reduced algebra: degree -1 becomes the contraction's complement of the
/// boundaries d g_0, degrees <= -2 are kept, everything >= 0 is dropped.
Dgla reduce(const Dgla& g, const ContractionBuild& c);

/// reduce followed by postnikov_stage at k = -2: the two-term truncation.
Dgla truncate_minus1_minus2(const Dgla& g, const ContractionBuild& c);

/// The bracket of a two-term algebra as a quadratic map q = (q_B, q_v) on
/// the suspension, with the normalization q(x) = 1/2 s[s^-1 x, s^-1 x].
/// Stored as the polarized symmetric bilinear form on V_0 basis pairs.
struct QuadraticData {
    GradedSpace v_space;             // suspension, degrees 0 and -1
    GradedSpace small_space;         // suspended homology, degrees 0 and -1
    std::map<std::pair<int, int>, Vec> qB;  // i <= j -> boundary component, V_{-1} coords
    std::map<std::pair<int, int>, Vec> qv;  // i <= j -> harmonic component, small_{-1} coords

    /// B(x, y) assembled back into V_{-1} coordinates (needs nabla of the
    /// suspended contraction to re-embed the harmonic component).
    Vec assembled(const GradedMap& nabla_v, int i, int j) const;
};

QuadraticData quadratic_data(const Dgla& k, const ContractionBuild& c);

/// Same underlying complex, bracket replaced by its boundary component
/// (the harmonic part of every value is projected away).
Dgla boundary_bracket_part(const Dgla& k, const ContractionBuild& c);

}  // namespace defq
