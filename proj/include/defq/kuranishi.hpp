#pragma once

#include "defq/hpt.hpp"
#include "defq/series.hpp"

namespace defq {

/// Shared data for the two-term analysis: the algebra, its contraction, the
/// suspended picture, and the computed cochain.
class KuranishiContext {
public:
    KuranishiContext(const Dgla& k, const ContractionBuild& c, int order);

    const Dgla& algebra() const { return engine_.algebra(); }
    const HptEngine& engine() const { return engine_; }
    const ContractionBuild& build() const { return cb_; }
    const Contraction& suspended() const { return cv_; }
    const QuadraticData& quadratic() const { return q_; }
    const TwistingCochain& tau() const { return tau_; }
    const PerturbedDifferential& perturbation() const { return d_; }
    int order() const { return order_; }

    const std::vector<Label>& v0_labels() const { return v0_labels_; }     // tangent variables
    const std::vector<Label>& vm1_labels() const { return vm1_labels_; }   // obstruction directions
    const std::vector<Label>& V0_labels() const { return V0_labels_; }
    const std::vector<Label>& Vm1_labels() const { return Vm1_labels_; }

    /// Generator indices of the engine basis lying in v_0 / v_{-1}.
    const std::vector<int>& v0_gens() const { return v0_gens_; }
    const std::vector<int>& vm1_gens() const { return vm1_gens_; }

    /// Basis of S^c_len[v_0]: positions into the engine word basis.
    const std::vector<std::vector<int>>& even_words() const { return even_words_; }
    /// Exponent vector of an even word over the v_0 variables.
    MultiIndex exponents(const SymWord& w) const;

private:
    ContractionBuild cb_;
    Contraction cv_;
    QuadraticData q_;
    HptEngine engine_;
    TwistingCochain tau_;
    PerturbedDifferential d_;
    int order_;
    std::vector<int> v0_gens_, vm1_gens_;
    std::vector<Label> v0_labels_, vm1_labels_, V0_labels_, Vm1_labels_;
    std::vector<std::vector<int>> even_words_;
};

struct KuranishiMaps {
    VectorSeries J;  // variables: V_0 basis; coefficients: V_{-1} (both components assembled)
    VectorSeries F;  // variables and coefficients: V_0
    bool f_projection_identity = false;  // hd F = hd + h q_B as polynomials
};

KuranishiMaps kuranishi_map(const KuranishiContext& ctx);

/// s tau restricted to S^c[v_0], as a power series in the tangent variables
/// with coefficients in V_0.
VectorSeries formal_inverse(const KuranishiContext& ctx);

/// One scalar-valued series per v_{-1} direction: the obstruction
/// coefficients of the perturbed differential on S^c[v_0].
std::vector<VectorSeries> obstruction_series(const KuranishiContext& ctx);

struct KuranishiCoalgebra {
    std::vector<int> dims;              // per word length 0..N
    std::vector<Matrix> bases;          // kernel bases in S^c_len[v_0] coordinates
};

/// Word-length-wise kernel of (id x pi_D) Delta inside S^c_{<=N}[v_0].
KuranishiCoalgebra kuranishi_coalgebra(const KuranishiContext& ctx);

struct InverseChecks {
    bool linear_part_is_inclusion = false;
    bool composition_is_identity = false;  // F after the inverse = tangent inclusion
    bool membership_identity = false;      // g + h q_B(iota) = 0
};

InverseChecks check_inverse(const KuranishiContext& ctx, const KuranishiMaps& maps,
                            const VectorSeries& inverse);

/// Word-length-wise verification that the adjoint restricts to mutually
/// inverse isomorphisms between the kernel coalgebra and the degree-zero
/// kernel of the perturbed classifying coalgebra.
ValidationReport verify_theorem(const KuranishiContext& ctx, const KuranishiCoalgebra& ck);

}  // namespace defq
