#pragma once

#include "defq/contraction.hpp"
#include "defq/dgla.hpp"
#include "defq/symcoalg.hpp"

namespace defq {

/// Flat position bookkeeping for a graded space, degrees ascending.
struct FlatIndex {
    FlatIndex() = default;
    explicit FlatIndex(const GradedSpace& s);

    int total = 0;
    std::map<int, int> offsets;                // degree -> first position
    std::vector<std::pair<int, int>> address;  // position -> (degree, index)

    int pos(int degree, int index) const;
    Vec embed(int degree, const Vec& x) const;
    Vec component(int degree, const Vec& flat, int dim) const;
};

/// Degree -1 cochain family: per word length, the values on the basis of
/// S^c_len as columns over the flat basis of the algebra.
struct CochainFamily {
    int max_len = 0;
    std::vector<Matrix> by_len;  // [0] unused

    const Matrix& at(int len) const { return by_len.at(len); }
};

using TwistingCochain = CochainFamily;

/// D = D^1 + D^2 + ...; the corestriction of D^{m-1} is the word-length-m
/// block, valued in the suspended homology generators.
using PerturbedDifferential = Corestriction;

/// Shared context for the transfer recursion over a fixed algebra,
/// contraction, and truncation order.
class HptEngine {
public:
    HptEngine(Dgla g, Contraction c, int max_len);

    const Dgla& algebra() const { return g_; }
    const Contraction& contraction() const { return c_; }
    int max_len() const { return max_len_; }
    const GenBasis& gens() const { return wb_.gens; }
    const WordBasis& words() const { return wb_; }
    const FlatIndex& flat() const { return flat_; }

    /// [a cup b] on word length len: bracket of the two legs over every
    /// diagonal split, with the Koszul sign of moving the odd right leg
    /// past the left factor.
    Matrix convolution_bracket(const CochainFamily& a, const CochainFamily& b, int len) const;

    /// Sum of [tau^j cup tau^k] over j + k = len, in one split enumeration.
    Matrix bracket_sum(const CochainFamily& tau, int len) const;
    /// The same sum as the halved pairwise form j < k doubled plus the
    /// diagonal (the bracket of two odd cochains is symmetric).
    Matrix bracket_sum_pairwise(const CochainFamily& tau, int len) const;
    /// The literal two-sided sum, one convolution per ordered pair.
    Matrix bracket_sum_twosided(const CochainFamily& tau, int len) const;

    /// The recursion: tau^1 = nabla tau_H, tau^len = 1/2 h(bracket sum),
    /// corestriction of D^{len-1} = s(1/2 pi(bracket sum)).
    std::pair<TwistingCochain, PerturbedDifferential> compute_tau_and_d() const;

    /// Exact verification of the twisting-cochain identity
    /// d tau + tau D = 1/2 [tau cup tau], the side conditions pi tau = tau_H
    /// and h tau = 0, D D = 0, the chain-map property of the adjoint into
    /// the classifying coalgebra, and S^c[pi] adjoint = id.
    ValidationReport check_twisting_cochain(const TwistingCochain& tau,
                                            const PerturbedDifferential& d) const;

    /// Flat matrices of pi, nabla, h, d on the algebra.
    const Matrix& pi_flat() const { return pi_flat_; }
    const Matrix& h_flat() const { return h_flat_; }
    const Matrix& d_flat() const { return d_flat_; }
    const Matrix& nabla_flat() const { return nabla_flat_; }
    const FlatIndex& small_flat() const { return small_flat_; }

    /// Value of the lifted coderivation of `d` on S^c_len, block per target
    /// word length.
    std::map<int, Matrix> lift_perturbation(const PerturbedDifferential& d, int len) const;

private:
    Dgla g_;
    Contraction c_;
    int max_len_;
    WordBasis wb_;
    FlatIndex flat_;        // flat index of the algebra
    FlatIndex small_flat_;  // flat index of the homology
    Matrix pi_flat_, nabla_flat_, h_flat_, d_flat_;
    // bracket_table_[i][j]: sparse column of [e_i, e_j] over flat positions.
    std::vector<std::vector<std::vector<std::pair<int, Rational>>>> bracket_table_;
};

struct FormalityReport {
    bool criterion_holds = false;  // pi [tau^j cup tau^k] = 0 for all j+k > 2
    bool d1_nonzero = false;
    std::vector<std::pair<int, int>> failing_pairs;  // (j, k) with j <= k
    bool higher_d_zero = false;                      // D^l = 0 for l >= 2
};

/// Prop-style formality test along the computed cochain.
FormalityReport check_formality(const HptEngine& e, const TwistingCochain& tau,
                                const PerturbedDifferential& d);

struct TruncatedVsFullReport {
    bool tau_equal = false;      // cochain of the boundary-bracket algebra matches
    bool d_truncated_zero = false;  // its perturbed differential vanishes entirely
    bool full_d_zero = false;    // for reference: the full algebra's D
};

/// Runs the recursion for a two-term algebra twice, once with the harmonic
/// part of the bracket removed, and compares.
TruncatedVsFullReport compare_truncated_vs_full(const Dgla& k, const ContractionBuild& c,
                                                int max_len);

}  // namespace defq
