#include "defq/hpt.hpp"

#include <sstream>

#include "defq/parallel.hpp"

namespace defq {

namespace {

int parity(int k) {
    return ((k % 2) + 2) % 2;
}

}  // namespace

FlatIndex::FlatIndex(const GradedSpace& s) {
    for (int j : s.degrees()) {
        offsets[j] = total;
        for (int i = 0; i < s.dim(j); ++i)
            address.emplace_back(j, i);
        total += s.dim(j);
    }
}

int FlatIndex::pos(int degree, int index) const {
    auto it = offsets.find(degree);
    return it == offsets.end() ? -1 : it->second + index;
}

Vec FlatIndex::embed(int degree, const Vec& x) const {
    Vec out = vec::zero(total);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero())
            out[pos(degree, static_cast<int>(i))] = x[i];
    return out;
}

Vec FlatIndex::component(int degree, const Vec& flat, int dim) const {
    Vec out = vec::zero(dim);
    auto it = offsets.find(degree);
    if (it == offsets.end())
        return out;
    for (int i = 0; i < dim; ++i)
        out[i] = flat[it->second + i];
    return out;
}

namespace {

Matrix flatten_map(const GradedMap& m, const FlatIndex& src, const FlatIndex& tgt) {
    Matrix out(tgt.total, src.total);
    for (const auto& [j, blk] : m.blocks) {
        for (int c = 0; c < blk.cols; ++c) {
            const int cp = src.pos(j, c);
            if (cp < 0)
                continue;
            for (int r = 0; r < blk.rows; ++r) {
                if (blk.at(r, c).is_zero())
                    continue;
                const int rp = tgt.pos(j + m.degree, r);
                if (rp >= 0)
                    out.at(rp, cp) = blk.at(r, c);
            }
        }
    }
    return out;
}

}  // namespace

HptEngine::HptEngine(Dgla g, Contraction c, int max_len)
    : g_(std::move(g)), c_(std::move(c)), max_len_(max_len),
      wb_(WordBasis::build(GenBasis::from_suspension(c_.small.space), max_len)),
      flat_(g_.complex.space), small_flat_(c_.small.space) {
    if (max_len_ < 1)
        throw InvalidInput("truncation order must be at least 1");
    pi_flat_ = flatten_map(c_.pi, flat_, small_flat_);
    nabla_flat_ = flatten_map(c_.nabla, small_flat_, flat_);
    h_flat_ = flatten_map(c_.h, flat_, flat_);
    d_flat_ = flatten_map(g_.complex.d, flat_, flat_);

    bracket_table_.resize(flat_.total, std::vector<std::vector<std::pair<int, Rational>>>(
                                           flat_.total));
    for (int i = 0; i < flat_.total; ++i) {
        const auto [di, ii] = flat_.address[i];
        for (int j = 0; j < flat_.total; ++j) {
            const auto [dj, ij] = flat_.address[j];
            const Vec b = g_.bracket_basis(di, ii, dj, ij);
            for (std::size_t t = 0; t < b.size(); ++t)
                if (!b[t].is_zero())
                    bracket_table_[i][j].emplace_back(flat_.pos(di + dj, static_cast<int>(t)),
                                                      b[t]);
        }
    }
}

Matrix HptEngine::convolution_bracket(const CochainFamily& a, const CochainFamily& b,
                                      int len) const {
    if (len > max_len_)
        throw TruncationError("convolution bracket beyond the truncation order");
    const int dim = wb_.dim(len);
    Matrix out(flat_.total, dim);
    par::for_n(static_cast<std::size_t>(dim), [&](std::size_t col) {
        const SymWord& e = wb_.word(len, static_cast<int>(col));
        for (const SplitTerm& s : all_splits(wb_.gens, e, false)) {
            const int j = s.left.length();
            const int k = s.right.length();
            if (j >= static_cast<int>(a.by_len.size()) || a.by_len[j].cols == 0)
                continue;
            if (k >= static_cast<int>(b.by_len.size()) || b.by_len[k].cols == 0)
                continue;
            const int li = wb_.index_of(s.left);
            const int ri = wb_.index_of(s.right);
            // Koszul: the odd right cochain moves past the left factor.
            Rational sign(s.sign);
            if (parity(s.left.degree(wb_.gens)))
                sign = -sign;
            const Matrix& am = a.by_len[j];
            const Matrix& bm = b.by_len[k];
            for (int p = 0; p < flat_.total; ++p) {
                const Rational& ap = am.at(p, li);
                if (ap.is_zero())
                    continue;
                for (int q = 0; q < flat_.total; ++q) {
                    const Rational& bq = bm.at(q, ri);
                    if (bq.is_zero())
                        continue;
                    for (const auto& [t, c] : bracket_table_[p][q])
                        out.at(t, static_cast<int>(col)) += sign * ap * bq * c;
                }
            }
        }
    });
    return out;
}

namespace {

CochainFamily single_component(const CochainFamily& tau, int len) {
    CochainFamily f;
    f.max_len = tau.max_len;
    f.by_len.resize(tau.by_len.size());
    f.by_len[len] = tau.by_len[len];
    return f;
}

}  // namespace

Matrix HptEngine::bracket_sum(const CochainFamily& tau, int len) const {
    // One pass over the diagonal splits covers every (j, k) at once.
    return convolution_bracket(tau, tau, len);
}

Matrix HptEngine::bracket_sum_pairwise(const CochainFamily& tau, int len) const {
    Matrix out(flat_.total, wb_.dim(len));
    for (int j = 1; 2 * j < len; ++j) {
        const int k = len - j;
        if (j >= static_cast<int>(tau.by_len.size()) || k >= static_cast<int>(tau.by_len.size()))
            continue;
        const Matrix m =
            convolution_bracket(single_component(tau, j), single_component(tau, k), len);
        out = out + m + m;  // [tau^j, tau^k] + [tau^k, tau^j], equal for odd cochains
    }
    if (len % 2 == 0 && len / 2 < static_cast<int>(tau.by_len.size())) {
        out = out + convolution_bracket(single_component(tau, len / 2),
                                        single_component(tau, len / 2), len);
    }
    return out;
}

Matrix HptEngine::bracket_sum_twosided(const CochainFamily& tau, int len) const {
    Matrix out(flat_.total, wb_.dim(len));
    for (int j = 1; j < len; ++j) {
        const int k = len - j;
        if (j >= static_cast<int>(tau.by_len.size()) || k >= static_cast<int>(tau.by_len.size()))
            continue;
        out = out +
              convolution_bracket(single_component(tau, j), single_component(tau, k), len);
    }
    return out;
}

std::pair<TwistingCochain, PerturbedDifferential> HptEngine::compute_tau_and_d() const {
    TwistingCochain tau;
    tau.max_len = max_len_;
    tau.by_len.resize(max_len_ + 1);

    // tau^1 = nabla tau_H: each suspended generator goes to its harmonic
    // representative.
    Matrix t1(flat_.total, wb_.dim(1));
    for (int b = 0; b < wb_.gens.size(); ++b) {
        const auto [deg, idx] = wb_.gens.origin[b];
        Vec unit = vec::zero(c_.small.space.dim(deg));
        unit[idx] = Rational(1);
        const Vec img = flat_.embed(deg, Vec(c_.nabla.apply(deg, unit)));
        for (int r = 0; r < flat_.total; ++r)
            t1.at(r, b) = img[r];
    }
    tau.by_len[1] = std::move(t1);

    PerturbedDifferential d;
    d.map_degree = -1;

    const Rational half(1, 2);
    for (int len = 2; len <= max_len_; ++len) {
        const Matrix s = bracket_sum(tau, len);
        tau.by_len[len] = (h_flat_ * s).scaled(half);

        const Matrix cor_small = (pi_flat_ * s).scaled(half);
        Matrix cor(wb_.gens.size(), wb_.dim(len));
        bool nonzero = false;
        for (int col = 0; col < cor_small.cols; ++col) {
            for (int r = 0; r < cor_small.rows; ++r) {
                if (cor_small.at(r, col).is_zero())
                    continue;
                const auto [deg, idx] = small_flat_.address[r];
                const int gt = wb_.gens.from_origin(deg, idx);
                cor.at(gt, col) = cor_small.at(r, col);
                nonzero = true;
            }
        }
        if (nonzero)
            d.by_length[len] = std::move(cor);
    }
    return {std::move(tau), std::move(d)};
}

std::map<int, Matrix> HptEngine::lift_perturbation(const PerturbedDifferential& d,
                                                   int len) const {
    return lift_coderivation(wb_, d, len);
}

namespace {

void check_zero_matrix(ValidationReport& rep, const Matrix& m, const std::string& name,
                       int len) {
    if (!m.is_zero())
        rep.fail(name, "word length " + std::to_string(len));
}

void add_into(CoalgVec& acc, const CoalgVec& v, const Rational& c) {
    for (const auto& [w, x] : v) {
        acc[w] += x * c;
        if (acc[w].is_zero())
            acc.erase(w);
    }
}

}  // namespace

ValidationReport HptEngine::check_twisting_cochain(const TwistingCochain& tau,
                                                   const PerturbedDifferential& d) const {
    ValidationReport rep;
    const Rational half(1, 2);

    // tau_H as a flat matrix on word length 1.
    Matrix tau_h(small_flat_.total, wb_.dim(1));
    for (int b = 0; b < wb_.gens.size(); ++b) {
        const auto [deg, idx] = wb_.gens.origin[b];
        tau_h.at(small_flat_.pos(deg, idx), b) = Rational(1);
    }

    for (int len = 1; len <= max_len_; ++len) {
        const Matrix& t = tau.by_len[len];
        check_zero_matrix(rep, h_flat_ * t, "h tau = 0", len);
        if (len == 1)
            check_zero_matrix(rep, pi_flat_ * t - tau_h, "pi tau = tau_H", len);
        else
            check_zero_matrix(rep, pi_flat_ * t, "pi tau = tau_H", len);

        // d tau + tau D = 1/2 [tau cup tau].
        Matrix lhs = d_flat_ * t;
        for (const auto& [target, blk] : lift_perturbation(d, len)) {
            if (target >= 1 && tau.by_len[target].cols > 0)
                lhs = lhs + tau.by_len[target] * blk;
        }
        const Matrix rhs = bracket_sum_twosided(tau, len).scaled(half);
        check_zero_matrix(rep, lhs - rhs, "twisting-cochain identity", len);
    }

    // D D = 0 on the truncation.
    for (int len = 2; len <= max_len_; ++len) {
        std::map<int, Matrix> square;
        for (const auto& [mid, m1] : lift_perturbation(d, len)) {
            for (const auto& [fin, m2] : lift_perturbation(d, mid)) {
                auto it = square.find(fin);
                if (it == square.end())
                    square.emplace(fin, m2 * m1);
                else
                    it->second = it->second + m2 * m1;
            }
        }
        for (const auto& [fin, m] : square)
            check_zero_matrix(rep, m, "D D = 0", len);
    }

    // Adjoint checks on the classifying coalgebra of the algebra itself.
    const GenBasis big_gens = GenBasis::from_suspension(g_.complex.space);
    const WordBasis big = WordBasis::build(big_gens, max_len_);
    const Corestriction cce = cce_corestriction(g_, big);

    // Corestriction of the adjoint: s tau, valued in the big generators.
    MorphismCor adj;
    for (int len = 1; len <= max_len_; ++len) {
        Matrix m(big_gens.size(), wb_.dim(len));
        bool nonzero = false;
        for (int col = 0; col < wb_.dim(len); ++col)
            for (int p = 0; p < flat_.total; ++p) {
                const Rational& c = tau.by_len[len].at(p, col);
                if (c.is_zero())
                    continue;
                const auto [deg, idx] = flat_.address[p];
                m.at(big_gens.from_origin(deg, idx), col) = c;
                nonzero = true;
            }
        if (nonzero)
            adj.by_length[len] = std::move(m);
    }
    MorphismLift adjoint(wb_, big, adj);

    // S^c[pi] as a word-length-1 morphism back onto the small generators.
    MorphismCor pi_cor;
    {
        Matrix m(wb_.gens.size(), big_gens.size());
        for (int b = 0; b < big_gens.size(); ++b) {
            const auto [deg, idx] = big_gens.origin[b];
            Vec unit = vec::zero(g_.complex.space.dim(deg));
            unit[idx] = Rational(1);
            const Vec img = c_.pi.apply(deg, unit);
            for (std::size_t t = 0; t < img.size(); ++t)
                if (!img[t].is_zero())
                    m.at(wb_.gens.from_origin(deg, static_cast<int>(t)), b) = img[t];
        }
        pi_cor.by_length[1] = std::move(m);
    }
    MorphismLift sc_pi(big, wb_, pi_cor);

    for (int len = 0; len <= max_len_; ++len) {
        for (int i = 0; i < wb_.dim(len); ++i) {
            const SymWord& e = wb_.word(len, i);

            // S^c[pi] adjoint = id.
            CoalgVec roundtrip;
            for (const auto& [w, c] : adjoint.image(e))
                add_into(roundtrip, sc_pi.image(w), c);
            CoalgVec expect;
            expect[e] = Rational(1);
            if (roundtrip != expect) {
                rep.fail("S^c[pi] adjoint = id",
                         "word length " + std::to_string(len) + ", element " + e.str(wb_.gens));
            }

            // Chain map: (d_CE + perturbation) adjoint = adjoint D.
            CoalgVec lhs;
            for (const auto& [w, c] : adjoint.image(e))
                add_into(lhs, apply_coderivation(big, cce, w), c);
            CoalgVec rhs;
            for (const auto& [w, c] : apply_coderivation(wb_, d, e))
                add_into(rhs, adjoint.image(w), c);
            if (lhs != rhs) {
                rep.fail("adjoint chain map",
                         "word length " + std::to_string(len) + ", element " + e.str(wb_.gens));
            }
        }
    }
    return rep;
}

FormalityReport check_formality(const HptEngine& e, const TwistingCochain& tau,
                                const PerturbedDifferential& d) {
    FormalityReport rep;
    rep.criterion_holds = true;
    for (int len = 3; len <= e.max_len(); ++len) {
        for (int j = 1; 2 * j <= len; ++j) {
            const int k = len - j;
            CochainFamily a;
            a.max_len = tau.max_len;
            a.by_len.resize(tau.by_len.size());
            a.by_len[j] = tau.by_len[j];
            CochainFamily b;
            b.max_len = tau.max_len;
            b.by_len.resize(tau.by_len.size());
            b.by_len[k] = tau.by_len[k];
            const Matrix conv = e.convolution_bracket(a, b, len);
            if (!(e.pi_flat() * conv).is_zero()) {
                rep.criterion_holds = false;
                rep.failing_pairs.emplace_back(j, k);
            }
        }
    }
    rep.d1_nonzero = d.by_length.count(2) > 0;
    rep.higher_d_zero = true;
    for (const auto& [support, m] : d.by_length)
        if (support > 2 && !m.is_zero())
            rep.higher_d_zero = false;
    // The criterion forces the higher differentials to vanish.
    if (rep.criterion_holds && !rep.higher_d_zero)
        throw std::logic_error("formality criterion holds but a higher differential survives");
    return rep;
}

TruncatedVsFullReport compare_truncated_vs_full(const Dgla& k, const ContractionBuild& c,
                                                int max_len) {
    const Dgla ka = boundary_bracket_part(k, c);
    HptEngine full(k, c.contraction, max_len);
    HptEngine trunc(ka, c.contraction, max_len);
    const auto [tau_full, d_full] = full.compute_tau_and_d();
    const auto [tau_trunc, d_trunc] = trunc.compute_tau_and_d();

    TruncatedVsFullReport rep;
    rep.tau_equal = true;
    for (int len = 1; len <= max_len; ++len)
        if (!(tau_full.by_len[len] == tau_trunc.by_len[len]))
            rep.tau_equal = false;
    rep.d_truncated_zero = d_trunc.by_length.empty();
    rep.full_d_zero = d_full.by_length.empty();
    return rep;
}

}  // namespace defq
