#include "defq/kuranishi.hpp"

#include "defq/parallel.hpp"

#include <algorithm>

namespace defq {

KuranishiContext::KuranishiContext(const Dgla& k, const ContractionBuild& c, int order)
    : cb_(c), cv_(suspend_contraction(c.contraction)), q_(quadratic_data(k, c)),
      engine_(k, c.contraction, order), order_(order) {
    auto computed = engine_.compute_tau_and_d();
    tau_ = std::move(computed.first);
    d_ = std::move(computed.second);

    const GenBasis& g = engine_.gens();
    for (int i = 0; i < g.size(); ++i) {
        if (g.degrees[i] == 0) {
            v0_gens_.push_back(i);
            v0_labels_.push_back(g.labels[i]);
        } else if (g.degrees[i] == -1) {
            vm1_gens_.push_back(i);
            vm1_labels_.push_back(g.labels[i]);
        }
    }
    V0_labels_ = cv_.big.space.labels(0);
    Vm1_labels_ = cv_.big.space.labels(-1);

    even_words_.resize(order_ + 1);
    for (int len = 0; len <= order_; ++len) {
        for (int i = 0; i < engine_.words().dim(len); ++i) {
            const SymWord& w = engine_.words().word(len, i);
            bool even = true;
            for (const auto& [gen, mult] : w.parts)
                if (g.degrees[gen] != 0)
                    even = false;
            if (even)
                even_words_[len].push_back(i);
        }
    }
}

MultiIndex KuranishiContext::exponents(const SymWord& w) const {
    MultiIndex m(v0_gens_.size(), 0);
    for (const auto& [gen, mult] : w.parts) {
        bool placed = false;
        for (std::size_t i = 0; i < v0_gens_.size(); ++i)
            if (v0_gens_[i] == gen) {
                m[i] = mult;
                placed = true;
            }
        if (!placed)
            throw std::invalid_argument("exponents: word leaves S^c[v_0]");
    }
    return m;
}

namespace {

MultiIndex unit_exp(std::size_t n, std::size_t i) {
    MultiIndex m(n, 0);
    m[i] = 1;
    return m;
}

}  // namespace

KuranishiMaps kuranishi_map(const KuranishiContext& ctx) {
    const Contraction& cv = ctx.suspended();
    const QuadraticData& q = ctx.quadratic();
    const int n = static_cast<int>(ctx.V0_labels().size());

    KuranishiMaps maps;
    maps.J.variables = ctx.V0_labels();
    maps.J.coeff_basis = ctx.Vm1_labels();
    maps.J.order = 2;
    maps.F.variables = ctx.V0_labels();
    maps.F.coeff_basis = ctx.V0_labels();
    maps.F.order = 2;

    const Matrix d0 = cv.big.d.block(0);
    for (int i = 0; i < n; ++i) {
        maps.J.add_term(unit_exp(n, i), d0.column(i));
        Vec unit = vec::zero(n);
        unit[i] = Rational(1);
        maps.F.add_term(unit_exp(n, i), unit);
    }
    VectorSeries qpart;  // the quadratic map alone, both components assembled
    qpart.variables = ctx.V0_labels();
    qpart.coeff_basis = ctx.Vm1_labels();
    qpart.order = 2;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const Vec b = q.assembled(cv.nabla, i, j);
            MultiIndex m(n, 0);
            m[i] += 1;
            m[j] += 1;
            // Monomial coefficient: B(i,i) on the diagonal, 2 B(i,j) off it.
            qpart.add_term(m, i == j ? b : vec::scaled(b, Rational(2)));
        }
    }
    maps.J = series_add(maps.J, qpart);
    const VectorSeries hq = series_linear(qpart, cv.h.block(-1), ctx.V0_labels());
    maps.F = series_add(maps.F, hq);

    // hd F = hd + h q: the tangent-space projection statement, as polynomials.
    const Matrix hd0 = cv.h.block(-1) * cv.big.d.block(0);
    VectorSeries lhs = series_linear(maps.F, hd0, ctx.V0_labels());
    VectorSeries rhs = hq;
    for (int i = 0; i < n; ++i)
        rhs.add_term(unit_exp(n, i), hd0.column(i));
    maps.f_projection_identity = (lhs == rhs);
    return maps;
}

VectorSeries formal_inverse(const KuranishiContext& ctx) {
    VectorSeries inv;
    inv.variables = ctx.v0_labels();
    inv.coeff_basis = ctx.V0_labels();
    inv.order = ctx.order();
    const int n0 = static_cast<int>(ctx.V0_labels().size());
    const FlatIndex& flat = ctx.engine().flat();
    for (int len = 1; len <= ctx.order(); ++len) {
        for (int idx : ctx.even_words()[len]) {
            const SymWord& w = ctx.engine().words().word(len, idx);
            const Matrix& t = ctx.tau().by_len[len];
            // tau of an even word is homogeneous of degree -1; suspension
            // reads the same coordinates as V_0.
            Vec v = vec::zero(n0);
            bool nonzero = false;
            for (int p = 0; p < flat.total; ++p) {
                const Rational& c = t.at(p, idx);
                if (c.is_zero())
                    continue;
                const auto [deg, i] = flat.address[p];
                if (deg != -1)
                    throw std::logic_error("formal_inverse: inhomogeneous cochain value");
                v[i] = c;
                nonzero = true;
            }
            if (nonzero)
                inv.add_term(ctx.exponents(w), v);
        }
    }
    return inv;
}

std::vector<VectorSeries> obstruction_series(const KuranishiContext& ctx) {
    std::vector<VectorSeries> phis;
    for (std::size_t bi = 0; bi < ctx.vm1_gens().size(); ++bi) {
        VectorSeries phi;
        phi.variables = ctx.v0_labels();
        phi.coeff_basis = {ctx.vm1_labels()[bi]};
        phi.order = ctx.order();
        for (const auto& [support, mat] : ctx.perturbation().by_length) {
            for (int idx : ctx.even_words()[support]) {
                const Rational& c = mat.at(ctx.vm1_gens()[bi], idx);
                if (!c.is_zero())
                    phi.add_term(ctx.exponents(ctx.engine().words().word(support, idx)),
                                 Vec{c});
            }
        }
        phis.push_back(std::move(phi));
    }
    return phis;
}

KuranishiCoalgebra kuranishi_coalgebra(const KuranishiContext& ctx) {
    const WordBasis& wb = ctx.engine().words();
    const GenBasis& g = ctx.engine().gens();
    KuranishiCoalgebra ck;
    ck.dims.resize(ctx.order() + 1);
    ck.bases.resize(ctx.order() + 1);

    // Row indexing: (even word of length t, odd direction).
    std::vector<int> even_offset(ctx.order() + 2, 0);
    for (int t = 0; t <= ctx.order(); ++t)
        even_offset[t + 1] =
            even_offset[t] + static_cast<int>(ctx.even_words()[t].size()) *
                                 static_cast<int>(ctx.vm1_gens().size());
    for (int len = 0; len <= ctx.order(); ++len) {
        const auto& evens = ctx.even_words()[len];
        const int ncols = static_cast<int>(evens.size());
        Matrix m(even_offset[len], ncols);  // images live in lengths < len
        for (int col = 0; col < ncols; ++col) {
            const SymWord& e = wb.word(len, evens[col]);
            for (const auto& [w, c] : apply_coderivation(wb, ctx.perturbation(), e)) {
                // w has exactly one odd factor in v_{-1}.
                SymWord even_part;
                int odd_gen = -1;
                for (const auto& [gen, mult] : w.parts) {
                    if (g.degrees[gen] == 0)
                        even_part.parts.emplace_back(gen, mult);
                    else
                        odd_gen = gen;
                }
                if (odd_gen < 0)
                    throw std::logic_error("kuranishi_coalgebra: even image of an even word");
                const int t = even_part.length();
                const auto& evens_t = ctx.even_words()[t];
                int pos = -1;
                const int widx = wb.index_of(even_part);
                for (std::size_t i = 0; i < evens_t.size(); ++i)
                    if (evens_t[i] == widx)
                        pos = static_cast<int>(i);
                int odd_pos = -1;
                for (std::size_t i = 0; i < ctx.vm1_gens().size(); ++i)
                    if (ctx.vm1_gens()[i] == odd_gen)
                        odd_pos = static_cast<int>(i);
                const int row = even_offset[t] +
                                pos * static_cast<int>(ctx.vm1_gens().size()) + odd_pos;
                m.at(row, col) += c;
            }
        }
        ck.bases[len] = kernel_basis(m);
        ck.dims[len] = ck.bases[len].cols;
    }
    return ck;
}

InverseChecks check_inverse(const KuranishiContext& ctx, const KuranishiMaps& maps,
                            const VectorSeries& inverse) {
    InverseChecks out;
    const Contraction& cv = ctx.suspended();
    const int n = static_cast<int>(ctx.V0_labels().size());
    const std::size_t nv = ctx.v0_labels().size();

    // Linear part: the inclusion nabla of the tangent space.
    out.linear_part_is_inclusion = true;
    for (std::size_t i = 0; i < nv; ++i) {
        const auto [deg, idx] = ctx.engine().gens().origin[ctx.v0_gens()[i]];
        Vec unit = vec::zero(cv.small.space.dim(0));
        unit[idx] = Rational(1);
        const Vec expect = cv.nabla.apply(0, unit);
        if (!(inverse.at(unit_exp(nv, i)) == expect))
            out.linear_part_is_inclusion = false;
    }

    // q(iota) via the assembled bilinear form, then F(iota) = iota + h q(iota).
    std::map<std::pair<int, int>, Vec> form;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            form[{i, j}] = ctx.quadratic().assembled(cv.nabla, i, j);
    const VectorSeries q_of = series_quadratic(inverse, form, ctx.Vm1_labels());
    const VectorSeries f_of =
        series_add(inverse, series_linear(q_of, cv.h.block(-1), ctx.V0_labels()));

    // Tangent component is the identity series of the variables.
    VectorSeries tangent = series_linear(f_of, cv.pi.block(0),
                                         cv.small.space.labels(0));
    VectorSeries expect_tangent;
    expect_tangent.variables = ctx.v0_labels();
    expect_tangent.coeff_basis = cv.small.space.labels(0);
    expect_tangent.order = inverse.order;
    for (std::size_t i = 0; i < nv; ++i) {
        const auto [deg, idx] = ctx.engine().gens().origin[ctx.v0_gens()[i]];
        Vec unit = vec::zero(cv.small.space.dim(0));
        unit[idx] = Rational(1);
        expect_tangent.add_term(unit_exp(nv, i), unit);
    }
    out.composition_is_identity = (tangent == expect_tangent);

    // Membership in the model variety: the complement component vanishes,
    // i.e. g + h q_B(iota) = 0.
    const Matrix hd0 = cv.h.block(-1) * cv.big.d.block(0);
    const VectorSeries complement = series_linear(f_of, hd0, ctx.V0_labels());
    out.membership_identity = complement.is_zero();
    return out;
}

ValidationReport verify_theorem(const KuranishiContext& ctx, const KuranishiCoalgebra& ck) {
    ValidationReport rep;
    const WordBasis& small = ctx.engine().words();
    const GenBasis big_gens = GenBasis::from_suspension(ctx.algebra().complex.space);
    const WordBasis big = WordBasis::build(big_gens, ctx.order());
    const Corestriction dce = cce_corestriction(ctx.algebra(), big);
    const FlatIndex& flat = ctx.engine().flat();

    std::map<SymWord, CoalgVec> big_dce_memo;
    auto dce_apply = [&](const SymWord& w) -> const CoalgVec& {
        auto it = big_dce_memo.find(w);
        if (it == big_dce_memo.end())
            it = big_dce_memo.emplace(w, apply_coderivation(big, dce, w)).first;
        return it->second;
    };
    std::map<SymWord, CoalgVec> small_d_memo;
    auto small_d_apply = [&](const SymWord& w) -> const CoalgVec& {
        auto it = small_d_memo.find(w);
        if (it == small_d_memo.end())
            it = small_d_memo.emplace(w, apply_coderivation(small, ctx.perturbation(), w))
                     .first;
        return it->second;
    };

    // Adjoint morphism into the classifying coalgebra.
    MorphismCor adj;
    for (int len = 1; len <= ctx.order(); ++len) {
        Matrix m(big_gens.size(), small.dim(len));
        bool nonzero = false;
        for (int col = 0; col < small.dim(len); ++col)
            for (int p = 0; p < flat.total; ++p) {
                const Rational& c = ctx.tau().by_len[len].at(p, col);
                if (c.is_zero())
                    continue;
                const auto [deg, idx] = flat.address[p];
                m.at(big_gens.from_origin(deg, idx), col) = c;
                nonzero = true;
            }
        if (nonzero)
            adj.by_length[len] = std::move(m);
    }
    MorphismLift adjoint(small, big, adj);

    MorphismCor pi_cor;
    {
        Matrix m(small.gens.size(), big_gens.size());
        for (int b = 0; b < big_gens.size(); ++b) {
            const auto [deg, idx] = big_gens.origin[b];
            Vec unit = vec::zero(ctx.algebra().complex.space.dim(deg));
            unit[idx] = Rational(1);
            const Vec img = ctx.engine().contraction().pi.apply(deg, unit);
            for (std::size_t t = 0; t < img.size(); ++t)
                if (!img[t].is_zero())
                    m.at(small.gens.from_origin(deg, static_cast<int>(t)), b) = img[t];
        }
        pi_cor.by_length[1] = std::move(m);
    }
    MorphismLift sc_pi(big, small, pi_cor);

    // (a) S^c[pi] adjoint = id on the truncation.
    for (int len = 0; len <= ctx.order(); ++len)
        for (int i = 0; i < small.dim(len); ++i) {
            const SymWord& e = small.word(len, i);
            CoalgVec roundtrip;
            for (const auto& [w, c] : adjoint.image(e))
                for (const auto& [u, cu] : sc_pi.image(w)) {
                    roundtrip[u] += c * cu;
                    if (roundtrip[u].is_zero())
                        roundtrip.erase(u);
                }
            CoalgVec expect;
            expect[e] = Rational(1);
            if (roundtrip != expect)
                rep.fail("S^c[pi] adjoint = id", "word length " + std::to_string(len));
        }

    // Flat bookkeeping for the even part of the big coalgebra. Word lengths
    // run downwards so the assembled matrix is block triangular: the
    // length-preserving part sits on the diagonal blocks, the perturbation
    // one block below.
    std::vector<std::vector<int>> big_even(ctx.order() + 1);
    for (int len = 0; len <= ctx.order(); ++len)
        for (int i = 0; i < big.dim(len); ++i) {
            bool even = true;
            for (const auto& [gen, mult] : big.word(len, i).parts)
                if (big_gens.degrees[gen] != 0)
                    even = false;
            if (even)
                big_even[len].push_back(i);
        }
    std::vector<std::pair<int, int>> even_flat;  // (length, position), length descending
    for (int len = ctx.order(); len >= 0; --len)
        for (std::size_t i = 0; i < big_even[len].size(); ++i)
            even_flat.emplace_back(len, static_cast<int>(i));
    const int total_even = static_cast<int>(even_flat.size());

    // One-odd rows of the perturbed differential on the even part.
    std::vector<CoalgVec> images(total_even);
    par::for_n(even_flat.size(), [&](std::size_t t) {
        const auto [len, i] = even_flat[t];
        images[t] = apply_coderivation(big, dce, big.word(len, big_even[len][i]));
    });
    std::vector<SymWord> row_words;
    for (const auto& img : images)
        for (const auto& [w, c] : img)
            row_words.push_back(w);
    std::sort(row_words.begin(), row_words.end(), [](const SymWord& a, const SymWord& b) {
        if (a.length() != b.length())
            return a.length() > b.length();
        return a < b;
    });
    row_words.erase(std::unique(row_words.begin(), row_words.end()), row_words.end());
    std::map<SymWord, int> row_of;
    for (std::size_t r = 0; r < row_words.size(); ++r)
        row_of.emplace(row_words[r], static_cast<int>(r));
    Matrix dmat(static_cast<int>(row_words.size()), total_even);
    for (int col = 0; col < total_even; ++col)
        for (const auto& [w, c] : images[col])
            dmat.at(row_of.at(w), col) = c;
    const Matrix kv = kernel_basis(dmat);

    // (b) dimensions: the big kernel matches the full truncated kernel on
    // the small side, which also contains mixed-word-length elements, so it
    // is compared against the flat kernel rather than the graded pieces.
    {
        std::vector<int> small_even_offset(ctx.order() + 2, 0);
        for (int len = 0; len <= ctx.order(); ++len)
            small_even_offset[len + 1] =
                small_even_offset[len] + static_cast<int>(ctx.even_words()[len].size());
        const int total_small = small_even_offset[ctx.order() + 1];
        std::vector<CoalgVec> simg(total_small);
        for (int len = 0; len <= ctx.order(); ++len)
            for (std::size_t i = 0; i < ctx.even_words()[len].size(); ++i)
                simg[small_even_offset[len] + static_cast<int>(i)] =
                    small_d_apply(small.word(len, ctx.even_words()[len][i]));
        std::map<SymWord, int> srow;
        int snrows = 0;
        for (const auto& img : simg)
            for (const auto& [w, c] : img)
                if (!srow.count(w))
                    srow.emplace(w, snrows++);
        Matrix sm(snrows, total_small);
        for (int col = 0; col < total_small; ++col)
            for (const auto& [w, c] : simg[col])
                sm.at(srow.at(w), col) = c;
        const int flat_kernel_dim = total_small - rank(sm);
        if (flat_kernel_dim != kv.cols)
            rep.fail("kernel dimensions match", "truncated kernels " +
                                                    std::to_string(flat_kernel_dim) + " vs " +
                                                    std::to_string(kv.cols));
        int total_ck = 0;
        for (int len = 0; len <= ctx.order(); ++len)
            total_ck += ck.dims[len];
        if (total_ck > flat_kernel_dim)
            rep.fail("graded kernels embed", "-");
    }

    std::vector<CoalgVec> ck_images;  // adjoint images of the C_k basis
    for (int len = 0; len <= ctx.order(); ++len) {
        for (int b = 0; b < ck.bases[len].cols; ++b) {
            CoalgVec img;
            for (int r = 0; r < ck.bases[len].rows; ++r) {
                const Rational& c = ck.bases[len].at(r, b);
                if (c.is_zero())
                    continue;
                const SymWord& e =
                    small.word(len, ctx.even_words()[len][static_cast<std::size_t>(r)]);
                for (const auto& [w, cw] : adjoint.image(e)) {
                    img[w] += c * cw;
                    if (img[w].is_zero())
                        img.erase(w);
                }
            }
            // Apply the perturbed differential: must vanish exactly.
            CoalgVec der;
            for (const auto& [w, c] : img)
                for (const auto& [u, cu] : dce_apply(w)) {
                    der[u] += c * cu;
                    if (der[u].is_zero())
                        der.erase(u);
                }
            if (!der.empty())
                rep.fail("adjoint lands in the perturbed kernel",
                         "word length " + std::to_string(len));
            ck_images.push_back(std::move(img));
        }
    }

    // (c) mutual inverse on the truncation: projecting a kernel element and
    // lifting it back along the adjoint restores it.
    for (int col = 0; col < kv.cols; ++col) {
        CoalgVec kappa;
        for (int r = 0; r < total_even; ++r) {
            const Rational& c = kv.at(r, col);
            if (c.is_zero())
                continue;
            const auto [len, i] = even_flat[r];
            kappa[big.word(len, big_even[len][i])] = c;
        }
        CoalgVec projected;
        for (const auto& [w, c] : kappa)
            for (const auto& [u, cu] : sc_pi.image(w)) {
                projected[u] += c * cu;
                if (projected[u].is_zero())
                    projected.erase(u);
            }
        // The projected element lies in the truncated kernel coalgebra:
        // the perturbed differential kills it exactly. (It is in general a
        // mixed-word-length element, not a sum of the graded kernels.)
        CoalgVec dproj;
        for (const auto& [u, cu] : projected)
            for (const auto& [w, cw] : small_d_apply(u)) {
                dproj[w] += cu * cw;
                if (dproj[w].is_zero())
                    dproj.erase(w);
            }
        if (!dproj.empty())
            rep.fail("projection lands in the kernel coalgebra",
                     "column " + std::to_string(col));
        CoalgVec back;
        for (const auto& [u, cu] : projected)
            for (const auto& [w, cw] : adjoint.image(u)) {
                back[w] += cu * cw;
                if (back[w].is_zero())
                    back.erase(w);
            }
        if (back != kappa)
            rep.fail("mutually inverse on the kernel", "column " + std::to_string(col));
    }
    return rep;
}

}  // namespace defq
