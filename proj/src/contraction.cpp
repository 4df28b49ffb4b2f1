#include "defq/contraction.hpp"

#include <stdexcept>

namespace defq {

ContractionBuild build_contraction(const ChainComplex& c) {
    c.check();
    const HomologyData hom = homology(c);

    ContractionBuild out;
    Contraction& k = out.contraction;
    k.big = c;
    k.small.space = hom.h_space;
    k.small.d = GradedMap::zero(hom.h_space, hom.h_space, -1);
    k.nabla = GradedMap::zero(hom.h_space, c.space, 0);
    k.pi = GradedMap::zero(c.space, hom.h_space, 0);
    k.h = GradedMap::zero(c.space, c.space, +1);

    for (int j : c.space.degrees()) {
        const int n = c.space.dim(j);
        const Matrix bnd = hom.boundaries.at(j);
        const Matrix reps = hom.representatives.at(j);
        // Complement of ker(d_j): unit vectors at the pivot columns of d_j.
        const Rref rd = rref(c.d.block(j));
        std::vector<Vec> acols;
        for (int p : rd.pivots) {
            Vec e = vec::zero(n);
            e[p] = Rational(1);
            acols.push_back(e);
        }
        const Matrix aimg = Matrix::from_columns(n, acols);
        out.splitting.boundaries[j] = bnd;
        out.splitting.harmonic[j] = reps;
        out.splitting.h_image[j] = aimg;

        // Change of basis: columns (boundaries | harmonic | h-image) span the
        // degree, so coordinates in that frame give the three projections.
        const Matrix frame = hcat(hcat(bnd, reps), aimg);
        if (frame.cols != n)
            throw std::logic_error("build_contraction: splitting does not span");
        const Rref fr = rref(frame);
        if (static_cast<int>(fr.pivots.size()) != n)
            throw std::logic_error("build_contraction: splitting is degenerate");
        const Matrix coords = fr.transform;  // frame coordinates of unit vectors

        if (reps.cols > 0)
            k.nabla.set_block(j, reps);

        // pi: harmonic coordinates.
        Matrix piblk(reps.cols, n);
        for (int col = 0; col < n; ++col)
            for (int i = 0; i < reps.cols; ++i)
                piblk.at(i, col) = coords.at(bnd.cols + i, col);
        k.pi.set_block(j, piblk);
    }

    // h is assembled per degree: h vanishes on harmonic and h-image parts and
    // inverts d on the boundary part.
    for (int j : c.space.degrees()) {
        const int n = c.space.dim(j);
        const Matrix bnd = out.splitting.boundaries.at(j);
        const Matrix reps = out.splitting.harmonic.at(j);
        const Matrix aimg = out.splitting.h_image.at(j);
        const Matrix frame = hcat(hcat(bnd, reps), aimg);
        const Matrix coords = rref(frame).transform;
        if (bnd.cols == 0)
            continue;
        // Preimages: solve d_{j+1} x = b with x constrained to the h-image
        // summand of degree j+1.
        const Matrix aup = out.splitting.h_image.count(j + 1)
                               ? out.splitting.h_image.at(j + 1)
                               : Matrix::zero(c.space.dim(j + 1), 0);
        const Matrix d_aup = c.d.block(j + 1) * aup;
        Matrix pre(c.space.dim(j + 1), bnd.cols);
        for (int b = 0; b < bnd.cols; ++b) {
            const auto x = solve(d_aup, bnd.column(b));
            if (!x)
                throw std::logic_error("build_contraction: boundary without preimage");
            const Vec lifted = aup.apply(*x);
            for (int i = 0; i < pre.rows; ++i)
                pre.at(i, b) = lifted[i];
        }
        // h_j = pre . (boundary coordinates).
        Matrix bcoords(bnd.cols, n);
        for (int col = 0; col < n; ++col)
            for (int i = 0; i < bnd.cols; ++i)
                bcoords.at(i, col) = coords.at(i, col);
        k.h.set_block(j, pre * bcoords);
    }
    return out;
}

namespace {

void check_zero(ValidationReport& rep, const GradedMap& m, const std::string& name) {
    for (int j : m.source.degrees()) {
        const Matrix blk = m.block(j);
        if (!blk.is_zero())
            rep.fail(name, "degree " + std::to_string(j));
    }
}

}  // namespace

ValidationReport validate_contraction(const Contraction& k) {
    ValidationReport rep;
    if (k.big.d.degree != -1 || !compose(k.big.d, k.big.d).is_zero())
        rep.fail("d_big square zero", "-");
    if (!k.small.d.is_zero())
        rep.fail("small differential zero", "-");
    if (k.nabla.degree != 0 || k.pi.degree != 0 || k.h.degree != 1)
        rep.fail("map degrees (0, 0, +1)", "-");

    check_zero(rep, sub(compose(k.pi, k.nabla), GradedMap::identity(k.small.space)),
               "pi nabla = id");
    // nabla pi - id + d h + h d = 0
    GradedMap defect = sub(compose(k.nabla, k.pi), GradedMap::identity(k.big.space));
    defect = add(defect, add(compose(k.big.d, k.h), compose(k.h, k.big.d)));
    check_zero(rep, defect, "nabla pi = id - (d h + h d)");
    check_zero(rep, compose(k.h, k.nabla), "h nabla = 0");
    check_zero(rep, compose(k.pi, k.h), "pi h = 0");
    check_zero(rep, compose(k.h, k.h), "h h = 0");
    check_zero(rep, compose(k.big.d, k.nabla), "nabla is a chain map");
    check_zero(rep, compose(k.pi, k.big.d), "pi is a chain map");
    return rep;
}

Contraction suspend_contraction(const Contraction& k) {
    Contraction s;
    s.big = suspend(k.big);
    s.small = suspend(k.small);
    s.nabla = GradedMap::zero(s.small.space, s.big.space, 0);
    for (const auto& [j, m] : k.nabla.blocks)
        s.nabla.blocks[j + 1] = m;
    s.pi = GradedMap::zero(s.big.space, s.small.space, 0);
    for (const auto& [j, m] : k.pi.blocks)
        s.pi.blocks[j + 1] = m;
    s.h = GradedMap::zero(s.big.space, s.big.space, +1);
    for (const auto& [j, m] : k.h.blocks)
        s.h.blocks[j + 1] = -m;
    return s;
}

}  // namespace defq
