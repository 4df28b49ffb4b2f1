#include "defq/dgla.hpp"

#include <sstream>

namespace defq {

namespace {

int parity(int degree) {
    return ((degree % 2) + 2) % 2;
}

Rational koszul(int deg_x, int deg_y) {
    return (parity(deg_x) && parity(deg_y)) ? Rational(-1) : Rational(1);
}

std::string triple_str(const Label& x, const Label& y, const Label& z) {
    return "(" + x + ", " + y + ", " + z + ")";
}

}  // namespace

void Dgla::set_bracket(const Label& x, const Label& y,
                       std::vector<std::pair<Label, Rational>> value) {
    degree_of(x);
    degree_of(y);
    for (const auto& [l, c] : value)
        degree_of(l);
    if (x <= y) {
        bracket[{x, y}] = std::move(value);
        return;
    }
    // Store the canonical order and absorb the antisymmetry sign.
    const Rational s = -koszul(degree_of(x), degree_of(y));
    for (auto& [l, c] : value)
        c *= s;
    bracket[{y, x}] = std::move(value);
}

int Dgla::degree_of(const Label& l) const {
    for (const auto& [j, labels] : complex.space.basis)
        for (const auto& lab : labels)
            if (lab == l)
                return j;
    throw InvalidInput("unknown basis label '" + l + "'");
}

Vec Dgla::bracket_basis(int deg_x, int ix, int deg_y, int iy) const {
    const int deg_out = deg_x + deg_y;
    Vec out = vec::zero(complex.space.dim(deg_out));
    const Label& lx = complex.space.labels(deg_x)[ix];
    const Label& ly = complex.space.labels(deg_y)[iy];
    Rational sign(1);
    const Label* a = &lx;
    const Label* b = &ly;
    if (lx > ly) {
        std::swap(a, b);
        sign = -koszul(deg_x, deg_y);
    }
    auto it = bracket.find({*a, *b});
    if (it == bracket.end())
        return out;
    const auto table = label_table(complex.space);
    for (const auto& [l, c] : it->second) {
        const auto& [dl, il] = table.at(l);
        if (dl != deg_out)
            continue;  // degree violations are reported by validate
        out[il] += sign * c;
    }
    return out;
}

Vec Dgla::bracket_vec(int deg_x, const Vec& x, int deg_y, const Vec& y) const {
    Vec out = vec::zero(complex.space.dim(deg_x + deg_y));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero())
            continue;
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (y[j].is_zero())
                continue;
            const Vec b = bracket_basis(deg_x, static_cast<int>(i), deg_y, static_cast<int>(j));
            for (std::size_t t = 0; t < out.size(); ++t)
                out[t] += x[i] * y[j] * b[t];
        }
    }
    return out;
}

ValidationReport validate(const Dgla& g) {
    ValidationReport rep;
    const GradedSpace& sp = g.complex.space;

    std::map<Label, std::pair<int, int>> table;
    try {
        table = label_table(sp);
    } catch (const std::exception& e) {
        rep.fail("unique labels", "-", e.what());
        return rep;
    }

    for (int j : sp.degrees())
        if (j > 0)
            rep.fail("non-positive grading", "degree " + std::to_string(j));

    if (g.complex.d.degree != -1)
        rep.fail("differential degree -1", "-");
    else if (!compose(g.complex.d, g.complex.d).is_zero())
        rep.fail("d d = 0", "-");

    // Degree additivity of stored entries.
    for (const auto& [key, value] : g.bracket) {
        const auto ix = table.find(key.first);
        const auto iy = table.find(key.second);
        if (ix == table.end() || iy == table.end()) {
            rep.fail("bracket labels resolve", "[" + key.first + ", " + key.second + "]");
            continue;
        }
        for (const auto& [l, c] : value) {
            const auto il = table.find(l);
            if (il == table.end()) {
                rep.fail("bracket labels resolve", l);
                continue;
            }
            if (!c.is_zero() && il->second.first != ix->second.first + iy->second.first)
                rep.fail("bracket degree-additive",
                         "[" + key.first + ", " + key.second + "] -> " + l);
        }
    }
    if (!rep.ok())
        return rep;

    struct Gen {
        int deg;
        int idx;
        Label label;
    };
    std::vector<Gen> gens;
    for (int j : sp.degrees())
        for (int i = 0; i < sp.dim(j); ++i)
            gens.push_back({j, i, sp.labels(j)[i]});

    // Graded antisymmetry, including [x, x] = 0 for even x.
    for (const auto& x : gens) {
        for (const auto& y : gens) {
            const Vec xy = g.bracket_basis(x.deg, x.idx, y.deg, y.idx);
            const Vec yx = g.bracket_basis(y.deg, y.idx, x.deg, x.idx);
            const Vec expect = vec::scaled(yx, -koszul(x.deg, y.deg));
            if (!(xy == expect))
                rep.fail("graded antisymmetry", "[" + x.label + ", " + y.label + "]");
        }
    }

    // Graded Leibniz: d[x,y] = [dx,y] + (-1)^{|x|} [x,dy].
    for (const auto& x : gens) {
        for (const auto& y : gens) {
            const Vec bxy = g.bracket_basis(x.deg, x.idx, y.deg, y.idx);
            const Vec lhs = g.complex.d.apply(x.deg + y.deg, bxy);
            Vec ex = vec::zero(sp.dim(x.deg));
            ex[x.idx] = Rational(1);
            Vec ey = vec::zero(sp.dim(y.deg));
            ey[y.idx] = Rational(1);
            const Vec dx = g.complex.d.apply(x.deg, ex);
            const Vec dy = g.complex.d.apply(y.deg, ey);
            Vec rhs = g.bracket_vec(x.deg - 1, dx, y.deg, ey);
            const Vec term2 = g.bracket_vec(x.deg, ex, y.deg - 1, dy);
            rhs = parity(x.deg) ? vec::sub(rhs, term2) : vec::add(rhs, term2);
            if (!(lhs == rhs))
                rep.fail("graded Leibniz", "(" + x.label + ", " + y.label + ")");
        }
    }

    // Graded Jacobi: [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]].
    for (const auto& x : gens) {
        for (const auto& y : gens) {
            for (const auto& z : gens) {
                Vec ex = vec::zero(sp.dim(x.deg));
                ex[x.idx] = Rational(1);
                Vec ey = vec::zero(sp.dim(y.deg));
                ey[y.idx] = Rational(1);
                const Vec yz = g.bracket_basis(y.deg, y.idx, z.deg, z.idx);
                const Vec lhs = g.bracket_vec(x.deg, ex, y.deg + z.deg, yz);
                const Vec xy = g.bracket_basis(x.deg, x.idx, y.deg, y.idx);
                Vec ez = vec::zero(sp.dim(z.deg));
                ez[z.idx] = Rational(1);
                Vec rhs = g.bracket_vec(x.deg + y.deg, xy, z.deg, ez);
                const Vec xz = g.bracket_basis(x.deg, x.idx, z.deg, z.idx);
                Vec term2 = g.bracket_vec(y.deg, ey, x.deg + z.deg, xz);
                term2 = vec::scaled(term2, koszul(x.deg, y.deg));
                rhs = vec::add(rhs, term2);
                if (!(lhs == rhs))
                    rep.fail("graded Jacobi", triple_str(x.label, y.label, z.label));
            }
        }
    }
    return rep;
}

namespace {

/// Coordinates of the unit vectors of g_deg in the frame
/// (boundaries | harmonic | h_image) of the splitting.
Matrix frame_coords(const ContractionBuild& c, int deg, int* n_bnd, int* n_harm) {
    const Matrix bnd = c.splitting.boundaries.at(deg);
    const Matrix harm = c.splitting.harmonic.at(deg);
    const Matrix aimg = c.splitting.h_image.at(deg);
    if (n_bnd)
        *n_bnd = bnd.cols;
    if (n_harm)
        *n_harm = harm.cols;
    return rref(hcat(hcat(bnd, harm), aimg)).transform;
}

struct QuotientBasis {
    // Lift of each quotient basis vector of a given degree into g.
    std::map<int, Matrix> lifts;
    std::map<int, std::vector<Label>> labels;
    // Projection g_deg -> quotient coordinates (only for the cut degree).
    std::map<int, Matrix> proj;
};

Dgla assemble_from_basis(const Dgla& g, const QuotientBasis& qb, int min_degree) {
    Dgla out;
    for (const auto& [j, labels] : qb.labels)
        if (!labels.empty())
            out.complex.space.basis[j] = labels;
    out.complex.d = GradedMap::zero(out.complex.space, out.complex.space, -1);

    auto project = [&](int deg, const Vec& v) -> Vec {
        // Express an ambient vector of g_deg in quotient coordinates.
        if (deg < min_degree)
            return vec::zero(0);
        auto it = qb.proj.find(deg);
        if (it != qb.proj.end())
            return it->second.apply(v);
        return v;  // identity on untouched degrees
    };

    for (const auto& [j, lift] : qb.lifts) {
        if (out.complex.space.dim(j) == 0)
            continue;
        // Differential.
        if (j - 1 >= min_degree && out.complex.space.dim(j - 1) > 0) {
            Matrix blk(out.complex.space.dim(j - 1), lift.cols);
            for (int b = 0; b < lift.cols; ++b) {
                const Vec img = project(j - 1, g.complex.d.apply(j, lift.column(b)));
                for (int i = 0; i < blk.rows; ++i)
                    blk.at(i, b) = img[i];
            }
            out.complex.d.set_block(j, blk);
        }
    }

    // Brackets on quotient basis pairs.
    for (const auto& [jx, liftx] : qb.lifts) {
        for (const auto& [jy, lifty] : qb.lifts) {
            const int jt = jx + jy;
            if (jt < min_degree || out.complex.space.dim(jt) == 0)
                continue;
            for (int bx = 0; bx < liftx.cols; ++bx) {
                for (int by = 0; by < lifty.cols; ++by) {
                    const Label& lx = qb.labels.at(jx)[bx];
                    const Label& ly = qb.labels.at(jy)[by];
                    if (lx > ly)
                        continue;  // one entry per unordered pair
                    const Vec val = project(
                        jt, g.bracket_vec(jx, liftx.column(bx), jy, lifty.column(by)));
                    std::vector<std::pair<Label, Rational>> entry;
                    for (std::size_t i = 0; i < val.size(); ++i)
                        if (!val[i].is_zero())
                            entry.emplace_back(out.complex.space.labels(jt)[i], val[i]);
                    if (!entry.empty())
                        out.set_bracket(lx, ly, std::move(entry));
                }
            }
        }
    }
    return out;
}

}  // namespace

Dgla postnikov_stage(const Dgla& g, int k, const ContractionBuild& c) {
    if (k > 0)
        throw InvalidInput("postnikov_stage: k must be non-positive");
    const GradedSpace& sp = g.complex.space;
    for (int j : sp.degrees())
        if (j > 0)
            throw InvalidInput("postnikov_stage: algebra must be non-positive");

    // Nothing to cut: already concentrated in degrees >= k with h(d g_k) = 0.
    bool untouched = true;
    for (int j : sp.degrees())
        if (j < k)
            untouched = false;
    if (untouched && (sp.dim(k) == 0 || c.splitting.h_image.at(k).cols == 0))
        return g;

    QuotientBasis qb;
    for (int j : sp.degrees()) {
        if (j < k || j > 0)
            continue;
        if (j > k) {
            qb.lifts[j] = Matrix::identity(sp.dim(j));
            qb.labels[j] = sp.labels(j);
        } else {
            int n_bnd = 0, n_harm = 0;
            const Matrix coords = frame_coords(c, k, &n_bnd, &n_harm);
            const Matrix bnd = c.splitting.boundaries.at(k);
            const Matrix harm = c.splitting.harmonic.at(k);
            qb.lifts[k] = hcat(bnd, harm);
            std::vector<Label> labels;
            for (int i = 0; i < n_bnd + n_harm; ++i)
                labels.push_back("q" + std::to_string(k) + "_" + std::to_string(i));
            qb.labels[k] = labels;
            Matrix proj(n_bnd + n_harm, sp.dim(k));
            for (int col = 0; col < sp.dim(k); ++col)
                for (int i = 0; i < n_bnd + n_harm; ++i)
                    proj.at(i, col) = coords.at(i, col);
            qb.proj[k] = proj;
        }
    }

    // The cut is only an ideal if bracketing with degree 0 preserves the
    // h-image summand of degree k.
    if (sp.dim(0) > 0 && sp.dim(k) > 0 && qb.proj.count(k)) {
        const Matrix aimg = c.splitting.h_image.at(k);
        for (int e = 0; e < sp.dim(0); ++e) {
            Vec e0 = vec::zero(sp.dim(0));
            e0[e] = Rational(1);
            for (int a = 0; a < aimg.cols; ++a) {
                const Vec br = g.bracket_vec(0, e0, k, aimg.column(a));
                if (!vec::is_zero(qb.proj.at(k).apply(br)))
                    throw InvalidInput(
                        "postnikov_stage: quotient bracket not well defined at degree " +
                        std::to_string(k) + " (contraction incompatible with the ideal)");
            }
        }
    }

    return assemble_from_basis(g, qb, k);
}

Dgla reduce(const Dgla& g, const ContractionBuild& c) {
    const GradedSpace& sp = g.complex.space;
    for (int j : sp.degrees())
        if (j > 0)
            throw InvalidInput("reduce: algebra must be non-positive");

    const bool no_zero = sp.dim(0) == 0;
    const bool no_boundaries =
        sp.dim(-1) == 0 || !c.splitting.boundaries.count(-1) ||
        c.splitting.boundaries.at(-1).cols == 0;
    if (no_zero)
        return g;

    QuotientBasis qb;
    for (int j : sp.degrees()) {
        if (j >= 0)
            continue;
        if (j <= -2) {
            qb.lifts[j] = Matrix::identity(sp.dim(j));
            qb.labels[j] = sp.labels(j);
        }
    }
    if (sp.dim(-1) > 0) {
        if (no_boundaries) {
            qb.lifts[-1] = Matrix::identity(sp.dim(-1));
            qb.labels[-1] = sp.labels(-1);
        } else {
            const Matrix harm = c.splitting.harmonic.at(-1);
            const Matrix aimg = c.splitting.h_image.at(-1);
            const Matrix lift = hcat(harm, aimg);
            if (lift.cols > 0) {
                qb.lifts[-1] = lift;
                std::vector<Label> labels;
                for (int i = 0; i < lift.cols; ++i)
                    labels.push_back("r-1_" + std::to_string(i));
                qb.labels[-1] = labels;
            }
        }
    }
    int min_degree = 0;
    for (int j : sp.degrees())
        min_degree = std::min(min_degree, j);
    return assemble_from_basis(g, qb, std::min(min_degree, -1));
}

Dgla truncate_minus1_minus2(const Dgla& g, const ContractionBuild& c) {
    const Dgla reduced = reduce(g, c);
    ContractionBuild cr = (reduced.complex.space == g.complex.space)
                              ? c
                              : build_contraction(reduced.complex);
    return postnikov_stage(reduced, -2, cr);
}

QuadraticData quadratic_data(const Dgla& k, const ContractionBuild& c) {
    const GradedSpace& sp = k.complex.space;
    for (int j : sp.degrees())
        if (j != -1 && j != -2)
            throw InvalidInput("quadratic_data: algebra must live in degrees -1 and -2");

    const Contraction cv = suspend_contraction(c.contraction);
    QuadraticData q;
    q.v_space = cv.big.space;
    q.small_space = cv.small.space;

    const int n0 = sp.dim(-1);
    const Rational half(1, 2);
    for (int i = 0; i < n0; ++i) {
        for (int j = i; j < n0; ++j) {
            // B(b_i, b_j) = 1/2 s [x_i, x_j]; suspension keeps coordinates.
            Vec val = vec::scaled(k.bracket_basis(-1, i, -1, j), half);
            // dh projects onto the boundary part of V_{-1}.
            const Vec qb = cv.big.d.apply(0, cv.h.apply(-1, val));
            const Vec qv = cv.pi.apply(-1, val);
            q.qB[{i, j}] = qb;
            q.qv[{i, j}] = qv;
        }
    }
    return q;
}

Vec QuadraticData::assembled(const GradedMap& nabla_v, int i, int j) const {
    auto key = std::make_pair(std::min(i, j), std::max(i, j));
    return vec::add(qB.at(key), nabla_v.apply(-1, qv.at(key)));
}

Dgla boundary_bracket_part(const Dgla& k, const ContractionBuild& c) {
    const GradedSpace& sp = k.complex.space;
    for (int j : sp.degrees())
        if (j != -1 && j != -2)
            throw InvalidInput("boundary_bracket_part: algebra must live in degrees -1 and -2");
    Dgla out = k;
    out.bracket.clear();
    const auto table = label_table(sp);
    for (const auto& [key, value] : k.bracket) {
        Vec v = vec::zero(sp.dim(-2));
        for (const auto& [l, coeff] : value)
            if (table.at(l).first == -2)
                v[table.at(l).second] += coeff;
        // Remove the harmonic component: keep (id - nabla pi) of the value.
        const Vec harm = c.contraction.nabla.apply(-2, c.contraction.pi.apply(-2, v));
        const Vec bpart = vec::sub(v, harm);
        std::vector<std::pair<Label, Rational>> entry;
        for (std::size_t i = 0; i < bpart.size(); ++i)
            if (!bpart[i].is_zero())
                entry.emplace_back(sp.labels(-2)[i], bpart[i]);
        if (!entry.empty())
            out.set_bracket(key.first, key.second, std::move(entry));
    }
    return out;
}

}  // namespace defq
