#include "defq/graded.hpp"

#include <stdexcept>

namespace defq {

namespace {
const std::vector<Label> kNoLabels;
}

int GradedSpace::dim(int degree) const {
    auto it = basis.find(degree);
    return it == basis.end() ? 0 : static_cast<int>(it->second.size());
}

int GradedSpace::total_dim() const {
    int n = 0;
    for (const auto& [deg, labels] : basis)
        n += static_cast<int>(labels.size());
    return n;
}

std::vector<int> GradedSpace::degrees() const {
    std::vector<int> ds;
    for (const auto& [deg, labels] : basis)
        if (!labels.empty())
            ds.push_back(deg);
    return ds;
}

const std::vector<Label>& GradedSpace::labels(int degree) const {
    auto it = basis.find(degree);
    return it == basis.end() ? kNoLabels : it->second;
}

int GradedSpace::index_of(int degree, const Label& l) const {
    const auto& ls = labels(degree);
    for (std::size_t i = 0; i < ls.size(); ++i)
        if (ls[i] == l)
            return static_cast<int>(i);
    return -1;
}

GradedMap GradedMap::zero(const GradedSpace& src, const GradedSpace& tgt, int degree) {
    return GradedMap{src, tgt, degree, {}};
}

GradedMap GradedMap::identity(const GradedSpace& s) {
    GradedMap f{s, s, 0, {}};
    for (int j : s.degrees())
        f.blocks[j] = Matrix::identity(s.dim(j));
    return f;
}

Matrix GradedMap::block(int j) const {
    auto it = blocks.find(j);
    if (it != blocks.end())
        return it->second;
    return Matrix::zero(target.dim(j + degree), source.dim(j));
}

void GradedMap::set_block(int j, Matrix m) {
    if (m.rows != target.dim(j + degree) || m.cols != source.dim(j))
        throw std::invalid_argument("GradedMap::set_block: block shape mismatch");
    if (m.is_zero())
        blocks.erase(j);
    else
        blocks[j] = std::move(m);
}

Vec GradedMap::apply(int j, const Vec& x) const {
    return block(j).apply(x);
}

bool GradedMap::is_zero() const {
    for (const auto& [j, m] : blocks)
        if (!m.is_zero())
            return false;
    return true;
}

GradedMap GradedMap::scaled(const Rational& c) const {
    GradedMap f = *this;
    for (auto& [j, m] : f.blocks)
        m = m.scaled(c);
    return f;
}

bool GradedMap::operator==(const GradedMap& o) const {
    if (source != o.source || target != o.target || degree != o.degree)
        return false;
    for (int j : source.degrees())
        if (!(block(j) == o.block(j)))
            return false;
    return true;
}

GradedMap compose(const GradedMap& f, const GradedMap& g) {
    if (g.target != f.source)
        throw std::invalid_argument("compose: target of g is not source of f");
    GradedMap r{g.source, f.target, f.degree + g.degree, {}};
    for (int j : g.source.degrees()) {
        Matrix m = f.block(j + g.degree) * g.block(j);
        if (!m.is_zero())
            r.blocks[j] = std::move(m);
    }
    return r;
}

GradedMap add(const GradedMap& f, const GradedMap& g) {
    if (f.source != g.source || f.target != g.target || f.degree != g.degree)
        throw std::invalid_argument("add: incompatible graded maps");
    GradedMap r = f;
    for (int j : f.source.degrees())
        r.set_block(j, f.block(j) + g.block(j));
    return r;
}

GradedMap sub(const GradedMap& f, const GradedMap& g) {
    return add(f, g.scaled(Rational(-1)));
}

void ChainComplex::check() const {
    if (d.degree != -1)
        throw std::invalid_argument("ChainComplex: differential degree must be -1");
    if (d.source != space || d.target != space)
        throw std::invalid_argument("ChainComplex: differential endpoints mismatch");
    const GradedMap dd = compose(d, d);
    if (!dd.is_zero())
        throw std::invalid_argument("ChainComplex: d after d is nonzero");
}

GradedSpace suspend_space(const GradedSpace& s) {
    GradedSpace r;
    for (const auto& [j, labels] : s.basis) {
        if (labels.empty())
            continue;
        std::vector<Label> up;
        up.reserve(labels.size());
        for (const auto& l : labels)
            up.push_back("s·" + l);
        r.basis[j + 1] = std::move(up);
    }
    return r;
}

ChainComplex suspend(const ChainComplex& c) {
    ChainComplex r;
    r.space = suspend_space(c.space);
    r.d = GradedMap::zero(r.space, r.space, -1);
    for (const auto& [j, m] : c.d.blocks)
        r.d.blocks[j + 1] = -m;
    return r;
}

HomologyData homology(const ChainComplex& c) {
    HomologyData h;
    for (int j : c.space.degrees()) {
        const Matrix cyc = kernel_basis(c.d.block(j));
        const Matrix bnd = image_basis(c.d.block(j + 1));
        h.cycles[j] = cyc;
        h.boundaries[j] = bnd;
        // Complete the boundaries to a basis of the cycles; the extra pivot
        // columns are the chosen representatives.
        const Matrix both = hcat(bnd, cyc);
        const Rref r = rref(both);
        std::vector<Vec> reps;
        for (int p : r.pivots)
            if (p >= bnd.cols)
                reps.push_back(both.column(p));
        h.representatives[j] = Matrix::from_columns(c.space.dim(j), reps);
        if (!reps.empty()) {
            std::vector<Label> labels;
            for (std::size_t i = 0; i < reps.size(); ++i)
                labels.push_back("h" + std::to_string(j) + "_" + std::to_string(i));
            h.h_space.basis[j] = std::move(labels);
        }
    }
    return h;
}

long euler_characteristic(const GradedSpace& s) {
    long chi = 0;
    for (const auto& [j, labels] : s.basis)
        chi += (j % 2 == 0 ? 1 : -1) * static_cast<long>(labels.size());
    return chi;
}

std::map<Label, std::pair<int, int>> label_table(const GradedSpace& s) {
    std::map<Label, std::pair<int, int>> t;
    for (const auto& [j, labels] : s.basis)
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (!t.emplace(labels[i], std::make_pair(j, static_cast<int>(i))).second)
                throw std::invalid_argument("duplicate basis label '" + labels[i] + "'");
    return t;
}

}  // namespace defq
