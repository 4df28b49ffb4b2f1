#include "defq/series.hpp"

#include <stdexcept>

namespace defq {

int multi_total(const MultiIndex& m) {
    int t = 0;
    for (int x : m)
        t += x;
    return t;
}

std::string multi_str(const MultiIndex& m, const std::vector<Label>& vars) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += vars[i];
        if (m[i] > 1)
            s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

void VectorSeries::add_term(const MultiIndex& m, const Vec& v) {
    if (static_cast<int>(m.size()) != static_cast<int>(variables.size()))
        throw std::invalid_argument("VectorSeries: exponent arity mismatch");
    if (multi_total(m) > order)
        return;
    auto it = coeff.find(m);
    if (it == coeff.end()) {
        if (!vec::is_zero(v))
            coeff[m] = v;
        return;
    }
    it->second = vec::add(it->second, v);
    if (vec::is_zero(it->second))
        coeff.erase(it);
}

Vec VectorSeries::at(const MultiIndex& m) const {
    auto it = coeff.find(m);
    if (it != coeff.end())
        return it->second;
    return vec::zero(static_cast<int>(coeff_basis.size()));
}

bool VectorSeries::is_zero() const {
    return coeff.empty();
}

VectorSeries series_add(const VectorSeries& a, const VectorSeries& b) {
    VectorSeries r = a;
    for (const auto& [m, v] : b.coeff)
        r.add_term(m, v);
    return r;
}

VectorSeries series_scaled(const VectorSeries& a, const Rational& c) {
    VectorSeries r = a;
    if (c.is_zero()) {
        r.coeff.clear();
        return r;
    }
    for (auto& [m, v] : r.coeff)
        v = vec::scaled(v, c);
    return r;
}

VectorSeries series_linear(const VectorSeries& a, const Matrix& m,
                           std::vector<Label> new_basis) {
    if (m.cols != static_cast<int>(a.coeff_basis.size()))
        throw std::invalid_argument("series_linear: shape mismatch");
    VectorSeries r;
    r.variables = a.variables;
    r.coeff_basis = std::move(new_basis);
    r.order = a.order;
    for (const auto& [mi, v] : a.coeff)
        r.add_term(mi, m.apply(v));
    return r;
}

VectorSeries series_quadratic(const VectorSeries& s,
                              const std::map<std::pair<int, int>, Vec>& form,
                              std::vector<Label> target_basis) {
    VectorSeries r;
    r.variables = s.variables;
    r.coeff_basis = std::move(target_basis);
    r.order = s.order;
    const int tdim = static_cast<int>(r.coeff_basis.size());
    for (const auto& [m1, v1] : s.coeff) {
        for (const auto& [m2, v2] : s.coeff) {
            MultiIndex m(m1.size());
            for (std::size_t i = 0; i < m.size(); ++i)
                m[i] = m1[i] + m2[i];
            if (multi_total(m) > r.order)
                continue;
            Vec acc = vec::zero(tdim);
            for (std::size_t i = 0; i < v1.size(); ++i) {
                if (v1[i].is_zero())
                    continue;
                for (std::size_t j = 0; j < v2.size(); ++j) {
                    if (v2[j].is_zero())
                        continue;
                    const auto key = std::make_pair(
                        static_cast<int>(std::min(i, j)), static_cast<int>(std::max(i, j)));
                    auto it = form.find(key);
                    if (it == form.end())
                        continue;
                    acc = vec::add(acc, vec::scaled(it->second, v1[i] * v2[j]));
                }
            }
            r.add_term(m, acc);
        }
    }
    return r;
}

}  // namespace defq
