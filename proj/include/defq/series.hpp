#pragma once

#include <map>
#include <string>
#include <vector>

#include "defq/graded.hpp"
#include "defq/matrix.hpp"

namespace defq {

using MultiIndex = std::vector<int>;

int multi_total(const MultiIndex& m);
std::string multi_str(const MultiIndex& m, const std::vector<Label>& vars);  // "z^2*w", "1"

/// Truncated multivariate power series with exact vector coefficients. A
/// coefficient at exponent j is the value of the represented linear map on
/// the divided-power element with those multiplicities, which is also the
/// monomial coefficient of z^j.
struct VectorSeries {
    std::vector<Label> variables;
    std::vector<Label> coeff_basis;
    int order = 0;
    std::map<MultiIndex, Vec> coeff;  // only nonzero entries, total degree <= order

    void add_term(const MultiIndex& m, const Vec& v);
    Vec at(const MultiIndex& m) const;
    bool is_zero() const;
    bool operator==(const VectorSeries&) const = default;
};

VectorSeries series_add(const VectorSeries& a, const VectorSeries& b);
VectorSeries series_scaled(const VectorSeries& a, const Rational& c);

/// Componentwise image under a linear map of the coefficient space.
VectorSeries series_linear(const VectorSeries& a, const Matrix& m,
                           std::vector<Label> new_basis);

/// B(s, s) for a symmetric bilinear form given on basis pairs i <= j of the
/// coefficient space of s; the result is truncated to s.order.
VectorSeries series_quadratic(const VectorSeries& s,
                              const std::map<std::pair<int, int>, Vec>& form,
                              std::vector<Label> target_basis);

}  // namespace defq
