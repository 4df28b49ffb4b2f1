#include "defq/matrix.hpp"

#include <stdexcept>

#include "defq/parallel.hpp"

namespace defq {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = Rational(1);
    return m;
}

Matrix Matrix::from_columns(int rows, const std::vector<Vec>& columns) {
    Matrix m(rows, static_cast<int>(columns.size()));
    for (int j = 0; j < m.cols; ++j) {
        if (static_cast<int>(columns[j].size()) != rows)
            throw std::invalid_argument("from_columns: column length mismatch");
        for (int i = 0; i < rows; ++i)
            m.at(i, j) = columns[j][i];
    }
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : a)
        if (!x.is_zero())
            return false;
    return true;
}

Vec Matrix::column(int j) const {
    Vec c(rows);
    for (int i = 0; i < rows; ++i)
        c[i] = at(i, j);
    return c;
}

Matrix Matrix::transposed() const {
    Matrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

Vec Matrix::apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != cols)
        throw std::invalid_argument("Matrix::apply: size mismatch");
    Vec y(rows);
    for (int i = 0; i < rows; ++i) {
        Rational s;
        for (int j = 0; j < cols; ++j)
            if (!at(i, j).is_zero() && !x[j].is_zero())
                s += at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
}

Matrix operator+(const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols)
        throw std::invalid_argument("Matrix +: shape mismatch");
    Matrix r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i)
        r.a[i] += y.a[i];
    return r;
}

Matrix operator-(const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols)
        throw std::invalid_argument("Matrix -: shape mismatch");
    Matrix r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i)
        r.a[i] -= y.a[i];
    return r;
}

Matrix Matrix::operator-() const {
    Matrix r = *this;
    for (auto& x : r.a)
        x = -x;
    return r;
}

Matrix Matrix::scaled(const Rational& c) const {
    Matrix r = *this;
    for (auto& x : r.a)
        x *= c;
    return r;
}

namespace {

void mul_row(const Matrix& x, const Matrix& y, Matrix& out, std::size_t i) {
    for (int k = 0; k < x.cols; ++k) {
        const Rational& xik = x.at(static_cast<int>(i), k);
        if (xik.is_zero())
            continue;
        for (int j = 0; j < y.cols; ++j) {
            const Rational& ykj = y.at(k, j);
            if (!ykj.is_zero())
                out.at(static_cast<int>(i), j) += xik * ykj;
        }
    }
}

}  // namespace

Matrix mul_serial(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows)
        throw std::invalid_argument("Matrix *: shape mismatch");
    Matrix out(x.rows, y.cols);
    for (std::size_t i = 0; i < static_cast<std::size_t>(x.rows); ++i)
        mul_row(x, y, out, i);
    return out;
}

Matrix mul_parallel(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows)
        throw std::invalid_argument("Matrix *: shape mismatch");
    Matrix out(x.rows, y.cols);
    par::for_n_parallel(static_cast<std::size_t>(x.rows),
                        [&](std::size_t i) { mul_row(x, y, out, i); });
    return out;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
    if (par::max_threads() > 1 && x.rows > 1)
        return mul_parallel(x, y);
    return mul_serial(x, y);
}

Matrix hcat(const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows)
        throw std::invalid_argument("hcat: row mismatch");
    Matrix r(x.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int j = 0; j < x.cols; ++j)
            r.at(i, j) = x.at(i, j);
        for (int j = 0; j < y.cols; ++j)
            r.at(i, x.cols + j) = y.at(i, j);
    }
    return r;
}

namespace {

Rref rref_impl(const Matrix& m, bool with_transform) {
    Rref r{m, {}, with_transform ? Matrix::identity(m.rows) : Matrix()};
    Matrix& red = r.reduced;
    Matrix& tr = r.transform;
    int lead = 0;
    for (int col = 0; col < m.cols && lead < m.rows; ++col) {
        int pivot = -1;
        for (int i = lead; i < m.rows; ++i) {
            if (!red.at(i, col).is_zero()) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0)
            continue;
        if (pivot != lead) {
            for (int j = 0; j < red.cols; ++j)
                std::swap(red.at(pivot, j), red.at(lead, j));
            for (int j = 0; j < tr.cols; ++j)
                std::swap(tr.at(pivot, j), tr.at(lead, j));
        }
        const Rational inv = red.at(lead, col).inverse();
        if (!inv.is_one()) {
            for (int j = 0; j < red.cols; ++j)
                if (!red.at(lead, j).is_zero())
                    red.at(lead, j) *= inv;
            for (int j = 0; j < tr.cols; ++j)
                if (!tr.at(lead, j).is_zero())
                    tr.at(lead, j) *= inv;
        }
        // Eliminate the column from every other row; rows are independent.
        par::for_n(static_cast<std::size_t>(m.rows), [&](std::size_t iu) {
            const int i = static_cast<int>(iu);
            if (i == lead || red.at(i, col).is_zero())
                return;
            const Rational f = red.at(i, col);
            for (int j = 0; j < red.cols; ++j)
                if (!red.at(lead, j).is_zero())
                    red.at(i, j) -= f * red.at(lead, j);
            for (int j = 0; j < tr.cols; ++j)
                if (!tr.at(lead, j).is_zero())
                    tr.at(i, j) -= f * tr.at(lead, j);
        });
        r.pivots.push_back(col);
        ++lead;
    }
    return r;
}

}  // namespace

Rref rref(const Matrix& m) {
    return rref_impl(m, true);
}

namespace {

// Forward echelon with the rref pivot rule; pivot rows normalized to 1.
std::vector<int> forward_echelon(Matrix& red) {
    std::vector<int> pivots;
    int lead = 0;
    for (int col = 0; col < red.cols && lead < red.rows; ++col) {
        int pivot = -1;
        for (int i = lead; i < red.rows; ++i)
            if (!red.at(i, col).is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            continue;
        if (pivot != lead)
            for (int j = col; j < red.cols; ++j)
                std::swap(red.at(pivot, j), red.at(lead, j));
        const Rational inv = red.at(lead, col).inverse();
        if (!inv.is_one())
            for (int j = col; j < red.cols; ++j)
                if (!red.at(lead, j).is_zero())
                    red.at(lead, j) *= inv;
        const int lead_now = lead;
        par::for_n(static_cast<std::size_t>(red.rows - lead - 1), [&](std::size_t t) {
            const int i = lead_now + 1 + static_cast<int>(t);
            if (red.at(i, col).is_zero())
                return;
            const Rational f = red.at(i, col);
            for (int j = col; j < red.cols; ++j)
                if (!red.at(lead_now, j).is_zero())
                    red.at(i, j) -= f * red.at(lead_now, j);
        });
        pivots.push_back(col);
        ++lead;
    }
    return pivots;
}

}  // namespace

Matrix kernel_basis(const Matrix& m) {
    // Forward echelon, then back-substitution; the result is the same basis
    // the reduced form would give.
    Matrix red = m;
    const std::vector<int> pivots = forward_echelon(red);

    std::vector<bool> is_pivot(m.cols, false);
    for (int p : pivots)
        is_pivot[p] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < m.cols; ++j)
        if (!is_pivot[j])
            free_cols.push_back(j);
    Matrix k(m.cols, static_cast<int>(free_cols.size()));
    const int npiv = static_cast<int>(pivots.size());
    par::for_n(free_cols.size(), [&](std::size_t fi) {
        const int f = free_cols[fi];
        k.at(f, static_cast<int>(fi)) = Rational(1);
        for (int p = npiv - 1; p >= 0; --p) {
            Rational acc = red.at(p, f);
            for (int q = p + 1; q < npiv; ++q) {
                const Rational& rq = red.at(p, pivots[q]);
                const Rational& vq = k.at(pivots[q], static_cast<int>(fi));
                if (!rq.is_zero() && !vq.is_zero())
                    acc += rq * vq;
            }
            k.at(pivots[p], static_cast<int>(fi)) = -acc;
        }
    });
    return k;
}

Matrix image_basis(const Matrix& m) {
    const Rref r = rref_impl(m, false);
    Matrix b(m.rows, static_cast<int>(r.pivots.size()));
    for (std::size_t pi = 0; pi < r.pivots.size(); ++pi)
        for (int i = 0; i < m.rows; ++i)
            b.at(i, static_cast<int>(pi)) = m.at(i, r.pivots[pi]);
    return b;
}

int rank(const Matrix& m) {
    Matrix red = m;
    return static_cast<int>(forward_echelon(red).size());
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    if (static_cast<int>(b.size()) != m.rows)
        throw std::invalid_argument("solve: size mismatch");
    const Rref r = rref(m);
    const Vec tb = r.transform.apply(b);
    for (int i = static_cast<int>(r.pivots.size()); i < m.rows; ++i)
        if (!tb[i].is_zero())
            return std::nullopt;
    Vec x(m.cols);
    for (std::size_t pi = 0; pi < r.pivots.size(); ++pi)
        x[r.pivots[pi]] = tb[pi];
    return x;
}

namespace vec {

Vec zero(int n) {
    return Vec(static_cast<std::size_t>(n));
}

Vec add(const Vec& x, const Vec& y) {
    Vec r = x;
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] += y[i];
    return r;
}

Vec sub(const Vec& x, const Vec& y) {
    Vec r = x;
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] -= y[i];
    return r;
}

Vec scaled(const Vec& x, const Rational& c) {
    Vec r = x;
    for (auto& v : r)
        v *= c;
    return r;
}

bool is_zero(const Vec& x) {
    for (const auto& v : x)
        if (!v.is_zero())
            return false;
    return true;
}

}  // namespace vec

}  // namespace defq
