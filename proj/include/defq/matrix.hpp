#pragma once

#include <optional>
#include <vector>

#include "defq/rational.hpp"

namespace defq {

using Vec = std::vector<Rational>;

/// Dense matrix over the rationals, row-major.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<Rational> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    static Matrix identity(int n);
    static Matrix zero(int r, int c) { return Matrix(r, c); }
    static Matrix from_columns(int rows, const std::vector<Vec>& columns);

    Rational& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Rational& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    bool is_zero() const;
    Vec column(int j) const;
    Matrix transposed() const;

    Vec apply(const Vec& x) const;

    friend bool operator==(const Matrix& x, const Matrix& y);
    friend Matrix operator+(const Matrix& x, const Matrix& y);
    friend Matrix operator-(const Matrix& x, const Matrix& y);
    Matrix operator-() const;
    Matrix scaled(const Rational& c) const;
};

Matrix mul_serial(const Matrix& x, const Matrix& y);
Matrix mul_parallel(const Matrix& x, const Matrix& y);
Matrix operator*(const Matrix& x, const Matrix& y);

/// hcat(a, b): columns of a followed by columns of b.
Matrix hcat(const Matrix& x, const Matrix& y);

struct Rref {
    Matrix reduced;
    std::vector<int> pivots;  // strictly increasing column indices
    Matrix transform;         // transform * input = reduced
};

/// Gauss-Jordan with the first nonzero entry in column order as pivot.
Rref rref(const Matrix& m);

/// Columns span ker(m); count = cols - rank. Free variables in increasing
/// column order, each set to 1 in its own generator.
Matrix kernel_basis(const Matrix& m);

/// Original columns of m at the rref pivot positions; basis of the column
/// space.
Matrix image_basis(const Matrix& m);

int rank(const Matrix& m);

/// Particular solution of m x = b with free variables set to 0, or nullopt
/// when b is not in the image.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

namespace vec {
Vec zero(int n);
Vec add(const Vec& x, const Vec& y);
Vec sub(const Vec& x, const Vec& y);
Vec scaled(const Vec& x, const Rational& c);
bool is_zero(const Vec& x);
}  // namespace vec

}  // namespace defq
