#pragma once

#include <map>
#include <string>
#include <vector>

#include "defq/matrix.hpp"

namespace defq {

using Label = std::string;

/// Finitely supported Z-graded vector space with named basis vectors.
struct GradedSpace {
    std::map<int, std::vector<Label>> basis;

    int dim(int degree) const;
    int total_dim() const;
    std::vector<int> degrees() const;  // ascending, nonzero dims only
    const std::vector<Label>& labels(int degree) const;
    /// Index of label within its degree, -1 if absent.
    int index_of(int degree, const Label& l) const;
    bool operator==(const GradedSpace&) const = default;
};

/// Degree-homogeneous linear map; missing blocks are zero.
struct GradedMap {
    GradedSpace source;
    GradedSpace target;
    int degree = 0;
    std::map<int, Matrix> blocks;  // source degree j -> Matrix dim(target, j+degree) x dim(source, j)

    static GradedMap zero(const GradedSpace& src, const GradedSpace& tgt, int degree);
    static GradedMap identity(const GradedSpace& s);

    /// Zero-filled when absent.
    Matrix block(int j) const;
    void set_block(int j, Matrix m);

    Vec apply(int j, const Vec& x) const;
    bool is_zero() const;
    GradedMap scaled(const Rational& c) const;
    bool operator==(const GradedMap& o) const;
};

GradedMap compose(const GradedMap& f, const GradedMap& g);  // f after g
GradedMap add(const GradedMap& f, const GradedMap& g);
GradedMap sub(const GradedMap& f, const GradedMap& g);

struct ChainComplex {
    GradedSpace space;
    GradedMap d;  // degree -1, d(d(x)) = 0

    /// Throws when d is not a degree -1 square-zero endomap of space.
    void check() const;
};

/// Degree j of the output is degree j-1 of the input, labels prefixed "s.";
/// the differential flips sign (forced by d s + s d = 0).
GradedSpace suspend_space(const GradedSpace& s);
ChainComplex suspend(const ChainComplex& c);

struct HomologyData {
    GradedSpace h_space;                      // labels "h{deg}_{i}"
    std::map<int, Matrix> cycles;             // columns: kernel basis of d_j
    std::map<int, Matrix> boundaries;         // columns: basis of im d_{j+1}
    std::map<int, Matrix> representatives;    // columns: cycle representatives of the H-basis
};

HomologyData homology(const ChainComplex& c);

/// Sum over degrees of (-1)^j dim, exact.
long euler_characteristic(const GradedSpace& s);

/// label -> (degree, index). Throws when a label repeats across degrees.
std::map<Label, std::pair<int, int>> label_table(const GradedSpace& s);

}  // namespace defq
