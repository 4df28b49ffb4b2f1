#pragma once

#include <random>

#include "defq/dgla.hpp"

namespace defq::fixtures {

/// Circle example: degrees -1 (v, u), -2 (w); d(u) = -w; [v,v] = [u,u] = 2w.
/// Chosen so the suspension carries d(v,u) = u, h(u) = (0,u) and the
/// quadratic map u^2 + v^2.
inline Dgla circle() {
    Dgla g;
    g.complex.space.basis[-1] = {"v", "u"};
    g.complex.space.basis[-2] = {"w"};
    g.complex.d = GradedMap::zero(g.complex.space, g.complex.space, -1);
    Matrix d1(1, 2);
    d1.at(0, 1) = Rational(-1);
    g.complex.d.set_block(-1, d1);
    g.set_bracket("v", "v", {{"w", Rational(2)}});
    g.set_bracket("u", "u", {{"w", Rational(2)}});
    return g;
}

/// One generator x in degree -1, y in degree -2, d = 0, [x,x] = y.
inline Dgla obstruction() {
    Dgla g;
    g.complex.space.basis[-1] = {"x"};
    g.complex.space.basis[-2] = {"y"};
    g.complex.d = GradedMap::zero(g.complex.space, g.complex.space, -1);
    g.set_bracket("x", "x", {{"y", Rational(1)}});
    return g;
}

/// Two-term abelian algebra with nontrivial cokernel.
inline Dgla abelian() {
    Dgla g;
    g.complex.space.basis[-1] = {"x1", "x2"};
    g.complex.space.basis[-2] = {"y"};
    g.complex.d = GradedMap::zero(g.complex.space, g.complex.space, -1);
    return g;
}

/// Nilpotent three-generator algebra in degree 0: [x, y] = z.
inline Dgla heisenberg() {
    Dgla g;
    g.complex.space.basis[0] = {"x", "y", "z"};
    g.complex.d = GradedMap::zero(g.complex.space, g.complex.space, -1);
    g.set_bracket("x", "y", {{"z", Rational(1)}});
    return g;
}

/// Degrees 0..-3: e; a, f; p; m with d(e) = f, [e,a] = f, [a,a] = 2p.
inline Dgla fourterm() {
    Dgla g;
    g.complex.space.basis[0] = {"e"};
    g.complex.space.basis[-1] = {"a", "f"};
    g.complex.space.basis[-2] = {"p"};
    g.complex.space.basis[-3] = {"m"};
    g.complex.d = GradedMap::zero(g.complex.space, g.complex.space, -1);
    Matrix d0(2, 1);
    d0.at(1, 0) = Rational(1);
    g.complex.d.set_block(0, d0);
    g.set_bracket("a", "e", {{"f", Rational(-1)}});  // [e,a] = f
    g.set_bracket("a", "a", {{"p", Rational(2)}});
    return g;
}

/// Two-term algebra with d(x2) = y1 and both q-components nonzero:
/// [x1,x1] = y1 + y2, [x1,x2] = y2, [x2,x2] = y1.
inline Dgla mixed() {
    Dgla g;
    g.complex.space.basis[-1] = {"x1", "x2"};
    g.complex.space.basis[-2] = {"y1", "y2"};
    g.complex.d = GradedMap::zero(g.complex.space, g.complex.space, -1);
    Matrix d1(2, 2);
    d1.at(0, 1) = Rational(1);
    g.complex.d.set_block(-1, d1);
    g.set_bracket("x1", "x1", {{"y1", Rational(1)}, {"y2", Rational(1)}});
    g.set_bracket("x1", "x2", {{"y2", Rational(1)}});
    g.set_bracket("x2", "x2", {{"y1", Rational(1)}});
    return g;
}

/// Random two-term algebra: any symmetric bracket and any differential
/// satisfy the axioms in degrees -1, -2. The differential is built with a
/// prescribed rank so the homology does not collapse generically.
inline Dgla random_two_term(std::mt19937_64& rng, int max_dim = 4) {
    std::uniform_int_distribution<int> dim_dist(1, max_dim);
    const int n1 = dim_dist(rng);
    const int n2 = dim_dist(rng);
    std::uniform_int_distribution<int> rank_dist(0, std::min(n1, n2));
    const int r = rank_dist(rng);
    std::uniform_int_distribution<long> num(-2, 2);
    std::uniform_int_distribution<long> den(1, 2);

    Dgla g;
    std::vector<Label> xs, ys;
    for (int i = 0; i < n1; ++i)
        xs.push_back("x" + std::to_string(i));
    for (int i = 0; i < n2; ++i)
        ys.push_back("y" + std::to_string(i));
    g.complex.space.basis[-1] = xs;
    g.complex.space.basis[-2] = ys;
    g.complex.d = GradedMap::zero(g.complex.space, g.complex.space, -1);

    Matrix a(n2, r), b(r, n1);
    for (int i = 0; i < n2; ++i)
        for (int j = 0; j < r; ++j)
            a.at(i, j) = Rational(num(rng));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n1; ++j)
            b.at(i, j) = Rational(num(rng));
    const Matrix d1 = a * b;
    if (!d1.is_zero())
        g.complex.d.set_block(-1, d1);

    for (int i = 0; i < n1; ++i) {
        for (int j = i; j < n1; ++j) {
            std::vector<std::pair<Label, Rational>> entry;
            for (int t = 0; t < n2; ++t) {
                const Rational c(num(rng), den(rng));
                if (!c.is_zero())
                    entry.emplace_back(ys[t], c);
            }
            if (!entry.empty())
                g.set_bracket(xs[i], xs[j], std::move(entry));
        }
    }
    return g;
}

}  // namespace defq::fixtures
