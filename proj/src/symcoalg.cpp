#include "defq/symcoalg.hpp"

#include <algorithm>

#include "defq/parallel.hpp"

namespace defq {

namespace {

int parity(int k) {
    return ((k % 2) + 2) % 2;
}

}  // namespace

GenBasis GenBasis::from_suspension(const GradedSpace& base) {
    struct Item {
        int deg;
        Label label;
        std::pair<int, int> origin;
    };
    std::vector<Item> items;
    for (const auto& [j, labels] : base.basis)
        for (std::size_t i = 0; i < labels.size(); ++i)
            items.push_back({j + 1, "s·" + labels[i], {j, static_cast<int>(i)}});
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.deg != b.deg)
            return a.deg > b.deg;
        return a.label < b.label;
    });
    GenBasis g;
    for (auto& it : items) {
        g.labels.push_back(std::move(it.label));
        g.degrees.push_back(it.deg);
        g.origin.push_back(it.origin);
    }
    return g;
}

int GenBasis::from_origin(int degree, int index) const {
    for (int i = 0; i < size(); ++i)
        if (origin[i] == std::make_pair(degree, index))
            return i;
    return -1;
}

int SymWord::length() const {
    int n = 0;
    for (const auto& [g, m] : parts)
        n += m;
    return n;
}

int SymWord::degree(const GenBasis& g) const {
    int d = 0;
    for (const auto& [i, m] : parts)
        d += m * g.degrees[i];
    return d;
}

int SymWord::multiplicity(int gen) const {
    for (const auto& [g, m] : parts)
        if (g == gen)
            return m;
    return 0;
}

std::string SymWord::str(const GenBasis& g) const {
    if (parts.empty())
        return "1";
    std::string s;
    for (const auto& [i, m] : parts) {
        if (!s.empty())
            s += "*";
        s += "g" + std::to_string(m) + "(" + g.labels[i] + ")";
    }
    return s;
}

namespace {

void enumerate_words(const GenBasis& g, int pos, int remaining,
                     std::vector<std::pair<int, int>>& cur, std::vector<SymWord>& out) {
    if (remaining == 0) {
        out.push_back(SymWord{cur});
        return;
    }
    if (pos == g.size())
        return;
    const int maxm = g.odd(pos) ? std::min(1, remaining) : remaining;
    for (int m = maxm; m >= 1; --m) {
        cur.emplace_back(pos, m);
        enumerate_words(g, pos + 1, remaining - m, cur, out);
        cur.pop_back();
    }
    enumerate_words(g, pos + 1, remaining, cur, out);
}

}  // namespace

WordBasis WordBasis::build(const GenBasis& g, int max_len) {
    WordBasis wb;
    wb.gens = g;
    wb.max_len = max_len;
    wb.words.resize(max_len + 1);
    wb.index.resize(max_len + 1);
    for (int len = 0; len <= max_len; ++len) {
        std::vector<std::pair<int, int>> cur;
        enumerate_words(g, 0, len, cur, wb.words[len]);
        for (std::size_t i = 0; i < wb.words[len].size(); ++i)
            wb.index[len].emplace(wb.words[len][i], static_cast<int>(i));
    }
    return wb;
}

int WordBasis::dim(int len) const {
    if (len < 0 || len > max_len)
        return 0;
    return static_cast<int>(words[len].size());
}

const SymWord& WordBasis::word(int len, int i) const {
    return words[len][i];
}

int WordBasis::index_of(const SymWord& w) const {
    const int len = w.length();
    if (len < 0 || len > max_len)
        throw TruncationError("word length " + std::to_string(len) + " beyond truncation " +
                              std::to_string(max_len));
    auto it = index[len].find(w);
    return it == index[len].end() ? -1 : it->second;
}

namespace {

/// Koszul sign of unshuffling e into (left, right), left first: one -1 for
/// every pair of odd generators x in right, y in left with x before y in
/// canonical order.
int unshuffle_sign(const GenBasis& g, const SymWord& e, const SymWord& left) {
    int count = 0;
    int right_odds_seen = 0;
    for (const auto& [gen, mult] : e.parts) {
        if (!g.odd(gen))
            continue;
        if (left.multiplicity(gen) > 0)
            count += right_odds_seen;
        else
            ++right_odds_seen;
    }
    return parity(count) ? -1 : 1;
}

void split_rec(const GenBasis& g, const SymWord& e, const std::vector<int>& suffix, int i,
               int need, bool allow_empty, SymWord& left, SymWord& right,
               std::vector<SplitTerm>& out) {
    const int nparts = static_cast<int>(e.parts.size());
    if (i == nparts) {
        if (need > 0)
            return;
        if (allow_empty || (!left.parts.empty() && !right.parts.empty()))
            out.push_back({left, right, unshuffle_sign(g, e, left)});
        return;
    }
    const auto [gen, mult] = e.parts[i];
    const int lo = (need < 0) ? 0 : std::max(0, need - suffix[i + 1]);
    const int hi = (need < 0) ? mult : std::min(mult, need);
    for (int c = lo; c <= hi; ++c) {
        if (c > 0)
            left.parts.emplace_back(gen, c);
        if (mult - c > 0)
            right.parts.emplace_back(gen, mult - c);
        split_rec(g, e, suffix, i + 1, need < 0 ? -1 : need - c, allow_empty, left, right,
                  out);
        if (c > 0)
            left.parts.pop_back();
        if (mult - c > 0)
            right.parts.pop_back();
    }
}

void enumerate_splits(const GenBasis& g, const SymWord& e, bool allow_empty,
                      int want_left_len, std::vector<SplitTerm>& out) {
    const int nparts = static_cast<int>(e.parts.size());
    std::vector<int> suffix(nparts + 1, 0);
    for (int i = nparts - 1; i >= 0; --i)
        suffix[i] = suffix[i + 1] + e.parts[i].second;
    if (want_left_len > suffix[0])
        return;
    SymWord left, right;
    split_rec(g, e, suffix, 0, want_left_len, allow_empty, left, right, out);
}

}  // namespace

std::vector<SplitTerm> diagonal_split(const GenBasis& g, const SymWord& e, int j, int k) {
    if (j < 0 || k < 0 || j + k != e.length())
        throw std::invalid_argument("diagonal_split: lengths must satisfy j + k = |e|");
    std::vector<SplitTerm> out;
    enumerate_splits(g, e, true, j, out);
    return out;
}

std::vector<SplitTerm> all_splits(const GenBasis& g, const SymWord& e, bool allow_empty) {
    std::vector<SplitTerm> out;
    enumerate_splits(g, e, allow_empty, -1, out);
    return out;
}

std::optional<MergeTerm> merge_back(const GenBasis& g, const SymWord& w, int gen) {
    MergeTerm t;
    t.coeff = Rational(1);
    if (g.odd(gen)) {
        if (w.multiplicity(gen) > 0)
            return std::nullopt;
        int odds_after = 0;
        for (const auto& [i, m] : w.parts)
            if (g.odd(i) && i > gen)
                odds_after += 1;
        if (parity(odds_after))
            t.coeff = -t.coeff;
    }
    bool placed = false;
    for (const auto& [i, m] : w.parts) {
        if (i == gen) {
            t.word.parts.emplace_back(i, m + 1);
            t.coeff *= Rational(m + 1);
            placed = true;
        } else {
            if (i > gen && !placed) {
                t.word.parts.emplace_back(gen, 1);
                placed = true;
            }
            t.word.parts.emplace_back(i, m);
        }
    }
    if (!placed)
        t.word.parts.emplace_back(gen, 1);
    return t;
}

std::optional<MergeTerm> merge_front(const GenBasis& g, int gen, const SymWord& w) {
    auto t = merge_back(g, w, gen);
    if (!t)
        return std::nullopt;
    if (g.odd(gen)) {
        // Moving gen in from the left passes the odd generators before its
        // slot instead of the ones after it.
        int odds_before = 0;
        for (const auto& [i, m] : w.parts)
            if (g.odd(i) && i < gen)
                odds_before += 1;
        int odds_after = 0;
        for (const auto& [i, m] : w.parts)
            if (g.odd(i) && i > gen)
                odds_after += 1;
        if (parity(odds_before + odds_after))
            t->coeff = -t->coeff;
    }
    return t;
}

CoalgVec apply_coderivation(const WordBasis& wb, const Corestriction& f, const SymWord& e) {
    CoalgVec out;
    const GenBasis& g = wb.gens;
    const int len = e.length();
    for (const auto& [support, mat] : f.by_length) {
        if (support > len)
            continue;
        for (const SplitTerm& s : diagonal_split(g, e, len - support, support)) {
            const int ridx = wb.index_of(s.right);
            if (ridx < 0)
                continue;
            Rational sign(s.sign);
            if (parity(f.map_degree) && parity(s.left.degree(g)))
                sign = -sign;
            for (int t = 0; t < g.size(); ++t) {
                const Rational& c = mat.at(t, ridx);
                if (c.is_zero())
                    continue;
                const auto merged = merge_back(g, s.left, t);
                if (!merged)
                    continue;
                Rational v = sign * c * merged->coeff;
                if (!v.is_zero())
                    out[merged->word] += v;
            }
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

std::map<int, Matrix> lift_coderivation(const WordBasis& wb, const Corestriction& f, int len) {
    const int n = wb.dim(len);
    std::vector<CoalgVec> images(n);
    par::for_n(static_cast<std::size_t>(n), [&](std::size_t i) {
        images[i] = apply_coderivation(wb, f, wb.word(len, static_cast<int>(i)));
    });
    std::map<int, Matrix> blocks;
    for (const auto& [support, mat] : f.by_length)
        if (support <= len && len - support + 1 <= wb.max_len)
            blocks.emplace(len - support + 1, Matrix::zero(wb.dim(len - support + 1), n));
    for (int i = 0; i < n; ++i) {
        for (const auto& [w, c] : images[i]) {
            const int wl = w.length();
            auto it = blocks.find(wl);
            if (it == blocks.end())
                it = blocks.emplace(wl, Matrix::zero(wb.dim(wl), n)).first;
            it->second.at(wb.index_of(w), i) = c;
        }
    }
    return blocks;
}

MorphismLift::MorphismLift(const WordBasis& src, const WordBasis& tgt, MorphismCor cor)
    : src_(src), tgt_(tgt), cor_(std::move(cor)) {}

const CoalgVec& MorphismLift::image(const SymWord& e) {
    auto found = memo_.find(e);
    if (found != memo_.end())
        return found->second;
    CoalgVec out;
    const int total = e.length();
    if (total == 0) {
        out[SymWord{}] = Rational(1);
        return memo_.emplace(e, std::move(out)).first->second;
    }
    const GenBasis& g = src_.gens;
    for (const SplitTerm& s : all_splits(g, e, true)) {
        if (s.left.parts.empty())
            continue;  // the block containing the marked occurrence is nonempty
        const int blen = s.left.length();
        auto mit = cor_.by_length.find(blen);
        if (mit == cor_.by_length.end())
            continue;
        const int bidx = src_.index_of(s.left);
        if (bidx < 0)
            continue;
        const Rational weight(blen, total);
        const CoalgVec& rest = image(s.right);
        for (int t = 0; t < tgt_.gens.size(); ++t) {
            const Rational& c = mit->second.at(t, bidx);
            if (c.is_zero())
                continue;
            for (const auto& [u, cu] : rest) {
                const auto merged = merge_front(tgt_.gens, t, u);
                if (!merged)
                    continue;
                const Rational v = weight * Rational(s.sign) * c * cu * merged->coeff;
                if (!v.is_zero())
                    out[merged->word] += v;
            }
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return memo_.emplace(e, std::move(out)).first->second;
}

Matrix MorphismLift::block(int len, int r) {
    Matrix m(tgt_.dim(r), src_.dim(len));
    for (int i = 0; i < src_.dim(len); ++i) {
        const CoalgVec& img = image(src_.word(len, i));
        for (const auto& [w, c] : img)
            if (w.length() == r)
                m.at(tgt_.index_of(w), i) = c;
    }
    return m;
}

Corestriction cce_corestriction(const Dgla& lie, const WordBasis& wb) {
    const GenBasis& g = wb.gens;
    Corestriction f;
    f.map_degree = -1;

    // Word length 1: the suspended differential -s d s^{-1}.
    Matrix w1(g.size(), g.size());
    bool any1 = false;
    for (int b = 0; b < g.size(); ++b) {
        const auto [deg, idx] = g.origin[b];
        Vec x = vec::zero(lie.complex.space.dim(deg));
        x[idx] = Rational(1);
        const Vec dx = lie.complex.d.apply(deg, x);
        for (std::size_t t = 0; t < dx.size(); ++t) {
            if (dx[t].is_zero())
                continue;
            const int gt = g.from_origin(deg - 1, static_cast<int>(t));
            if (gt < 0)
                throw std::logic_error("cce_corestriction: differential leaves the generators");
            w1.at(gt, b) = -dx[t];
            any1 = true;
        }
    }
    if (any1)
        f.by_length[1] = std::move(w1);

    // Word length 2: half the suspended bracket of the two desuspended legs,
    // summed over the (1,1)-splits with the convolution Koszul sign.
    if (wb.max_len >= 2) {
        Matrix w2(g.size(), wb.dim(2));
        bool any2 = false;
        for (int col = 0; col < wb.dim(2); ++col) {
            const SymWord& e = wb.word(2, col);
            for (const SplitTerm& s : diagonal_split(g, e, 1, 1)) {
                const int gl = s.left.parts[0].first;
                const int gr = s.right.parts[0].first;
                Rational sign(s.sign);
                if (parity(g.degrees[gl]))
                    sign = -sign;  // the right leg has odd map degree
                const auto [dl, il] = g.origin[gl];
                const auto [dr, ir] = g.origin[gr];
                const Vec br = lie.bracket_basis(dl, il, dr, ir);
                for (std::size_t t = 0; t < br.size(); ++t) {
                    if (br[t].is_zero())
                        continue;
                    const int gt = g.from_origin(dl + dr, static_cast<int>(t));
                    if (gt < 0)
                        throw std::logic_error("cce_corestriction: bracket leaves the generators");
                    const Rational v = Rational(1, 2) * sign * br[t];
                    if (!v.is_zero()) {
                        w2.at(gt, col) += v;
                        any2 = true;
                    }
                }
            }
        }
        if (any2)
            f.by_length[2] = std::move(w2);
    }
    return f;
}

}  // namespace defq
