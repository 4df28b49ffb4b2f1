#pragma once

#include <compare>
#include <optional>

#include "defq/dgla.hpp"
#include "defq/graded.hpp"

namespace defq {

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ordered generator list of a symmetric coalgebra, with the address of each
/// generator in the underlying (desuspended) graded space.
struct GenBasis {
    std::vector<Label> labels;
    std::vector<int> degrees;                    // internal degree
    std::vector<std::pair<int, int>> origin;     // (degree, index) downstairs

    /// Generators s x for the basis x of `base`, internal degree shifted up
    /// by one, ordered by (degree descending, label ascending).
    static GenBasis from_suspension(const GradedSpace& base);

    int size() const { return static_cast<int>(labels.size()); }
    bool odd(int i) const { return ((degrees[i] % 2) + 2) % 2 == 1; }
    /// Generator index with the given origin, -1 if absent.
    int from_origin(int degree, int index) const;
};

/// Divided-power basis element: multiset of generators, odd ones never
/// repeated, parts sorted by generator index.
struct SymWord {
    std::vector<std::pair<int, int>> parts;  // (generator index, multiplicity >= 1)

    int length() const;
    int degree(const GenBasis& g) const;
    int multiplicity(int gen) const;
    auto operator<=>(const SymWord&) const = default;
    std::string str(const GenBasis& g) const;  // e.g. "g2(b)*g1(c)", "1" for the empty word
};

/// S^c_{<= max_len}[U] on the divided-power basis. Word length 0 is the
/// coaugmentation line, word length 1 the generators.
struct WordBasis {
    GenBasis gens;
    int max_len = 0;
    std::vector<std::vector<SymWord>> words;
    std::vector<std::map<SymWord, int>> index;

    static WordBasis build(const GenBasis& g, int max_len);
    int dim(int len) const;
    const SymWord& word(int len, int i) const;
    /// Position within its word length, -1 when absent.
    int index_of(const SymWord& w) const;
};

/// One component of the divided-power diagonal. Coefficients in this basis
/// are always +-1; the sign is the Koszul sign of the unshuffle.
struct SplitTerm {
    SymWord left;
    SymWord right;
    int sign;
};

/// The (j, k)-component of the diagonal of e; j + k must be the word length.
std::vector<SplitTerm> diagonal_split(const GenBasis& g, const SymWord& e, int j, int k);

/// Every ordered two-sided split; empty sides included when allow_empty.
std::vector<SplitTerm> all_splits(const GenBasis& g, const SymWord& e, bool allow_empty);

struct MergeTerm {
    SymWord word;
    Rational coeff;  // divided-power multiplicities times the Koszul sign
};

/// Product e_w * g, empty when g is odd and already present.
std::optional<MergeTerm> merge_back(const GenBasis& g, const SymWord& w, int gen);
/// Product g * e_w.
std::optional<MergeTerm> merge_front(const GenBasis& g, int gen, const SymWord& w);

/// Sparse element of the symmetric coalgebra.
using CoalgVec = std::map<SymWord, Rational>;

/// Corestriction of a coderivation: per supported word length, a matrix
/// S^c_len -> generators (rows indexed by generators).
struct Corestriction {
    int map_degree = 0;
    std::map<int, Matrix> by_length;
};

/// Lifted coderivation applied to one basis element.
CoalgVec apply_coderivation(const WordBasis& wb, const Corestriction& f, const SymWord& e);

/// Full matrices of the lifted coderivation on word length len; one block
/// per target word length.
std::map<int, Matrix> lift_coderivation(const WordBasis& wb, const Corestriction& f, int len);

/// Corestriction of a degree-0 coalgebra morphism: per word length, a matrix
/// into the target generators. Word length 0 must be zero (coaugmentation is
/// preserved implicitly).
struct MorphismCor {
    std::map<int, Matrix> by_length;
};

class MorphismLift {
public:
    MorphismLift(const WordBasis& src, const WordBasis& tgt, MorphismCor cor);

    /// Image of a source basis element, memoized.
    const CoalgVec& image(const SymWord& e);

    /// Matrix block S^c_len(src) -> S^c_r(tgt).
    Matrix block(int len, int r);

private:
    const WordBasis& src_;
    const WordBasis& tgt_;
    MorphismCor cor_;
    std::map<SymWord, CoalgVec> memo_;
};

/// Corestriction of the classifying-coalgebra differential of a
/// differential graded Lie algebra on the suspension generators: word
/// length 1 carries -s d s^{-1}, word length 2 carries
/// 1/2 s [s^{-1} -, s^{-1} -] summed over the (1,1)-splits with Koszul
/// signs. A zero differential gives the quadratic part only.
Corestriction cce_corestriction(const Dgla& lie, const WordBasis& wb);

}  // namespace defq
