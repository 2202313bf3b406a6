#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linfty/scalar.hpp"

namespace linfty {

struct BasisElement {
    std::string symbol;
    int degree = 0;
    bool operator==(const BasisElement&) const = default;
};

/// Finite graded vector space given by an ordered homogeneous basis. The stored
/// order is the canonical order used when normalizing symmetric words.
class GradedSpace {
public:
    GradedSpace() = default;
    GradedSpace(std::string name, std::vector<BasisElement> basis);

    const std::string& name() const { return name_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    int degree(int i) const { return basis_[static_cast<std::size_t>(i)].degree; }
    const std::string& symbol(int i) const { return basis_[static_cast<std::size_t>(i)].symbol; }
    const std::vector<BasisElement>& basis() const { return basis_; }
    std::optional<int> index_of(std::string_view symbol) const;

    bool operator==(const GradedSpace& other) const { return name_ == other.name_ && basis_ == other.basis_; }

private:
    std::string name_;
    std::vector<BasisElement> basis_;
};

/// Degrees shifted by k: shifted(V, 1) is the suspension, shifted(V, -1) the
/// desuspension.
GradedSpace shifted(const GradedSpace& space, int k, std::string name);

/// A monomial of basis indices; empty words never denote elements.
using Word = std::vector<int>;

int word_degree(const GradedSpace& space, const Word& w);
std::vector<int> word_degrees(const GradedSpace& space, const Word& w);
std::string word_text(const GradedSpace& space, const Word& w);

/// Permutation stored by 0-based images. Acting on a word, output slot j holds
/// input slot images[j]: sigma(v_1 ... v_n) = eps * v_sigma(1) ... v_sigma(n).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);
    static Permutation identity(int n);
    static Permutation from_one_based(const std::vector<int>& images);

    int size() const { return static_cast<int>(images_.size()); }
    int operator[](int j) const { return images_[static_cast<std::size_t>(j)]; }
    const std::vector<int>& images() const { return images_; }

    /// (*this after tau): first apply tau, then *this; images[j] = tau[this[j]].
    Permutation after(const Permutation& tau) const;
    Permutation inverse() const;

    template <class T>
    std::vector<T> apply(const std::vector<T>& slots) const {
        std::vector<T> out;
        out.reserve(images_.size());
        for (int i : images_) out.push_back(slots[static_cast<std::size_t>(i)]);
        return out;
    }

    bool operator==(const Permutation&) const = default;
    bool operator<(const Permutation& o) const { return images_ < o.images_; }

private:
    std::vector<int> images_;
};

/// Parity of the Koszul sign: 0 for +1, 1 for -1.
int koszul_parity(const Permutation& sigma, const std::vector<int>& degrees);

/// eps(sigma) with sigma(v_1...v_n) = eps v_sigma(1)...v_sigma(n). Throws
/// InputError on a length mismatch.
Scalar koszul_sign(const Permutation& sigma, const std::vector<int>& degrees);

/// Sh(i_1, ..., i_k), ordered lexicographically by the block-membership mask of
/// input positions. The result is cached and shared.
const std::vector<Permutation>& unshuffles(const std::vector<int>& blocks);

/// Elements of Sh(i_1, ..., i_k) whose block maxima increase.
const std::vector<Permutation>& increasing_unshuffles(const std::vector<int>& blocks);

/// All compositions (ordered, positive parts) of n.
const std::vector<std::vector<int>>& compositions(int n);

struct SortedWord {
    Word word;
    int parity = 0;  ///< Koszul parity of the sorting permutation
    Scalar sign() const { return sign_of(parity); }
};

/// Stable sort into basis order together with the sign of the sorting
/// permutation on the word's degree sequence.
SortedWord canonical_sort(const GradedSpace& space, const Word& w);

bool is_sorted_word(const Word& w);

/// True when a sorted word repeats an odd-degree letter (zero in S(V)).
bool has_repeated_odd(const GradedSpace& space, const Word& sorted);

/// All words of the given length over dim letters, lexicographic.
std::vector<Word> all_words(int dim, int length);

/// Sorted words of the given length that survive in S(V).
std::vector<Word> symmetric_words(const GradedSpace& space, int length);

long long binomial(int n, int k);

}  // namespace linfty
