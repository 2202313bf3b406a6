#pragma once

#include <map>
#include <string>
#include <utility>

#include "linfty/graded.hpp"

namespace linfty {

/// Sparse vector over a basis; zero coefficients are never stored.
using Vector = std::map<int, Scalar>;

/// Formal sum of words (in T(V) or, for sorted keys, in S(V)).
using Chain = std::map<Word, Scalar>;

/// Formal sum of elementary tensors a (x) b of words.
using TensorChain = std::map<std::pair<Word, Word>, Scalar>;

template <class Key>
void accumulate(std::map<Key, Scalar>& acc, const Key& key, const Scalar& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = acc.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) acc.erase(it);
    }
}

template <class Key>
void accumulate(std::map<Key, Scalar>& acc, const std::map<Key, Scalar>& v, const Scalar& c) {
    if (sgn(c) == 0) return;
    for (const auto& [k, x] : v) accumulate(acc, k, Scalar(x * c));
}

template <class Key>
std::map<Key, Scalar> scaled(const std::map<Key, Scalar>& v, const Scalar& c) {
    std::map<Key, Scalar> out;
    accumulate(out, v, c);
    return out;
}

template <class Key>
std::map<Key, Scalar> difference(const std::map<Key, Scalar>& a, const std::map<Key, Scalar>& b) {
    std::map<Key, Scalar> out = a;
    accumulate(out, b, Scalar(-1));
    return out;
}

/// Sorts every word of c into canonical order with its Koszul sign and drops
/// words that vanish in S(V).
Chain symmetric_normal_form(const GradedSpace& space, const Chain& c);

/// Projection p onto length-one words.
Vector project(const Chain& c);

/// Elementary tensor product of vectors, read as a sum of words.
Chain tensor_product(const std::vector<Vector>& factors);

/// Reindexes every letter by adding offset.
Vector shift_indices(const Vector& v, int offset);
Word shift_indices(const Word& w, int offset);

std::string vector_text(const GradedSpace& space, const Vector& v);
std::string chain_text(const GradedSpace& space, const Chain& c);

}  // namespace linfty
