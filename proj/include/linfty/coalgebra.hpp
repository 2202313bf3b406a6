#pragma once

#include "linfty/chain.hpp"

namespace linfty {

/// Coshuffle coproduct on the ordered word w of T(V).
TensorChain coshuffle_coproduct(const GradedSpace& space, const Word& w);

/// Coshuffle coproduct on S(V); the input is sorted first and both tensor
/// factors are returned in canonical form.
TensorChain symmetric_coproduct(const GradedSpace& space, const Word& w);

/// Zinbiel coproduct: the last letter stays in the right factor.
TensorChain zinbiel_coproduct(const GradedSpace& space, const Word& w);

/// tau(a (x) b) = (-1)^{|a||b|} b (x) a.
TensorChain twist(const GradedSpace& space, const TensorChain& t);

/// Linear extension of a coproduct to chains.
template <class Coproduct>
TensorChain coproduct_of(const GradedSpace& space, const Chain& c, Coproduct delta) {
    TensorChain out;
    for (const auto& [w, x] : c) accumulate(out, delta(space, w), x);
    return out;
}

/// (Id (x) Delta) and (Delta (x) Id) reading a (x) b (x) c as a triple of words.
using TripleChain = std::map<std::vector<Word>, Scalar>;
TripleChain zinbiel_right(const GradedSpace& space, const TensorChain& t);
TripleChain zinbiel_left(const GradedSpace& space, const TensorChain& t);
TripleChain twisted_zinbiel_left(const GradedSpace& space, const TensorChain& t);

}  // namespace linfty
