#include "linfty/coalgebra.hpp"

namespace linfty {

namespace {

// Splits sigma(w) after position `cut` into an elementary tensor.
std::pair<Word, Word> split(const Word& permuted, std::size_t cut) {
    return {Word(permuted.begin(), permuted.begin() + static_cast<std::ptrdiff_t>(cut)),
            Word(permuted.begin() + static_cast<std::ptrdiff_t>(cut), permuted.end())};
}

}  // namespace

TensorChain coshuffle_coproduct(const GradedSpace& space, const Word& w) {
    TensorChain out;
    const int n = static_cast<int>(w.size());
    const std::vector<int> deg = word_degrees(space, w);
    for (int i = 1; i < n; ++i)
        for (const Permutation& sigma : unshuffles({i, n - i}))
            accumulate(out, split(sigma.apply(w), static_cast<std::size_t>(i)), koszul_sign(sigma, deg));
    return out;
}

TensorChain symmetric_coproduct(const GradedSpace& space, const Word& w) {
    SortedWord s = canonical_sort(space, w);
    if (has_repeated_odd(space, s.word)) return {};
    TensorChain out;
    for (const auto& [ab, x] : coshuffle_coproduct(space, s.word)) {
        if (has_repeated_odd(space, ab.first) || has_repeated_odd(space, ab.second)) continue;
        accumulate(out, ab, Scalar(s.sign() * x));
    }
    return out;
}

TensorChain zinbiel_coproduct(const GradedSpace& space, const Word& w) {
    TensorChain out;
    const int k = static_cast<int>(w.size());
    if (k < 2) return out;
    const Word head(w.begin(), w.end() - 1);
    const std::vector<int> deg = word_degrees(space, head);
    for (int p = 1; p <= k - 1; ++p)
        for (const Permutation& sigma : unshuffles({p, k - 1 - p})) {
            auto ab = split(sigma.apply(head), static_cast<std::size_t>(p));
            ab.second.push_back(w.back());
            accumulate(out, ab, koszul_sign(sigma, deg));
        }
    return out;
}

TensorChain twist(const GradedSpace& space, const TensorChain& t) {
    TensorChain out;
    for (const auto& [ab, x] : t) {
        const int parity = word_degree(space, ab.first) * word_degree(space, ab.second);
        accumulate(out, std::pair<Word, Word>{ab.second, ab.first}, Scalar(sign_of(parity) * x));
    }
    return out;
}

TripleChain zinbiel_right(const GradedSpace& space, const TensorChain& t) {
    TripleChain out;
    for (const auto& [ab, x] : t)
        for (const auto& [bc, y] : zinbiel_coproduct(space, ab.second))
            accumulate(out, std::vector<Word>{ab.first, bc.first, bc.second}, Scalar(x * y));
    return out;
}

TripleChain zinbiel_left(const GradedSpace& space, const TensorChain& t) {
    TripleChain out;
    for (const auto& [ab, x] : t)
        for (const auto& [aa, y] : zinbiel_coproduct(space, ab.first))
            accumulate(out, std::vector<Word>{aa.first, aa.second, ab.second}, Scalar(x * y));
    return out;
}

TripleChain twisted_zinbiel_left(const GradedSpace& space, const TensorChain& t) {
    TripleChain out;
    for (const auto& [ab, x] : t)
        for (const auto& [aa, y] : twist(space, zinbiel_coproduct(space, ab.first)))
            accumulate(out, std::vector<Word>{aa.first, aa.second, ab.second}, Scalar(x * y));
    return out;
}

}  // namespace linfty
