#include "linfty/chain.hpp"

namespace linfty {

Chain symmetric_normal_form(const GradedSpace& space, const Chain& c) {
    Chain out;
    for (const auto& [w, x] : c) {
        SortedWord s = canonical_sort(space, w);
        if (has_repeated_odd(space, s.word)) continue;
        accumulate(out, s.word, s.parity ? Scalar(-x) : x);
    }
    return out;
}

Vector project(const Chain& c) {
    Vector v;
    for (const auto& [w, x] : c)
        if (w.size() == 1) accumulate(v, w[0], x);
    return v;
}

Chain tensor_product(const std::vector<Vector>& factors) {
    Chain out;
    if (factors.empty()) return out;
    out[Word{}] = 1;
    for (const Vector& f : factors) {
        Chain next;
        for (const auto& [w, x] : out)
            for (const auto& [i, y] : f) {
                Word u = w;
                u.push_back(i);
                accumulate(next, u, Scalar(x * y));
            }
        out = std::move(next);
        if (out.empty()) break;
    }
    return out;
}

Vector shift_indices(const Vector& v, int offset) {
    Vector out;
    for (const auto& [i, x] : v) out.emplace(i + offset, x);
    return out;
}

Word shift_indices(const Word& w, int offset) {
    Word out = w;
    for (int& i : out) i += offset;
    return out;
}

std::string vector_text(const GradedSpace& space, const Vector& v) {
    if (v.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [i, x] : v) {
        if (!first) s += " + ";
        first = false;
        s += to_string(x) + " " + space.symbol(i);
    }
    return s;
}

std::string chain_text(const GradedSpace& space, const Chain& c) {
    if (c.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, x] : c) {
        if (!first) s += " + ";
        first = false;
        s += to_string(x) + " (" + word_text(space, w) + ")";
    }
    return s;
}

}  // namespace linfty
