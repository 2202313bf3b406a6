#include "linfty/multimap.hpp"

#include <algorithm>
#include <numeric>

#include "linfty/errors.hpp"

namespace linfty {

const char* flavor_name(Flavor f) { return f == Flavor::Symmetric ? "symmetric" : "plain"; }

MultiMap::MultiMap(GradedSpace source, GradedSpace target, int arity, int degree, Flavor flavor)
    : source_(std::move(source)), target_(std::move(target)), arity_(arity), degree_(degree), flavor_(flavor) {
    if (arity < 1) throw InputError("multilinear map arity must be positive");
}

void MultiMap::check_degree(const Word& input, int output) const {
    if (static_cast<int>(input.size()) != arity_) throw InputError("input word length differs from arity");
    for (int i : input)
        if (i < 0 || i >= source_.dim()) throw InputError("input letter outside the source space");
    if (output < 0 || output >= target_.dim()) throw InputError("output outside the target space");
    if (target_.degree(output) != degree_ + word_degree(source_, input))
        throw InputError("degree mismatch: " + target_.symbol(output) + " has degree " +
                         std::to_string(target_.degree(output)) + ", expected " +
                         std::to_string(degree_ + word_degree(source_, input)));
}

void MultiMap::set(const Word& input, int output, const Scalar& value) {
    check_degree(input, output);
    if (flavor_ == Flavor::Symmetric) {
        if (!is_sorted_word(input)) throw InputError("symmetric key is not in canonical order");
        if (has_repeated_odd(source_, input)) throw InputError("symmetric key repeats an odd element");
    }
    Vector& row = rows_[input];
    if (sgn(value) == 0)
        row.erase(output);
    else
        row[output] = value;
    if (row.empty()) rows_.erase(input);
}

void MultiMap::add(const Word& input, int output, const Scalar& value) {
    check_degree(input, output);
    if (sgn(value) == 0) return;
    Word key = input;
    Scalar c = value;
    if (flavor_ == Flavor::Symmetric) {
        SortedWord s = canonical_sort(source_, input);
        if (has_repeated_odd(source_, s.word)) return;
        key = s.word;
        if (s.parity) c = -c;
    }
    Vector& row = rows_[key];
    accumulate(row, output, c);
    if (row.empty()) rows_.erase(key);
}

void MultiMap::add(const Word& input, const Vector& value) {
    for (const auto& [i, x] : value) add(input, i, x);
}

Vector MultiMap::eval(const Word& w) const {
    if (static_cast<int>(w.size()) != arity_) throw InputError("input word length differs from arity");
    if (flavor_ == Flavor::Plain) {
        auto it = rows_.find(w);
        return it == rows_.end() ? Vector{} : it->second;
    }
    SortedWord s = canonical_sort(source_, w);
    auto it = rows_.find(s.word);
    if (it == rows_.end()) return {};
    return s.parity ? scaled(it->second, Scalar(-1)) : it->second;
}

Vector MultiMap::eval(const std::vector<Vector>& factors) const {
    Vector out;
    if (rows_.empty()) return out;
    for (const auto& [w, x] : tensor_product(factors)) accumulate(out, eval(w), x);
    return out;
}

bool MultiMap::operator==(const MultiMap& o) const {
    return source_ == o.source_ && target_ == o.target_ && arity_ == o.arity_ && degree_ == o.degree_ &&
           flavor_ == o.flavor_ && rows_ == o.rows_;
}

MultiMap zero_map(const GradedSpace& source, const GradedSpace& target, int arity, int degree, Flavor f) {
    return MultiMap(source, target, arity, degree, f);
}

MultiMap symmetrize(const MultiMap& f) {
    MultiMap out(f.source(), f.target(), f.arity(), f.degree(), Flavor::Symmetric);
    const int k = f.arity();
    const Scalar inv = Scalar(1) / factorial(k);
    std::vector<int> images(static_cast<std::size_t>(k));
    for (const Word& w : symmetric_words(f.source(), k)) {
        const std::vector<int> deg = word_degrees(f.source(), w);
        std::iota(images.begin(), images.end(), 0);
        Vector acc;
        do {
            Permutation sigma(images);
            accumulate(acc, f.eval(sigma.apply(w)), Scalar(koszul_sign(sigma, deg) * inv));
        } while (std::next_permutation(images.begin(), images.end()));
        for (const auto& [i, x] : acc) out.set(w, i, x);
    }
    return out;
}

MultiMap expand_plain(const MultiMap& f) {
    MultiMap out(f.source(), f.target(), f.arity(), f.degree(), Flavor::Plain);
    if (f.flavor() == Flavor::Plain) {
        for (const auto& [w, row] : f.rows())
            for (const auto& [i, x] : row) out.set(w, i, x);
        return out;
    }
    for (const auto& [key, row] : f.rows()) {
        // Every distinct ordering of the key, with the sign that sorts it back.
        Word w = key;
        do {
            for (const auto& [i, x] : f.eval(w)) out.set(w, i, x);
        } while (std::next_permutation(w.begin(), w.end()));
    }
    return out;
}

namespace {

void check_shift(const GradedSpace& from, const GradedSpace& to, int k) {
    bool ok = from.dim() == to.dim();
    for (int i = 0; ok && i < from.dim(); ++i)
        ok = from.symbol(i) == to.symbol(i) && to.degree(i) == from.degree(i) + k;
    if (!ok) throw InputError("decalage: spaces are not shifts of each other");
}

// Parity of (f_1 (x) ... (x) f_k)(v_1 (x) ... (x) v_k) for odd f_j: f_j passes v_i for i < j.
int shift_parity(const GradedSpace& space, const Word& w) {
    int parity = 0;
    const int k = static_cast<int>(w.size());
    for (int i = 0; i < k; ++i) parity += (k - 1 - i) * space.degree(w[static_cast<std::size_t>(i)]);
    return parity & 1;
}

}  // namespace

MultiMap decalage(const MultiMap& q, const GradedSpace& suspended) {
    if (!(q.source() == q.target())) throw InputError("decalage needs an endomorphism-type map");
    check_shift(q.source(), suspended, 1);
    const int k = q.arity();
    MultiMap plain = expand_plain(q);
    MultiMap out(suspended, suspended, k, q.degree() + 1 - k, Flavor::Plain);
    for (const auto& [w, row] : plain.rows()) {
        const Scalar s = sign_of(shift_parity(suspended, w));
        for (const auto& [i, x] : row) out.set(w, i, Scalar(s * x));
    }
    return out;
}

MultiMap inverse_decalage(const MultiMap& q, const GradedSpace& desuspended) {
    if (!(q.source() == q.target())) throw InputError("decalage needs an endomorphism-type map");
    check_shift(q.source(), desuspended, -1);
    const int k = q.arity();
    MultiMap plain = expand_plain(q);
    MultiMap out(desuspended, desuspended, k, q.degree() + k - 1, Flavor::Plain);
    const int global = (k * (k - 1) / 2) & 1;
    for (const auto& [w, row] : plain.rows()) {
        const Scalar s = sign_of(global + shift_parity(desuspended, w));
        for (const auto& [i, x] : row) out.set(w, i, Scalar(s * x));
    }
    return out;
}

MultiMap compose_unary(const MultiMap& f, const MultiMap& g) {
    if (f.arity() != 1 || g.arity() != 1) throw InputError("compose_unary needs unary maps");
    if (!(g.target() == f.source())) throw InputError("compose_unary: spaces do not match");
    MultiMap out(g.source(), f.target(), 1, f.degree() + g.degree(), Flavor::Plain);
    for (const auto& [w, row] : g.rows()) {
        Vector acc;
        for (const auto& [i, x] : row) accumulate(acc, f.eval(Word{i}), x);
        for (const auto& [i, x] : acc) out.set(w, i, x);
    }
    return out;
}

MultiMap identity_map(const GradedSpace& space) {
    MultiMap out(space, space, 1, 0, Flavor::Plain);
    for (int i = 0; i < space.dim(); ++i) out.set(Word{i}, i, Scalar(1));
    return out;
}

}  // namespace linfty
