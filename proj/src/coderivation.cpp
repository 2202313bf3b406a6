#include "linfty/coderivation.hpp"

#include <mutex>

#include "linfty/errors.hpp"

namespace linfty {

namespace {

// Memo table guarded by a mutex. The lock is dropped while a value is computed,
// since computing one entry may recurse into the same table.
template <class Value>
class Memo {
public:
    template <class Compute>
    Value get(const Word& key, Compute compute) {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = table_.find(key);
            if (it != table_.end()) return it->second;
        }
        Value v = compute();
        std::lock_guard<std::mutex> lock(mutex_);
        table_.emplace(key, v);
        return v;
    }

private:
    std::mutex mutex_;
    std::map<Word, Value> table_;
};

Word slice(const Word& w, std::size_t from, std::size_t to) {
    return Word(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

LinearFn from_components(const std::vector<MultiMap>& maps) {
    return [maps](const Word& w) -> Vector {
        for (const MultiMap& m : maps)
            if (m.arity() == static_cast<int>(w.size())) return m.eval(w);
        return {};
    };
}

}  // namespace

struct Coderivation::State {
    GradedSpace space;
    Coalgebra kind;
    int degree;
    int bound;
    LinearFn restriction;
    Memo<Vector> restricted;
    Memo<Chain> applied;
};

Coderivation::Coderivation(GradedSpace space, Coalgebra kind, int degree, int bound, LinearFn restriction)
    : state_(std::make_shared<State>()) {
    state_->space = std::move(space);
    state_->kind = kind;
    state_->degree = degree;
    state_->bound = bound;
    state_->restriction = std::move(restriction);
}

const GradedSpace& Coderivation::space() const { return state_->space; }
Coalgebra Coderivation::kind() const { return state_->kind; }
int Coderivation::degree() const { return state_->degree; }
int Coderivation::bound() const { return state_->bound; }

Vector Coderivation::restrict(const Word& w) const {
    if (w.empty()) return {};
    State& s = *state_;
    if (s.kind == Coalgebra::Zinbiel) return s.restricted.get(w, [&] { return s.restriction(w); });
    SortedWord sorted = canonical_sort(s.space, w);
    if (has_repeated_odd(s.space, sorted.word)) return {};
    Vector v = s.restricted.get(sorted.word, [&] { return s.restriction(sorted.word); });
    return sorted.parity ? linfty::scaled(v, Scalar(-1)) : v;
}

Vector Coderivation::restrict(const Chain& c) const {
    Vector out;
    for (const auto& [w, x] : c) accumulate(out, restrict(w), x);
    return out;
}

Chain Coderivation::apply(const Word& w) const {
    if (w.empty()) return {};
    State& s = *state_;
    const std::size_t n = w.size();
    if (s.kind == Coalgebra::Zinbiel) {
        return s.applied.get(w, [&] {
            Chain out;
            for (std::size_t m = 1; m <= n; ++m) {
                const Word head = slice(w, 0, m - 1);
                const std::vector<int> deg = word_degrees(s.space, head);
                const Word tail = slice(w, m, n);
                for (std::size_t i = 0; i < m; ++i)
                    for (const Permutation& sigma :
                         unshuffles({static_cast<int>(i), static_cast<int>(m - 1 - i)})) {
                        const Word moved = sigma.apply(head);
                        const Word left = slice(moved, 0, i);
                        Word args = slice(moved, i, m - 1);
                        args.push_back(w[m - 1]);
                        const Vector q = restrict(args);
                        if (q.empty()) continue;
                        const Scalar c = koszul_sign(sigma, deg) *
                                         sign_of(s.degree * word_degree(s.space, left));
                        for (const auto& [e, x] : q) {
                            Word out_word = left;
                            out_word.push_back(e);
                            out_word.insert(out_word.end(), tail.begin(), tail.end());
                            accumulate(out, out_word, Scalar(c * x));
                        }
                    }
            }
            return out;
        });
    }
    SortedWord sorted = canonical_sort(s.space, w);
    if (has_repeated_odd(s.space, sorted.word)) return {};
    Chain value = s.applied.get(sorted.word, [&] {
        const Word& u = sorted.word;
        const std::vector<int> deg = word_degrees(s.space, u);
        Chain out;
        for (std::size_t i = 1; i <= n; ++i)
            for (const Permutation& sigma : unshuffles({static_cast<int>(i), static_cast<int>(n - i)})) {
                const Word moved = sigma.apply(u);
                const Vector q = restrict(slice(moved, 0, i));
                if (q.empty()) continue;
                const Scalar c = koszul_sign(sigma, deg);
                for (const auto& [e, x] : q) {
                    Word out_word{e};
                    out_word.insert(out_word.end(), moved.begin() + static_cast<std::ptrdiff_t>(i), moved.end());
                    SortedWord t = canonical_sort(s.space, out_word);
                    if (has_repeated_odd(s.space, t.word)) continue;
                    accumulate(out, t.word, Scalar(c * x * t.sign()));
                }
            }
        return out;
    });
    return sorted.parity ? linfty::scaled(value, Scalar(-1)) : value;
}

Chain Coderivation::apply(const Chain& c) const {
    Chain out;
    for (const auto& [w, x] : c) accumulate(out, apply(w), x);
    return out;
}

std::map<Word, Chain> Coderivation::block(int length) const {
    std::map<Word, Chain> out;
    const std::vector<Word> words = kind() == Coalgebra::Zinbiel ? all_words(space().dim(), length)
                                                                 : symmetric_words(space(), length);
    for (const Word& w : words) out.emplace(w, apply(w));
    return out;
}

Coderivation lift_sym_coderivation(const GradedSpace& space, const std::vector<MultiMap>& restrictions,
                                   int degree, int bound) {
    for (const MultiMap& m : restrictions)
        if (m.degree() != degree || !(m.source() == space) || !(m.target() == space))
            throw InputError("coderivation components must be endomorphisms of one degree");
    return Coderivation(space, Coalgebra::Symmetric, degree, bound, from_components(restrictions));
}

Coderivation lift_zin_coderivation(const GradedSpace& space, const std::vector<MultiMap>& restrictions,
                                   int degree, int bound) {
    for (const MultiMap& m : restrictions)
        if (m.degree() != degree || !(m.source() == space) || !(m.target() == space))
            throw InputError("coderivation components must be endomorphisms of one degree");
    return Coderivation(space, Coalgebra::Zinbiel, degree, bound, from_components(restrictions));
}

namespace {

void check_compatible(const Coderivation& q, const Coderivation& p) {
    if (!(q.space() == p.space()) || q.kind() != p.kind())
        throw InputError("coderivations live on different coalgebras");
    if (q.bound() != p.bound()) throw InputError("coderivations have different weight bounds");
}

}  // namespace

Coderivation commutator(const Coderivation& q, const Coderivation& p) {
    check_compatible(q, p);
    const Scalar s = sign_of(q.degree() * p.degree());
    return Coderivation(q.space(), q.kind(), q.degree() + p.degree(), q.bound(),
                        [q, p, s](const Word& w) {
                            Vector out = q.restrict(p.apply(w));
                            accumulate(out, p.restrict(q.apply(w)), Scalar(-s));
                            return out;
                        });
}

Coderivation shifted_bracket(const Coderivation& q, const Coderivation& p) {
    // (-1)^{|Q|'+1} = (-1)^{|Q|} and (|Q|'+1)(|P|'+1) = |Q||P|.
    return scaled(commutator(q, p), sign_of(q.degree()));
}

Coderivation scaled(const Coderivation& q, const Scalar& c) {
    return Coderivation(q.space(), q.kind(), q.degree(), q.bound(),
                        [q, c](const Word& w) { return linfty::scaled(q.restrict(w), c); });
}

Coderivation sum(const Coderivation& q, const Coderivation& p) {
    check_compatible(q, p);
    if (q.degree() != p.degree()) throw InputError("cannot add coderivations of different degrees");
    return Coderivation(q.space(), q.kind(), q.degree(), q.bound(), [q, p](const Word& w) {
        Vector out = q.restrict(w);
        accumulate(out, p.restrict(w), Scalar(1));
        return out;
    });
}

struct Comorphism::State {
    GradedSpace source;
    GradedSpace target;
    Coalgebra kind;
    int bound;
    LinearFn components;
    Memo<Chain> applied;
};

Comorphism::Comorphism(GradedSpace source, GradedSpace target, Coalgebra kind, int bound, LinearFn components)
    : state_(std::make_shared<State>()) {
    state_->source = std::move(source);
    state_->target = std::move(target);
    state_->kind = kind;
    state_->bound = bound;
    state_->components = std::move(components);
}

const GradedSpace& Comorphism::source() const { return state_->source; }
const GradedSpace& Comorphism::target() const { return state_->target; }
Coalgebra Comorphism::kind() const { return state_->kind; }
int Comorphism::bound() const { return state_->bound; }

Vector Comorphism::component(const Word& w) const {
    if (w.empty()) return {};
    return state_->components(w);
}

Chain Comorphism::apply(const Word& w) const {
    if (w.empty()) return {};
    State& s = *state_;
    Word key = w;
    Scalar sign = 1;
    if (s.kind == Coalgebra::Symmetric) {
        SortedWord sorted = canonical_sort(s.source, w);
        if (has_repeated_odd(s.source, sorted.word)) return {};
        key = sorted.word;
        sign = sorted.sign();
    }
    Chain value = s.applied.get(key, [&] {
        const int n = static_cast<int>(key.size());
        const std::vector<int> deg = word_degrees(s.source, key);
        Chain out;
        for (const std::vector<int>& parts : compositions(n))
            for (const Permutation& sigma : increasing_unshuffles(parts)) {
                const Word moved = sigma.apply(key);
                std::vector<Vector> factors;
                std::size_t at = 0;
                for (int len : parts) {
                    factors.push_back(component(slice(moved, at, at + static_cast<std::size_t>(len))));
                    at += static_cast<std::size_t>(len);
                    if (factors.back().empty()) break;
                }
                if (factors.back().empty()) continue;
                accumulate(out, tensor_product(factors), koszul_sign(sigma, deg));
            }
        return s.kind == Coalgebra::Symmetric ? symmetric_normal_form(s.target, out) : out;
    });
    return sign == 1 ? value : linfty::scaled(value, sign);
}

Chain Comorphism::apply(const Chain& c) const {
    Chain out;
    for (const auto& [w, x] : c) accumulate(out, apply(w), x);
    return out;
}

Comorphism lift_comorphism(const GradedSpace& source, const GradedSpace& target,
                           const std::vector<MultiMap>& components, Coalgebra kind, int bound) {
    for (const MultiMap& m : components)
        if (m.degree() != 0 || !(m.source() == source) || !(m.target() == target))
            throw InputError("comorphism components must be degree-zero maps between the given spaces");
    return Comorphism(source, target, kind, bound, from_components(components));
}

Comorphism identity_comorphism(const GradedSpace& space, Coalgebra kind, int bound) {
    return Comorphism(space, space, kind, bound, [](const Word& w) {
        return w.size() == 1 ? Vector{{w[0], Scalar(1)}} : Vector{};
    });
}

Comorphism compose(const Comorphism& f, const Comorphism& g) {
    if (!(g.target() == f.source()) || f.kind() != g.kind()) throw InputError("comorphisms do not compose");
    return Comorphism(g.source(), f.target(), f.kind(), std::min(f.bound(), g.bound()), [f, g](const Word& w) {
        Vector out;
        for (const auto& [u, x] : g.apply(w)) accumulate(out, f.component(u), x);
        return out;
    });
}

}  // namespace linfty

namespace linfty {

std::vector<MultiMap> restrictions_of(const Coderivation& q, int bound) {
    std::vector<MultiMap> out;
    const bool sym = q.kind() == Coalgebra::Symmetric;
    for (int k = 1; k <= bound; ++k) {
        MultiMap m(q.space(), q.space(), k, q.degree(), sym ? Flavor::Symmetric : Flavor::Plain);
        const std::vector<Word> words = sym ? symmetric_words(q.space(), k) : all_words(q.space().dim(), k);
        for (const Word& w : words)
            for (const auto& [i, x] : q.restrict(w)) m.set(w, i, x);
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace linfty
