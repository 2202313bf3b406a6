#include "linfty/action.hpp"

#include <algorithm>
#include <future>
#include <set>

#include "linfty/errors.hpp"

namespace linfty {

namespace {

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

Word slice(const Word& w, std::size_t from, std::size_t to) {
    return Word(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

}  // namespace

GradedSpace direct_sum(const GradedSpace& e, const GradedSpace& v) {
    std::vector<BasisElement> basis = e.basis();
    std::set<std::string> used;
    for (const BasisElement& b : basis) used.insert(b.symbol);
    for (BasisElement b : v.basis()) {
        while (used.count(b.symbol)) b.symbol += "'";
        used.insert(b.symbol);
        basis.push_back(b);
    }
    return GradedSpace(e.name() + "+" + v.name(), basis);
}

ActionFamily::ActionFamily(HomotopyStructure e, HomotopyStructure v, std::map<std::pair<int, int>, MultiMap> components)
    : e_(std::move(e)), v_(std::move(v)), sum_(direct_sum(e_.space(), v_.space())), components_(std::move(components)) {
    if (e_.flavor() != Flavor::Symmetric || v_.flavor() != Flavor::Symmetric)
        throw InputError("actions need symmetric structures on both sides");
    const int off = offset();
    for (const auto& [kn, m] : components_) {
        const auto [k, n] = kn;
        if (k < 1 || n < 1) throw InputError("action components need k, n >= 1");
        if (!(m.source() == sum_) || !(m.target() == v_.space()) || m.arity() != k + n || m.degree() != 1 ||
            m.flavor() != Flavor::Symmetric)
            throw InputError("action component (" + std::to_string(k) + "," + std::to_string(n) +
                             ") has the wrong shape");
        for (const auto& [w, row] : m.rows())
            for (int j = 0; j < k + n; ++j)
                if ((j < k) != (w[static_cast<std::size_t>(j)] < off))
                    throw InputError("action component key mixes E and V slots");
    }
}

Vector ActionFamily::phi(const Word& x, const Word& v) const {
    auto it = components_.find({static_cast<int>(x.size()), static_cast<int>(v.size())});
    if (it == components_.end()) return {};
    return it->second.eval(concat(embed_e(x), embed_v(v)));
}

int ActionFamily::max_total_arity() const {
    int best = 0;
    for (const auto& [kn, m] : components_)
        if (!m.is_zero()) best = std::max(best, kn.first + kn.second);
    return best;
}

MultiMap action_component(const ActionFamily& shape, int k, int n) {
    return action_component(shape.sum_space(), shape.on().space(), k, n);
}

MultiMap action_component(const GradedSpace& sum, const GradedSpace& v, int k, int n) {
    return MultiMap(sum, v, k + n, 1, Flavor::Symmetric);
}

Coderivation phi_of(const ActionFamily& phi, const Word& x, int bound) {
    const GradedSpace& V = phi.on().space();
    return Coderivation(V, Coalgebra::Symmetric, word_degree(phi.acting().space(), x) + 1, bound,
                        [phi, x](const Word& w) { return phi.phi(x, w); });
}

Coderivation ad_of(const HomotopyStructure& v_structure, const Word& v, int bound) {
    const GradedSpace& V = v_structure.space();
    return Coderivation(V, Coalgebra::Symmetric, word_degree(V, v) + 1, bound,
                        [v_structure, v](const Word& w) { return v_structure.eval(concat(v, w)); });
}

Coderivation phi_mixed(const ActionFamily& phi, const Word& x, const Word& v, int bound) {
    if (v.empty()) throw InputError("phi_mixed needs a nonempty V-word");
    const GradedSpace& V = phi.on().space();
    const int degree = word_degree(phi.acting().space(), x) + word_degree(V, v) + 1;
    return Coderivation(V, Coalgebra::Symmetric, degree, bound,
                        [phi, x, v](const Word& w) { return phi.phi(x, concat(v, w)); });
}

namespace {

// Phi_x for each sorted E-word, built once per check.
class PhiCache {
public:
    PhiCache(const ActionFamily& phi, int bound) : phi_(phi), bound_(bound) {}
    const Coderivation& get(const Word& x) {
        auto it = cache_.find(x);
        if (it == cache_.end()) it = cache_.emplace(x, phi_of(phi_, x, bound_)).first;
        return it->second;
    }

private:
    const ActionFamily& phi_;
    int bound_;
    std::map<Word, Coderivation> cache_;
};

}  // namespace

Report check_action(const ActionFamily& phi, int bound) {
    const GradedSpace& E = phi.acting().space();
    const GradedSpace& V = phi.on().space();
    const Coderivation ME = phi.acting().codifferential(bound);
    const CoderDgla dgla(phi.on(), bound);
    PhiCache cache(phi, bound);
    Report report{phi.sum_space(), V, bound, {}};
    for (int n = 1; n < bound; ++n)
        for (const Word& x : symmetric_words(E, n)) {
            const std::vector<int> deg = word_degrees(E, x);
            const Chain mx = ME.apply(x);
            const Coderivation dphi = dgla.differential(cache.get(x));
            std::vector<std::pair<Coderivation, Scalar>> brackets;
            for (int j = 1; j < n; ++j)
                for (const Permutation& sigma : increasing_unshuffles({j, n - j})) {
                    const Word moved = sigma.apply(x);
                    const Coderivation& a = cache.get(canonical_sort(E, slice(moved, 0, static_cast<std::size_t>(j))).word);
                    const Coderivation& b = cache.get(canonical_sort(E, slice(moved, static_cast<std::size_t>(j), moved.size())).word);
                    // Both blocks of an unshuffle of a sorted word are sorted already.
                    brackets.emplace_back(dgla.bracket(a, b), koszul_sign(sigma, deg));
                }
            for (int m = 1; n + m <= bound; ++m)
                for (const Word& w : symmetric_words(V, m)) {
                    Vector residual;
                    for (const auto& [u, c] : mx) accumulate(residual, phi.phi(u, w), c);
                    accumulate(residual, dphi.restrict(w), Scalar(-1));
                    for (const auto& [br, c] : brackets) accumulate(residual, br.restrict(w), Scalar(-c));
                    report.add({"action", n + m, concat(x, phi.embed_v(w)), {n, m}, residual});
                }
        }
    return report;
}

Report check_coherence(const ActionFamily& phi, int bound) {
    const GradedSpace& E = phi.acting().space();
    const GradedSpace& V = phi.on().space();
    PhiCache cache(phi, bound);
    Report report{phi.sum_space(), V, bound, {}};
    for (int a = 1; a + 2 <= bound; ++a)
        for (const Word& v : symmetric_words(V, a)) {
            const Coderivation ad = ad_of(phi.on(), v, bound);
            for (int b = 1; a + b + 1 <= bound; ++b)
                for (const Word& x : symmetric_words(E, b)) {
                    const Coderivation c = commutator(ad, cache.get(x));
                    for (int m = 1; a + b + m <= bound; ++m)
                        for (const Word& w : symmetric_words(V, m))
                            report.add({"ad", a + b + m, concat(concat(phi.embed_v(v), x), phi.embed_v(w)), {a, b, m},
                                        c.restrict(w)});
                }
        }
    for (int k = 1; k + 3 <= bound; ++k)
        for (const Word& y : symmetric_words(E, k))
            for (int a = 1; k + a + 2 <= bound; ++a)
                for (const Word& v : symmetric_words(V, a)) {
                    const Coderivation mixed = phi_mixed(phi, y, v, bound);
                    for (int b = 1; k + a + b + 1 <= bound; ++b)
                        for (const Word& x : symmetric_words(E, b)) {
                            const Coderivation c = commutator(mixed, cache.get(x));
                            for (int m = 1; k + a + b + m <= bound; ++m)
                                for (const Word& w : symmetric_words(V, m))
                                    report.add({"mixed", k + a + b + m,
                                                concat(concat(concat(y, phi.embed_v(v)), x), phi.embed_v(w)),
                                                {k, a, b, m}, c.restrict(w)});
                        }
                }
    return report;
}

HomotopyStructure hemisemidirect(const ActionFamily& phi) {
    const GradedSpace& S = phi.sum_space();
    const int off = phi.offset();
    const int arity = std::max({phi.acting().max_arity(), phi.on().max_arity(), phi.max_total_arity()});
    std::vector<MultiMap> brackets;
    for (int n = 1; n <= arity; ++n) {
        MultiMap m(S, S, n, 1, Flavor::Plain);
        for (const Word& u : all_words(S.dim(), n)) {
            // Number of leading E letters; the rest must all be V letters.
            std::size_t i = 0;
            while (i < u.size() && u[i] < off) ++i;
            bool tail_v = std::all_of(u.begin() + static_cast<std::ptrdiff_t>(i), u.end(), [off](int c) { return c >= off; });
            if (!tail_v) continue;
            Vector value;
            if (i == u.size())
                value = phi.acting().eval(u);
            else if (i == 0)
                value = shift_indices(phi.on().eval(shift_indices(u, -off)), off);
            else
                value = shift_indices(phi.phi(slice(u, 0, i), shift_indices(slice(u, i, u.size()), -off)), off);
            for (const auto& [j, x] : value) m.set(u, j, x);
        }
        brackets.push_back(std::move(m));
    }
    return HomotopyStructure(S, Flavor::Plain, arity, brackets);
}

ActionFamily adjoint_action(const HomotopyStructure& e) {
    const GradedSpace S = direct_sum(e.space(), e.space());
    const int off = e.space().dim();
    std::map<std::pair<int, int>, MultiMap> comps;
    for (int total = 2; total <= e.max_arity(); ++total)
        for (int k = 1; k < total; ++k) {
            const int i = total - k;
            MultiMap m = action_component(S, e.space(), k, i);
            for (const Word& x : symmetric_words(e.space(), k))
                for (const Word& v : symmetric_words(e.space(), i))
                    for (const auto& [j, c] : e.eval(concat(x, v))) m.set(concat(x, shift_indices(v, off)), j, c);
            comps.emplace(std::pair{k, i}, std::move(m));
        }
    return ActionFamily(e, e, std::move(comps));
}

ActionFamily adjoint_representation(const HomotopyStructure& e) {
    const HomotopyStructure complex(e.space(), Flavor::Symmetric, 1, {e.bracket(1)});
    const GradedSpace S = direct_sum(e.space(), e.space());
    const int off = e.space().dim();
    std::map<std::pair<int, int>, MultiMap> comps;
    for (int k = 1; k + 1 <= e.max_arity(); ++k) {
        MultiMap m = action_component(S, e.space(), k, 1);
        for (const Word& x : symmetric_words(e.space(), k))
            for (int v = 0; v < e.space().dim(); ++v)
                for (const auto& [j, c] : e.eval(concat(x, Word{v}))) m.set(concat(x, Word{v + off}), j, c);
        comps.emplace(std::pair{k, 1}, std::move(m));
    }
    return ActionFamily(e, complex, std::move(comps));
}

TheoremVerdicts theorem_crosscheck(const ActionFamily& phi, int bound) {
    auto coherence = std::async(std::launch::async, [&] { return check_coherence(phi, bound); });
    auto product = std::async(std::launch::async, [&] { return check_loday_infinity(hemisemidirect(phi), bound); });
    TheoremVerdicts out;
    out.coherence = coherence.get();
    out.product = product.get();
    out.coherent = out.coherence.ok();
    out.loday = out.product.ok();
    if (out.coherent != out.loday) {
        const Report& bad = out.coherent ? out.product : out.coherence;
        throw InternalConsistencyError("coherence and the hemisemidirect Loday identity disagree; first residual: " +
                                       residual_text(bad, bad.residuals.front()));
    }
    return out;
}

}  // namespace linfty
