#include "linfty/random.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "linfty/errors.hpp"
#include "linfty/linalg.hpp"

namespace linfty {

int Sampler::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

bool Sampler::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

Scalar Sampler::small_rational() {
    static const Scalar values[] = {Scalar(0), Scalar(1), Scalar(-1), Scalar(1, 2), Scalar(-1, 2)};
    return values[integer(0, 4)];
}

Scalar Sampler::nonzero_rational() {
    static const Scalar values[] = {Scalar(1), Scalar(-1), Scalar(1, 2), Scalar(-1, 2)};
    return values[integer(0, 3)];
}

GradedSpace random_space(Sampler& s, const std::string& name, const std::string& prefix, int dim, int lo, int hi) {
    std::vector<BasisElement> basis;
    for (int i = 0; i < dim; ++i) basis.push_back({prefix + std::to_string(i), s.integer(lo, hi)});
    return GradedSpace(name, basis);
}

MultiMap random_multimap(Sampler& s, const GradedSpace& source, const GradedSpace& target, int arity, int degree,
                         Flavor flavor, double density) {
    MultiMap m(source, target, arity, degree, flavor);
    const std::vector<Word> keys =
        flavor == Flavor::Symmetric ? symmetric_words(source, arity) : all_words(source.dim(), arity);
    for (const Word& w : keys)
        for (int j = 0; j < target.dim(); ++j)
            if (target.degree(j) == word_degree(source, w) + degree && s.chance(density))
                m.set(w, j, s.nonzero_rational());
    return m;
}

HomotopyStructure heisenberg() {
    const GradedSpace V("V", {{"p", -1}, {"q", -1}, {"z", -1}});
    MultiMap l2(V, V, 2, 1, Flavor::Symmetric);
    l2.set({0, 1}, 2, 1);
    return HomotopyStructure(V, Flavor::Symmetric, 2, {zero_map(V, V, 1, 1, Flavor::Symmetric), l2});
}

HomotopyStructure nonabelian_2d() {
    const GradedSpace N("N", {{"a", -1}, {"b", -1}});
    MultiMap l2(N, N, 2, 1, Flavor::Symmetric);
    l2.set({0, 1}, 1, 1);
    return HomotopyStructure(N, Flavor::Symmetric, 2, {zero_map(N, N, 1, 1, Flavor::Symmetric), l2});
}

HomotopyStructure sl2() {
    const GradedSpace G("G", {{"e", -1}, {"f", -1}, {"h", -1}});
    MultiMap l2(G, G, 2, 1, Flavor::Symmetric);
    l2.set({0, 1}, 2, 1);
    l2.set({0, 2}, 0, -2);
    l2.set({1, 2}, 1, 2);
    return HomotopyStructure(G, Flavor::Symmetric, 2, {zero_map(G, G, 1, 1, Flavor::Symmetric), l2});
}

HomotopyStructure random_lie(Sampler& s, const GradedSpace& space, int max_arity, int attempts) {
    for (int a = 0; a < attempts; ++a) {
        std::vector<MultiMap> brackets;
        for (int k = 1; k <= max_arity; ++k)
            brackets.push_back(random_multimap(s, space, space, k, 1, Flavor::Symmetric, k == 1 ? 0.15 : 0.25));
        HomotopyStructure l(space, Flavor::Symmetric, max_arity, brackets);
        bool trivial = true;
        for (const MultiMap& m : brackets) trivial = trivial && m.is_zero();
        if (!trivial && check_lie_infinity(l, 2 * max_arity - 1).ok()) return l;
    }
    return abelian_structure(space);
}

HomotopyStructure elementary_change(const HomotopyStructure& l, int x, int y, const Scalar& c) {
    const GradedSpace& V = l.space();
    if (x == y || V.degree(x) != V.degree(y)) throw InputError("elementary change needs two letters of equal degree");
    auto image = [&](int i) {
        Vector v{{i, Scalar(1)}};
        if (i == x) accumulate(v, y, c);
        return v;
    };
    std::vector<MultiMap> brackets;
    for (int k = 1; k <= l.max_arity(); ++k) {
        MultiMap m(V, V, k, 1, Flavor::Symmetric);
        for (const Word& w : symmetric_words(V, k)) {
            std::vector<Vector> args;
            for (int i : w) args.push_back(image(i));
            Vector out = l.bracket(k).eval(args);
            // inverse change: the x coordinate also feeds -c y.
            if (auto it = out.find(x); it != out.end()) accumulate(out, y, Scalar(-c * it->second));
            for (const auto& [j, v] : out) m.set(w, j, v);
        }
        brackets.push_back(std::move(m));
    }
    return HomotopyStructure(V, Flavor::Symmetric, l.max_arity(), brackets);
}

namespace {

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

HomotopyStructure named_pool(int which) {
    switch (which) {
        case 0: return heisenberg();
        case 1: return nonabelian_2d();
        default: return sl2();
    }
}

HomotopyStructure scrambled(Sampler& s, HomotopyStructure l) {
    const GradedSpace& V = l.space();
    for (int x = 0; x < V.dim(); ++x)
        for (int y = 0; y < V.dim(); ++y)
            if (x != y && V.degree(x) == V.degree(y) && s.chance(0.3)) l = elementary_change(l, x, y, s.nonzero_rational());
    return l;
}

HomotopyStructure sample_structure(Sampler& s, const std::string& name, const std::string& prefix, bool named) {
    if (named && s.chance(0.5)) return scrambled(s, named_pool(s.integer(0, 2)));
    const GradedSpace space = random_space(s, name, prefix, s.integer(1, 3), -2, 1);
    return scrambled(s, random_lie(s, space, s.integer(2, 3), 20));
}

HomotopyStructure abelian_acting(Sampler& s, int degree) {
    const int dim = s.integer(1, 3);
    std::vector<BasisElement> basis;
    for (int i = 0; i < dim; ++i) basis.push_back({"x" + std::to_string(i), degree});
    return abelian_structure(GradedSpace("E", basis));
}

// Phi^{1,1}(x_i; v) = f_i D(v).
ActionFamily derivation_action(const HomotopyStructure& e, const HomotopyStructure& v, const MultiMap& d,
                               const std::vector<Scalar>& f) {
    const GradedSpace sum = direct_sum(e.space(), v.space());
    const int off = e.space().dim();
    MultiMap c = action_component(sum, v.space(), 1, 1);
    for (int i = 0; i < off; ++i)
        for (const auto& [w, row] : d.rows())
            for (const auto& [j, x] : row) c.set({i, w[0] + off}, j, Scalar(f[static_cast<std::size_t>(i)] * x));
    return ActionFamily(e, v, {{{1, 1}, c}});
}

using RowKey = std::pair<std::string, int>;

void add_rows(std::map<RowKey, std::map<int, Scalar>>& rows, const Report& r, int column, const std::string& tag) {
    for (const Residual& x : r.residuals) {
        std::string key = tag + x.kind + ":";
        for (int b : x.blocks) key += std::to_string(b) + ",";
        key += "|" + word_text(r.input_space, x.word);
        for (const auto& [j, c] : x.value) rows[{key, j}][column] = c;
    }
}

Matrix dense(const std::map<RowKey, std::map<int, Scalar>>& rows, int cols) {
    Matrix m;
    for (const auto& [key, row] : rows) {
        std::vector<Scalar> line(static_cast<std::size_t>(cols));
        for (const auto& [j, c] : row) line[static_cast<std::size_t>(j)] = c;
        m.push_back(std::move(line));
    }
    return m;
}

std::vector<Scalar> combine(Sampler& s, const std::vector<std::vector<Scalar>>& basis, std::size_t size) {
    std::vector<Scalar> out(size);
    for (const auto& b : basis) {
        const Scalar c = s.small_rational();
        for (std::size_t i = 0; i < size; ++i) out[i] += c * b[i];
    }
    return out;
}

bool is_zero(const std::vector<Scalar>& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

std::optional<ActionSample> derivation_sample(Sampler& s, bool central, int bound) {
    const HomotopyStructure v = sample_structure(s, "V", "v", true);
    const GradedSpace& V = v.space();
    std::set<int> feasible;
    for (int i = 0; i < V.dim(); ++i)
        for (int j = 0; j < V.dim(); ++j)
            if (int dx = V.degree(i) - V.degree(j) - 1; dx >= -2 && dx <= 1) feasible.insert(dx);
    if (feasible.empty()) return std::nullopt;
    auto pick = feasible.begin();
    std::advance(pick, s.integer(0, static_cast<int>(feasible.size()) - 1));
    const int dx = *pick;
    const HomotopyStructure e = abelian_acting(s, dx);
    const HomotopyStructure e1 = abelian_structure(GradedSpace("E", {{"x0", dx}}));

    std::vector<std::pair<int, int>> unknowns;
    for (int j = 0; j < V.dim(); ++j)
        for (int i = 0; i < V.dim(); ++i)
            if (V.degree(i) == V.degree(j) + dx + 1) unknowns.push_back({j, i});
    const int n = static_cast<int>(unknowns.size());
    const CoderDgla dgla(v, bound);
    std::map<RowKey, std::map<int, Scalar>> act_rows, coh_rows;
    auto elementary = [&](int u) {
        MultiMap d(V, V, 1, dx + 1, Flavor::Symmetric);
        d.set({unknowns[static_cast<std::size_t>(u)].first}, unknowns[static_cast<std::size_t>(u)].second, 1);
        return d;
    };
    for (int u = 0; u < n; ++u) {
        const MultiMap d = elementary(u);
        add_rows(act_rows, coderivation_residuals(dgla.differential(lift_sym_coderivation(V, {d}, dx + 1, bound)), "d"),
                 u, "a");
        add_rows(coh_rows, check_coherence(derivation_action(e1, v, d, {Scalar(1)}), bound), u, "c");
    }
    std::map<RowKey, std::map<int, Scalar>> both = act_rows;
    both.insert(coh_rows.begin(), coh_rows.end());
    const auto kernel = nullspace(dense(central ? both : act_rows, n), n);
    if (kernel.empty()) return std::nullopt;
    std::vector<Scalar> coeffs = combine(s, kernel, static_cast<std::size_t>(n));
    if (is_zero(coeffs)) return std::nullopt;
    if (!central) {
        bool violates = false;
        for (const auto& [key, row] : coh_rows) {
            Scalar acc;
            for (const auto& [j, c] : row) acc += c * coeffs[static_cast<std::size_t>(j)];
            violates = violates || sgn(acc) != 0;
        }
        if (!violates) return std::nullopt;
    }
    MultiMap d(V, V, 1, dx + 1, Flavor::Symmetric);
    for (int u = 0; u < n; ++u)
        if (sgn(coeffs[static_cast<std::size_t>(u)]) != 0)
            d.set({unknowns[static_cast<std::size_t>(u)].first}, unknowns[static_cast<std::size_t>(u)].second,
                  coeffs[static_cast<std::size_t>(u)]);
    std::vector<Scalar> f;
    for (int i = 0; i < e.space().dim(); ++i) f.push_back(s.nonzero_rational());
    ActionFamily action = derivation_action(e, v, d, f);
    if (!check_action(action, bound).ok()) return std::nullopt;
    return ActionSample{central ? "central-derivation" : "derivation", central ? "coherent" : "violating", action};
}

std::optional<ActionSample> sparse_sample(Sampler& s, int bound) {
    const HomotopyStructure e = sample_structure(s, "E", "x", false);
    const HomotopyStructure v = sample_structure(s, "V", "v", false);
    const GradedSpace sum = direct_sum(e.space(), v.space());
    const int off = e.space().dim();
    std::map<std::pair<int, int>, MultiMap> comps;
    for (int k = 1; k <= 2; ++k)
        for (int n = 1; k + n <= 3; ++n) {
            MultiMap m = action_component(sum, v.space(), k, n);
            for (const Word& x : symmetric_words(e.space(), k))
                for (const Word& w : symmetric_words(v.space(), n))
                    for (int j = 0; j < v.space().dim(); ++j)
                        if (v.space().degree(j) == word_degree(e.space(), x) + word_degree(v.space(), w) + 1 &&
                            s.chance(0.3))
                            m.set(concat(x, shift_indices(w, off)), j, s.nonzero_rational());
            if (!m.is_zero()) comps.emplace(std::pair{k, n}, std::move(m));
        }
    if (comps.empty()) return std::nullopt;
    ActionFamily action(e, v, comps);
    if (!check_action(action, bound).ok()) return std::nullopt;
    return ActionSample{"sparse", "", action};
}

}  // namespace

std::vector<ActionSample> action_corpus(std::uint64_t seed, int count, int bound) {
    Sampler s(seed);
    std::vector<ActionSample> out;
    for (int i = 0; static_cast<int>(out.size()) < count; ++i) {
        std::optional<ActionSample> sample;
        while (!sample) {
            switch (i % 6) {
                case 0:
                case 1: sample = derivation_sample(s, true, bound); break;
                case 2: sample = derivation_sample(s, false, bound); break;
                case 3: sample = ActionSample{"adjoint-representation", "", adjoint_representation(sample_structure(s, "E", "x", true))}; break;
                case 4: sample = ActionSample{"adjoint-action", "", adjoint_action(sample_structure(s, "E", "x", true))}; break;
                default: sample = sparse_sample(s, bound); break;
            }
        }
        out.push_back(std::move(*sample));
    }
    return out;
}

namespace {

ActionFamily heisenberg_action() {
    const HomotopyStructure e = abelian_structure(GradedSpace("E", {{"x", -1}}));
    const HomotopyStructure v = heisenberg();
    MultiMap c = action_component(direct_sum(e.space(), v.space()), v.space(), 1, 1);
    c.set({0, 1}, 2, 1);
    return ActionFamily(e, v, {{{1, 1}, c}});
}

MultiMap near_identity(Sampler& s, const GradedSpace& v, const GradedSpace& e, double noise) {
    MultiMap t = random_multimap(s, v, e, 1, 0, Flavor::Plain, noise);
    const Scalar lambda = s.small_rational();
    MultiMap out(v, e, 1, 0, Flavor::Plain);
    for (const auto& [w, row] : t.rows()) out.add(w, row);
    for (int i = 0; i < v.dim(); ++i) out.add({i}, i, lambda);
    return out;
}

std::vector<MultiMap> components_with_tail(Sampler& s, MultiMap t1, double tail) {
    std::vector<MultiMap> comps{std::move(t1)};
    if (s.chance(tail)) comps.push_back(random_multimap(s, comps[0].source(), comps[0].target(), 2, 0, Flavor::Plain, 0.2));
    return comps;
}

}  // namespace

std::vector<TensorSample> tensor_corpus(std::uint64_t seed, int count) {
    Sampler s(seed);
    std::vector<TensorSample> out;
    const ActionFamily heis = heisenberg_action();
    for (int i = 0; static_cast<int>(out.size()) < count; ++i) {
        switch (i % 4) {
            case 0: {
                const GradedSpace& V = heis.on().space();
                const GradedSpace& E = heis.acting().space();
                MultiMap t(V, E, 1, 0, Flavor::Plain);
                t.add({0}, 0, s.small_rational());
                t.add({1}, 0, s.small_rational());
                if (s.chance(0.3)) t.add({2}, 0, s.nonzero_rational());
                out.push_back({"heisenberg", heis, EmbeddingTensor(V, E, components_with_tail(s, t, 0.2))});
                break;
            }
            case 1:
            case 2: {
                const HomotopyStructure e = sample_structure(s, "E", "x", true);
                ActionFamily a = i % 4 == 1 ? adjoint_representation(e) : adjoint_action(e);
                if (i % 4 == 2 && !check_coherence(a, 4).ok()) break;
                MultiMap t = near_identity(s, e.space(), e.space(), s.chance(0.5) ? 0.0 : 0.2);
                out.push_back({i % 4 == 1 ? "adjoint-representation" : "adjoint-action", a,
                               EmbeddingTensor(e.space(), e.space(), components_with_tail(s, t, 0.15))});
                break;
            }
            default: {
                std::optional<ActionSample> a = derivation_sample(s, true, 4);
                if (!a) break;
                const GradedSpace& V = a->action.on().space();
                const GradedSpace& E = a->action.acting().space();
                MultiMap t = random_multimap(s, V, E, 1, 0, Flavor::Plain, 0.3);
                out.push_back({a->family, a->action, EmbeddingTensor(V, E, components_with_tail(s, t, 0.2))});
                break;
            }
        }
    }
    return out;
}

std::vector<MultiMap> strict_pool(const HomotopyStructure& e) {
    const GradedSpace& E = e.space();
    std::vector<std::pair<int, int>> slots;
    for (int j = 0; j < E.dim(); ++j)
        for (int i = 0; i < E.dim(); ++i)
            if (E.degree(i) == E.degree(j)) slots.push_back({j, i});
    std::vector<MultiMap> out;
    std::vector<int> digits(slots.size(), 0);
    while (true) {
        MultiMap f(E, E, 1, 0, Flavor::Plain);
        for (std::size_t k = 0; k < slots.size(); ++k)
            if (digits[k] != 0) f.set({slots[k].first}, slots[k].second, digits[k] == 1 ? 1 : -1);
        if (adjoint_strict_check(e, f).ok()) out.push_back(std::move(f));
        std::size_t k = 0;
        while (k < digits.size() && digits[k] == 2) digits[k++] = 0;
        if (k == digits.size()) break;
        ++digits[k];
    }
    return out;
}

}  // namespace linfty
