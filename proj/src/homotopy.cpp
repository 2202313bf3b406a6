#include "linfty/homotopy.hpp"

#include "linfty/errors.hpp"

namespace linfty {

namespace {

Vector unit(int i) { return Vector{{i, Scalar(1)}}; }

std::vector<Vector> units(const Word& w) {
    std::vector<Vector> out;
    out.reserve(w.size());
    for (int i : w) out.push_back(unit(i));
    return out;
}

Word slice(const Word& w, std::size_t from, std::size_t to) {
    return Word(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

std::vector<Word> words_of(const GradedSpace& space, int length, bool symmetric) {
    return symmetric ? symmetric_words(space, length) : all_words(space.dim(), length);
}

void require_same(const Vector& a, const Vector& b, const GradedSpace& space, const Word& w, const char* what) {
    if (a != b)
        throw InternalConsistencyError(std::string(what) + ": routes disagree on (" + word_text(space, w) + "): " +
                                       vector_text(space, a) + " vs " + vector_text(space, b));
}

// Applies component maps family[k-1] of matching arity, or zero.
Vector eval_family(const std::vector<MultiMap>& family, const std::vector<Vector>& args) {
    for (const MultiMap& m : family)
        if (m.arity() == static_cast<int>(args.size())) return m.eval(args);
    return {};
}

Vector eval_family(const std::vector<MultiMap>& family, const Word& w) {
    for (const MultiMap& m : family)
        if (m.arity() == static_cast<int>(w.size())) return m.eval(w);
    return {};
}

// sum over compositions and increasing unshuffles of eps * m_j(F(block_1), ..., F(block_j)).
Vector composed_side(const HomotopyStructure& V, const std::vector<MultiMap>& F, const GradedSpace& source,
                     const Word& w) {
    const std::vector<int> deg = word_degrees(source, w);
    Vector out;
    for (const std::vector<int>& parts : compositions(static_cast<int>(w.size()))) {
        if (static_cast<int>(parts.size()) > V.max_arity()) continue;
        for (const Permutation& sigma : increasing_unshuffles(parts)) {
            const Word moved = sigma.apply(w);
            std::vector<Vector> factors;
            std::size_t at = 0;
            bool zero = false;
            for (int len : parts) {
                factors.push_back(eval_family(F, slice(moved, at, at + static_cast<std::size_t>(len))));
                at += static_cast<std::size_t>(len);
                if (factors.back().empty()) {
                    zero = true;
                    break;
                }
            }
            if (zero) continue;
            accumulate(out, V.bracket(static_cast<int>(parts.size())).eval(factors), koszul_sign(sigma, deg));
        }
    }
    return out;
}

void check_family(const std::vector<MultiMap>& F, const GradedSpace& source, const GradedSpace& target,
                  bool symmetric) {
    for (const MultiMap& m : F) {
        if (m.degree() != 0) throw InputError("morphism components must have degree 0");
        if (!(m.source() == source) || !(m.target() == target))
            throw InputError("morphism components do not match the given spaces");
        if (symmetric && m.flavor() != Flavor::Symmetric)
            throw InputError("Lie infinity morphism components must be symmetric");
    }
}

}  // namespace

HomotopyStructure::HomotopyStructure(GradedSpace space, Flavor flavor, int max_arity,
                                     const std::vector<MultiMap>& brackets)
    : space_(std::move(space)), flavor_(flavor), max_arity_(max_arity) {
    if (max_arity < 0) throw InputError("max_arity must be nonnegative");
    for (int k = 1; k <= max_arity; ++k) brackets_.emplace_back(space_, space_, k, 1, flavor);
    for (const MultiMap& m : brackets) {
        if (!(m.source() == space_) || !(m.target() == space_))
            throw InputError("bracket does not act on space " + space_.name());
        if (m.degree() != 1) throw InputError("brackets must have degree +1");
        if (m.arity() > max_arity)
            throw InputError("bracket of arity " + std::to_string(m.arity()) + " exceeds max_arity");
        if (flavor == Flavor::Symmetric && m.flavor() != Flavor::Symmetric)
            throw InputError("symmetric structure needs symmetric brackets");
        MultiMap& slot = brackets_[static_cast<std::size_t>(m.arity() - 1)];
        const MultiMap plain = flavor == Flavor::Plain ? expand_plain(m) : m;
        for (const auto& [w, row] : plain.rows()) slot.add(w, row);
    }
}

MultiMap HomotopyStructure::bracket(int k) const {
    if (k >= 1 && k <= max_arity_) return brackets_[static_cast<std::size_t>(k - 1)];
    return MultiMap(space_, space_, k, 1, flavor_);
}

Vector HomotopyStructure::eval(const Word& w) const {
    const int k = static_cast<int>(w.size());
    if (k < 1 || k > max_arity_) return {};
    return brackets_[static_cast<std::size_t>(k - 1)].eval(w);
}

Coderivation HomotopyStructure::codifferential(int bound) const {
    return flavor_ == Flavor::Symmetric ? lift_sym_coderivation(space_, brackets_, 1, bound)
                                        : lift_zin_coderivation(space_, brackets_, 1, bound);
}

Coderivation HomotopyStructure::zinbiel_codifferential(int bound) const {
    return lift_zin_coderivation(space_, brackets_, 1, bound);
}

HomotopyStructure abelian_structure(const GradedSpace& space, Flavor flavor) {
    return HomotopyStructure(space, flavor, 0, {});
}

Report check_lie_infinity(const HomotopyStructure& L, int bound) {
    if (L.flavor() != Flavor::Symmetric) throw InputError("check_lie_infinity needs a symmetric structure");
    const GradedSpace& V = L.space();
    const Coderivation M = L.codifferential(bound);
    Report report{V, V, bound, {}};
    for (int n = 1; n <= bound; ++n)
        for (const Word& w : symmetric_words(V, n)) {
            const std::vector<int> deg = word_degrees(V, w);
            Vector sum;
            for (int i = 1; i <= n; ++i) {
                const MultiMap outer = L.bracket(n - i + 1);
                if (outer.is_zero()) continue;
                for (const Permutation& sigma : unshuffles({i, n - i})) {
                    const Word moved = sigma.apply(w);
                    std::vector<Vector> args{L.eval(slice(moved, 0, static_cast<std::size_t>(i)))};
                    if (args[0].empty()) continue;
                    for (std::size_t j = static_cast<std::size_t>(i); j < moved.size(); ++j)
                        args.push_back(unit(moved[j]));
                    accumulate(sum, outer.eval(args), koszul_sign(sigma, deg));
                }
            }
            require_same(sum, M.restrict(M.apply(w)), V, w, "generalized Jacobi");
            report.add({"jacobi", n, w, {}, sum});
        }
    return report;
}

Report check_loday_infinity(const HomotopyStructure& L, int bound) {
    const GradedSpace& V = L.space();
    const Coderivation Q = L.zinbiel_codifferential(bound);
    Report report{V, V, bound, {}};
    for (int n = 1; n <= bound; ++n)
        for (const Word& w : all_words(V.dim(), n)) {
            Vector sum;
            for (int k = 1; k <= n; ++k) {
                const MultiMap outer = L.bracket(n - k + 1);
                if (outer.is_zero() || L.bracket(k).is_zero()) continue;
                for (int i = 0; i <= n - k; ++i) {
                    const std::size_t anchor = static_cast<std::size_t>(i + k - 1);
                    const Word head = slice(w, 0, anchor);
                    const std::vector<int> deg = word_degrees(V, head);
                    for (const Permutation& sigma : unshuffles({i, k - 1})) {
                        const Word moved = sigma.apply(head);
                        const Word left = slice(moved, 0, static_cast<std::size_t>(i));
                        Word mid = slice(moved, static_cast<std::size_t>(i), anchor);
                        mid.push_back(w[anchor]);
                        const Vector inner = L.eval(mid);
                        if (inner.empty()) continue;
                        std::vector<Vector> args = units(left);
                        args.push_back(inner);
                        for (std::size_t j = anchor + 1; j < w.size(); ++j) args.push_back(unit(w[j]));
                        const Scalar c = koszul_sign(sigma, deg) * sign_of(word_degree(V, left));
                        accumulate(sum, outer.eval(args), c);
                    }
                }
            }
            require_same(sum, Q.restrict(Q.apply(w)), V, w, "Loday identity");
            report.add({"loday", n, w, {}, sum});
        }
    return report;
}

HomotopyStructure lie_to_loday(const HomotopyStructure& L) {
    return HomotopyStructure(L.space(), Flavor::Plain, L.max_arity(), L.brackets());
}

std::vector<MultiMap> balavoine(const std::vector<MultiMap>& f, const std::vector<MultiMap>& g, int bound) {
    if (f.empty() || g.empty()) throw InputError("balavoine needs nonempty families");
    const GradedSpace& V = f.front().source();
    const Coderivation F = lift_zin_coderivation(V, f, f.front().degree(), bound);
    const Coderivation G = lift_zin_coderivation(V, g, g.front().degree(), bound);
    return restrictions_of(commutator(F, G), bound);
}

Report check_lie_morphism(const std::vector<MultiMap>& F, const HomotopyStructure& E, const HomotopyStructure& V,
                          int bound) {
    if (E.flavor() != Flavor::Symmetric || V.flavor() != Flavor::Symmetric)
        throw InputError("check_lie_morphism needs symmetric structures");
    check_family(F, E.space(), V.space(), true);
    const GradedSpace& A = E.space();
    const Coderivation ME = E.codifferential(bound);
    const Coderivation MV = V.codifferential(bound);
    const Comorphism Fc = lift_comorphism(A, V.space(), F, Coalgebra::Symmetric, bound);
    Report report{A, V.space(), bound, {}};
    for (int n = 1; n <= bound; ++n)
        for (const Word& w : symmetric_words(A, n)) {
            const std::vector<int> deg = word_degrees(A, w);
            Vector lhs;
            for (int k = 1; k <= n; ++k)
                for (const Permutation& sigma : unshuffles({k, n - k})) {
                    const Word moved = sigma.apply(w);
                    std::vector<Vector> args{E.eval(slice(moved, 0, static_cast<std::size_t>(k)))};
                    if (args[0].empty()) continue;
                    for (std::size_t j = static_cast<std::size_t>(k); j < moved.size(); ++j)
                        args.push_back(unit(moved[j]));
                    accumulate(lhs, eval_family(F, args), koszul_sign(sigma, deg));
                }
            const Vector residual = difference(lhs, composed_side(V, F, A, w));
            Vector direct;
            for (const auto& [u, x] : ME.apply(w)) accumulate(direct, eval_family(F, u), x);
            accumulate(direct, MV.restrict(Fc.apply(w)), Scalar(-1));
            require_same(residual, direct, V.space(), w, "Lie infinity morphism");
            report.add({"morphism", n, w, {}, residual});
        }
    return report;
}

Report check_loday_morphism(const std::vector<MultiMap>& F, const HomotopyStructure& E, const HomotopyStructure& V,
                            int bound) {
    check_family(F, E.space(), V.space(), false);
    const GradedSpace& A = E.space();
    const Coderivation QE = E.zinbiel_codifferential(bound);
    const Coderivation QV = V.zinbiel_codifferential(bound);
    const Comorphism Fc = lift_comorphism(A, V.space(), F, Coalgebra::Zinbiel, bound);
    Report report{A, V.space(), bound, {}};
    for (int n = 1; n <= bound; ++n)
        for (const Word& w : all_words(A.dim(), n)) {
            Vector lhs;
            for (int k = 1; k <= n; ++k)
                for (int i = 0; i <= n - k; ++i) {
                    const std::size_t anchor = static_cast<std::size_t>(i + k - 1);
                    const Word head = slice(w, 0, anchor);
                    const std::vector<int> deg = word_degrees(A, head);
                    for (const Permutation& sigma : unshuffles({i, k - 1})) {
                        const Word moved = sigma.apply(head);
                        const Word left = slice(moved, 0, static_cast<std::size_t>(i));
                        Word mid = slice(moved, static_cast<std::size_t>(i), anchor);
                        mid.push_back(w[anchor]);
                        const Vector inner = E.eval(mid);
                        if (inner.empty()) continue;
                        std::vector<Vector> args = units(left);
                        args.push_back(inner);
                        for (std::size_t j = anchor + 1; j < w.size(); ++j) args.push_back(unit(w[j]));
                        const Scalar c = koszul_sign(sigma, deg) * sign_of(word_degree(A, left));
                        accumulate(lhs, eval_family(F, args), c);
                    }
                }
            const Vector residual = difference(lhs, composed_side(V, F, A, w));
            Vector direct;
            for (const auto& [u, x] : QE.apply(w)) accumulate(direct, eval_family(F, u), x);
            accumulate(direct, QV.restrict(Fc.apply(w)), Scalar(-1));
            require_same(residual, direct, V.space(), w, "Loday infinity morphism");
            report.add({"morphism", n, w, {}, residual});
        }
    return report;
}

namespace {

void require_degree_zero(const GradedSpace& space, const Vector& e) {
    for (const auto& [i, x] : e)
        if (space.degree(i) != 0) throw InputError("Maurer-Cartan candidates must have degree 0");
}

}  // namespace

Vector mc_residual(const HomotopyStructure& L, const Vector& e) {
    require_degree_zero(L.space(), e);
    Vector out;
    for (int k = 1; k <= L.max_arity(); ++k)
        accumulate(out, L.bracket(k).eval(std::vector<Vector>(static_cast<std::size_t>(k), e)),
                   Scalar(1 / factorial(k)));
    return out;
}

HomotopyStructure twist(const HomotopyStructure& L, const Vector& e) {
    if (L.flavor() != Flavor::Symmetric) throw InputError("twisting needs a symmetric structure");
    if (!mc_residual(L, e).empty()) throw InputError("twisting element is not a Maurer-Cartan element");
    const GradedSpace& V = L.space();
    std::vector<MultiMap> out;
    for (int k = 1; k <= L.max_arity(); ++k) {
        MultiMap m(V, V, k, 1, Flavor::Symmetric);
        for (const Word& w : symmetric_words(V, k)) {
            Vector value;
            for (int i = 0; k + i <= L.max_arity(); ++i) {
                std::vector<Vector> args(static_cast<std::size_t>(i), e);
                for (int x : w) args.push_back(unit(x));
                accumulate(value, L.bracket(k + i).eval(args), Scalar(1 / factorial(i)));
            }
            for (const auto& [j, x] : value) m.set(w, j, x);
        }
        out.push_back(std::move(m));
    }
    return HomotopyStructure(V, Flavor::Symmetric, L.max_arity(), out);
}

HomotopyStructure end_dgla(const GradedSpace& space, const MultiMap& d) {
    if (d.arity() != 1 || d.degree() != 1 || !(d.source() == space) || !(d.target() == space))
        throw InputError("differential must be a degree +1 endomorphism");
    const int n = space.dim();
    // d as a matrix: dm[c][b] = coefficient of c in d(b).
    std::vector<std::vector<Scalar>> dm(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n)));
    for (int b = 0; b < n; ++b)
        for (const auto& [c, x] : d.eval(Word{b})) dm[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)] = x;
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) {
            Scalar s = 0;
            for (int c = 0; c < n; ++c) s += dm[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] * dm[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)];
            if (sgn(s) != 0) throw InputError("differential does not square to zero");
        }
    std::vector<BasisElement> basis;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            basis.push_back({space.symbol(a) + ">" + space.symbol(b), space.degree(a) - space.degree(b) - 1});
    const GradedSpace end("End(" + space.name() + ")", basis);
    auto idx = [n](int a, int b) { return a * n + b; };
    // Composition E_ab o E_cd = delta_bc E_ad.
    auto compose = [&](int phi, int psi) -> Vector {
        const int a = phi / n, b = phi % n, c = psi / n, e = psi % n;
        return b == c ? Vector{{idx(a, e), Scalar(1)}} : Vector{};
    };
    MultiMap l1(end, end, 1, 1, Flavor::Symmetric);
    for (int phi = 0; phi < end.dim(); ++phi) {
        const int a = phi / n, b = phi % n;
        Vector v;
        for (int c = 0; c < n; ++c) {
            accumulate(v, idx(c, b), Scalar(-dm[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)]));
            accumulate(v, idx(a, c), Scalar(sign_of(end.degree(phi) + 1) * dm[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)]));
        }
        for (const auto& [j, x] : v) l1.set(Word{phi}, j, x);
    }
    MultiMap l2(end, end, 2, 1, Flavor::Symmetric);
    for (const Word& w : symmetric_words(end, 2)) {
        const int phi = w[0], psi = w[1];
        const int p = end.degree(phi) + 1, q = end.degree(psi) + 1;
        Vector v = compose(phi, psi);
        accumulate(v, compose(psi, phi), Scalar(-sign_of(p * q)));
        for (const auto& [j, x] : v) l2.set(w, j, Scalar(sign_of(p) * x));
    }
    return HomotopyStructure(end, Flavor::Symmetric, 2, {l1, l2});
}

MultiMap endomorphism_of(const HomotopyStructure& end, const GradedSpace& space, const Vector& phi) {
    const int n = space.dim();
    if (end.space().dim() != n * n) throw InputError("endomorphism space does not match");
    std::optional<int> degree;
    for (const auto& [i, x] : phi) {
        const int d = end.space().degree(i) + 1;
        if (degree && *degree != d) throw InputError("endomorphism is not homogeneous");
        degree = d;
    }
    MultiMap out(space, space, 1, degree.value_or(0), Flavor::Plain);
    for (const auto& [i, x] : phi) out.add(Word{i % n}, i / n, x);
    return out;
}

Report check_representation(const std::vector<MultiMap>& components, const HomotopyStructure& E,
                            const GradedSpace& space, const MultiMap& d, int bound) {
    return check_lie_morphism(components, E, end_dgla(space, d), bound);
}

CoderDgla::CoderDgla(const HomotopyStructure& V, int bound) : m_(V.codifferential(bound)), bound_(bound) {
    if (V.flavor() != Flavor::Symmetric) throw InputError("coderivation DGLA needs a symmetric structure");
}

Coderivation CoderDgla::differential(const Coderivation& q) const { return scaled(commutator(m_, q), Scalar(-1)); }

Coderivation CoderDgla::bracket(const Coderivation& q, const Coderivation& p) const {
    return shifted_bracket(q, p);
}

Report coderivation_residuals(const Coderivation& q, const std::string& kind) {
    Report report{q.space(), q.space(), q.bound(), {}};
    const bool sym = q.kind() == Coalgebra::Symmetric;
    for (int n = 1; n <= q.bound(); ++n)
        for (const Word& w : words_of(q.space(), n, sym)) report.add({kind, n, w, {}, q.restrict(w)});
    return report;
}

}  // namespace linfty
