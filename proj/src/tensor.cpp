#include "linfty/tensor.hpp"

#include <algorithm>
#include <future>
#include <set>

#include "linfty/coalgebra.hpp"
#include "linfty/errors.hpp"
#include "linfty/linalg.hpp"

namespace linfty {

namespace {

Word slice(const Word& w, std::size_t from, std::size_t to) {
    return Word(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

Vector unit(int i) { return Vector{{i, Scalar(1)}}; }

bool pure_v(const Word& u, int off) {
    return std::all_of(u.begin(), u.end(), [off](int c) { return c >= off; });
}

Vector e_part(const Vector& v, int off) {
    Vector out;
    for (const auto& [i, x] : v)
        if (i < off) out.emplace(i, x);
    return out;
}

void require_shape(const EmbeddingTensor& t, const ActionFamily& phi) {
    if (!(t.source() == phi.on().space()) || !(t.target() == phi.acting().space()))
        throw InputError("tensor spaces do not match the action");
}

// T_bullet extended linearly to a chain of V-words.
Vector tensor_on_chain(const EmbeddingTensor& t, const Chain& c) {
    Vector out;
    for (const auto& [w, x] : c) accumulate(out, t.eval(w), x);
    return out;
}

// sum over y in T(prefix) of c_y Phi(y; rest).
Vector phi_of_image(const ActionFamily& phi, const Comorphism& T, const Word& prefix, const Word& rest) {
    Vector out;
    for (const auto& [y, c] : T.apply(prefix)) accumulate(out, phi.phi(y, rest), c);
    return out;
}

}  // namespace

EmbeddingTensor::EmbeddingTensor(GradedSpace v, GradedSpace e, std::vector<MultiMap> components)
    : v_(std::move(v)), e_(std::move(e)), components_(std::move(components)) {
    for (std::size_t k = 0; k < components_.size(); ++k) {
        const MultiMap& m = components_[k];
        if (m.arity() != static_cast<int>(k + 1)) throw InputError("tensor components must be listed by arity");
        if (m.degree() != 0) throw InputError("tensor components must have degree 0");
        if (!(m.source() == v_) || !(m.target() == e_)) throw InputError("tensor component spaces do not match");
    }
}

bool EmbeddingTensor::strict() const {
    for (std::size_t k = 1; k < components_.size(); ++k)
        if (!components_[k].is_zero()) return false;
    return true;
}

bool EmbeddingTensor::symmetric() const {
    for (const MultiMap& m : components_)
        if (!(expand_plain(symmetrize(m)) == expand_plain(m))) return false;
    return true;
}

Vector EmbeddingTensor::eval(const Word& w) const {
    if (w.empty() || w.size() > components_.size()) return {};
    return components_[w.size() - 1].eval(w);
}

Comorphism EmbeddingTensor::comorphism(int bound) const {
    return lift_comorphism(v_, e_, components_, Coalgebra::Zinbiel, bound);
}

EmbeddingTensor zero_tensor(const GradedSpace& v, const GradedSpace& e) { return EmbeddingTensor(v, e, {}); }

EmbeddingTensor strict_tensor(const MultiMap& t1) {
    if (t1.arity() != 1) throw InputError("strict tensors are unary");
    return EmbeddingTensor(t1.source(), t1.target(), {t1});
}

EmbeddingTensor operator+(const EmbeddingTensor& a, const EmbeddingTensor& b) {
    if (!(a.source() == b.source()) || !(a.target() == b.target())) throw InputError("cannot add tensors on different spaces");
    std::vector<MultiMap> out;
    const int n = std::max(a.max_arity(), b.max_arity());
    for (int k = 1; k <= n; ++k) {
        MultiMap m(a.source(), a.target(), k, 0, Flavor::Plain);
        for (const EmbeddingTensor* t : {&a, &b})
            if (k <= t->max_arity()) {
                const MultiMap plain = expand_plain(t->components()[static_cast<std::size_t>(k - 1)]);
                for (const auto& [w, row] : plain.rows()) m.add(w, row);
            }
        out.push_back(std::move(m));
    }
    return EmbeddingTensor(a.source(), a.target(), std::move(out));
}

Coderivation tensor_coderivation(const EmbeddingTensor& t, const ActionFamily& phi, int bound) {
    require_shape(t, phi);
    const int off = phi.offset();
    return Coderivation(phi.sum_space(), Coalgebra::Zinbiel, 0, bound, [t, off](const Word& u) {
        return pure_v(u, off) ? t.eval(shift_indices(u, -off)) : Vector{};
    });
}

Comorphism extend_tensor(const EmbeddingTensor& t, const ActionFamily& phi, int bound) {
    require_shape(t, phi);
    const int off = phi.offset();
    return Comorphism(phi.sum_space(), phi.sum_space(), Coalgebra::Zinbiel, bound, [t, off](const Word& u) {
        Vector out = u.size() == 1 ? unit(u[0]) : Vector{};
        if (pure_v(u, off)) accumulate(out, t.eval(shift_indices(u, -off)), Scalar(1));
        return out;
    });
}

HomotopyStructure descendent(const EmbeddingTensor& t, const ActionFamily& phi, int bound) {
    require_shape(t, phi);
    const GradedSpace& V = phi.on().space();
    const Comorphism T = t.comorphism(bound);
    std::vector<MultiMap> brackets;
    for (int n = 1; n <= bound; ++n) {
        MultiMap q(V, V, n, 1, Flavor::Plain);
        for (const Word& w : all_words(V.dim(), n)) {
            Vector value = phi.on().eval(w);
            for (int k = 1; k < n; ++k)
                accumulate(value, phi_of_image(phi, T, slice(w, 0, static_cast<std::size_t>(k)),
                                               slice(w, static_cast<std::size_t>(k), w.size())),
                           Scalar(1));
            for (const auto& [i, x] : value) q.set(w, i, x);
        }
        brackets.push_back(std::move(q));
    }
    return HomotopyStructure(V, Flavor::Plain, bound, brackets);
}

Report check_embedding_explicit(const EmbeddingTensor& t, const ActionFamily& phi, int bound) {
    require_shape(t, phi);
    const GradedSpace& V = phi.on().space();
    const Comorphism T = t.comorphism(bound);
    const Coderivation MV = phi.on().zinbiel_codifferential(bound);
    Report report{V, phi.acting().space(), bound, {}};
    for (int n = 1; n <= bound; ++n)
        for (const Word& v : all_words(V.dim(), n)) {
            Vector lhs;
            for (const auto& [u, c] : T.apply(v)) accumulate(lhs, phi.acting().eval(u), c);
            Vector rhs = tensor_on_chain(t, MV.apply(v));
            for (int k = 2; k <= n; ++k) {
                const std::size_t anchor = static_cast<std::size_t>(k - 1);
                const Word head = slice(v, 0, anchor);
                const std::vector<int> deg = word_degrees(V, head);
                const Word tail = slice(v, static_cast<std::size_t>(k), v.size());
                for (int i = 0; i <= k - 2; ++i)
                    for (const Permutation& sigma : unshuffles({i, k - i - 1})) {
                        const Word moved = sigma.apply(head);
                        const Word left = slice(moved, 0, static_cast<std::size_t>(i));
                        const Scalar c = koszul_sign(sigma, deg) * sign_of(word_degree(V, left));
                        for (int j = i + 1; j <= k - 1; ++j) {
                            const Word prefix = slice(moved, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                            Word rest = slice(moved, static_cast<std::size_t>(j), anchor);
                            rest.push_back(v[anchor]);
                            const Vector inner = phi_of_image(phi, T, prefix, rest);
                            if (inner.empty()) continue;
                            std::vector<Vector> args;
                            for (int x : left) args.push_back(unit(x));
                            args.push_back(inner);
                            for (int x : tail) args.push_back(unit(x));
                            const int arity = static_cast<int>(args.size());
                            if (arity > t.max_arity()) continue;
                            accumulate(rhs, t.components()[static_cast<std::size_t>(arity - 1)].eval(args), c);
                        }
                    }
            }
            report.add({"embedding", n, v, {}, difference(lhs, rhs)});
        }
    return report;
}

Report check_embedding_mc(const EmbeddingTensor& t, const ActionFamily& phi, int bound) {
    require_shape(t, phi);
    const GradedSpace& V = phi.on().space();
    const int off = phi.offset();
    const Coderivation Q = hemisemidirect(phi).zinbiel_codifferential(bound);
    const Coderivation tt = tensor_coderivation(t, phi, bound);
    const Comorphism et = extend_tensor(t, phi, bound);
    // X_k = [..[Q, t]_c .., t]_c, k-fold.
    std::vector<Coderivation> X{Q};
    Report report{V, phi.acting().space(), bound, {}};
    for (int n = 1; n <= bound; ++n) {
        while (static_cast<int>(X.size()) < n + 3) X.push_back(commutator(X.back(), tt));
        for (const Word& v : all_words(V.dim(), n)) {
            const Word u = shift_indices(v, off);
            Vector series;
            for (int k = 0; k <= n + 1; ++k)
                accumulate(series, e_part(X[static_cast<std::size_t>(k)].restrict(u), off), Scalar(1 / factorial(k)));
            if (!e_part(X[static_cast<std::size_t>(n + 2)].restrict(u), off).empty())
                throw InternalConsistencyError("commutator series with t does not terminate on (" +
                                               word_text(V, v) + ")");
            const Chain image = Q.apply(et.apply(u));
            Vector closed = e_part(Q.restrict(et.apply(u)), off);
            accumulate(closed, tt.restrict(image), Scalar(-1));
            if (series != closed)
                throw InternalConsistencyError("series and p_E(Qe^t - tQe^t) disagree on (" + word_text(V, v) + ")");
            report.add({"embedding", n, v, {}, series});
        }
    }
    return report;
}

EmbeddingVerdict check_embedding(const EmbeddingTensor& t, const ActionFamily& phi, int bound) {
    auto a = std::async(std::launch::async, [&] { return check_embedding_explicit(t, phi, bound); });
    auto b = std::async(std::launch::async, [&] { return check_embedding_mc(t, phi, bound); });
    EmbeddingVerdict out{a.get(), b.get()};
    if (out.explicit_route.residuals != out.mc_route.residuals)
        throw InternalConsistencyError("explicit and Maurer-Cartan embedding routes disagree");
    return out;
}

Report check_descendent_morphism(const EmbeddingTensor& t, const ActionFamily& phi, int bound) {
    return check_loday_morphism(t.components(), descendent(t, phi, bound), lie_to_loday(phi.acting()), bound);
}

Report restriction_lemma_check(const EmbeddingTensor& t, const ActionFamily& phi, int bound) {
    require_shape(t, phi);
    const GradedSpace& V = phi.on().space();
    const int off = phi.offset();
    const Coderivation Q = hemisemidirect(phi).zinbiel_codifferential(bound);
    const Comorphism et = extend_tensor(t, phi, bound);
    const HomotopyStructure q = descendent(t, phi, bound);
    auto P1 = [&](const Word& w) {
        Chain out;
        for (const auto& [u, c] : Q.apply(et.apply(shift_indices(w, off))))
            if (pure_v(u, off)) accumulate(out, shift_indices(u, -off), c);
        return out;
    };
    Report report{V, V, bound, {}};
    for (int n = 1; n <= bound; ++n)
        for (const Word& w : all_words(V.dim(), n)) {
            const Chain image = P1(w);
            report.add({"bracket", n, w, {}, difference(project(image), q.eval(w))});
            TensorChain defect = coproduct_of(V, image, zinbiel_coproduct);
            for (const auto& [ab, c] : zinbiel_coproduct(V, w)) {
                for (const auto& [b, x] : P1(ab.second))
                    accumulate(defect, std::pair{ab.first, b}, Scalar(-c * x * sign_of(word_degree(V, ab.first))));
                for (const auto& [a, x] : P1(ab.first)) accumulate(defect, std::pair{a, ab.second}, Scalar(-c * x));
            }
            for (const auto& [ab, c] : defect)
                report.add({"coleibniz", n, concat(concat(w, ab.first), ab.second),
                            {n, static_cast<int>(ab.first.size()), static_cast<int>(ab.second.size())},
                            Vector{{0, c}}});
        }
    return report;
}

namespace {

void require_unary_endo(const HomotopyStructure& e, const MultiMap& f) {
    if (f.arity() != 1 || f.degree() != 0 || !(f.source() == e.space()) || !(f.target() == e.space()))
        throw InputError("expected a degree-zero endomorphism of " + e.space().name());
}

Vector apply_unary(const MultiMap& f, const Vector& v) {
    Vector out;
    for (const auto& [i, x] : v) accumulate(out, f.eval(Word{i}), x);
    return out;
}

}  // namespace

Report adjoint_strict_check(const HomotopyStructure& e, const MultiMap& t1) {
    require_unary_endo(e, t1);
    const GradedSpace& E = e.space();
    Report report{E, E, e.max_arity(), {}};
    const MultiMap l1 = e.bracket(1);
    for (int x = 0; x < E.dim(); ++x)
        report.add({"chain", 1, {x}, {}, difference(l1.eval({apply_unary(t1, unit(x))}), apply_unary(t1, l1.eval(Word{x})))});
    for (int n = 2; n <= e.max_arity(); ++n) {
        const MultiMap ln = e.bracket(n);
        for (const Word& w : all_words(E.dim(), n)) {
            std::vector<Vector> images;
            for (int x : w) images.push_back(t1.eval(Word{x}));
            const Vector lhs = ln.eval(images);
            images.back() = unit(w.back());
            report.add({"strict", n, w, {}, difference(lhs, apply_unary(t1, ln.eval(images)))});
        }
    }
    return report;
}

Report strict_algebra_compose(const HomotopyStructure& e, const MultiMap& t1, const MultiMap& t2) {
    require_unary_endo(e, t1);
    require_unary_endo(e, t2);
    Report report = adjoint_strict_check(e, compose_unary(t1, t2));
    const MultiMap id = identity_map(e.space());
    for (const MultiMap* t : {&t1, &t2}) {
        const MultiMap left = compose_unary(id, *t);
        const MultiMap right = compose_unary(*t, id);
        for (int x = 0; x < e.space().dim(); ++x) {
            report.add({"unit", 1, {x}, {}, difference(left.eval(Word{x}), t->eval(Word{x}))});
            report.add({"unit", 1, {x}, {}, difference(right.eval(Word{x}), t->eval(Word{x}))});
        }
    }
    return report;
}

Report centroid_check(const HomotopyStructure& e, const MultiMap& f) {
    require_unary_endo(e, f);
    const GradedSpace& E = e.space();
    Report report{E, E, e.max_arity(), {}};
    const MultiMap l1 = e.bracket(1);
    for (int x = 0; x < E.dim(); ++x)
        report.add({"chain", 1, {x}, {}, difference(l1.eval({apply_unary(f, unit(x))}), apply_unary(f, l1.eval(Word{x})))});
    for (int k = 1; k + 1 <= e.max_arity(); ++k)
        for (const Word& x : symmetric_words(E, k))
            for (int y = 0; y < E.dim(); ++y) {
                std::vector<Vector> args;
                for (int c : x) args.push_back(unit(c));
                args.push_back(f.eval(Word{y}));
                const Vector lhs = e.bracket(k + 1).eval(args);
                report.add({"ad", k + 1, concat(x, Word{y}), {k, 1}, difference(lhs, apply_unary(f, e.eval(concat(x, Word{y}))))});
            }
    if (report.ok())
        for (Residual r : adjoint_strict_check(e, f).residuals) {
            r.kind = "strict";
            report.add(std::move(r));
        }
    return report;
}

namespace {

std::vector<HBasis> h_basis(const GradedSpace& V, const GradedSpace& E, int bound) {
    std::vector<HBasis> out;
    for (int n = 1; n <= bound; ++n)
        for (const Word& w : all_words(V.dim(), n))
            for (int e = 0; e < E.dim(); ++e) out.push_back({w, e, E.degree(e) - word_degree(V, w)});
    return out;
}

}  // namespace

DeformationComplex::DeformationComplex(EmbeddingTensor t, ActionFamily phi, int bound)
    : t_(std::move(t)),
      phi_(std::move(phi)),
      bound_(bound),
      basis_(h_basis(phi_.on().space(), phi_.acting().space(), bound)),
      q_(hemisemidirect(phi_).zinbiel_codifferential(bound)),
      qt_(q_),
      tt_(tensor_coderivation(t_, phi_, bound)),
      matrix_(std::make_shared<MatrixCache>()) {
    for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(std::pair{basis_[i].word, basis_[i].output}, static_cast<int>(i));
    // e^{-t} Q e^{t}: p(Id - T) applied to Q(e^t u).
    const Comorphism et = extend_tensor(t_, phi_, bound);
    const int off = phi_.offset();
    const EmbeddingTensor tensor = t_;
    const Coderivation q = q_;
    qt_ = Coderivation(phi_.sum_space(), Coalgebra::Zinbiel, 1, bound, [q, et, tensor, off](const Word& u) {
        Vector out;
        for (const auto& [w, c] : q.apply(et.apply(u))) {
            if (w.size() == 1) accumulate(out, w[0], c);
            if (pure_v(w, off)) accumulate(out, tensor.eval(shift_indices(w, -off)), Scalar(-c));
        }
        return out;
    });
}

HElement DeformationComplex::basis_element(std::size_t i) const {
    const HBasis& b = basis_.at(i);
    return HElement{b.degree, {{b.word, unit(b.output)}}};
}

HElement DeformationComplex::from_tensor(const EmbeddingTensor& t) const {
    HElement out;
    for (int n = 1; n <= bound_; ++n)
        for (const Word& w : all_words(t.source().dim(), n)) {
            Vector v = t.eval(w);
            if (!v.empty()) out.values.emplace(w, std::move(v));
        }
    return out;
}

Coderivation DeformationComplex::as_coderivation(const HElement& x) const {
    const GradedSpace& V = phi_.on().space();
    const GradedSpace& E = phi_.acting().space();
    for (const auto& [w, v] : x.values)
        for (const auto& [e, c] : v)
            if (E.degree(e) - word_degree(V, w) != x.degree) throw InputError("element of h is not homogeneous");
    const int off = phi_.offset();
    const auto values = x.values;
    return Coderivation(phi_.sum_space(), Coalgebra::Zinbiel, x.degree, bound_, [values, off](const Word& u) {
        if (!pure_v(u, off)) return Vector{};
        auto it = values.find(shift_indices(u, -off));
        return it == values.end() ? Vector{} : it->second;
    });
}

HElement DeformationComplex::project(const Coderivation& c, int degree) const {
    HElement out{degree, {}};
    const int off = phi_.offset();
    for (int n = 1; n <= bound_; ++n)
        for (const Word& w : all_words(phi_.on().space().dim(), n)) {
            Vector v = e_part(c.restrict(shift_indices(w, off)), off);
            if (!v.empty()) out.values.emplace(w, std::move(v));
        }
    return out;
}

HElement DeformationComplex::derived(const std::vector<HElement>& args) const {
    Coderivation c = q_;
    int degree = 1;
    for (const HElement& x : args) {
        c = commutator(c, as_coderivation(x));
        degree += x.degree;
    }
    return project(c, degree);
}

HElement DeformationComplex::d1(const HElement& x) const {
    return project(commutator(qt_, as_coderivation(x)), x.degree + 1);
}

HElement DeformationComplex::d1_series(const HElement& x) const {
    const Coderivation xc = as_coderivation(x);
    Coderivation X = q_;
    HElement out{x.degree + 1, {}};
    for (int i = 0; i <= bound_ + 1; ++i) {
        if (i > 0) X = commutator(X, tt_);
        const HElement term = project(commutator(X, xc), x.degree + 1);
        for (const auto& [w, v] : term.values) accumulate(out.values[w], v, Scalar(1 / factorial(i)));
    }
    std::erase_if(out.values, [](const auto& kv) { return kv.second.empty(); });
    return out;
}

HElement DeformationComplex::mc_residual(const HElement& x) const {
    if (x.degree != 0) throw InputError("Maurer-Cartan candidates in h must have degree 0");
    const Coderivation xc = as_coderivation(x);
    Coderivation X = qt_;
    HElement out{1, {}};
    for (int k = 1; k <= bound_ + 1; ++k) {
        X = commutator(X, xc);
        const HElement term = project(X, 1);
        for (const auto& [w, v] : term.values) accumulate(out.values[w], v, Scalar(1 / factorial(k)));
    }
    std::erase_if(out.values, [](const auto& kv) { return kv.second.empty(); });
    return out;
}

std::vector<std::map<int, Scalar>> DeformationComplex::d1_matrix() const {
    std::call_once(matrix_->once, [this] {
        std::vector<std::map<int, Scalar>> cols(basis_.size());
        for (std::size_t i = 0; i < basis_.size(); ++i)
            for (const auto& [w, v] : d1(basis_element(i)).values)
                for (const auto& [e, c] : v) cols[i].emplace(index_.at({w, e}), c);
        matrix_->columns = std::move(cols);
    });
    return matrix_->columns;
}

Report DeformationComplex::square_zero() const {
    const auto cols = d1_matrix();
    const GradedSpace& E = phi_.acting().space();
    Report report{phi_.on().space(), E, bound_, {}};
    for (std::size_t i = 0; i < cols.size(); ++i) {
        std::map<int, Scalar> sq;
        for (const auto& [j, c] : cols[i]) accumulate(sq, cols[static_cast<std::size_t>(j)], c);
        std::map<Word, Vector> by_word;
        for (const auto& [j, c] : sq) by_word[basis_[static_cast<std::size_t>(j)].word].emplace(basis_[static_cast<std::size_t>(j)].output, c);
        const Word& in = basis_[i].word;
        for (const auto& [w, v] : by_word)
            report.add({"square " + E.symbol(basis_[i].output), static_cast<int>(w.size()), concat(in, w),
                        {static_cast<int>(in.size()), static_cast<int>(w.size())}, v});
    }
    return report;
}

CohomologyPiece DeformationComplex::cohomology(int degree, int weight) const {
    if (weight < 1 || weight > bound_) throw InputError("weight outside the truncation");
    const auto cols = d1_matrix();
    auto members = [&](int d) {
        std::vector<int> out;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].degree == d && static_cast<int>(basis_[i].word.size()) <= weight) out.push_back(static_cast<int>(i));
        return out;
    };
    auto block_rank = [&](const std::vector<int>& from, const std::vector<int>& to) {
        std::map<int, std::size_t> row_of;
        for (std::size_t r = 0; r < to.size(); ++r) row_of.emplace(to[r], r);
        Matrix m(to.size(), std::vector<Scalar>(from.size()));
        for (std::size_t c = 0; c < from.size(); ++c)
            for (const auto& [j, x] : cols[static_cast<std::size_t>(from[c])]) {
                auto it = row_of.find(j);
                if (it != row_of.end()) m[it->second][c] = x;
            }
        return from.empty() || to.empty() ? 0 : rank(m);
    };
    const std::vector<int> here = members(degree);
    CohomologyPiece piece{degree, weight, static_cast<int>(here.size()), 0, 0};
    piece.rank_out = block_rank(here, members(degree + 1));
    piece.rank_in = block_rank(members(degree - 1), here);
    return piece;
}

std::vector<CohomologyPiece> DeformationComplex::cohomology_table(int weight) const {
    d1_matrix();
    std::vector<std::future<CohomologyPiece>> jobs;
    for (int d : degrees()) jobs.push_back(std::async(std::launch::async, [this, d, weight] { return cohomology(d, weight); }));
    std::vector<CohomologyPiece> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

std::vector<int> DeformationComplex::degrees() const {
    std::set<int> out;
    for (const HBasis& b : basis_) out.insert(b.degree);
    return {out.begin(), out.end()};
}

Report DeformationComplex::as_report(const HElement& x, const std::string& kind) const {
    Report report{phi_.on().space(), phi_.acting().space(), bound_, {}};
    for (const auto& [w, v] : x.values) report.add({kind, static_cast<int>(w.size()), w, {}, v});
    return report;
}

}  // namespace linfty
