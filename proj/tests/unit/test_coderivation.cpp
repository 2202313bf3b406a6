#include <doctest.h>

#include "linfty/coalgebra.hpp"
#include "linfty/coderivation.hpp"
#include "linfty/errors.hpp"
#include "linfty/homotopy.hpp"
#include "linfty/random.hpp"

using namespace linfty;

namespace {

std::vector<MultiMap> family(Sampler& s, const GradedSpace& v, int arity, int degree, Flavor f) {
    std::vector<MultiMap> out;
    for (int k = 1; k <= arity; ++k) out.push_back(random_multimap(s, v, v, k, degree, f, 0.35));
    return out;
}

std::vector<Word> inputs(const GradedSpace& v, int max_len, bool sym) {
    std::vector<Word> out;
    for (int n = 1; n <= max_len; ++n)
        for (Word& w : sym ? symmetric_words(v, n) : all_words(v.dim(), n)) out.push_back(std::move(w));
    return out;
}

TensorChain delta(const GradedSpace& v, Coalgebra kind, const Chain& c) {
    return kind == Coalgebra::Symmetric ? coproduct_of(v, c, symmetric_coproduct) : coproduct_of(v, c, zinbiel_coproduct);
}

/// (Q (x) 1 + 1 (x) Q) applied to a tensor chain.
TensorChain leibniz(const Coderivation& q, const TensorChain& t) {
    TensorChain out;
    for (const auto& [ab, x] : t) {
        for (const auto& [a, y] : q.apply(ab.first)) accumulate(out, std::pair{a, ab.second}, Scalar(x * y));
        const int s = (q.degree() * word_degree(q.space(), ab.first)) & 1;
        for (const auto& [b, y] : q.apply(ab.second))
            accumulate(out, std::pair{ab.first, b}, Scalar(x * y * (s ? -1 : 1)));
    }
    return out;
}

void check_coleibniz(const Coderivation& q, int max_len) {
    const bool sym = q.kind() == Coalgebra::Symmetric;
    for (const Word& w : inputs(q.space(), max_len, sym)) {
        const Chain one{{w, Scalar(1)}};
        CHECK(delta(q.space(), q.kind(), q.apply(w)) == leibniz(q, delta(q.space(), q.kind(), one)));
    }
}

}  // namespace

TEST_CASE("lifted coderivations satisfy co-Leibniz") {
    Sampler rng(3);
    for (int i = 0; i < 25; ++i) {
        const GradedSpace v = random_space(rng, "V", "v", 3, -1, 1);
        const int degree = rng.integer(0, 1);
        check_coleibniz(lift_sym_coderivation(v, family(rng, v, 3, degree, Flavor::Symmetric), degree, 4), 4);
        check_coleibniz(lift_zin_coderivation(v, family(rng, v, 3, degree, Flavor::Plain), degree, 4), 4);
    }
}

TEST_CASE("restrictions of a lift give back the family") {
    Sampler rng(5);
    const GradedSpace v = random_space(rng, "V", "v", 3, -1, 1);
    const auto sym = family(rng, v, 3, 1, Flavor::Symmetric);
    CHECK(restrictions_of(lift_sym_coderivation(v, sym, 1, 3), 3) == sym);
    const auto plain = family(rng, v, 3, 1, Flavor::Plain);
    const auto back = restrictions_of(lift_zin_coderivation(v, plain, 1, 3), 3);
    for (int k = 0; k < 3; ++k) CHECK(back[static_cast<std::size_t>(k)] == expand_plain(plain[static_cast<std::size_t>(k)]));
}

TEST_CASE("symmetrization intertwines the Zinbiel and symmetric lifts") {
    Sampler rng(9);
    for (int i = 0; i < 10; ++i) {
        const GradedSpace v = random_space(rng, "V", "v", 3, -1, 1);
        const auto f = family(rng, v, 3, 1, Flavor::Symmetric);
        const Coderivation qs = lift_sym_coderivation(v, f, 1, 4);
        const Coderivation qz = lift_zin_coderivation(v, f, 1, 4);
        for (const Word& w : inputs(v, 4, false)) {
            const Chain pw = symmetric_normal_form(v, Chain{{w, Scalar(1)}});
            CHECK(symmetric_normal_form(v, qz.apply(w)) == qs.apply(pw));
        }
    }
}

TEST_CASE("comorphisms intertwine the coproducts") {
    Sampler rng(13);
    for (int i = 0; i < 10; ++i) {
        const GradedSpace v = random_space(rng, "V", "v", 2, -1, 1);
        const GradedSpace e = random_space(rng, "E", "e", 3, -1, 1);
        for (Coalgebra kind : {Coalgebra::Zinbiel, Coalgebra::Symmetric}) {
            const Flavor f = kind == Coalgebra::Symmetric ? Flavor::Symmetric : Flavor::Plain;
            std::vector<MultiMap> comps;
            for (int k = 1; k <= 3; ++k) comps.push_back(random_multimap(rng, v, e, k, 0, f, 0.5));
            const Comorphism F = lift_comorphism(v, e, comps, kind, 4);
            for (const Word& w : inputs(v, 4, kind == Coalgebra::Symmetric)) {
                TensorChain rhs;
                for (const auto& [ab, x] : delta(v, kind, Chain{{w, Scalar(1)}}))
                    for (const auto& [a, y] : F.apply(ab.first))
                        for (const auto& [b, z] : F.apply(ab.second)) accumulate(rhs, std::pair{a, b}, Scalar(x * y * z));
                CHECK(delta(e, kind, F.apply(w)) == rhs);
            }
        }
    }
}

TEST_CASE("comorphism with only a linear part is a tensor power") {
    const GradedSpace v("V", {{"a", 0}, {"b", 1}});
    MultiMap f1(v, v, 1, 0, Flavor::Plain);
    f1.set({0}, 0, Scalar(2));
    f1.set({1}, 1, Scalar(-1));
    const Comorphism F = lift_comorphism(v, v, {f1}, Coalgebra::Zinbiel, 3);
    for (const Word& w : inputs(v, 3, false)) {
        std::vector<Vector> factors;
        for (int x : w) factors.push_back(f1.eval(Word{x}));
        CHECK(F.apply(w) == tensor_product(factors));
    }
    const Comorphism id = identity_comorphism(v, Coalgebra::Zinbiel, 3);
    CHECK(id.apply(Word{1, 0, 1}) == Chain{{{1, 0, 1}, Scalar(1)}});
}

TEST_CASE("composition of comorphisms") {
    Sampler rng(17);
    const GradedSpace v = random_space(rng, "V", "v", 2, 0, 1);
    std::vector<MultiMap> f, g;
    for (int k = 1; k <= 3; ++k) {
        f.push_back(random_multimap(rng, v, v, k, 0, Flavor::Plain, 0.5));
        g.push_back(random_multimap(rng, v, v, k, 0, Flavor::Plain, 0.5));
    }
    const Comorphism F = lift_comorphism(v, v, f, Coalgebra::Zinbiel, 3);
    const Comorphism G = lift_comorphism(v, v, g, Coalgebra::Zinbiel, 3);
    const Comorphism FG = compose(F, G);
    for (const Word& w : inputs(v, 3, false)) CHECK(FG.apply(w) == F.apply(G.apply(w)));
}

TEST_CASE("commutators") {
    Sampler rng(19);
    for (int i = 0; i < 10; ++i) {
        const GradedSpace v = random_space(rng, "V", "v", 3, -1, 1);
        const int dq = rng.integer(0, 1), dp = rng.integer(0, 1);
        const Coderivation q = lift_zin_coderivation(v, family(rng, v, 2, dq, Flavor::Plain), dq, 3);
        const Coderivation p = lift_zin_coderivation(v, family(rng, v, 2, dp, Flavor::Plain), dp, 3);
        const Coderivation qp = commutator(q, p), pq = commutator(p, q);
        CHECK(qp.degree() == dq + dp);
        const Scalar s = (dq * dp) & 1 ? Scalar(1) : Scalar(-1);
        for (const Word& w : inputs(v, 3, false)) {
            CHECK(qp.apply(w) == scaled(pq.apply(w), s));
            Chain expected = q.apply(p.apply(w));
            accumulate(expected, p.apply(q.apply(w)), Scalar((dq * dp) & 1 ? 1 : -1));
            CHECK(qp.apply(w) == expected);
        }
        check_coleibniz(qp, 3);
        if (dq == 0)
            for (const Word& w : inputs(v, 3, false)) CHECK(commutator(q, q).apply(w).empty());
    }
    const GradedSpace v("V", {{"a", 0}});
    const Coderivation a = lift_zin_coderivation(v, {identity_map(v)}, 0, 2);
    const Coderivation b = lift_zin_coderivation(v, {identity_map(v)}, 0, 3);
    CHECK_THROWS_AS(commutator(a, b), InputError);
}

TEST_CASE("balavoine bracket on unary maps is the matrix commutator") {
    Sampler rng(23);
    for (int i = 0; i < 10; ++i) {
        const GradedSpace v = random_space(rng, "V", "v", 3, -1, 1);
        const MultiMap f = random_multimap(rng, v, v, 1, 1, Flavor::Plain, 0.5);
        const MultiMap g = random_multimap(rng, v, v, 1, 0, Flavor::Plain, 0.5);
        const auto br = balavoine({f}, {g}, 2);
        MultiMap expected = compose_unary(f, g);
        const MultiMap gf = compose_unary(g, f);
        for (const auto& [w, row] : gf.rows()) expected.add(w, scaled(row, Scalar(-1)));
        CHECK(br[0] == expected);
        CHECK(br[1].is_zero());
    }
}

TEST_CASE("shifted bracket relates to the commutator by a sign") {
    Sampler rng(29);
    const GradedSpace v = random_space(rng, "V", "v", 2, -1, 1);
    const Coderivation q = lift_sym_coderivation(v, family(rng, v, 2, 1, Flavor::Symmetric), 1, 3);
    const Coderivation p = lift_sym_coderivation(v, family(rng, v, 2, 0, Flavor::Symmetric), 0, 3);
    // |Q|' = 0 and |P|' = -1: (-1)^{1}(QP - (-1)^{0} PQ) = -[Q, P]_c.
    const Coderivation s = shifted_bracket(q, p), c = commutator(q, p);
    for (const Word& w : inputs(v, 3, true)) CHECK(s.apply(w) == scaled(c.apply(w), Scalar(-1)));
}
