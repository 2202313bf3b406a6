#include <doctest.h>

#include <array>

#include "linfty/action.hpp"
#include "linfty/errors.hpp"
#include "linfty/random.hpp"

using namespace linfty;

namespace {

using Mat = std::vector<std::vector<Scalar>>;

const GradedSpace kPlane("V", {{"u", -1}, {"w", -1}});

Mat mul(const Mat& a, const Mat& b) {
    Mat c(a.size(), std::vector<Scalar>(b[0].size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b[0].size(); ++j)
            for (std::size_t k = 0; k < b.size(); ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
}

/// Phi(x; v) = M_x v on an abelian plane.
ActionFamily matrix_action(const HomotopyStructure& e, const std::vector<Mat>& m) {
    const HomotopyStructure v = abelian_structure(kPlane);
    const GradedSpace sum = direct_sum(e.space(), kPlane);
    const int off = e.space().dim();
    MultiMap c = action_component(sum, kPlane, 1, 1);
    for (int x = 0; x < off; ++x)
        for (int col = 0; col < 2; ++col)
            for (int row = 0; row < 2; ++row)
                if (sgn(m[static_cast<std::size_t>(x)][static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]) != 0)
                    c.set({x, col + off}, row, m[static_cast<std::size_t>(x)][static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]);
    std::map<std::pair<int, int>, MultiMap> comps;
    if (!c.is_zero()) comps.emplace(std::pair{1, 1}, c);
    return ActionFamily(e, v, comps);
}

/// M_{l_2(x, y)} = M_x M_y - M_y M_x for all basis pairs.
bool is_representation(const HomotopyStructure& e, const std::vector<Mat>& m) {
    const int n = e.space().dim();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Mat lhs(2, std::vector<Scalar>(2));
            if (x != y)
                for (const auto& [z, c] : e.bracket(2).eval(Word{x, y}))
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j)
                            lhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += c * m[static_cast<std::size_t>(z)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const Mat xy = mul(m[static_cast<std::size_t>(x)], m[static_cast<std::size_t>(y)]);
            const Mat yx = mul(m[static_cast<std::size_t>(y)], m[static_cast<std::size_t>(x)]);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    if (lhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != xy[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] - yx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                        return false;
        }
    return true;
}

ActionFamily heisenberg_action(bool central) {
    const HomotopyStructure e = abelian_structure(GradedSpace("E", {{"x", -1}}));
    const HomotopyStructure v = heisenberg();
    MultiMap c = action_component(direct_sum(e.space(), v.space()), v.space(), 1, 1);
    // x acts by q -> z (central), or by p -> p, z -> z (not central).
    if (central) {
        c.set({0, 2}, 2, Scalar(1));
    } else {
        c.set({0, 1}, 0, Scalar(1));
        c.set({0, 3}, 2, Scalar(1));
    }
    return ActionFamily(e, v, {{{1, 1}, c}});
}

}  // namespace

TEST_CASE("matrix actions agree with the representation oracle") {
    const Mat zero(2, std::vector<Scalar>(2));
    const Mat e{{0, 1}, {0, 0}}, f{{0, 0}, {1, 0}}, h{{1, 0}, {0, -1}};
    const HomotopyStructure s = sl2();
    REQUIRE(is_representation(s, {e, f, h}));
    CHECK(check_action(matrix_action(s, {e, f, h}), 3).ok());
    CHECK_FALSE(is_representation(s, {f, e, h}));
    CHECK_FALSE(check_action(matrix_action(s, {f, e, h}), 3).ok());
    CHECK(check_action(matrix_action(s, {zero, zero, zero}), 3).ok());

    const HomotopyStructure n = nonabelian_2d();
    Sampler rng(43);
    int agree = 0, actions = 0;
    for (int i = 0; i < 300; ++i) {
        std::vector<Mat> m(2, Mat(2, std::vector<Scalar>(2)));
        for (auto& mat : m)
            for (auto& row : mat)
                for (auto& x : row)
                    if (rng.chance(0.4)) x = rng.integer(-1, 1);
        const bool expected = is_representation(n, m);
        agree += check_action(matrix_action(n, m), 3).ok() == expected;
        actions += expected;
    }
    CHECK(agree == 300);
    CHECK(actions >= 10);
}

TEST_CASE("matrix actions on an abelian module are coherent") {
    const Mat e{{0, 1}, {0, 0}}, f{{0, 0}, {1, 0}}, h{{1, 0}, {0, -1}};
    const TheoremVerdicts v = theorem_crosscheck(matrix_action(sl2(), {e, f, h}), 3);
    CHECK(v.coherent);
    CHECK(v.loday);
}

TEST_CASE("Heisenberg derivation actions") {
    const ActionFamily central = heisenberg_action(true);
    CHECK(check_action(central, 4).ok());
    const TheoremVerdicts good = theorem_crosscheck(central, 4);
    CHECK(good.coherent);
    CHECK(good.loday);

    const ActionFamily noncentral = heisenberg_action(false);
    CHECK(check_action(noncentral, 4).ok());
    const TheoremVerdicts bad = theorem_crosscheck(noncentral, 4);
    CHECK_FALSE(bad.coherent);
    CHECK_FALSE(bad.loday);
    // [ad_p, Phi_x] does not vanish on q.
    const Report coh = check_coherence(noncentral, 3);
    bool found = false;
    for (const Residual& r : coh.residuals) found = found || r.value == Vector{{2, Scalar(-1)}} || r.value == Vector{{2, Scalar(1)}};
    CHECK(found);
}

TEST_CASE("coderivations attached to letters") {
    const ActionFamily a = heisenberg_action(true);
    const HomotopyStructure heis = heisenberg();
    CHECK(ad_of(heis, {0}, 2).restrict(Word{1}) == Vector{{2, 1}});
    CHECK(ad_of(heis, {1}, 2).restrict(Word{0}) == Vector{{2, -1}});
    CHECK(ad_of(heis, {0}, 2).degree() == 0);
    CHECK(phi_of(a, {0}, 2).restrict(Word{1}) == Vector{{2, 1}});
    CHECK(phi_of(a, {0}, 2).restrict(Word{0}).empty());
    CHECK(phi_mixed(a, {0}, {1}, 2).restrict(Word{0}).empty());
    CHECK(a.phi({0}, {1}) == Vector{{2, 1}});
    CHECK(a.max_total_arity() == 2);
}

TEST_CASE("direct sums rename clashing symbols") {
    const GradedSpace e("E", {{"x", -1}, {"y", 0}});
    const GradedSpace v("V", {{"x", 0}});
    const GradedSpace s = direct_sum(e, v);
    CHECK(s.dim() == 3);
    CHECK(s.symbol(2) == "x'");
    CHECK(s.degree(2) == 0);
}

TEST_CASE("hemisemidirect product of Lie algebras") {
    const ActionFamily a = heisenberg_action(true);
    const HomotopyStructure h = hemisemidirect(a);
    CHECK(h.flavor() == Flavor::Plain);
    const MultiMap l2 = h.bracket(2);
    // Letters: x, then p, q, z.
    const int x = 0, p = 1, q = 2, z = 3;
    CHECK(l2.eval(Word{x, q}) == Vector{{z, 1}});
    CHECK(l2.eval(Word{q, x}).empty());
    CHECK(l2.eval(Word{p, q}) == Vector{{z, 1}});
    CHECK(l2.eval(Word{q, p}) == Vector{{z, -1}});
    CHECK(l2.eval(Word{x, x}).empty());
    CHECK(check_loday_infinity(h, 4).ok());
    CHECK(h.bracket(3).is_zero());
}

TEST_CASE("adjoint representation and adjoint action") {
    const HomotopyStructure n = nonabelian_2d();
    const ActionFamily rep = adjoint_representation(n);
    CHECK(check_action(rep, 3).ok());
    CHECK(check_coherence(rep, 3).ok());
    CHECK(rep.on().bracket(2).is_zero());

    const ActionFamily act = adjoint_action(n);
    CHECK(check_action(act, 3).ok());
    const TheoremVerdicts v = theorem_crosscheck(act, 3);
    CHECK_FALSE(v.coherent);
    CHECK_FALSE(v.loday);

    // The Heisenberg algebra has nilpotency class 2, so its adjoint action is coherent.
    const TheoremVerdicts hv = theorem_crosscheck(adjoint_action(heisenberg()), 4);
    CHECK(hv.coherent);
    CHECK(hv.loday);
}

TEST_CASE("action corpus expectations") {
    const auto corpus = action_corpus(kDefaultSeed, 24, 3);
    CHECK(corpus.size() == 24);
    for (const ActionSample& s : corpus) {
        CHECK(check_action(s.action, 3).ok());
        const TheoremVerdicts v = theorem_crosscheck(s.action, 3);
        CHECK(v.coherent == v.loday);
        if (s.expected == "coherent") CHECK(v.coherent);
        if (s.expected == "violating") CHECK_FALSE(v.coherent);
    }
}
