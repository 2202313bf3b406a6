#include <doctest.h>

#include <set>

#include "linfty/errors.hpp"
#include "linfty/graded.hpp"
#include "oracles.hpp"

using namespace linfty;

TEST_CASE("koszul sign examples") {
    CHECK(koszul_sign(Permutation::identity(3), {1, 0, 1}) == 1);
    CHECK(koszul_sign(Permutation::from_one_based({2, 1}), {1, 1}) == -1);
    CHECK(koszul_sign(Permutation::from_one_based({2, 1}), {0, 1}) == 1);
    // Output word v3 v1 v2: v3 passes two odd letters.
    CHECK(koszul_sign(Permutation::from_one_based({3, 1, 2}), {1, 1, 1}) == 1);
    CHECK_THROWS_AS(koszul_sign(Permutation::identity(2), {1, 1, 1}), InputError);
}

TEST_CASE("koszul sign matches the inversion oracle and is multiplicative") {
    for (int n = 1; n <= 4; ++n)
        for (unsigned pattern = 0; pattern < (1u << n); ++pattern) {
            std::vector<int> d;
            for (int i = 0; i < n; ++i) d.push_back(static_cast<int>(pattern >> i & 1u));
            for (const auto& s : oracle::permutations(n)) {
                const Permutation sigma(s);
                CHECK(koszul_sign(sigma, d) == oracle::koszul(s, d));
                for (const auto& t : oracle::permutations(n)) {
                    const Permutation tau(t);
                    CHECK(koszul_sign(sigma.after(tau), d) == koszul_sign(sigma, tau.apply(d)) * koszul_sign(tau, d));
                }
            }
        }
}

TEST_CASE("permutation composition and inverse") {
    const Permutation s = Permutation::from_one_based({3, 1, 2});
    CHECK(s.images() == std::vector<int>{2, 0, 1});
    CHECK(s.after(s.inverse()) == Permutation::identity(3));
    const std::vector<char> word{'a', 'b', 'c'};
    CHECK(s.apply(word) == std::vector<char>{'c', 'a', 'b'});
    const Permutation t = Permutation::from_one_based({2, 1, 3});
    CHECK(s.after(t).apply(word) == s.apply(t.apply(word)));
}

TEST_CASE("unshuffle counts and membership against brute force") {
    CHECK(unshuffles({3}).size() == 1);
    CHECK(unshuffles({1, 2}).size() == 3);
    CHECK(unshuffles({2, 2}).size() == 6);
    for (int n = 1; n <= 6; ++n)
        for (int p = 1; p < n; ++p) {
            const auto& got = unshuffles({p, n - p});
            CHECK(static_cast<long long>(got.size()) == binomial(n, p));
            std::set<std::vector<int>> mine;
            for (const Permutation& s : got) mine.insert(s.images());
            CHECK(mine.size() == got.size());
            const auto brute = oracle::unshuffles({p, n - p});
            CHECK(mine == std::set<std::vector<int>>(brute.begin(), brute.end()));
        }
    const auto& three = unshuffles({1, 2, 2});
    CHECK(three.size() == 30);
    const auto brute = oracle::unshuffles({1, 2, 2});
    std::set<std::vector<int>> mine;
    for (const Permutation& s : three) mine.insert(s.images());
    CHECK(mine == std::set<std::vector<int>>(brute.begin(), brute.end()));
}

TEST_CASE("unshuffles come in block-mask lexicographic order") {
    for (const auto& blocks : std::vector<std::vector<int>>{{2, 3}, {1, 1, 2}, {3, 1}}) {
        std::vector<std::vector<int>> masks;
        for (const Permutation& s : unshuffles(blocks)) {
            std::vector<int> mask(static_cast<std::size_t>(s.size()));
            int slot = 0, block = 0, left = blocks[0];
            for (int j = 0; j < s.size(); ++j) {
                while (left == 0) left = blocks[static_cast<std::size_t>(++block)];
                mask[static_cast<std::size_t>(s[j])] = block;
                --left;
                ++slot;
            }
            masks.push_back(mask);
        }
        CHECK(std::is_sorted(masks.begin(), masks.end()));
    }
}

TEST_CASE("increasing unshuffles") {
    CHECK(increasing_unshuffles({1, 1}).size() == 1);
    CHECK(increasing_unshuffles({1, 1}).front() == Permutation::identity(2));
    CHECK(increasing_unshuffles({1, 2}).size() == 2);
    CHECK(increasing_unshuffles({4}).size() == 1);
    for (const auto& blocks : std::vector<std::vector<int>>{{1, 2}, {2, 2}, {1, 1, 2}, {2, 1, 2}}) {
        std::set<std::vector<int>> all;
        for (const Permutation& s : unshuffles(blocks)) all.insert(s.images());
        std::size_t expected = 0;
        for (const auto& p : oracle::unshuffles(blocks)) {
            std::vector<int> maxima;
            std::size_t at = 0;
            for (int b : blocks) {
                at += static_cast<std::size_t>(b);
                maxima.push_back(p[at - 1]);
            }
            expected += std::is_sorted(maxima.begin(), maxima.end());
        }
        CHECK(increasing_unshuffles(blocks).size() == expected);
        for (const Permutation& s : increasing_unshuffles(blocks)) CHECK(all.count(s.images()) == 1);
    }
}

TEST_CASE("canonical sort") {
    const GradedSpace even("S", {{"a", 0}, {"b", 0}});
    const GradedSpace odd("S", {{"a", 1}, {"b", 1}});
    CHECK(canonical_sort(even, {0, 1}).word == Word{0, 1});
    CHECK(canonical_sort(even, {0, 1}).sign() == 1);
    CHECK(canonical_sort(even, {1, 0}).sign() == 1);
    const SortedWord s = canonical_sort(odd, {1, 0});
    CHECK(s.word == Word{0, 1});
    CHECK(s.sign() == -1);
    CHECK(canonical_sort(odd, s.word).sign() == 1);
    CHECK(has_repeated_odd(odd, {0, 0}));
    CHECK_FALSE(has_repeated_odd(even, {0, 0}));
    CHECK(symmetric_words(odd, 2).size() == 1);
    CHECK(symmetric_words(even, 2).size() == 3);
}

TEST_CASE("scalars are exact p/q text") {
    CHECK(to_string(Scalar(3)) == "3/1");
    CHECK(to_string(Scalar(-1, 2)) == "-1/2");
    CHECK(parse_scalar("-1/2") == Scalar(-1, 2));
    CHECK(parse_scalar("0/1") == 0);
    CHECK_THROWS_AS(parse_scalar("1/0"), InputError);
    CHECK_THROWS_AS(parse_scalar("2/4"), InputError);
    CHECK_THROWS_AS(parse_scalar("0.5"), InputError);
    CHECK_THROWS_AS(parse_scalar("3"), InputError);
    CHECK_THROWS_AS(parse_scalar("1/-2"), InputError);
    CHECK(factorial(5) == 120);
}

TEST_CASE("shifted spaces") {
    const GradedSpace v("V", {{"p", -1}, {"q", 0}});
    const GradedSpace s = shifted(v, 1, "sV");
    CHECK(s.degree(0) == 0);
    CHECK(s.degree(1) == 1);
    CHECK(s.index_of("q") == 1);
    CHECK_FALSE(s.index_of("r").has_value());
}
