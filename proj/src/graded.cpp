#include "linfty/graded.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "linfty/errors.hpp"

namespace linfty {

GradedSpace::GradedSpace(std::string name, std::vector<BasisElement> basis)
    : name_(std::move(name)), basis_(std::move(basis)) {
    std::set<std::string> seen;
    for (const auto& b : basis_)
        if (!seen.insert(b.symbol).second) throw InputError("duplicate basis symbol '" + b.symbol + "'");
}

std::optional<int> GradedSpace::index_of(std::string_view symbol) const {
    for (int i = 0; i < dim(); ++i)
        if (basis_[static_cast<std::size_t>(i)].symbol == symbol) return i;
    return std::nullopt;
}

GradedSpace shifted(const GradedSpace& space, int k, std::string name) {
    std::vector<BasisElement> basis = space.basis();
    for (auto& b : basis) b.degree += k;
    return GradedSpace(std::move(name), std::move(basis));
}

int word_degree(const GradedSpace& space, const Word& w) {
    int d = 0;
    for (int i : w) d += space.degree(i);
    return d;
}

std::vector<int> word_degrees(const GradedSpace& space, const Word& w) {
    std::vector<int> d;
    d.reserve(w.size());
    for (int i : w) d.push_back(space.degree(i));
    return d;
}

std::string word_text(const GradedSpace& space, const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += space.symbol(w[i]);
    }
    return s;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<int> sorted = images_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != static_cast<int>(i)) throw InputError("not a permutation");
}

Permutation Permutation::identity(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return Permutation(std::move(v));
}

Permutation Permutation::from_one_based(const std::vector<int>& images) {
    std::vector<int> v;
    v.reserve(images.size());
    for (int i : images) v.push_back(i - 1);
    return Permutation(std::move(v));
}

Permutation Permutation::after(const Permutation& tau) const {
    if (tau.size() != size()) throw InputError("composing permutations of different sizes");
    std::vector<int> v(images_.size());
    for (std::size_t j = 0; j < images_.size(); ++j) v[j] = tau[images_[j]];
    return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
    std::vector<int> v(images_.size());
    for (std::size_t j = 0; j < images_.size(); ++j) v[static_cast<std::size_t>(images_[j])] = static_cast<int>(j);
    return Permutation(std::move(v));
}

int koszul_parity(const Permutation& sigma, const std::vector<int>& degrees) {
    if (static_cast<int>(degrees.size()) != sigma.size())
        throw InputError("Koszul sign: permutation and degree sequence differ in length");
    int parity = 0;
    const int n = sigma.size();
    for (int j = 0; j < n; ++j) {
        const int a = sigma[j];
        if ((degrees[static_cast<std::size_t>(a)] & 1) == 0) continue;
        for (int l = j + 1; l < n; ++l) {
            const int b = sigma[l];
            if (a > b && (degrees[static_cast<std::size_t>(b)] & 1)) parity ^= 1;
        }
    }
    return parity;
}

Scalar koszul_sign(const Permutation& sigma, const std::vector<int>& degrees) {
    return sign_of(koszul_parity(sigma, degrees));
}

namespace {

std::vector<Permutation> enumerate_unshuffles(const std::vector<int>& blocks) {
    const int k = static_cast<int>(blocks.size());
    const int n = std::accumulate(blocks.begin(), blocks.end(), 0);
    std::vector<Permutation> out;
    std::vector<int> mask(static_cast<std::size_t>(n), 0);
    std::vector<int> used(static_cast<std::size_t>(k), 0);
    // Depth-first over block_of[position], which yields lexicographic mask order.
    std::function<void(int)> rec = [&](int pos) {
        if (pos == n) {
            std::vector<int> images;
            images.reserve(static_cast<std::size_t>(n));
            for (int b = 0; b < k; ++b)
                for (int p = 0; p < n; ++p)
                    if (mask[static_cast<std::size_t>(p)] == b) images.push_back(p);
            out.emplace_back(std::move(images));
            return;
        }
        for (int b = 0; b < k; ++b) {
            if (used[static_cast<std::size_t>(b)] == blocks[static_cast<std::size_t>(b)]) continue;
            mask[static_cast<std::size_t>(pos)] = b;
            ++used[static_cast<std::size_t>(b)];
            rec(pos + 1);
            --used[static_cast<std::size_t>(b)];
        }
    };
    rec(0);
    return out;
}

template <class Key, class Value, class Make>
const Value& cached(std::map<Key, Value>& cache, std::mutex& m, const Key& key, Make make) {
    {
        std::lock_guard lock(m);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Value v = make();
    std::lock_guard lock(m);
    return cache.try_emplace(key, std::move(v)).first->second;
}

}  // namespace

const std::vector<Permutation>& unshuffles(const std::vector<int>& blocks) {
    for (int b : blocks)
        if (b < 0) throw InputError("unshuffle block sizes must be nonnegative");
    static std::map<std::vector<int>, std::vector<Permutation>> cache;
    static std::mutex m;
    return cached(cache, m, blocks, [&] { return enumerate_unshuffles(blocks); });
}

const std::vector<Permutation>& increasing_unshuffles(const std::vector<int>& blocks) {
    static std::map<std::vector<int>, std::vector<Permutation>> cache;
    static std::mutex m;
    return cached(cache, m, blocks, [&] {
        std::vector<Permutation> out;
        for (const auto& s : unshuffles(blocks)) {
            bool ok = true;
            int end = 0, last_max = -1;
            for (int b : blocks) {
                end += b;
                if (b == 0) continue;
                const int mx = s[end - 1];
                if (mx <= last_max) {
                    ok = false;
                    break;
                }
                last_max = mx;
            }
            if (ok) out.push_back(s);
        }
        return out;
    });
}

const std::vector<std::vector<int>>& compositions(int n) {
    static std::map<int, std::vector<std::vector<int>>> cache;
    static std::mutex m;
    return cached(cache, m, n, [&] {
        std::vector<std::vector<int>> out;
        std::vector<int> cur;
        std::function<void(int)> rec = [&](int rest) {
            if (rest == 0) {
                out.push_back(cur);
                return;
            }
            for (int p = 1; p <= rest; ++p) {
                cur.push_back(p);
                rec(rest - p);
                cur.pop_back();
            }
        };
        if (n > 0) rec(n);
        return out;
    });
}

SortedWord canonical_sort(const GradedSpace& space, const Word& w) {
    std::vector<int> order(w.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return w[static_cast<std::size_t>(a)] < w[static_cast<std::size_t>(b)]; });
    Permutation sigma(order);
    SortedWord out;
    out.word = sigma.apply(w);
    out.parity = koszul_parity(sigma, word_degrees(space, w));
    return out;
}

bool is_sorted_word(const Word& w) { return std::is_sorted(w.begin(), w.end()); }

bool has_repeated_odd(const GradedSpace& space, const Word& sorted) {
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1] && (space.degree(sorted[i]) & 1)) return true;
    return false;
}

std::vector<Word> all_words(int dim, int length) {
    std::vector<Word> out;
    if (length <= 0 || dim <= 0) return out;
    Word w(static_cast<std::size_t>(length), 0);
    while (true) {
        out.push_back(w);
        int i = length - 1;
        while (i >= 0 && w[static_cast<std::size_t>(i)] == dim - 1) w[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
        ++w[static_cast<std::size_t>(i)];
    }
    return out;
}

std::vector<Word> symmetric_words(const GradedSpace& space, int length) {
    std::vector<Word> out;
    if (length <= 0) return out;
    Word w;
    std::function<void(int)> rec = [&](int from) {
        if (static_cast<int>(w.size()) == length) {
            out.push_back(w);
            return;
        }
        for (int i = from; i < space.dim(); ++i) {
            if (!w.empty() && w.back() == i && (space.degree(i) & 1)) continue;
            w.push_back(i);
            rec(i);
            w.pop_back();
        }
    };
    rec(0);
    return out;
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace linfty
