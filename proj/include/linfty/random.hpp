#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "linfty/action.hpp"
#include "linfty/tensor.hpp"

namespace linfty {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Seeded source of small exact samples.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    int integer(int lo, int hi);
    bool chance(double p);
    /// Uniform on {0, 1, -1, 1/2, -1/2}.
    Scalar small_rational();
    /// Uniform on {1, -1, 1/2, -1/2}.
    Scalar nonzero_rational();
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Basis symbols prefix0, prefix1, ... with degrees drawn from [lo, hi].
GradedSpace random_space(Sampler& s, const std::string& name, const std::string& prefix, int dim, int lo, int hi);

/// density is the probability that a degree-compatible constant is nonzero.
MultiMap random_multimap(Sampler& s, const GradedSpace& source, const GradedSpace& target, int arity, int degree,
                         Flavor flavor, double density);

/// Heisenberg algebra on p, q, z in degree -1 with l_2(p, q) = z.
HomotopyStructure heisenberg();
/// a, b in degree -1 with l_2(a, b) = b.
HomotopyStructure nonabelian_2d();
/// sl_2 on e, f, h in degree -1.
HomotopyStructure sl2();

/// Sparse brackets of arities 1..max_arity kept only when they satisfy the
/// Jacobi identities; falls back to the abelian structure.
HomotopyStructure random_lie(Sampler& s, const GradedSpace& space, int max_arity, int attempts);
/// Pull back along x -> x + c y for two basis letters of equal degree.
HomotopyStructure elementary_change(const HomotopyStructure& l, int x, int y, const Scalar& c);

struct ActionSample {
    std::string family;
    /// "coherent", "violating" or "" when nothing is known in advance.
    std::string expected;
    ActionFamily action;
};

/// Seeded corpus of verified Lie infinity actions: central and non-central
/// derivation families, adjoint representations, adjoint actions and
/// rejection-sampled sparse actions.
std::vector<ActionSample> action_corpus(std::uint64_t seed, int count, int bound);

struct TensorSample {
    std::string family;
    ActionFamily action;
    EmbeddingTensor tensor;
};

/// Seeded corpus of candidate tensors over coherent actions: Heisenberg,
/// adjoint representations, coherent adjoint actions and central derivation
/// actions. Members need not be embedding tensors.
std::vector<TensorSample> tensor_corpus(std::uint64_t seed, int count);

/// Every degree-zero endomorphism with entries in {-1, 0, 1} that passes
/// adjoint_strict_check.
std::vector<MultiMap> strict_pool(const HomotopyStructure& e);

}  // namespace linfty
