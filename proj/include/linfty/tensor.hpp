#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "linfty/action.hpp"

namespace linfty {

/// Family T_k : T^k(V) -> E of degree-zero maps, k = 1..components.size().
class EmbeddingTensor {
public:
    EmbeddingTensor(GradedSpace v, GradedSpace e, std::vector<MultiMap> components);

    const GradedSpace& source() const { return v_; }
    const GradedSpace& target() const { return e_; }
    const std::vector<MultiMap>& components() const { return components_; }
    int max_arity() const { return static_cast<int>(components_.size()); }
    bool strict() const;
    bool symmetric() const;

    /// T_{|w|}(w).
    Vector eval(const Word& w) const;

    /// The Zinbiel comorphism T(V) -> T(E).
    Comorphism comorphism(int bound) const;

private:
    GradedSpace v_;
    GradedSpace e_;
    std::vector<MultiMap> components_;
};

EmbeddingTensor zero_tensor(const GradedSpace& v, const GradedSpace& e);
EmbeddingTensor strict_tensor(const MultiMap& t1);
EmbeddingTensor operator+(const EmbeddingTensor& a, const EmbeddingTensor& b);

// The checks below assume a coherent action; otherwise Q does not square to
// zero and the tensor equations lose their meaning.

/// The degree-zero coderivation t of T^Z(E (+) V) with restriction T on pure
/// V-words.
Coderivation tensor_coderivation(const EmbeddingTensor& t, const ActionFamily& phi, int bound);

/// e^t = Id + T as a comorphism of T^Z(E (+) V).
Comorphism extend_tensor(const EmbeddingTensor& t, const ActionFamily& phi, int bound);

/// Descendent brackets q_n = m_n + sum_k Phi_{pi T(v_1..v_k)}(v_{k+1}..v_n),
/// n <= bound, as a plain structure on V.
HomotopyStructure descendent(const EmbeddingTensor& t, const ActionFamily& phi, int bound);

/// Component equations l_1 T_1 = T_1 m_1 and, for n >= 2,
/// l(T(v)) = T(M^Z_V v) + sum T(.., Phi_{pi T(..)}(.., v_k), ..).
Report check_embedding_explicit(const EmbeddingTensor& t, const ActionFamily& phi, int bound);

/// P(e^{[-, t]} Q) by the iterated commutator series; cross-checked against
/// p_E(Q e^t - t Q e^t).
Report check_embedding_mc(const EmbeddingTensor& t, const ActionFamily& phi, int bound);

struct EmbeddingVerdict {
    Report explicit_route;
    Report mc_route;
};

/// Both routes concurrently; different residuals throw InternalConsistencyError.
EmbeddingVerdict check_embedding(const EmbeddingTensor& t, const ActionFamily& phi, int bound);

/// T as a Loday morphism from the descendent structure to E.
Report check_descendent_morphism(const EmbeddingTensor& t, const ActionFamily& phi, int bound);

/// p_{T(V)} Q e^t on V-words: co-Leibniz defects and deviation of its
/// restriction maps from the descendent brackets.
Report restriction_lemma_check(const EmbeddingTensor& t, const ActionFamily& phi, int bound);

/// l_1 T = T l_1 and l_n(Tx_1..Tx_n) = T l_n(Tx_1..Tx_{n-1}, x_n) on all
/// ordered basis words, n <= max_arity.
Report adjoint_strict_check(const HomotopyStructure& e, const MultiMap& t1);

/// Strict check of t1 o t2 plus the unit laws of the identity.
Report strict_algebra_compose(const HomotopyStructure& e, const MultiMap& t1, const MultiMap& t2);

/// l_1 F = F l_1 and l_{k+1}(x, F y) = F l_{k+1}(x, y). Members also get the
/// strict check, reported with kind "strict".
Report centroid_check(const HomotopyStructure& e, const MultiMap& f);

/// Element of h = Hom(T(V), E): one homogeneous family of components keyed by
/// V-word.
struct HElement {
    int degree = 0;
    std::map<Word, Vector> values;
    bool operator==(const HElement&) const = default;
};

struct HBasis {
    Word word;
    int output = 0;
    int degree = 0;
};

struct CohomologyPiece {
    int degree = 0;
    int weight = 0;
    int dimension = 0;
    int rank_out = 0;
    int rank_in = 0;
    int kernel() const { return dimension - rank_out; }
    int cohomology() const { return kernel() - rank_in; }
};

/// h truncated to input words of length <= bound with the twisted brackets
/// d^T_k around a verified tensor T.
class DeformationComplex {
public:
    DeformationComplex(EmbeddingTensor t, ActionFamily phi, int bound);

    int bound() const { return bound_; }
    const std::vector<HBasis>& basis() const { return basis_; }
    const ActionFamily& action() const { return phi_; }
    const EmbeddingTensor& tensor() const { return t_; }

    HElement basis_element(std::size_t i) const;
    HElement from_tensor(const EmbeddingTensor& t) const;

    /// d_k(t_1..t_k) = P[..[Q, t_1]_c.., t_k]_c.
    HElement derived(const std::vector<HElement>& args) const;

    /// d^T_1 as P[e^{-t} Q e^{t}, x]_c.
    HElement d1(const HElement& x) const;

    /// d^T_1 as sum_i (1/i!) d_{1+i}(t, ..., t, x).
    HElement d1_series(const HElement& x) const;

    /// sum_k (1/k!) d^T_k(x, ..., x) for a degree-zero x.
    HElement mc_residual(const HElement& x) const;

    /// Columns of d^T_1 on the basis, sparse.
    std::vector<std::map<int, Scalar>> d1_matrix() const;

    /// Residuals of (d^T_1)^2 on every basis element.
    Report square_zero() const;

    /// Bigraded piece (degree, inputs of length <= weight). d^T_1 never lowers
    /// the input length, so the piece is a quotient complex.
    CohomologyPiece cohomology(int degree, int weight) const;
    /// Every degree of the truncation, pieces computed concurrently.
    std::vector<CohomologyPiece> cohomology_table(int weight) const;
    std::vector<int> degrees() const;

    Report as_report(const HElement& x, const std::string& kind) const;

private:
    struct MatrixCache {
        std::once_flag once;
        std::vector<std::map<int, Scalar>> columns;
    };

    Coderivation as_coderivation(const HElement& x) const;
    HElement project(const Coderivation& c, int degree) const;

    EmbeddingTensor t_;
    ActionFamily phi_;
    int bound_;
    std::vector<HBasis> basis_;
    std::map<std::pair<Word, int>, int> index_;
    Coderivation q_;
    Coderivation qt_;
    Coderivation tt_;
    std::shared_ptr<MatrixCache> matrix_;
};

}  // namespace linfty
