#pragma once

#include <vector>

#include "linfty/coderivation.hpp"
#include "linfty/report.hpp"

namespace linfty {

/// A space with brackets of degree +1 and arities 1..max_arity. Symmetric
/// flavor is a Lie[1] infinity candidate, plain flavor a Loday[1] one.
class HomotopyStructure {
public:
    HomotopyStructure() = default;
    HomotopyStructure(GradedSpace space, Flavor flavor, int max_arity, const std::vector<MultiMap>& brackets);

    const GradedSpace& space() const { return space_; }
    Flavor flavor() const { return flavor_; }
    int max_arity() const { return max_arity_; }

    /// Bracket of arity k; the zero map above max_arity.
    MultiMap bracket(int k) const;
    const std::vector<MultiMap>& brackets() const { return brackets_; }

    Vector eval(const Word& w) const;

    /// M as a coderivation: on S(V) for symmetric flavor, on T^Z(V) otherwise.
    Coderivation codifferential(int bound) const;

    /// M^Z, the Zinbiel coderivation with the same restriction maps.
    Coderivation zinbiel_codifferential(int bound) const;

private:
    GradedSpace space_;
    Flavor flavor_ = Flavor::Symmetric;
    int max_arity_ = 0;
    std::vector<MultiMap> brackets_;
};

HomotopyStructure abelian_structure(const GradedSpace& space, Flavor flavor = Flavor::Symmetric);

/// Generalized Jacobi identity on every sorted word of length <= bound.
/// Computed by the unshuffle sum and by p o M o M; a disagreement throws
/// InternalConsistencyError.
Report check_lie_infinity(const HomotopyStructure& L, int bound);

/// Loday identity with the anchored last letter, on every word of length
/// <= bound; cross-checked against p o Q o Q of the Zinbiel lift.
Report check_loday_infinity(const HomotopyStructure& L, int bound);

/// Restrictions of [lift(f), lift(g)]_c on T^Z(V) up to arity bound.
std::vector<MultiMap> balavoine(const std::vector<MultiMap>& f, const std::vector<MultiMap>& g, int bound);

/// Same brackets, plain flavor.
HomotopyStructure lie_to_loday(const HomotopyStructure& L);

/// Lie infinity morphism identity for degree-zero symmetric components,
/// cross-checked against F o M_E = M_V o F.
Report check_lie_morphism(const std::vector<MultiMap>& components, const HomotopyStructure& E,
                          const HomotopyStructure& V, int bound);

/// Loday infinity morphism identity for degree-zero components, cross-checked
/// against the Zinbiel comorphism.
Report check_loday_morphism(const std::vector<MultiMap>& components, const HomotopyStructure& E,
                            const HomotopyStructure& V, int bound);

/// sum_{k <= max_arity} (1/k!) l_k(e, ..., e) for a degree-zero e.
Vector mc_residual(const HomotopyStructure& L, const Vector& e);

/// Twisted brackets l^e_k = sum_i (1/i!) l_{k+i}(e, ..., e, -). Throws
/// InputError unless e is a Maurer-Cartan element.
HomotopyStructure twist(const HomotopyStructure& L, const Vector& e);

/// End(V)[1] with l_1 = d_d and the shifted commutator as l_2. The basis element
/// named "<a>><b>" maps b to a.
HomotopyStructure end_dgla(const GradedSpace& space, const MultiMap& d);

/// Endomorphism of V given by an element of End(V)[1].
MultiMap endomorphism_of(const HomotopyStructure& end, const GradedSpace& space, const Vector& phi);

/// Representation identity for maps Phi_k : S^k(E) -> End(V)[1] of degree 0.
Report check_representation(const std::vector<MultiMap>& components, const HomotopyStructure& E,
                            const GradedSpace& space, const MultiMap& d, int bound);

/// The graded Lie algebra Coder(S(V))[1] with differential -[M_V, -]_c and the
/// shifted bracket.
class CoderDgla {
public:
    CoderDgla(const HomotopyStructure& V, int bound);

    const Coderivation& codifferential() const { return m_; }
    Coderivation differential(const Coderivation& q) const;
    Coderivation bracket(const Coderivation& q, const Coderivation& p) const;
    int bound() const { return bound_; }

private:
    Coderivation m_;
    int bound_;
};

/// p o Q on every sorted word of length <= bound, as a report.
Report coderivation_residuals(const Coderivation& q, const std::string& kind);

}  // namespace linfty
