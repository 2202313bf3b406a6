#pragma once

#include <map>
#include <utility>

#include "linfty/homotopy.hpp"

namespace linfty {

/// E (+) V with the E basis first. Symbols that clash with E get a prime.
GradedSpace direct_sum(const GradedSpace& e, const GradedSpace& v);

/// The family Phi^{k,n} : S^k(E) x S^n(V) -> V of degree +1. Each component is
/// stored as a symmetric map on E (+) V whose keys hold k letters of E followed
/// by n letters of V.
class ActionFamily {
public:
    ActionFamily(HomotopyStructure e, HomotopyStructure v, std::map<std::pair<int, int>, MultiMap> components);

    const HomotopyStructure& acting() const { return e_; }
    const HomotopyStructure& on() const { return v_; }
    const GradedSpace& sum_space() const { return sum_; }
    int offset() const { return e_.space().dim(); }
    const std::map<std::pair<int, int>, MultiMap>& components() const { return components_; }

    /// Phi^{|x|,|v|}(x; v) for E-letters x and V-letters v, any ordering.
    Vector phi(const Word& x, const Word& v) const;

    /// Largest k + n with a nonzero component.
    int max_total_arity() const;

    Word embed_e(const Word& x) const { return x; }
    Word embed_v(const Word& v) const { return shift_indices(v, offset()); }

private:
    HomotopyStructure e_;
    HomotopyStructure v_;
    GradedSpace sum_;
    std::map<std::pair<int, int>, MultiMap> components_;
};

/// Empty component map to fill by hand.
MultiMap action_component(const ActionFamily& shape, int k, int n);
MultiMap action_component(const GradedSpace& sum, const GradedSpace& v, int k, int n);

/// Phi_x as a coderivation of S(V) of degree |x| + 1.
Coderivation phi_of(const ActionFamily& phi, const Word& x, int bound);

/// ad_v : w -> m(v . w), a coderivation of degree |v| + 1.
Coderivation ad_of(const HomotopyStructure& v_structure, const Word& v, int bound);

/// Phi_{x;v} : w -> Phi(x; v . w).
Coderivation phi_mixed(const ActionFamily& phi, const Word& x, const Word& v, int bound);

/// Lie infinity morphism condition into Coder(S(V))[1], on E-words x and
/// V-words w with |x| + |w| <= bound.
Report check_action(const ActionFamily& phi, int bound);

/// p[ad_v, Phi_x]_c(w) and p[Phi_{y;v}, Phi_x]_c(w) on basis words of total
/// length <= bound.
Report check_coherence(const ActionFamily& phi, int bound);

/// Brackets l_n on E, m_n on V, Phi^{i,n-i} on words x_1..x_i v_{i+1}..v_n and
/// zero on every other letter pattern.
HomotopyStructure hemisemidirect(const ActionFamily& phi);

/// Phi^{k,i}(x; e) = l_{i+k}(x, e).
ActionFamily adjoint_action(const HomotopyStructure& e);

/// Action of E on the complex (E, l_1) with Phi^{k,1} = l_{k+1}.
ActionFamily adjoint_representation(const HomotopyStructure& e);

struct TheoremVerdicts {
    bool coherent = false;
    bool loday = false;
    Report coherence;
    Report product;
};

/// Coherence and the Loday identity of the hemisemidirect product, evaluated
/// concurrently. Unequal verdicts throw InternalConsistencyError.
TheoremVerdicts theorem_crosscheck(const ActionFamily& phi, int bound);

}  // namespace linfty
