#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "linfty/multimap.hpp"

namespace linfty {

/// Which coalgebra a coderivation or comorphism lives on.
enum class Coalgebra { Symmetric, Zinbiel };

using LinearFn = std::function<Vector(const Word&)>;

/// Coderivation truncated to words of length <= bound, given by its
/// restriction p o Q. Values of Q on words are computed on demand and cached;
/// copies share the cache.
class Coderivation {
public:
    Coderivation(GradedSpace space, Coalgebra kind, int degree, int bound, LinearFn restriction);

    const GradedSpace& space() const;
    Coalgebra kind() const;
    int degree() const;
    int bound() const;

    /// p o Q(w). Symmetric coderivations accept any ordering of w.
    Vector restrict(const Word& w) const;
    Vector restrict(const Chain& c) const;

    /// Q(w); symmetric results are in canonical form.
    Chain apply(const Word& w) const;
    Chain apply(const Chain& c) const;

    /// Dense block of Q on words of one length, rows keyed by input word.
    std::map<Word, Chain> block(int length) const;

private:
    struct State;
    std::shared_ptr<State> state_;
};

Coderivation lift_sym_coderivation(const GradedSpace& space, const std::vector<MultiMap>& restrictions,
                                   int degree, int bound);
Coderivation lift_zin_coderivation(const GradedSpace& space, const std::vector<MultiMap>& restrictions,
                                   int degree, int bound);

/// Restriction maps of q for arities 1..bound: symmetric maps for symmetric
/// coderivations, plain maps otherwise.
std::vector<MultiMap> restrictions_of(const Coderivation& q, int bound);

/// [Q, P]_c = QP - (-1)^{|Q||P|} PQ.
Coderivation commutator(const Coderivation& q, const Coderivation& p);

/// Bracket of Coder[1]: (-1)^{|Q|'+1}(QP - (-1)^{(|Q|'+1)(|P|'+1)} PQ) with the
/// shifted degree |Q|' = |Q| - 1.
Coderivation shifted_bracket(const Coderivation& q, const Coderivation& p);

Coderivation scaled(const Coderivation& q, const Scalar& c);
Coderivation sum(const Coderivation& q, const Coderivation& p);

/// Coalgebra morphism truncated at bound, given by its degree-zero components.
class Comorphism {
public:
    Comorphism(GradedSpace source, GradedSpace target, Coalgebra kind, int bound, LinearFn components);

    const GradedSpace& source() const;
    const GradedSpace& target() const;
    Coalgebra kind() const;
    int bound() const;

    Vector component(const Word& w) const;
    Chain apply(const Word& w) const;
    Chain apply(const Chain& c) const;

private:
    struct State;
    std::shared_ptr<State> state_;
};

Comorphism lift_comorphism(const GradedSpace& source, const GradedSpace& target,
                           const std::vector<MultiMap>& components, Coalgebra kind, int bound);

Comorphism identity_comorphism(const GradedSpace& space, Coalgebra kind, int bound);

/// f o g.
Comorphism compose(const Comorphism& f, const Comorphism& g);

}  // namespace linfty
