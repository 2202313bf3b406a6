#pragma once

#include <map>
#include <vector>

#include "linfty/chain.hpp"

namespace linfty {

enum class Flavor { Symmetric, Plain };

const char* flavor_name(Flavor f);

/// Degree-homogeneous multilinear map source^{(x) arity} -> target given by
/// exact structure constants. Symmetric maps are keyed by canonically sorted
/// words only.
class MultiMap {
public:
    MultiMap() = default;
    MultiMap(GradedSpace source, GradedSpace target, int arity, int degree, Flavor flavor);

    const GradedSpace& source() const { return source_; }
    const GradedSpace& target() const { return target_; }
    int arity() const { return arity_; }
    int degree() const { return degree_; }
    Flavor flavor() const { return flavor_; }
    const std::map<Word, Vector>& rows() const { return rows_; }
    bool is_zero() const { return rows_.empty(); }

    /// Sets one constant. Rejects degree mismatches and, for symmetric maps,
    /// non-canonical keys or keys that vanish in S(V).
    void set(const Word& input, int output, const Scalar& value);

    /// Adds value * output to F(input). Symmetric maps accept any ordering and
    /// normalize it with the Koszul sign.
    void add(const Word& input, int output, const Scalar& value);
    void add(const Word& input, const Vector& value);

    /// F(w) for any ordering of w.
    Vector eval(const Word& w) const;

    /// Multilinear extension to a tensor of vectors.
    Vector eval(const std::vector<Vector>& factors) const;

    bool operator==(const MultiMap& o) const;

private:
    void check_degree(const Word& input, int output) const;

    GradedSpace source_;
    GradedSpace target_;
    int arity_ = 1;
    int degree_ = 0;
    Flavor flavor_ = Flavor::Plain;
    std::map<Word, Vector> rows_;
};

MultiMap zero_map(const GradedSpace& source, const GradedSpace& target, int arity, int degree, Flavor f);

/// F^S(w) = (1/k!) sum_sigma eps(sigma) F(sigma w).
MultiMap symmetrize(const MultiMap& f);

/// The same map with one constant per ordered word (plain flavor).
MultiMap expand_plain(const MultiMap& f);

/// q_k = s o Q_k o (s^{-1})^{(x)k}: Q_k acts on W, q_k on the suspension of W.
MultiMap decalage(const MultiMap& q, const GradedSpace& suspended);

/// Q_k = (-1)^{k(k-1)/2} s^{-1} o q_k o s^{(x)k}.
MultiMap inverse_decalage(const MultiMap& q, const GradedSpace& desuspended);

/// Composition f o g of unary maps.
MultiMap compose_unary(const MultiMap& f, const MultiMap& g);
MultiMap identity_map(const GradedSpace& space);

}  // namespace linfty
