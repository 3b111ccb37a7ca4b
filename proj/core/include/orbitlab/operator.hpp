#pragma once

// Lazily applied operator expressions over FinVec / PairVec.

#include <cstddef>
#include <memory>
#include <string>

#include "orbitlab/finite_matrix.hpp"
#include "orbitlab/index_set.hpp"
#include "orbitlab/vector.hpp"

namespace orbitlab {

/// What an operator acts on: l2 sequences, l2 + l2 pairs, or R^dim.
struct Domain {
  enum class Kind { Sequence, Pair, Finite };
  Kind kind = Kind::Sequence;
  std::size_t dim = 0;  // Finite only

  static Domain sequence() { return {Kind::Sequence, 0}; }
  static Domain pair() { return {Kind::Pair, 0}; }
  static Domain finite(std::size_t dim) { return {Kind::Finite, dim}; }
  friend bool operator==(const Domain&, const Domain&) = default;
};

std::string to_string(const Domain& domain);

/// Immutable expression tree. Cheap to copy; subtrees are shared.
class OperatorExpr {
 public:
  struct Node;

  const Domain& domain() const;
  std::string describe() const;
  const Node& node() const { return *node_; }

  /// Non-null when this expression is a bare Foguel(J) leaf.
  const SparseIndexSet* foguel_set() const;

  explicit OperatorExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<const Node> node_;
};

// Leaves.
OperatorExpr shift();
OperatorExpr coshift();
OperatorExpr projection(SparseIndexSet set);
OperatorExpr identity(Domain domain);
OperatorExpr zero(Domain domain);
OperatorExpr matrix(FiniteMatrix m);
/// (S*  P ; O  S) on l2 + l2, P the projection onto span{e_j : j in J}.
OperatorExpr foguel(SparseIndexSet set);

// Combinators; all throw DomainError on inconsistent domains.
OperatorExpr scale(Rational alpha, OperatorExpr a);
OperatorExpr sum(OperatorExpr a, OperatorExpr b);
/// a after b: x -> a(b(x)).
OperatorExpr compose(OperatorExpr a, OperatorExpr b);
OperatorExpr power(OperatorExpr a, std::size_t exponent);
/// (A B ; C D) with sequence-space blocks.
OperatorExpr block(OperatorExpr a, OperatorExpr b, OperatorExpr c, OperatorExpr d);

/// Leaf-level adjoint rules: S* = coshift, projections and identities are
/// self-adjoint, matrices transpose, (AB)* = B*A*, (A B; C D)* = (A* C*; B* D*).
OperatorExpr adjoint(const OperatorExpr& a);

/// Throws DomainError when x does not match a.domain().
Vector apply_once(const OperatorExpr& a, const Vector& x);
/// n-fold application; Foguel leaves go through the closed form for P_n.
Vector apply_power(const OperatorExpr& a, std::size_t n, const Vector& x);
Vector apply_adjoint(const OperatorExpr& a, const Vector& z);

/// P_n x from P_n = sum_{i<n} S*^(n-1-i) P S^i, term by term. Reference
/// implementation; cost grows with n.
FinVec pn_recursive(const SparseIndexSet& set, std::size_t n, const FinVec& x);

/// P_n e_k: e_{2j-(k+n-1)} when J_{k,n-1} = {j}, else 0. P_0 = 0.
FinVec pn_closed_form(const SparseIndexSet& set, std::size_t n, Index k);

/// P_n x by linearity over the closed form.
FinVec pn_apply(const SparseIndexSet& set, std::size_t n, const FinVec& x);

}  // namespace orbitlab
