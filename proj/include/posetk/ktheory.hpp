#pragma once

#include <optional>
#include <string>
#include <vector>

#include "posetk/bratteli.hpp"
#include "posetk/errors.hpp"
#include "posetk/linalg.hpp"

namespace posetk {

// K1 of an AF algebra is trivial; it is never computed.
inline constexpr int kK1Rank = 0;

// Stable multiplicity matrix of a diagram, the input to everything below.
IncidenceMatrix incidence_from_diagram(const BratteliDiagram& d);

// Exact inverse of a unimodular integer matrix via the adjugate. Throws
// NotUnimodularError carrying det(T) otherwise.
template <typename Derived>
MatrixX<typename Derived::Scalar> integer_inverse(const Eigen::MatrixBase<Derived>& t) {
  const auto det = bareiss_determinant(t);
  if (det != 1 && det != -1) throw NotUnimodularError(static_cast<std::int64_t>(det));
  MatrixX<typename Derived::Scalar> adj = adjugate(t);
  if (det == -1) adj = -adj;
  return adj;
}

inline IntMatrix integer_inverse(const IncidenceMatrix& t) { return integer_inverse(t.matrix()); }

struct K0Result {
  Eigen::Index rank = 0;
  Integer determinant = 0;

  std::string group() const { return "Z^" + std::to_string(rank); }
};

// K0 of the stationary limit. Only unimodular T is supported, in which case
// the limit is Z^k.
K0Result k0_group(const IncidenceMatrix& t);

// (-1)^m [[F(m-1), -F(m)], [-F(m), F(m+1)]], the m-th power of the inverse
// Penrose matrix [[1,1],[1,0]].
IntMatrix fibonacci_inverse_power(int m);

enum class MembershipStatus { in_cone, not_in_cone, unknown };

struct MembershipVerdict {
  MembershipStatus status = MembershipStatus::unknown;
  // First m with T^m v >= 0 for in_cone; the iteration bound for unknown.
  int exponent = 0;

  std::string to_string() const;
  friend bool operator==(const MembershipVerdict&, const MembershipVerdict&) = default;
};

enum class ConeKind { unipotent_symbolic, perron_halfspace, iterative_only };

std::string to_string(ConeKind kind);

// Component i of T^m v as a polynomial in m. `binomial[j]` is the row of
// (T - I)^j, so that component = sum_j (binomial[j] . v) * C(m, j).
// The same polynomial in powers of m has coefficients
// (monomial[j] . v) / denominator.
struct ComponentPolynomial {
  std::vector<IntVector> binomial;
  std::vector<IntVector> monomial;
  Integer denominator = 1;

  int degree() const { return static_cast<int>(binomial.size()) - 1; }
};

// Symbolic or spectral description of the positive cone
// K0+ = { v : T^m v >= 0 for some m }.
struct ConeDescription {
  ConeKind kind = ConeKind::iterative_only;
  Eigen::Index dimension = 0;

  // unipotent_symbolic
  int nilpotency_index = 0;
  std::vector<ComponentPolynomial> components;

  // perron_halfspace: left eigenvector with max-norm 1
  Eigen::VectorXd perron_vector;
  double perron_value = 0.0;
  double tolerance = 0.0;

  // Bound for the iterative fallback, used by every kind.
  int fallback_m_max = 64;
};

bool is_unipotent(const IncidenceMatrix& t);

// Expands T^m = sum_j C(m, j) (T - I)^j. Throws DomainError when T - I is
// not nilpotent.
ConeDescription unipotent_cone(const IncidenceMatrix& t);

// Dominant left eigenvector by power iteration on T + I. Throws DomainError
// when T is not primitive.
ConeDescription perron_cone(const IncidenceMatrix& t, double tolerance = 1e-12);

// unipotent_cone when possible, else perron_cone, else iterative only.
ConeDescription describe_cone(const IncidenceMatrix& t, double tolerance = 1e-12, int m_max = 64);

// Decision from the description alone: exact for unipotent cones, the sign
// of <u, v> outside a band of 1e-6 |v|_1 for Perron cones, empty otherwise.
std::optional<bool> symbolic_contains(const ConeDescription& cone, const IntVector& v);

// T^m v evaluated from the polynomial expansion; m may be negative, which
// gives T^{-m} v.
IntVector symbolic_apply(const ConeDescription& cone, const IntVector& v, Integer m);

// Case split of a unipotent cone, one entry per non-constant-true
// component: the component is eventually nonnegative iff one of `cases`
// holds. Forms are the monomial coefficients scaled to primitive integer
// vectors, highest degree first.
enum class Relation { positive, zero, nonnegative };

struct Condition {
  IntVector form;
  Relation relation = Relation::nonnegative;
};

struct ComponentCriterion {
  Eigen::Index component = 0;
  int degree = 0;
  // disjunction of conjunctions
  std::vector<std::vector<Condition>> cases;
};

std::vector<ComponentCriterion> cone_criteria(const ConeDescription& cone);

bool criteria_contain(const std::vector<ComponentCriterion>& criteria, const IntVector& v);

// Reusable membership test for one matrix: iterate w <- T w, then fall back
// on the certificates available for T.
class ConeMembership {
 public:
  explicit ConeMembership(IncidenceMatrix t, double tolerance = 1e-12);

  MembershipVerdict test(const IntVector& v, int m_max) const;
  const IncidenceMatrix& matrix() const { return t_; }

 private:
  IncidenceMatrix t_;
  std::optional<ConeDescription> unipotent_;
  std::optional<ConeDescription> perron_;
  std::vector<Eigen::Index> fixed_rows_;
};

// First m <= m_max with T^m v >= 0; otherwise not_in_cone when a certificate
// exists (symbolic criterion, Perron functional, or a fixed coordinate that is
// negative), else unknown(m_max).
MembershipVerdict cone_membership(const IncidenceMatrix& t, const IntVector& v, int m_max);

}  // namespace posetk
