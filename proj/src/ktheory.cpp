#include "posetk/ktheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace posetk {

namespace {

Integer binomial(Integer m, int j) {
  Integer c = 1;
  for (int i = 0; i < j; ++i) c = checked_mul(c, m - i) / (i + 1);
  return c;
}

Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f = checked_mul(f, Integer{i});
  return f;
}

// Signed Stirling numbers of the first kind: m(m-1)...(m-j+1) = sum_k s(j,k) m^k.
std::vector<std::vector<Integer>> stirling_first(int max_j) {
  std::vector<std::vector<Integer>> s(static_cast<std::size_t>(max_j) + 1);
  s[0] = {1};
  for (int j = 1; j <= max_j; ++j) {
    const auto& prev = s[static_cast<std::size_t>(j) - 1];
    std::vector<Integer> cur(static_cast<std::size_t>(j) + 1, 0);
    for (std::size_t k = 0; k < prev.size(); ++k) {
      cur[k + 1] = checked_add(cur[k + 1], prev[k]);
      cur[k] = checked_sub(cur[k], checked_mul(prev[k], Integer{j - 1}));
    }
    s[static_cast<std::size_t>(j)] = std::move(cur);
  }
  return s;
}

Integer dot(const IntVector& a, const IntVector& b) {
  Integer acc = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) acc = checked_add(acc, checked_mul(a(i), b(i)));
  return acc;
}

void check_dimension(const IncidenceMatrix& t, const IntVector& v) {
  if (v.size() != t.dimension()) {
    throw DomainError("vector has " + std::to_string(v.size()) + " components but T is " +
                      std::to_string(t.dimension()) + "x" + std::to_string(t.dimension()));
  }
}

}  // namespace

IncidenceMatrix incidence_from_diagram(const BratteliDiagram& d) { return stable_incidence(d); }

K0Result k0_group(const IncidenceMatrix& t) {
  const Integer det = bareiss_determinant(t.matrix());
  if (det != 1 && det != -1) {
    throw NotUnimodularError(det);
  }
  return K0Result{t.dimension(), det};
}

IntMatrix fibonacci_inverse_power(int m) {
  if (m < 1) throw DomainError("Fibonacci power needs m >= 1, got " + std::to_string(m));
  std::vector<Integer> fib{0, 1};
  while (static_cast<int>(fib.size()) <= m + 1) {
    fib.push_back(checked_add(fib[fib.size() - 1], fib[fib.size() - 2]));
  }
  const auto um = static_cast<std::size_t>(m);
  IntMatrix out(2, 2);
  out << fib[um - 1], -fib[um], -fib[um], fib[um + 1];
  if (m % 2 != 0) out = -out;
  return out;
}

std::string MembershipVerdict::to_string() const {
  switch (status) {
    case MembershipStatus::in_cone:
      return "in-cone(" + std::to_string(exponent) + ")";
    case MembershipStatus::not_in_cone:
      return "not-in-cone";
    case MembershipStatus::unknown:
      break;
  }
  return "unknown(" + std::to_string(exponent) + ")";
}

std::string to_string(ConeKind kind) {
  switch (kind) {
    case ConeKind::unipotent_symbolic:
      return "unipotent-symbolic";
    case ConeKind::perron_halfspace:
      return "perron-halfspace";
    case ConeKind::iterative_only:
      break;
  }
  return "iterative-only";
}

bool is_unipotent(const IncidenceMatrix& t) {
  const IntMatrix n = t.matrix() - IntMatrix::Identity(t.dimension(), t.dimension());
  return nilpotency_index(n).has_value();
}

ConeDescription unipotent_cone(const IncidenceMatrix& t) {
  const Eigen::Index k = t.dimension();
  const IntMatrix n = t.matrix() - IntMatrix::Identity(k, k);
  const auto index = nilpotency_index(n);
  if (!index) {
    throw DomainError("T is not unipotent ((T - I)^k != 0); use the Perron or iterative description");
  }
  ConeDescription cone;
  cone.kind = ConeKind::unipotent_symbolic;
  cone.dimension = k;
  cone.nilpotency_index = *index;

  // powers[j] = (T - I)^j for j below the nilpotency index
  std::vector<IntMatrix> powers{IntMatrix::Identity(k, k)};
  for (int j = 1; j < *index; ++j) powers.push_back(checked_product(powers.back(), n));

  const auto stirling = stirling_first(*index);
  for (Eigen::Index i = 0; i < k; ++i) {
    ComponentPolynomial poly;
    for (const IntMatrix& p : powers) poly.binomial.push_back(p.row(i).transpose());
    while (poly.binomial.size() > 1 && poly.binomial.back().isZero(0)) poly.binomial.pop_back();

    const int degree = poly.degree();
    poly.denominator = factorial(degree);
    poly.monomial.assign(static_cast<std::size_t>(degree) + 1, IntVector::Zero(k));
    for (int j = 0; j <= degree; ++j) {
      const Integer scale = poly.denominator / factorial(j);
      for (int m = 0; m <= j; ++m) {
        const Integer factor = checked_mul(stirling[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)], scale);
        if (factor == 0) continue;
        poly.monomial[static_cast<std::size_t>(m)] +=
            poly.binomial[static_cast<std::size_t>(j)] * factor;
      }
    }
    Integer g = poly.denominator;
    for (const auto& f : poly.monomial) {
      for (Eigen::Index c = 0; c < k; ++c) g = std::gcd(g, f(c));
    }
    if (g > 1) {
      poly.denominator /= g;
      for (auto& f : poly.monomial) f /= g;
    }
    cone.components.push_back(std::move(poly));
  }
  return cone;
}

ConeDescription perron_cone(const IncidenceMatrix& t, double tolerance) {
  if (!(tolerance > 0)) throw DomainError("tolerance must be positive");
  if (!is_primitive_matrix(t.matrix())) throw DomainError("T is not primitive: no power of T is strictly positive");
  const Eigen::Index k = t.dimension();
  const Eigen::MatrixXd shifted = t.matrix().cast<double>().transpose() + Eigen::MatrixXd::Identity(k, k);

  Eigen::VectorXd u = Eigen::VectorXd::Ones(k);
  constexpr int kMaxIterations = 1'000'000;
  bool converged = false;
  for (int it = 0; it < kMaxIterations; ++it) {
    Eigen::VectorXd next = shifted * u;
    next /= next.maxCoeff();
    const double change = (next - u).lpNorm<Eigen::Infinity>();
    u = std::move(next);
    if (change < tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) throw DomainError("power iteration did not converge");

  ConeDescription cone;
  cone.kind = ConeKind::perron_halfspace;
  cone.dimension = k;
  cone.perron_vector = u;
  const Eigen::VectorXd tu = t.matrix().cast<double>().transpose() * u;
  cone.perron_value = u.dot(tu) / u.dot(u);
  cone.tolerance = tolerance;
  return cone;
}

ConeDescription describe_cone(const IncidenceMatrix& t, double tolerance, int m_max) {
  ConeDescription cone;
  if (is_unipotent(t)) {
    cone = unipotent_cone(t);
  } else if (is_primitive_matrix(t.matrix())) {
    cone = perron_cone(t, tolerance);
  } else {
    cone.kind = ConeKind::iterative_only;
    cone.dimension = t.dimension();
  }
  cone.fallback_m_max = m_max;
  return cone;
}

std::optional<bool> symbolic_contains(const ConeDescription& cone, const IntVector& v) {
  if (v.size() != cone.dimension) throw DomainError("vector dimension does not match the cone");
  switch (cone.kind) {
    case ConeKind::unipotent_symbolic: {
      for (const auto& poly : cone.components) {
        // eventually nonnegative iff the leading nonzero coefficient is
        // positive, or everything vanishes except a nonnegative constant
        bool ok = true;
        for (int j = poly.degree(); j >= 0; --j) {
          const Integer c = dot(poly.binomial[static_cast<std::size_t>(j)], v);
          if (c != 0 || j == 0) {
            ok = j == 0 ? c >= 0 : c > 0;
            break;
          }
        }
        if (!ok) return false;
      }
      return true;
    }
    case ConeKind::perron_halfspace: {
      const double s = cone.perron_vector.dot(v.cast<double>());
      const double band = 1e-6 * static_cast<double>(v.lpNorm<1>());
      if (s > band) return true;
      if (s < -band) return false;
      return std::nullopt;
    }
    case ConeKind::iterative_only:
      break;
  }
  return std::nullopt;
}

IntVector symbolic_apply(const ConeDescription& cone, const IntVector& v, Integer m) {
  if (cone.kind != ConeKind::unipotent_symbolic) throw DomainError("symbolic powers need a unipotent cone");
  if (v.size() != cone.dimension) throw DomainError("vector dimension does not match the cone");
  IntVector out(cone.dimension);
  for (Eigen::Index i = 0; i < cone.dimension; ++i) {
    const auto& poly = cone.components[static_cast<std::size_t>(i)];
    Integer acc = 0;
    for (int j = 0; j <= poly.degree(); ++j) {
      acc = checked_add(acc, checked_mul(dot(poly.binomial[static_cast<std::size_t>(j)], v), binomial(m, j)));
    }
    out(i) = acc;
  }
  return out;
}

std::vector<ComponentCriterion> cone_criteria(const ConeDescription& cone) {
  if (cone.kind != ConeKind::unipotent_symbolic) throw DomainError("case split needs a unipotent cone");
  std::vector<ComponentCriterion> out;
  for (Eigen::Index i = 0; i < cone.dimension; ++i) {
    const auto& poly = cone.components[static_cast<std::size_t>(i)];
    ComponentCriterion crit;
    crit.component = i;
    crit.degree = poly.degree();
    std::vector<Condition> vanished;
    for (int j = poly.degree(); j >= 0; --j) {
      IntVector form = poly.monomial[static_cast<std::size_t>(j)];
      if (form.isZero(0)) {
        if (j == 0) crit.cases.push_back(vanished);
        continue;
      }
      Integer g = 0;
      for (Eigen::Index c = 0; c < form.size(); ++c) g = std::gcd(g, form(c));
      form /= g;
      std::vector<Condition> branch = vanished;
      branch.push_back(Condition{form, j == 0 ? Relation::nonnegative : Relation::positive});
      crit.cases.push_back(std::move(branch));
      vanished.push_back(Condition{form, Relation::zero});
    }
    const bool always = std::any_of(crit.cases.begin(), crit.cases.end(),
                                    [](const auto& c) { return c.empty(); });
    if (!always) out.push_back(std::move(crit));
  }
  return out;
}

bool criteria_contain(const std::vector<ComponentCriterion>& criteria, const IntVector& v) {
  for (const auto& crit : criteria) {
    bool any = false;
    for (const auto& conj : crit.cases) {
      bool all = true;
      for (const auto& cond : conj) {
        const Integer value = dot(cond.form, v);
        switch (cond.relation) {
          case Relation::positive:
            all = all && value > 0;
            break;
          case Relation::zero:
            all = all && value == 0;
            break;
          case Relation::nonnegative:
            all = all && value >= 0;
            break;
        }
      }
      if (all) {
        any = true;
        break;
      }
    }
    if (!any) return false;
  }
  return true;
}

ConeMembership::ConeMembership(IncidenceMatrix t, double tolerance) : t_(std::move(t)) {
  if (is_unipotent(t_)) {
    unipotent_ = unipotent_cone(t_);
  } else if (is_primitive_matrix(t_.matrix())) {
    perron_ = perron_cone(t_, tolerance);
  }
  const Eigen::Index k = t_.dimension();
  for (Eigen::Index i = 0; i < k; ++i) {
    IntVector unit = IntVector::Zero(k);
    unit(i) = 1;
    if (t_.matrix().row(i).transpose() == unit) fixed_rows_.push_back(i);
  }
}

MembershipVerdict ConeMembership::test(const IntVector& v, int m_max) const {
  check_dimension(t_, v);
  if (m_max < 0) throw DomainError("m_max must be nonnegative");
  IntVector w = v;
  for (int m = 0;; ++m) {
    if (is_nonnegative(w)) return {MembershipStatus::in_cone, m};
    if (m == m_max) break;
    try {
      w = checked_product(t_.matrix(), w);
    } catch (const std::overflow_error&) {
      break;
    }
  }
  if (unipotent_ && !*symbolic_contains(*unipotent_, v)) return {MembershipStatus::not_in_cone, 0};
  if (perron_ && symbolic_contains(*perron_, v) == false) return {MembershipStatus::not_in_cone, 0};
  for (Eigen::Index i : fixed_rows_) {
    if (v(i) < 0) return {MembershipStatus::not_in_cone, 0};
  }
  return {MembershipStatus::unknown, m_max};
}

MembershipVerdict cone_membership(const IncidenceMatrix& t, const IntVector& v, int m_max) {
  check_dimension(t, v);
  return ConeMembership(t).test(v, m_max);
}

}  // namespace posetk
