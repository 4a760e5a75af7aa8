#pragma once

// Points of the torus T_X = (F_q^*)^r / G over a prime field, held in
// exponent (discrete-log) space. A point [P] with P = (eta^s_1, ..., eta^s_r)
// is identified by its canonical form phi^T s mod (q-1).

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "torilat/errors.hpp"
#include "torilat/grading.hpp"
#include "torilat/intlin.hpp"

namespace torilat {

/// Hard limit on the number of torus points any enumeration may touch.
inline constexpr Int kTorusPointCap = 1'000'000;

struct TorusPoint {
  IntVector canon;  // phi^T rep mod (q-1)
  IntVector rep;    // exponent representative, entries in [0, q-1)

  friend bool operator==(const TorusPoint& a, const TorusPoint& b) { return a.canon == b.canon; }
  friend bool operator<(const TorusPoint& a, const TorusPoint& b) { return a.canon < b.canon; }
};

/// Deduplicated points sorted by canonical form.
struct PointSet {
  std::vector<TorusPoint> points;
  bool is_group = false;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  bool contains(const IntVector& canon) const {
    return std::binary_search(points.begin(), points.end(), TorusPoint{canon, {}});
  }

  /// Same points (the group flag is not compared).
  friend bool operator==(const PointSet& a, const PointSet& b) { return a.points == b.points; }
};

inline IntVector canonical_form(const IntVector& s, const ToricSetup& setup) {
  require(s.size() == setup.num_rays(), "exponent vector has wrong length");
  const Int n_units = setup.field().unit_order();
  IntVector c = setup.phi().transpose() * s;
  for (Int& x : c) x = checked::mod(x, n_units);
  return c;
}

inline TorusPoint make_point(IntVector s, const ToricSetup& setup) {
  const Int n_units = setup.field().unit_order();
  for (Int& x : s) x = checked::mod(x, n_units);
  IntVector c = canonical_form(s, setup);
  return {std::move(c), std::move(s)};
}

inline PointSet make_point_set(std::vector<TorusPoint> pts, bool is_group = false) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return {std::move(pts), is_group};
}

namespace detail {

/// Mixed-radix key of a canonical form.
inline std::uint64_t canon_key(const IntVector& c, Int base) {
  std::uint64_t k = 0;
  for (Int x : c) k = k * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(x);
  return k;
}

inline void check_torus_cap(const ToricSetup& setup) {
  const Int base = setup.field().unit_order();
  Int total = 1;
  for (std::size_t i = 0; i < setup.dim(); ++i) {
    total = checked::mul(total, base);
    if (total > kTorusPointCap)
      throw CapExceeded("torus has more than " + std::to_string(kTorusPointCap) + " points ((q-1)^n cap)");
  }
}

inline TorusPoint add_points(const TorusPoint& a, const TorusPoint& b, Int n_units) {
  TorusPoint p{a.canon, a.rep};
  for (std::size_t i = 0; i < p.canon.size(); ++i) p.canon[i] = (p.canon[i] + b.canon[i]) % n_units;
  for (std::size_t i = 0; i < p.rep.size(); ++i) p.rep[i] = (p.rep[i] + b.rep[i]) % n_units;
  return p;
}

}  // namespace detail

/// Smallest subgroup containing the generators (breadth-first closure).
inline PointSet subgroup_closure(const std::vector<TorusPoint>& generators, const ToricSetup& setup) {
  detail::check_torus_cap(setup);
  const Int n_units = setup.field().unit_order();
  TorusPoint one{IntVector(setup.dim(), 0), IntVector(setup.num_rays(), 0)};
  std::unordered_map<std::uint64_t, std::size_t> seen;
  std::vector<TorusPoint> found{one};
  seen.emplace(detail::canon_key(one.canon, n_units), 0);
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (const auto& g : generators) {
      TorusPoint p = detail::add_points(found[head], g, n_units);
      if (seen.emplace(detail::canon_key(p.canon, n_units), found.size()).second) found.push_back(std::move(p));
    }
  }
  return make_point_set(std::move(found), true);
}

/// Every point of T_X.
inline PointSet all_torus_points(const ToricSetup& setup) {
  std::vector<TorusPoint> gens;
  for (std::size_t j = 0; j < setup.num_rays(); ++j) {
    IntVector e(setup.num_rays(), 0);
    e[j] = 1;
    gens.push_back(make_point(std::move(e), setup));
  }
  return subgroup_closure(gens, setup);
}

inline void require_subgroup_order(Int h, const ToricSetup& setup) {
  require(h >= 1 && setup.field().unit_order() % h == 0,
          "subgroup order h = " + std::to_string(h) + " does not divide q-1 = " +
              std::to_string(setup.field().unit_order()));
}

/// Y_{Q,H}: the points [t_1^{q_11}...t_s^{q_s1} : ... ] with t_i ranging over
/// the order-h subgroup H of F_q^*. Rows of Q are parameters.
inline PointSet points_from_parameterization(const IntMatrix& Q, Int h, const ToricSetup& setup) {
  require_subgroup_order(h, setup);
  require(Q.cols() == setup.num_rays(), "parameter matrix must have r = " + std::to_string(setup.num_rays()) +
                                            " columns");
  const Int step = setup.field().unit_order() / h;
  std::vector<TorusPoint> gens;
  for (std::size_t i = 0; i < Q.rows(); ++i) {
    IntVector s = Q.row(i);
    for (Int& x : s) x = checked::mul(checked::mod(x, h), step);
    gens.push_back(make_point(std::move(s), setup));
  }
  return subgroup_closure(gens, setup);
}

/// V_X(I_L) intersected with the torus: points whose exponents satisfy s . b = 0 mod (q-1)
/// for every basis column b of L.
inline PointSet zero_set_in_torus(const IntMatrix& lattice, const ToricSetup& setup) {
  require(is_homogeneous(lattice, setup), "lattice is not homogeneous");
  const Int n_units = setup.field().unit_order();
  PointSet all = all_torus_points(setup);
  const auto basis = lattice.column_list();
  std::vector<TorusPoint> keep;
  for (auto& p : all.points) {
    bool ok = std::all_of(basis.begin(), basis.end(),
                          [&](const IntVector& b) { return checked::mod(dot(p.rep, b), n_units) == 0; });
    if (ok) keep.push_back(std::move(p));
  }
  return {std::move(keep), true};
}

/// An integer r x n matrix R with phi^T R = I, which exists iff the class group
/// is torsion-free.
inline std::optional<IntMatrix> phi_right_inverse(const ToricSetup& setup) {
  SNFResult s = snf(setup.phi());
  const std::size_t n = setup.dim();
  for (std::size_t i = 0; i < n; ++i)
    if (s.S(i, i) != 1) return std::nullopt;
  return s.U.transpose() * s.S * s.V.transpose();
}

struct GroupStructure {
  IntVector orders;                   // invariant factors, each > 1, divisibility chain
  std::vector<TorusPoint> generators;  // one per invariant factor
  IntMatrix Q;                        // parameter matrix, one row per generator
  Int h = 1;                          // order of the parameter subgroup H
};

/// Cyclic decomposition of a finite subgroup of T_X together with a monomial
/// parameterization: points_from_parameterization(Q, h) reproduces Y.
inline GroupStructure group_structure(const PointSet& Y, const ToricSetup& setup) {
  require(Y.is_group, "point set is not flagged as a subgroup");
  auto right_inv = phi_right_inverse(setup);
  require(right_inv.has_value(), "group structure requires a torsion-free class group");
  const Int n_units = setup.field().unit_order();
  const std::size_t n = setup.dim(), r = setup.num_rays();

  // Greedy small generating set.
  std::vector<TorusPoint> gens;
  PointSet span = subgroup_closure(gens, setup);
  for (const auto& p : Y.points) {
    if (span.contains(p.canon)) continue;
    gens.push_back(p);
    span = subgroup_closure(gens, setup);
  }
  ensure(span == Y, "point set is not closed under multiplication");

  // Subgroup of (Z/N)^n spanned by the canonical forms: SNF of [C | N*I].
  IntMatrix m(n, gens.size() + n);
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = gens[j].canon[i];
  for (std::size_t i = 0; i < n; ++i) m(i, gens.size() + i) = n_units;
  SNFResult s = snf(m);

  GroupStructure out;
  std::vector<std::pair<Int, IntVector>> cyclic;  // (order, c') with generator canon = (N/order) c'
  for (std::size_t i = 0; i < n; ++i) {
    const Int si = s.S(i, i);
    ensure(si > 0 && n_units % si == 0, "unexpected Smith diagonal in group structure");
    const Int order = n_units / si;
    if (order == 1) continue;
    IntVector c = m * s.V.column(i);
    IntVector reduced(n);
    for (std::size_t k = 0; k < n; ++k) {
      Int ck = checked::mod(c[k], n_units);
      ensure(ck % si == 0, "generator not divisible by its cofactor");
      reduced[k] = ck / si;
    }
    cyclic.emplace_back(order, std::move(reduced));
  }
  std::reverse(cyclic.begin(), cyclic.end());

  for (const auto& [order, _] : cyclic) out.h = lcm_checked(out.h, order);
  out.Q = IntMatrix(cyclic.size(), r);
  for (std::size_t i = 0; i < cyclic.size(); ++i) {
    const auto& [order, cprime] = cyclic[i];
    IntVector lifted = *right_inv * cprime;
    IntVector rep(r);
    for (std::size_t j = 0; j < r; ++j) {
      Int base = checked::mod(lifted[j], order);
      out.Q(i, j) = checked::mul(out.h / order, base);
      rep[j] = checked::mul(n_units / order, base);
    }
    out.orders.push_back(order);
    out.generators.push_back(make_point(std::move(rep), setup));
  }
  return out;
}

/// d_i = h / gcd(h, a_i): the order of eta_H^{a_i} for a generator eta_H of H.
inline IntVector degenerate_orders(const IntVector& a, Int h) {
  IntVector d;
  for (Int ai : a) d.push_back(h / std::gcd(h, checked::abs(ai)));
  return d;
}

inline bool pairwise_coprime(const IntVector& d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j)
      if (std::gcd(d[i], d[j]) != 1) return false;
  return true;
}

struct DegenerateTorus {
  PointSet points;
  IntVector d;
  std::optional<Int> predicted_order;  // prod d_i when the d_i are pairwise coprime
};

/// Y_{A,H} = {[t_1^{a_1} : ... : t_r^{a_r}] : t_i in H}, |H| = h.
inline DegenerateTorus degenerate_torus(const IntVector& a, Int h, const ToricSetup& setup) {
  require_subgroup_order(h, setup);
  require(a.size() == setup.num_rays(), "exponent vector a has wrong length");
  const Int step = setup.field().unit_order() / h;
  std::vector<TorusPoint> gens;
  for (std::size_t i = 0; i < a.size(); ++i) {
    IntVector s(a.size(), 0);
    s[i] = checked::mul(checked::mod(a[i], h), step);
    gens.push_back(make_point(std::move(s), setup));
  }
  DegenerateTorus out{subgroup_closure(gens, setup), degenerate_orders(a, h), std::nullopt};
  if (pairwise_coprime(out.d)) {
    Int prod = 1;
    for (Int x : out.d) prod = checked::mul(prod, x);
    out.predicted_order = prod;
    ensure(static_cast<Int>(out.points.size()) == prod, "degenerate torus order differs from the product of the d_i");
  }
  return out;
}

}  // namespace torilat
