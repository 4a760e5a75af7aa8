#pragma once

// Lattice ideals I_L = <x^{m+} - x^{m-} : m in L> and the lattice-side
// computations: zero-set parameterization, degenerate-torus lattices,
// complete-intersection tests, torus and point ideals, and coset counting.

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "torilat/errors.hpp"
#include "torilat/grading.hpp"
#include "torilat/intlin.hpp"
#include "torilat/torus.hpp"

namespace torilat {

/// x^{m+} - scale * x^{m-}.
struct Binomial {
  IntVector m;
  Int scale = 1;

  IntVector positive_part() const {
    IntVector p(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) p[i] = std::max<Int>(m[i], 0);
    return p;
  }
  IntVector negative_part() const {
    IntVector p(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) p[i] = std::max<Int>(-m[i], 0);
    return p;
  }

  friend bool operator==(const Binomial&, const Binomial&) = default;

  std::string to_string() const {
    auto monomial = [](const IntVector& e) {
      std::ostringstream os;
      bool first = true;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        os << (first ? "" : "*") << 'x' << i + 1;
        if (e[i] != 1) os << '^' << e[i];
        first = false;
      }
      return first ? std::string("1") : os.str();
    };
    std::string out = monomial(positive_part()) + " - ";
    if (scale != 1) out += std::to_string(scale) + "*";
    return out + monomial(negative_part());
  }
};

/// Orients m so that its first nonzero entry is positive.
inline IntVector sign_normalized(IntVector m) {
  auto it = std::find_if(m.begin(), m.end(), [](Int x) { return x != 0; });
  if (it != m.end() && *it < 0)
    for (Int& x : m) x = checked::neg(x);
  return m;
}

struct LatticeIdealPresentation {
  IntMatrix basis;                 // columns span L
  std::vector<Binomial> binomials;  // binomials[i].m == basis column i
};

/// One binomial per basis column (sign-normalized). These cut out the zero set
/// of I_L inside the torus; the full ideal may need more generators.
inline LatticeIdealPresentation lattice_ideal_generators(const IntMatrix& lattice) {
  require(rank(lattice) == lattice.cols(), "lattice basis columns are not linearly independent");
  std::vector<IntVector> cols;
  LatticeIdealPresentation out;
  for (std::size_t j = 0; j < lattice.cols(); ++j) {
    IntVector m = sign_normalized(lattice.column(j));
    out.binomials.push_back({m, 1});
    cols.push_back(std::move(m));
  }
  out.basis = IntMatrix::from_columns(cols, lattice.rows());
  return out;
}

/// Value of the binomial at the point, computed from actual field coordinates.
inline Int evaluate_binomial(const Binomial& f, const TorusPoint& p, const ToricSetup& setup) {
  const PrimeField& F = setup.field();
  require(f.m.size() == p.rep.size(), "binomial and point dimensions differ");
  Int lhs = 1, rhs = 1;
  for (std::size_t j = 0; j < f.m.size(); ++j) {
    Int coord = F.power_of_generator(p.rep[j]);
    if (f.m[j] > 0) lhs = F.mul(lhs, F.pow(coord, f.m[j]));
    if (f.m[j] < 0) rhs = F.mul(rhs, F.pow(coord, -f.m[j]));
  }
  return F.sub(lhs, F.mul(F.reduce(f.scale), rhs));
}

/// A parameter matrix A (rows are parameters, as for points_from_parameterization)
/// with Y_{A, F_q^*} equal to the zero set of I_L in the torus. Built from a
/// kernel basis of B_L = [L^T | (q-1) I].
inline IntMatrix parameterize_zero_set(const IntMatrix& lattice, const ToricSetup& setup) {
  const std::size_t r = setup.num_rays();
  require(is_homogeneous(lattice, setup), "lattice is not homogeneous");
  const std::size_t ell = lattice.cols();
  require(ell <= r, "lattice rank exceeds r");
  if (ell == 0) return IntMatrix::identity(r);
  require(rank(lattice) == ell, "lattice basis columns are not linearly independent");

  IntMatrix b(ell, r + ell);
  for (std::size_t j = 0; j < ell; ++j) {
    for (std::size_t i = 0; i < r; ++i) b(j, i) = lattice(i, j);
    b(j, r + j) = setup.field().unit_order();
  }
  IntMatrix kernel = integer_kernel(b);
  ensure(kernel.cols() == r, "kernel of B_L has unexpected rank");
  return select_rows(kernel, 0, r).transpose();
}

/// Basis (columns) of {x : deg(C x) = 0} for an r x c matrix C, taking torsion into account.
inline IntMatrix kernel_of_degree_map(const IntMatrix& c, const ToricSetup& setup) {
  require(c.rows() == setup.num_rays(), "kernel_of_degree_map: dimension mismatch");
  IntMatrix bc = setup.beta() * c;
  if (setup.torsion_free()) return integer_kernel(bc);
  const auto& tors = setup.torsion();
  const std::size_t k = bc.rows(), t = tors.size(), cols = c.cols();
  IntMatrix aug(k + t, cols + t);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < cols; ++j) aug(i, j) = bc(i, j);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug(k + i, j) = dot(tors[i].coeffs, c.column(j));
    aug(k + i, cols + i) = tors[i].modulus;
  }
  IntMatrix ker = integer_kernel(aug);
  return trailing_hermite_basis(select_rows(ker, 0, cols));
}

struct DegenerateLattice {
  IntVector d;
  IntMatrix D;
  IntMatrix toric_basis;  // basis of L_{beta D}
  IntMatrix lattice;      // D * toric_basis, columns sign-normalized
  LatticeIdealPresentation generators;
};

/// Lattice of the vanishing ideal of the degenerate torus Y_{A,H}: L = D(L_{beta D})
/// with d_i = h / gcd(h, a_i); generators come from those of L_{beta D} by x_i -> x_i^{d_i}.
inline DegenerateLattice degenerate_lattice(const IntVector& a, Int h, const ToricSetup& setup) {
  require_subgroup_order(h, setup);
  require(a.size() == setup.num_rays(), "exponent vector a has wrong length");
  DegenerateLattice out;
  out.d = degenerate_orders(a, h);
  out.D = IntMatrix::diagonal(out.d);
  out.toric_basis = kernel_of_degree_map(out.D, setup);
  out.generators = lattice_ideal_generators(out.D * out.toric_basis);
  out.lattice = out.generators.basis;
  return out;
}

/// Every column has a strictly positive and a strictly negative entry.
inline bool is_mixed(const IntMatrix& g) {
  for (std::size_t j = 0; j < g.cols(); ++j) {
    bool pos = false, neg = false;
    for (std::size_t i = 0; i < g.rows(); ++i) {
      pos = pos || g(i, j) > 0;
      neg = neg || g(i, j) < 0;
    }
    if (!pos || !neg) return false;
  }
  return true;
}

namespace detail {

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    if (!f(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// No square submatrix is mixed.
inline bool is_dominating(const IntMatrix& g) {
  const std::size_t r = g.rows(), c = g.cols();
  // A column that is not mixed overall can never be mixed on a subset of rows.
  std::vector<bool> usable(c);
  for (std::size_t j = 0; j < c; ++j) usable[j] = is_mixed(select_columns(g, {j}));
  bool found_mixed = false;
  for (std::size_t k = 2; k <= std::min(r, c) && !found_mixed; ++k) {
    detail::for_each_subset(c, k, [&](const std::vector<std::size_t>& cols) {
      for (std::size_t j : cols)
        if (!usable[j]) return true;
      detail::for_each_subset(r, k, [&](const std::vector<std::size_t>& rows) {
        bool all_mixed = true;
        for (std::size_t j : cols) {
          bool pos = false, neg = false;
          for (std::size_t i : rows) {
            pos = pos || g(i, j) > 0;
            neg = neg || g(i, j) < 0;
          }
          if (!pos || !neg) {
            all_mixed = false;
            break;
          }
        }
        if (all_mixed) found_mixed = true;
        return !found_mixed;
      });
      return !found_mixed;
    });
  }
  return !found_mixed;
}

inline bool is_mixed_dominating(const IntMatrix& g) { return is_mixed(g) && is_dominating(g); }

/// Coordinate orderings are tried exhaustively up to this many rows.
inline constexpr std::size_t kMaxPermutedRows = 8;

/// Complete-intersection test for I_L: some candidate basis of L is mixed
/// dominating. Candidates are the trailing Hermite bases of L under every
/// ordering of the coordinates (only the given ordering above kMaxPermutedRows).
/// Requires L homogeneous under a pointed grading, which gives L meeting N^r
/// only in 0.
inline bool complete_intersection(const IntMatrix& lattice, const ToricSetup& setup) {
  require(is_homogeneous(lattice, setup), "lattice is not homogeneous");
  require(positive_functional(setup).has_value(),
          "cannot certify L ∩ N^r = {0}: the degree semigroup is not pointed");
  if (lattice.cols() == 0) return true;
  const std::size_t r = lattice.rows();
  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), 0);
  do {
    std::vector<IntVector> rows;
    for (std::size_t i : order) rows.push_back(lattice.row(i));
    // Row order does not affect the sign-pattern conditions, so no need to undo it.
    if (is_mixed_dominating(trailing_hermite_basis(IntMatrix::from_rows(rows)))) return true;
  } while (r <= kMaxPermutedRows && std::next_permutation(order.begin(), order.end()));
  return false;
}

/// Generators of the vanishing ideal of T_X: basis binomials of (q-1) L_beta.
inline LatticeIdealPresentation torus_ideal(const ToricSetup& setup) {
  return lattice_ideal_generators(scaled(setup.homogeneous_lattice(), setup.field().unit_order()));
}

/// x^{m+} - x^m(P) x^{m-} for each basis column m of L_beta; these generate I([P]).
inline std::vector<Binomial> point_ideal(const TorusPoint& p, const ToricSetup& setup) {
  require(p.rep.size() == setup.num_rays(), "point has wrong number of coordinates");
  std::vector<Binomial> out;
  const IntMatrix& lb = setup.homogeneous_lattice();
  for (std::size_t j = 0; j < lb.cols(); ++j) {
    IntVector m = sign_normalized(lb.column(j));
    Int scale = setup.field().power_of_generator(dot(p.rep, m));
    out.push_back({std::move(m), scale});
  }
  return out;
}

/// Number of L-cosets among the monomials of degree alpha; equals
/// dim S_alpha - dim (I_L)_alpha.
inline Int hilbert_of_lattice(const IntMatrix& lattice, const Degree& alpha, const ToricSetup& setup) {
  require(is_homogeneous(lattice, setup), "lattice is not homogeneous");
  LatticeReducer reducer(lattice);
  std::set<IntVector> classes;
  for (auto& a : monomial_basis(alpha, setup)) classes.insert(reducer.reduce(std::move(a)));
  return static_cast<Int>(classes.size());
}

/// A small set of points generating the same subgroup as Y.
inline std::vector<TorusPoint> generating_set(const PointSet& Y, const ToricSetup& setup) {
  std::vector<TorusPoint> gens;
  PointSet span = subgroup_closure(gens, setup);
  for (const auto& p : Y.points) {
    if (span.contains(p.canon)) continue;
    gens.push_back(p);
    span = subgroup_closure(gens, setup);
  }
  return gens;
}

/// L(Y) = {m in L_beta : x^m(P) = 1 for all [P] in Y}; for a subgroup Y this is
/// the lattice with I(Y) = I_{L(Y)}.
inline IntMatrix vanishing_lattice(const PointSet& Y, const ToricSetup& setup) {
  const Int n_units = setup.field().unit_order();
  const std::size_t n = setup.dim();
  auto gens = generating_set(Y, setup);
  // m = phi u, and m . s = u . canon(s); solve canon_g . u = 0 mod (q-1).
  const std::size_t s = gens.size();
  IntMatrix u_basis;
  if (s == 0) {
    u_basis = IntMatrix::identity(n);
  } else {
    IntMatrix sys(s, n + s);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < n; ++j) sys(i, j) = gens[i].canon[j];
      sys(i, n + i) = n_units;
    }
    u_basis = select_rows(integer_kernel(sys), 0, n);
  }
  return trailing_hermite_basis(setup.homogeneous_lattice() * u_basis);
}

}  // namespace torilat
