#pragma once

// The class-group grading of the Cox ring: the degree matrix computed from the
// rays of the fan, degree arithmetic, and graded monomial enumeration.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "torilat/errors.hpp"
#include "torilat/gfield.hpp"
#include "torilat/intlin.hpp"

namespace torilat {

using Cone = std::vector<std::size_t>;  // 0-based ray indices

/// Residue map Z^r -> Z/modulus contributing one torsion coordinate of a degree.
struct TorsionRow {
  IntVector coeffs;
  Int modulus = 1;
};

/// An element of the class group: free coordinates plus torsion residues.
struct Degree {
  IntVector free;
  IntVector torsion;

  friend bool operator==(const Degree&, const Degree&) = default;
  friend auto operator<=>(const Degree&, const Degree&) = default;

  bool is_zero() const {
    for (Int x : free)
      if (x != 0) return false;
    for (Int x : torsion)
      if (x != 0) return false;
    return true;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < free.size(); ++i) os << (i ? "," : "") << free[i];
    if (!torsion.empty()) {
      os << " |";
      for (Int t : torsion) os << ' ' << t;
    }
    os << ')';
    return os.str();
  }
};

/// The fixed ambient data: rays, degree matrix, field and (optionally) the maximal cones.
class ToricSetup {
 public:
  ToricSetup(IntMatrix phi, IntMatrix beta, std::vector<TorsionRow> torsion, Int q,
             std::optional<std::vector<Cone>> max_cones)
      : phi_(std::move(phi)),
        beta_(std::move(beta)),
        torsion_(std::move(torsion)),
        field_(std::make_shared<const PrimeField>(q)),
        max_cones_(std::move(max_cones)) {}

  /// r x n, row i is the primitive generator of the i-th ray.
  const IntMatrix& phi() const { return phi_; }
  /// k x r free part of the degree map.
  const IntMatrix& beta() const { return beta_; }
  const std::vector<TorsionRow>& torsion() const { return torsion_; }
  const PrimeField& field() const { return *field_; }
  Int q() const { return field_->order(); }
  const std::optional<std::vector<Cone>>& max_cones() const { return max_cones_; }

  std::size_t num_rays() const { return phi_.rows(); }
  std::size_t dim() const { return phi_.cols(); }
  std::size_t free_rank() const { return beta_.rows(); }
  bool torsion_free() const { return torsion_.empty(); }

  IntVector torsion_moduli() const {
    IntVector m;
    for (const auto& t : torsion_) m.push_back(t.modulus);
    return m;
  }

  /// Basis of L_beta = ker(beta) = im(phi): the columns of phi.
  const IntMatrix& homogeneous_lattice() const { return phi_; }

 private:
  IntMatrix phi_;
  IntMatrix beta_;
  std::vector<TorsionRow> torsion_;
  std::shared_ptr<const PrimeField> field_;
  std::optional<std::vector<Cone>> max_cones_;
};

namespace detail {

inline void validate_cones(const std::optional<std::vector<Cone>>& cones, std::size_t r) {
  if (!cones) return;
  for (const auto& c : *cones)
    for (std::size_t j : c) require(j < r, "max_cones: ray index " + std::to_string(j + 1) + " out of range");
}

inline void validate_rays(const IntMatrix& phi) {
  for (std::size_t i = 0; i < phi.rows(); ++i)
    require(gcd_of(phi.row(i)) == 1, "ray " + std::to_string(i + 1) + " is not primitive");
  require(rank(phi) == phi.cols(), "rays do not span Q^n");
}

}  // namespace detail

/// Builds the exact sequence 0 -> Z^n -> Z^r -> A -> 0 from the rays. The free
/// rows of the degree matrix are reported in trailing Hermite form, which for
/// Hirzebruch surfaces gives deg(x_1) = (1,0), deg(x_4) = (0,1).
inline ToricSetup setup_from_rays(const std::vector<IntVector>& rays, Int q,
                                  std::optional<std::vector<Cone>> max_cones = std::nullopt) {
  require(!rays.empty(), "no rays given");
  require(is_prime(q), "field size q = " + std::to_string(q) + " is not prime");
  IntMatrix phi = IntMatrix::from_rows(rays);
  require(phi.cols() > 0, "rays must have positive length");
  detail::validate_rays(phi);
  detail::validate_cones(max_cones, phi.rows());

  const std::size_t r = phi.rows(), n = phi.cols();
  SNFResult s = snf(phi);
  std::vector<TorsionRow> torsion;
  for (std::size_t i = 0; i < n; ++i) {
    Int d = s.S(i, i);
    if (d > 1) {
      IntVector row = s.U.row(i);
      for (Int& x : row) x = checked::mod(x, d);
      torsion.push_back({std::move(row), d});
    }
  }
  IntMatrix free_rows = select_rows(s.U, n, r);
  IntMatrix beta = free_rows.rows() ? trailing_hermite_basis(free_rows.transpose()).transpose() : IntMatrix(0, r);
  return ToricSetup(std::move(phi), std::move(beta), std::move(torsion), q, std::move(max_cones));
}

/// Torsion-free setup from an explicit degree matrix (used verbatim); the rays
/// are read off a kernel basis.
inline ToricSetup setup_from_beta(const IntMatrix& beta, Int q,
                                  std::optional<std::vector<Cone>> max_cones = std::nullopt) {
  require(beta.cols() > 0, "degree matrix has no columns");
  require(is_prime(q), "field size q = " + std::to_string(q) + " is not prime");
  require(rank(beta) == beta.rows(), "degree matrix rows are not independent");
  IntMatrix phi = integer_kernel(beta);
  require(phi.cols() > 0, "degree matrix has trivial kernel");
  detail::validate_rays(phi);
  detail::validate_cones(max_cones, beta.cols());
  return ToricSetup(std::move(phi), beta, {}, q, std::move(max_cones));
}

/// beta * a with torsion coordinates reduced.
inline Degree degree_of(const IntVector& a, const ToricSetup& setup) {
  require(a.size() == setup.num_rays(), "exponent vector has wrong length");
  Degree d;
  d.free = setup.beta() * a;
  for (const auto& t : setup.torsion()) d.torsion.push_back(checked::mod(dot(t.coeffs, a), t.modulus));
  return d;
}

inline Degree zero_degree(const ToricSetup& setup) {
  return Degree{IntVector(setup.free_rank(), 0), IntVector(setup.torsion().size(), 0)};
}

inline Degree make_degree(IntVector free, const ToricSetup& setup, IntVector torsion = {}) {
  require(free.size() == setup.free_rank(), "degree has wrong free rank");
  if (torsion.empty()) torsion.assign(setup.torsion().size(), 0);
  require(torsion.size() == setup.torsion().size(), "degree has wrong torsion length");
  for (std::size_t i = 0; i < torsion.size(); ++i) torsion[i] = checked::mod(torsion[i], setup.torsion()[i].modulus);
  return Degree{std::move(free), std::move(torsion)};
}

inline Degree operator-(const Degree& a, const Degree& b) {
  require(a.free.size() == b.free.size() && a.torsion.size() == b.torsion.size(), "degree shape mismatch");
  Degree d = a;
  for (std::size_t i = 0; i < d.free.size(); ++i) d.free[i] = checked::sub(a.free[i], b.free[i]);
  for (std::size_t i = 0; i < d.torsion.size(); ++i) d.torsion[i] = a.torsion[i] - b.torsion[i];
  return d;
}

/// True iff every basis column c of L has degree zero, i.e. span(L) is inside L_beta.
inline bool is_homogeneous(const IntMatrix& lattice, const ToricSetup& setup) {
  require(lattice.rows() == setup.num_rays(), "lattice basis has " + std::to_string(lattice.rows()) +
                                                  " rows, expected " + std::to_string(setup.num_rays()));
  for (std::size_t j = 0; j < lattice.cols(); ++j)
    if (!degree_of(lattice.column(j), setup).is_zero()) return false;
  return true;
}

namespace detail {

/// Exact rational with overflow-checked 64-bit parts; den > 0, reduced.
struct Rational {
  Int num = 0;
  Int den = 1;

  static Rational make(Int n, Int d) {
    assert(d != 0);
    if (d < 0) {
      n = checked::neg(n);
      d = checked::neg(d);
    }
    Int g = std::gcd(checked::abs(n), d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    return {n, d};
  }
  friend Rational operator+(Rational a, Rational b) {
    return make(checked::add(checked::mul(a.num, b.den), checked::mul(b.num, a.den)), checked::mul(a.den, b.den));
  }
  friend Rational operator-(Rational a, Rational b) { return a + Rational{checked::neg(b.num), b.den}; }
  friend Rational operator*(Rational a, Rational b) {
    return make(checked::mul(a.num, b.num), checked::mul(a.den, b.den));
  }
  friend Rational operator/(Rational a, Rational b) {
    return make(checked::mul(a.num, b.den), checked::mul(a.den, b.num));
  }
  friend bool operator<(Rational a, Rational b) { return checked::mul(a.num, b.den) < checked::mul(b.num, a.den); }
  friend bool operator<=(Rational a, Rational b) { return !(b < a); }
  Int floor() const { return checked::floor_div(num, den); }
  Int ceil() const { return checked::neg(checked::floor_div(checked::neg(num), den)); }
};

/// One inequality coeffs . x >= rhs.
struct Inequality {
  IntVector coeffs;
  Int rhs;
};

inline Inequality normalized(Inequality ie) {
  Int g = std::gcd(gcd_of(ie.coeffs), checked::abs(ie.rhs));
  if (g > 1) {
    for (Int& c : ie.coeffs) c /= g;
    ie.rhs /= g;
  }
  return ie;
}

/// Fourier-Motzkin feasibility for {x in Q^k : A x >= b}. Returns a witness.
inline std::optional<std::vector<Rational>> fourier_motzkin(std::vector<Inequality> system, std::size_t k) {
  // stages[v] holds the system over variables 0..v (all later ones eliminated).
  std::vector<std::vector<Inequality>> stages(k);
  for (std::size_t v = k; v-- > 0;) {
    stages[v] = system;
    std::vector<Inequality> pos, neg, rest;
    for (auto& ie : system) {
      if (ie.coeffs[v] > 0)
        pos.push_back(ie);
      else if (ie.coeffs[v] < 0)
        neg.push_back(ie);
      else
        rest.push_back(ie);
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        Int cp = p.coeffs[v], cn = checked::neg(n.coeffs[v]);
        Inequality comb{IntVector(k, 0), checked::add(checked::mul(cn, p.rhs), checked::mul(cp, n.rhs))};
        for (std::size_t j = 0; j < k; ++j)
          comb.coeffs[j] = checked::add(checked::mul(cn, p.coeffs[j]), checked::mul(cp, n.coeffs[j]));
        comb.coeffs[v] = 0;
        rest.push_back(normalized(std::move(comb)));
      }
    system = std::move(rest);
  }
  for (const auto& ie : system)
    if (ie.rhs > 0) return std::nullopt;  // 0 >= rhs fails

  std::vector<Rational> x(k);
  for (std::size_t v = 0; v < k; ++v) {
    std::optional<Rational> lo, hi;
    for (const auto& ie : stages[v]) {
      if (ie.coeffs[v] == 0) continue;
      Rational rest = Rational::make(ie.rhs, 1);
      for (std::size_t j = 0; j < v; ++j) rest = rest - Rational::make(ie.coeffs[j], 1) * x[j];
      Rational bound = rest / Rational::make(ie.coeffs[v], 1);
      if (ie.coeffs[v] > 0) {
        if (!lo || *lo < bound) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    Rational zero{0, 1};
    if ((!lo || *lo <= zero) && (!hi || zero <= *hi)) {
      x[v] = zero;
    } else if (lo && (!hi || Rational::make(lo->ceil(), 1) <= *hi)) {
      x[v] = Rational::make(lo->ceil(), 1);
    } else if (hi && !lo) {
      x[v] = Rational::make(hi->floor(), 1);
    } else {
      x[v] = *lo;
    }
  }
  return x;
}

}  // namespace detail

/// An integer vector w with w . deg(x_j) > 0 for every variable, or nullopt
/// if the semigroup generated by the degrees is not pointed.
inline std::optional<IntVector> positive_functional(const ToricSetup& setup) {
  const std::size_t k = setup.free_rank();
  std::vector<detail::Inequality> system;
  for (std::size_t j = 0; j < setup.num_rays(); ++j) system.push_back({setup.beta().column(j), 1});
  auto sol = detail::fourier_motzkin(std::move(system), k);
  if (!sol) return std::nullopt;
  Int den = 1;
  for (const auto& x : *sol) den = lcm_checked(den, x.den);
  IntVector w(k);
  for (std::size_t i = 0; i < k; ++i) w[i] = checked::mul((*sol)[i].num, den / (*sol)[i].den);
  Int g = gcd_of(w);
  if (g > 1)
    for (Int& x : w) x /= g;
  return w;
}

namespace detail {

constexpr std::size_t kMonomialNodeCap = 50'000'000;

/// Depth-first enumeration of a in N^r (restricted to `allowed` variables) with
/// beta a = alpha, in ascending lexicographic order. The visitor returns false
/// to stop early.
inline void enumerate_monomials(const Degree& alpha, const ToricSetup& setup, const std::vector<bool>& allowed,
                                const std::function<bool(const IntVector&)>& visit) {
  require(setup.torsion_free(), "monomial enumeration is only supported for torsion-free class groups");
  require(alpha.free.size() == setup.free_rank(), "degree has wrong free rank");
  auto w = positive_functional(setup);
  require(w.has_value(),
          "the degree semigroup is not pointed, so graded pieces are infinite; supply an explicit cap");
  const std::size_t r = setup.num_rays();
  IntVector weight(r);
  for (std::size_t j = 0; j < r; ++j) weight[j] = dot(*w, setup.beta().column(j));
  const Int target = dot(*w, alpha.free);
  if (target < 0) return;

  std::size_t last = r;
  for (std::size_t j = 0; j < r; ++j)
    if (allowed[j]) last = j;

  IntVector a(r, 0);
  std::size_t nodes = 0;
  bool stop = false;

  std::function<void(std::size_t, Int)> dfs = [&](std::size_t j, Int budget) {
    if (stop) return;
    if (++nodes > kMonomialNodeCap) throw CapExceeded("monomial enumeration exceeded node cap");
    if (j >= last) {
      // The last free variable absorbs the remaining budget.
      if (last < r) {
        if (budget % weight[last] != 0) return;
        a[last] = budget / weight[last];
      } else if (budget != 0) {
        return;
      }
      if (setup.beta() * a == alpha.free) stop = !visit(a);
      if (last < r) a[last] = 0;
      return;
    }
    if (!allowed[j]) {
      dfs(j + 1, budget);
      return;
    }
    for (Int e = 0; e * weight[j] <= budget && !stop; ++e) {
      a[j] = e;
      dfs(j + 1, budget - e * weight[j]);
    }
    a[j] = 0;
  };
  dfs(0, target);
}

}  // namespace detail

/// All a in N^r with deg(a) = alpha, ascending lexicographic order.
inline std::vector<IntVector> monomial_basis(const Degree& alpha, const ToricSetup& setup) {
  std::vector<IntVector> out;
  detail::enumerate_monomials(alpha, setup, std::vector<bool>(setup.num_rays(), true), [&](const IntVector& a) {
    out.push_back(a);
    return true;
  });
  return out;
}

/// True iff alpha lies in the subsemigroup generated by the degrees of `allowed` variables.
inline bool in_subsemigroup(const Degree& alpha, const ToricSetup& setup, const std::vector<bool>& allowed) {
  bool found = false;
  detail::enumerate_monomials(alpha, setup, allowed, [&](const IntVector&) {
    found = true;
    return false;
  });
  return found;
}

/// Torsion orders of the class group that share a factor with the characteristic q.
inline IntVector torsion_orders_not_coprime(const ToricSetup& setup) {
  IntVector out;
  for (Int d : setup.torsion_moduli())
    if (d % setup.q() == 0) out.push_back(d);
  return out;
}

/// alpha in N beta.
inline bool in_semigroup(const Degree& alpha, const ToricSetup& setup) {
  return in_subsemigroup(alpha, setup, std::vector<bool>(setup.num_rays(), true));
}

/// alpha in K, the intersection over maximal cones sigma of the semigroups
/// generated by the degrees of the rays outside sigma.
inline bool in_semigroup_Khat(const Degree& alpha, const ToricSetup& setup) {
  require(setup.max_cones().has_value(), "maximal cones are required for the semigroup K");
  for (const auto& cone : *setup.max_cones()) {
    std::vector<bool> allowed(setup.num_rays(), true);
    for (std::size_t j : cone) allowed[j] = false;
    if (!in_subsemigroup(alpha, setup, allowed)) return false;
  }
  return true;
}

}  // namespace torilat
