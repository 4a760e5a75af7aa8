#pragma once

// Generalized toric codes C_{alpha,Y}: evaluation of the monomials of degree
// alpha at the points of Y, normalized by a fixed monomial F0 of the same degree.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "torilat/errors.hpp"
#include "torilat/gfield.hpp"
#include "torilat/grading.hpp"
#include "torilat/intlin.hpp"
#include "torilat/torus.hpp"

namespace torilat {

/// Dense matrix over F_q, entries in [0, q).
struct FieldMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> data;

  FieldMatrix() = default;
  FieldMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  Int& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  Int operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Reduced row echelon form in place; returns the rank.
inline std::size_t row_reduce(FieldMatrix& m, const PrimeField& f) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols && rank < m.rows; ++c) {
    std::size_t piv = rank;
    while (piv < m.rows && m(piv, c) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(rank, j));
    const Int inv = f.inv(m(rank, c));
    for (std::size_t j = c; j < m.cols; ++j) m(rank, j) = f.mul(m(rank, j), inv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == rank || m(i, c) == 0) continue;
      const Int factor = m(i, c);
      for (std::size_t j = c; j < m.cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(rank, j)));
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank_over_field(FieldMatrix m, const PrimeField& f) { return row_reduce(m, f); }

struct EvaluationMatrix {
  std::vector<IntVector> monomials;  // row labels, ascending lex
  IntVector f0;                      // normalizing monomial
  FieldMatrix values;                // |monomials| x |Y|, entry F(P)/F0(P)
};

/// Rows are the monomials of degree alpha, columns the points of Y. F0 defaults
/// to the lexicographically smallest monomial of degree alpha.
inline EvaluationMatrix evaluation_matrix(const PointSet& Y, const Degree& alpha, const ToricSetup& setup,
                                          std::optional<IntVector> f0 = std::nullopt) {
  require(!Y.empty(), "point set is empty");
  EvaluationMatrix out;
  out.monomials = monomial_basis(alpha, setup);
  if (out.monomials.empty()) {
    out.values = FieldMatrix(0, Y.size());
    return out;
  }
  if (f0) {
    require(degree_of(*f0, setup) == alpha, "F0 does not have degree alpha");
    out.f0 = *f0;
  } else {
    out.f0 = out.monomials.front();
  }
  const PrimeField& F = setup.field();
  out.values = FieldMatrix(out.monomials.size(), Y.size());
  for (std::size_t i = 0; i < out.monomials.size(); ++i) {
    IntVector diff(out.f0.size());
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = out.monomials[i][j] - out.f0[j];
    for (std::size_t p = 0; p < Y.size(); ++p) out.values(i, p) = F.power_of_generator(dot(diff, Y.points[p].rep));
  }
  return out;
}

/// H_Y(alpha) = dim S_alpha - dim I(Y)_alpha, computed as the rank of the evaluation map.
inline Int hilbert_function(const PointSet& Y, const Degree& alpha, const ToricSetup& setup) {
  auto ev = evaluation_matrix(Y, alpha, setup);
  return static_cast<Int>(rank_over_field(std::move(ev.values), setup.field()));
}

namespace detail {

/// A basis (rows) of the row space.
inline FieldMatrix generator_matrix(FieldMatrix m, const PrimeField& f) {
  const std::size_t k = row_reduce(m, f);
  FieldMatrix g(k, m.cols);
  std::copy(m.data.begin(), m.data.begin() + static_cast<std::ptrdiff_t>(k * m.cols), g.data.begin());
  return g;
}

/// Visits codewords sum_i c_i g_i for all c in F_q^k with c_i = 0 for i < lead,
/// c_lead = 1 (or, with lead == k, every message), updating the word incrementally.
template <class Visit>
void for_each_codeword(const FieldMatrix& g, const PrimeField& f, std::size_t lead, std::vector<Int> word,
                       Visit&& visit) {
  const std::size_t k = g.rows, n = g.cols;
  const std::size_t first_free = lead == k ? 0 : lead + 1;
  std::vector<Int> digits(k, 0);
  while (true) {
    visit(word);
    bool advanced = false;
    for (std::size_t i = k; i > first_free && !advanced;) {
      --i;
      for (std::size_t j = 0; j < n; ++j) word[j] = f.add(word[j], g(i, j));
      digits[i] = (digits[i] + 1) % f.order();
      advanced = digits[i] != 0;
    }
    if (!advanced) return;
  }
}

}  // namespace detail

/// Number of codewords of each weight 0..N (all q^k messages).
inline std::vector<Int> weight_distribution(const FieldMatrix& rows, const PrimeField& f, Int cap = 1'000'000) {
  FieldMatrix g = detail::generator_matrix(rows, f);
  Int total = 1;
  for (std::size_t i = 0; i < g.rows; ++i) {
    total = checked::mul(total, f.order());
    if (total > cap) throw CapExceeded("weight distribution needs more than " + std::to_string(cap) + " codewords");
  }
  std::vector<Int> dist(g.cols + 1, 0);
  detail::for_each_codeword(g, f, g.rows, std::vector<Int>(g.cols, 0), [&](const std::vector<Int>& w) {
    ++dist[static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](Int x) { return x != 0; }))];
  });
  return dist;
}

/// Minimum weight over one representative per projective class of nonzero
/// messages; nullopt when (q^k - 1)/(q - 1) exceeds the cap or k = 0.
inline std::optional<Int> minimum_distance(const FieldMatrix& rows, const PrimeField& f, Int cap = 1'000'000) {
  FieldMatrix g = detail::generator_matrix(rows, f);
  const std::size_t k = g.rows;
  if (k == 0) return std::nullopt;
  Int count = 0, power = 1;
  for (std::size_t i = 0; i < k; ++i) {
    count = checked::add(count, power);
    if (count > cap) return std::nullopt;
    if (i + 1 < k) power = checked::mul(power, f.order());
  }
  Int best = static_cast<Int>(g.cols);
  for (std::size_t lead = 0; lead < k; ++lead) {
    std::vector<Int> word(g.cols);
    for (std::size_t j = 0; j < g.cols; ++j) word[j] = g(lead, j);
    detail::for_each_codeword(g, f, lead, std::move(word), [&](const std::vector<Int>& w) {
      best = std::min<Int>(best, std::count_if(w.begin(), w.end(), [](Int x) { return x != 0; }));
    });
  }
  return best;
}

struct CodeSummary {
  Int N = 0;
  Int k = 0;
  std::optional<Int> d;
  Degree alpha;
  IntVector F0;
  std::string notice;  // set when d was requested but not computed
};

inline constexpr Int kDefaultDistanceCap = 1'000'000;

inline CodeSummary code_parameters(const PointSet& Y, const Degree& alpha, const ToricSetup& setup, bool compute_d,
                                   Int cap = kDefaultDistanceCap) {
  auto ev = evaluation_matrix(Y, alpha, setup);
  CodeSummary out;
  out.N = static_cast<Int>(Y.size());
  out.alpha = alpha;
  out.F0 = ev.f0;
  FieldMatrix g = detail::generator_matrix(ev.values, setup.field());
  out.k = static_cast<Int>(g.rows);
  if (compute_d) {
    if (out.k == 0) {
      out.notice = "zero code: minimum distance undefined";
    } else if (out.k == out.N) {
      out.d = 1;  // the whole space F_q^N
    } else {
      out.d = minimum_distance(g, setup.field(), cap);
      if (!out.d) out.notice = "minimum distance skipped: (q^k-1)/(q-1) exceeds cap " + std::to_string(cap);
    }
  }
  return out;
}

/// grid[row][col] = H_Y((first[col], second[row])) over a rank-2 class group.
inline std::vector<std::vector<Int>> hilbert_table(const PointSet& Y, const IntVector& first, const IntVector& second,
                                                   const ToricSetup& setup) {
  require(setup.free_rank() == 2 && setup.torsion_free(), "Hilbert tables need a class group Z^2");
  std::vector<std::vector<Int>> grid;
  for (Int b : second) {
    std::vector<Int> row;
    for (Int a : first) row.push_back(hilbert_function(Y, make_degree({a, b}, setup), setup));
    grid.push_back(std::move(row));
  }
  return grid;
}

/// alpha <= alpha' iff alpha' - alpha lies in N beta.
inline bool degree_leq(const Degree& alpha, const Degree& alpha_prime, const ToricSetup& setup) {
  return in_semigroup(alpha_prime - alpha, setup);
}

struct InjectivityReport {
  bool predicted = false;  // alpha <= sum d_i beta_i
  Degree bound;            // sum d_i beta_i
  Int k = 0;               // code dimension on the degenerate torus
  Int dim_S = 0;           // number of monomials of degree alpha
  bool injective() const { return k == dim_S; }
};

/// Compares the prediction alpha <= d_1 beta_1 + ... + d_r beta_r with the
/// actual code dimension on Y_{A,H}. The prediction can fail: for H_2, q=11,
/// a=(5,2,5,4) the binomial x1^2 - x3^2 vanishes on Y in degree (2,0) <= (-6,10).
inline InjectivityReport injectivity_check(const IntVector& a, Int h, const Degree& alpha, const ToricSetup& setup) {
  DegenerateTorus y = degenerate_torus(a, h, setup);
  InjectivityReport out;
  out.bound = degree_of(y.d, setup);
  out.predicted = degree_leq(alpha, out.bound, setup);
  out.k = hilbert_function(y.points, alpha, setup);
  out.dim_S = static_cast<Int>(monomial_basis(alpha, setup).size());
  return out;
}

}  // namespace torilat
