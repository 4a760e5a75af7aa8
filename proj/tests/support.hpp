#pragma once

// Independent reference computations used as oracles by the tests. None of
// these call into the normal-form code they are checking.

#include <cstdint>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "torilat/torilat.hpp"

namespace oracle {

using torilat::Int;
using torilat::IntMatrix;
using torilat::IntVector;

inline constexpr std::uint64_t kSeed = 0x7031'1a7e'5eedULL;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(kSeed);
  return gen;
}

inline Int uniform(Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng()); }

inline IntMatrix random_matrix(std::size_t r, std::size_t c, Int lo, Int hi) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(lo, hi);
  return m;
}

/// Determinant by cofactor expansion (small sizes only).
inline Int laplace_det(const std::vector<std::vector<Int>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Int det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Int>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Int> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(a[i][j]);
      minor.push_back(row);
    }
    Int term = a[0][c] * laplace_det(minor);
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

inline void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (idx.size() == k) {
      f(idx);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
}

/// gcd of all k x k minors (the k-th determinantal divisor).
inline Int minor_gcd(const IntMatrix& m, std::size_t k) {
  Int g = 0;
  subsets(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
    subsets(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
      std::vector<std::vector<Int>> sub;
      for (auto i : rows) {
        std::vector<Int> row;
        for (auto j : cols) row.push_back(m(i, j));
        sub.push_back(row);
      }
      g = std::gcd(g, laplace_det(sub));
    });
  });
  return g;
}

/// All x in [-bound, bound]^cols with M x = 0.
inline std::vector<IntVector> kernel_box(const IntMatrix& m, Int bound) {
  std::vector<IntVector> out;
  IntVector x(m.cols(), -bound);
  while (true) {
    bool zero = true;
    for (std::size_t i = 0; i < m.rows() && zero; ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
      zero = s == 0;
    }
    if (zero) out.push_back(x);
    std::size_t j = 0;
    while (j < x.size() && x[j] == bound) x[j++] = -bound;
    if (j == x.size()) break;
    ++x[j];
  }
  return out;
}

/// Multiplicative order of g modulo the prime q by repeated multiplication.
inline Int naive_order(Int g, Int q) {
  Int x = g % q, k = 1;
  while (x != 1) {
    x = x * g % q;
    ++k;
  }
  return k;
}

/// All a in {0..bound}^r with beta a = alpha (free part only).
inline std::set<IntVector> monomials_box(const IntMatrix& beta, const IntVector& alpha, Int bound) {
  std::set<IntVector> out;
  IntVector a(beta.cols(), 0);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < beta.rows() && ok; ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < beta.cols(); ++j) s += beta(i, j) * a[j];
      ok = s == alpha[i];
    }
    if (ok) out.insert(a);
    std::size_t j = 0;
    while (j < a.size() && a[j] == bound) a[j++] = 0;
    if (j == a.size()) break;
    ++a[j];
  }
  return out;
}

/// Field coordinates (eta^{s_1}, ..., eta^{s_r}) by repeated multiplication.
inline IntVector coordinates(const IntVector& s, Int q, Int eta) {
  IntVector t;
  for (Int e : s) {
    Int x = 1;
    Int reduced = ((e % (q - 1)) + (q - 1)) % (q - 1);
    for (Int i = 0; i < reduced; ++i) x = x * eta % q;
    t.push_back(x);
  }
  return t;
}

inline Int field_pow(Int x, Int e, Int q) {
  Int r = 1;
  for (Int i = 0; i < e; ++i) r = r * x % q;
  return r;
}

/// The image of t under the quotient (F_q^*)^r -> (F_q^*)^n, t -> (t^{u_1}, ..., t^{u_n})
/// where u_j are the columns of phi; equal images mean equal torus points.
inline IntVector torus_image(const IntVector& t, const IntMatrix& phi, Int q) {
  IntVector out;
  for (std::size_t j = 0; j < phi.cols(); ++j) {
    Int v = 1;
    for (std::size_t i = 0; i < phi.rows(); ++i) {
      Int e = phi(i, j);
      Int base = t[i];
      if (e < 0) {
        base = field_pow(base, q - 2, q);
        e = -e;
      }
      v = v * field_pow(base, e, q) % q;
    }
    out.push_back(v);
  }
  return out;
}

/// x^m(t) as a field element (m may have negative entries).
inline Int character(const IntVector& m, const IntVector& t, Int q) {
  Int v = 1;
  for (std::size_t i = 0; i < m.size(); ++i) {
    Int base = m[i] < 0 ? field_pow(t[i], q - 2, q) : t[i];
    v = v * field_pow(base, m[i] < 0 ? -m[i] : m[i], q) % q;
  }
  return v;
}

/// Rank over F_q by plain elimination on a copy.
inline std::size_t rank_mod(std::vector<std::vector<Int>> a, Int q) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] % q == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    Int inv = field_pow(a[rank][c], q - 2, q);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank) continue;
      Int f = a[i][c] * inv % q;
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[rank][j]) % q + q) % q;
    }
    ++rank;
  }
  return rank;
}

inline torilat::ToricSetup hirzebruch(Int ell, Int q, bool with_cones = false) {
  std::optional<std::vector<torilat::Cone>> cones;
  if (with_cones) cones = std::vector<torilat::Cone>{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  return torilat::setup_from_rays({{1, 0}, {0, 1}, {-1, ell}, {0, -1}}, q, cones);
}

/// P(1,1,1,3) with the rays read off the kernel basis (1,-1,0,0), (-1,0,1,0), (0,3,0,-1).
inline torilat::ToricSetup weighted_1113(Int q) {
  return torilat::setup_from_rays({{1, -1, 0}, {-1, 0, 3}, {0, 1, 0}, {0, 0, -1}}, q);
}

/// A random homogeneous lattice phi * C with independent columns.
inline IntMatrix random_homogeneous_lattice(const torilat::ToricSetup& s, Int lo = -3, Int hi = 3) {
  const std::size_t n = s.dim();
  while (true) {
    std::size_t ell = static_cast<std::size_t>(uniform(1, static_cast<Int>(n)));
    IntMatrix c = random_matrix(n, ell, lo, hi);
    IntMatrix l = s.phi() * c;
    if (torilat::rank(l) == ell) return l;
  }
}

inline std::string source_path(const std::string& rel) { return std::string(TORILAT_SOURCE_DIR) + "/" + rel; }

inline nlohmann::json load_json(const std::string& rel) {
  std::ifstream in(source_path(rel));
  return nlohmann::json::parse(in);
}

inline IntMatrix matrix_from_json(const nlohmann::json& rows) {
  std::vector<IntVector> r;
  for (const auto& row : rows) r.push_back(row.get<IntVector>());
  return IntMatrix::from_rows(r);
}

}  // namespace oracle
