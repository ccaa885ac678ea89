#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "mds22/code.hpp"
#include "mds22/linalg.hpp"

namespace mds22::testing {

inline Mat random_mat(const FieldPtr& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::uniform_int_distribution<Symbol> d(0, f->order() - 1);
  std::vector<Symbol> e(r * c);
  for (auto& v : e) v = d(rng);
  return Mat(f, r, c, std::move(e));
}

// Leibniz expansion; independent of the elimination code.
inline Symbol leibniz_det(const Mat& a) {
  const Field& f = a.field();
  std::vector<std::size_t> perm(a.rows());
  std::iota(perm.begin(), perm.end(), 0);
  Symbol det = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    Symbol term = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) term = f.mul(term, a(i, perm[i]));
    det = inversions % 2 ? f.sub(det, term) : f.add(det, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

// Rank of a matrix with two rows from its 2x2 minors.
inline std::size_t minor_rank_2xn(const Mat& a) {
  const Field& f = a.field();
  if (a.is_zero()) return 0;
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (f.mul(a(0, i), a(1, j)) != f.mul(a(0, j), a(1, i))) return 2;
  return 1;
}

inline std::size_t count_nonzero_columns(const Mat& a) {
  std::size_t n = 0;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    bool nz = false;
    for (std::size_t r = 0; r < a.rows(); ++r) nz = nz || a(r, c) != 0;
    n += nz;
  }
  return n;
}

struct BruteOptimum {
  std::size_t beta = SIZE_MAX;
  std::size_t gamma = SIZE_MAX;
  std::size_t gamma_relaxed = SIZE_MAX;
};

// Per-node minima over every full-rank 2x4 matrix, no row-space quotient.
inline std::vector<BruteOptimum> brute_force_optima(const CodeSpec& code) {
  const FieldPtr& f = code.field_ptr();
  const std::uint32_t q = f->order();
  const std::size_t n = code.n();
  std::vector<BruteOptimum> best(n);
  std::vector<Symbol> digits(8, 0);
  std::vector<std::size_t> rk(n), nz(n);
  while (true) {
    const Mat m(f, 2, 4, digits);
    if (minor_rank_2xn(m) == 2) {
      std::size_t bw = 0, io = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const Mat mh = m * code.h_blocks()[j];
        rk[j] = minor_rank_2xn(mh);
        nz[j] = count_nonzero_columns(mh);
        bw += rk[j];
        io += nz[j];
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (rk[i] == 2) {
          best[i].beta = std::min(best[i].beta, bw - 2);
          best[i].gamma = std::min(best[i].gamma, io - 2);
        }
        if (nz[i] == 2) best[i].gamma_relaxed = std::min(best[i].gamma_relaxed, io - 2);
      }
    }
    std::size_t t = 8;
    while (t > 0 && ++digits[t - 1] == q) digits[--t] = 0;
    if (t == 0) break;
  }
  return best;
}

}  // namespace mds22::testing
