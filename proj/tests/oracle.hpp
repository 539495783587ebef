#pragma once

// Small independent reference implementations used only by the tests. They
// share no code with the library: plain GMP rationals and machine integers.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

#include "recollab/linalg.hpp"

namespace oracle {

using QMat = std::vector<std::vector<mpq_class>>;
using IMat = std::vector<std::vector<long long>>;

inline int rank_q(QMat m) {
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(m[p], m[r]);
    for (int i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

inline long long inv_mod(long long a, long long p) {
  long long r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

inline int rank_p(IMat m, long long p) {
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (auto& row : m)
    for (auto& x : row) x = ((x % p) + p) % p;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(m[piv], m[r]);
    long long inv = inv_mod(m[r][c], p);
    for (int i = r + 1; i < rows; ++i) {
      long long f = m[i][c] * inv % p;
      for (int j = c; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

inline QMat to_q(const recollab::Mat<recollab::Rational>& m) {
  QMat out(m.rows(), std::vector<mpq_class>(m.cols()));
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).to_mpq();
  return out;
}

inline IMat to_i(const recollab::Mat<recollab::Zp>& m) {
  IMat out(m.rows(), std::vector<long long>(m.cols()));
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).value();
  return out;
}

/// Random matrix with entries in [-range, range]; sparse-ish so ranks vary.
template <class S>
recollab::Mat<S> random_matrix(std::mt19937_64& rng, long rows, long cols, int range,
                               const recollab::FieldTag& tag) {
  std::uniform_int_distribution<int> d(-range, range);
  std::uniform_int_distribution<int> keep(0, 2);
  recollab::Mat<S> m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) m(i, j) = recollab::make_scalar<S>(tag, keep(rng) ? d(rng) : 0);
  return m;
}

}  // namespace oracle
