#pragma once

#include "oracles.hpp"
#include "toricdyn/lattice/matrix.hpp"

namespace support {

inline toricdyn::lattice::IntegerMatrix to_matrix(const oracle::Grid& g) {
  const std::size_t cols = g.empty() ? 0 : g[0].size();
  return toricdyn::lattice::IntegerMatrix::from_rows(g, cols);
}

inline oracle::Grid to_grid(const toricdyn::lattice::IntegerMatrix& m) {
  oracle::Grid g(m.rows(), std::vector<oracle::Int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i, j);
  return g;
}

inline toricdyn::LatticeVector vec(std::initializer_list<long> xs) {
  toricdyn::LatticeVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace support
