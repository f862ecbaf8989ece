#pragma once

#include <ostream>

#include "fanih/linalg.hpp"
#include "fanih/polynomial.hpp"

namespace fanih {

// Readable gtest failure messages.
inline void PrintTo(const Polynomial& p, std::ostream* os) { *os << p.to_string(); }
inline void PrintTo(const GradedDims& g, std::ostream* os) { *os << g.to_polynomial().to_string(); }

inline Matrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vector> rs;
  std::size_t cols = 0;
  for (const auto& r : rows) {
    Vector v;
    for (long x : r) v.emplace_back(x);
    cols = v.size();
    rs.push_back(std::move(v));
  }
  return Matrix::from_rows(rs, cols);
}

}  // namespace fanih
