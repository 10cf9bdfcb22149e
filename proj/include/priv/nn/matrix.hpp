#pragma once

#include <cstddef>
#include <vector>

namespace priv::nn {

// Dense row-major matrix of doubles. Models here stay under ~10k parameters,
// so there is no sparse or blocked path.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  std::size_t size() const { return data.size(); }
  bool empty() const { return data.empty(); }

  bool same_shape(const Matrix& other) const {
    return rows == other.rows && cols == other.cols;
  }
  bool operator==(const Matrix& other) const = default;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);

// b is a 1xC row added to every row of m.
Matrix add_row_broadcast(const Matrix& m, const Matrix& b);

// Column sums collapsed to a 1xC row.
Matrix column_sums(const Matrix& m);

Matrix hadamard(const Matrix& a, const Matrix& b);

bool all_finite(const Matrix& m);

void require_same_shape(const Matrix& a, const Matrix& b, const char* what);

}  // namespace priv::nn
