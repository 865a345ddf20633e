#ifndef SYMCG_LINALG_HPP
#define SYMCG_LINALG_HPP

#include <cstddef>
#include <vector>

namespace symcg {

using Vec = std::vector<double>;

/// Row-major dense matrix. Sizes here are tiny (per-element Newton systems),
/// so no attempt is made at blocked or sparse storage.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

/// Solve Ax = b by partial-pivot LU. Throws SingularMatrixError when a pivot
/// falls below 1e-14 * ||A||_inf.
Vec lu_solve(Mat a, Vec b);

double inf_norm(const Vec& v);

}  // namespace symcg

#endif
