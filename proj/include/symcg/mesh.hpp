#ifndef SYMCG_MESH_HPP
#define SYMCG_MESH_HPP

#include <cstddef>
#include <vector>

#include "symcg/errors.hpp"

namespace symcg {

/// Partition t_0 < t_1 < ... < t_N of the time domain. Elements are the
/// half-open intervals I_n = (t_n, t_{n+1}].
class TimeMesh {
 public:
  explicit TimeMesh(std::vector<double> boundaries) : t_(std::move(boundaries)) {
    if (t_.size() < 2) throw ParameterError("TimeMesh: need at least one element");
    for (std::size_t i = 1; i < t_.size(); ++i)
      if (!(t_[i] > t_[i - 1])) throw ParameterError("TimeMesh: boundaries not increasing");
  }

  static TimeMesh uniform(double t_start, double t_end, std::size_t n_elements) {
    if (n_elements == 0 || !(t_end > t_start)) throw ParameterError("TimeMesh: bad uniform spec");
    std::vector<double> b(n_elements + 1);
    for (std::size_t i = 0; i <= n_elements; ++i)
      b[i] = t_start + (t_end - t_start) * static_cast<double>(i) / static_cast<double>(n_elements);
    b.back() = t_end;
    return TimeMesh(std::move(b));
  }

  std::size_t n_elements() const { return t_.size() - 1; }
  double t_start() const { return t_.front(); }
  double t_end() const { return t_.back(); }
  double boundary(std::size_t i) const { return t_[i]; }
  double element_size(std::size_t n) const { return t_[n + 1] - t_[n]; }
  const std::vector<double>& boundaries() const { return t_; }

  /// Element owning t under the right-limit convention; t = t_start maps to 0.
  std::size_t element_of(double t) const {
    if (t < t_.front() || t > t_.back()) throw RangeError("TimeMesh: t outside mesh");
    std::size_t lo = 0, hi = n_elements() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (t <= t_[mid + 1])
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  }

 private:
  std::vector<double> t_;
};

}  // namespace symcg

#endif
