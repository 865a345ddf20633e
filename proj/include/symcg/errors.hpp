#ifndef SYMCG_ERRORS_HPP
#define SYMCG_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace symcg {

struct ParameterError : std::invalid_argument {
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

struct SingularMatrixError : std::runtime_error {
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

struct RangeError : std::out_of_range {
  explicit RangeError(const std::string& what) : std::out_of_range(what) {}
};

/// Residual (or group map) hit an inadmissible state. Carries the offending point.
struct EvaluationError : std::runtime_error {
  double t;
  std::vector<double> u;
  EvaluationError(const std::string& what, double t_, std::vector<double> u_)
      : std::runtime_error(what), t(t_), u(std::move(u_)) {}
};

struct FrameDomainError : std::runtime_error {
  explicit FrameDomainError(const std::string& what) : std::runtime_error(what) {}
};

/// dt_hat/dt vanished or changed sign: the transformation folds the element.
struct FoldError : std::runtime_error {
  explicit FoldError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace symcg

#endif
