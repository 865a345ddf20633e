#include "symcg/lagrange.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "symcg/errors.hpp"

namespace symcg {

LagrangeBasis::LagrangeBasis(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw ParameterError("LagrangeBasis: empty node set");
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    for (std::size_t j = i + 1; j < nodes_.size(); ++j)
      if (nodes_[i] == nodes_[j]) throw ParameterError("LagrangeBasis: duplicate node");
}

double LagrangeBasis::value(int i, double x) const {
  double p = 1.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    if (static_cast<int>(j) == i) continue;
    p *= (x - nodes_[j]) / (nodes_[i] - nodes_[j]);
  }
  return p;
}

double LagrangeBasis::derivative(int i, double x) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (static_cast<int>(k) == i) continue;
    double p = 1.0 / (nodes_[i] - nodes_[k]);
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
      if (static_cast<int>(j) == i || j == k) continue;
      p *= (x - nodes_[j]) / (nodes_[i] - nodes_[j]);
    }
    sum += p;
  }
  return sum;
}

std::vector<double> equispaced_nodes(int degree) {
  if (degree < 0) throw ParameterError("equispaced_nodes: negative degree");
  if (degree == 0) return {0.5};
  std::vector<double> nodes(degree + 1);
  for (int i = 0; i <= degree; ++i) nodes[i] = static_cast<double>(i) / degree;
  return nodes;
}

const LagrangeBasis& reference_basis(int degree) {
  static std::map<int, LagrangeBasis> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(degree);
  if (it == cache.end())
    it = cache.emplace(degree, LagrangeBasis(equispaced_nodes(degree))).first;
  return it->second;
}

double lagrange_value(const std::vector<double>& nodes, int i, double x) {
  double p = 1.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (static_cast<int>(j) == i) continue;
    p *= (x - nodes[j]) / (nodes[i] - nodes[j]);
  }
  return p;
}

double lagrange_derivative(const std::vector<double>& nodes, int i, double x) {
  double sum = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (static_cast<int>(k) == i) continue;
    double p = 1.0 / (nodes[i] - nodes[k]);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (static_cast<int>(j) == i || j == k) continue;
      p *= (x - nodes[j]) / (nodes[i] - nodes[j]);
    }
    sum += p;
  }
  return sum;
}

}  // namespace symcg
