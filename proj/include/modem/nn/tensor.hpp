#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modem/types.hpp"

namespace modem::nn {

int64_t shape_numel(const std::vector<int>& shape);

// Flat row-major storage plus a shape. Carrier of weights, activations and
// gradients outside the batched hot path.
struct Tensor {
  std::vector<int> shape;
  Vec data;

  Tensor() = default;
  Tensor(std::vector<int> s, Vec d);
  static Tensor zeros(std::vector<int> s);

  int64_t size() const { return data.size(); }
  bool all_finite() const { return data.allFinite(); }
};

// A trainable tensor: value and gradient share one shape; the name is the
// key used in weight bundles.
struct Param {
  std::string name;
  std::vector<int> shape;
  Vec value;
  Vec grad;

  Param() = default;
  Param(std::string n, std::vector<int> s);
  int64_t size() const { return value.size(); }
  void zero_grad() { grad.setZero(); }
};

}  // namespace modem::nn
