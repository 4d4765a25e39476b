#include "modem/nn/tensor.hpp"

namespace modem::nn {

int64_t shape_numel(const std::vector<int>& shape) {
  int64_t n = 1;
  for (int d : shape) {
    if (d < 1) throw StructuralError("tensor shape dimensions must be positive");
    n *= d;
  }
  return n;
}

Tensor::Tensor(std::vector<int> s, Vec d) : shape(std::move(s)), data(std::move(d)) {
  if (shape_numel(shape) != data.size())
    throw StructuralError("tensor: shape does not match data length");
}

Tensor Tensor::zeros(std::vector<int> s) {
  const int64_t n = shape_numel(s);
  return Tensor(std::move(s), Vec::Zero(n));
}

Param::Param(std::string n, std::vector<int> s) : name(std::move(n)), shape(std::move(s)) {
  const int64_t count = shape_numel(shape);
  value = Vec::Zero(count);
  grad = Vec::Zero(count);
}

}  // namespace modem::nn
