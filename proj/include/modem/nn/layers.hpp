#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "modem/nn/tensor.hpp"
#include "modem/rng.hpp"
#include "modem/types.hpp"

namespace modem::nn {

// Activations are (features x batch); one column per element. Layers expose
// a pure inference path (const, no state touched) and a training path that
// caches whatever the backward rule needs. Gradients accumulate into
// Param::grad; callers zero them between steps.
class Layer {
 public:
  virtual ~Layer() = default;
  virtual const char* kind() const = 0;
  virtual Mat forward(const Mat& x) const = 0;
  virtual Mat forward_train(const Mat& x) = 0;
  virtual Mat backward(const Mat& dy) = 0;
  virtual std::vector<Param*> params() { return {}; }
  virtual int out_features(int in_features) const = 0;
  virtual void init_weights(RngStream& rng) {}
};

// y = W x + b with W stored row-major (out, in).
class Dense : public Layer {
 public:
  Dense(int in, int out, std::string name);
  const char* kind() const override { return "dense"; }
  Mat forward(const Mat& x) const override;
  Mat forward_train(const Mat& x) override;
  Mat backward(const Mat& dy) override;
  std::vector<Param*> params() override { return {&w_, &b_}; }
  int out_features(int in_features) const override;
  void init_weights(RngStream& rng) override;
  Param& weight() { return w_; }
  Param& bias() { return b_; }
  int in_dim() const { return in_; }
  int out_dim() const { return out_; }

 private:
  int in_, out_;
  Param w_, b_;
  Mat x_;
};

class Relu : public Layer {
 public:
  const char* kind() const override { return "relu"; }
  Mat forward(const Mat& x) const override;
  Mat forward_train(const Mat& x) override;
  Mat backward(const Mat& dy) override;
  int out_features(int in_features) const override { return in_features; }

 private:
  Mat x_;
};

// Valid (no-pad) stride-1 cross-correlation over (L, in_ch) row-major
// sequences; kernels stored (out_ch, k_len, in_ch) row-major. The row-major
// sequence layout makes each receptive field a contiguous slice, so forward
// is a single GEMM against gathered patches.
class Conv1d : public Layer {
 public:
  Conv1d(int in_ch, int out_ch, int k_len, std::string name);
  const char* kind() const override { return "conv1d"; }
  Mat forward(const Mat& x) const override;
  Mat forward_train(const Mat& x) override;
  Mat backward(const Mat& dy) override;
  std::vector<Param*> params() override { return {&k_, &b_}; }
  int out_features(int in_features) const override;
  void init_weights(RngStream& rng) override;
  Param& kernels() { return k_; }
  Param& bias() { return b_; }

 private:
  Mat run(const Mat& x, Mat* patches_out) const;
  int in_ch_, out_ch_, k_len_;
  Param k_, b_;
  Mat patches_;  // (k_len*in_ch) x (Lo*B), cached for backward
  int in_len_ = 0, batch_ = 0;
};

// Non-overlapping channel-wise max over (L, C) row-major sequences; the
// trailing remainder is dropped. Gradient routes to the first maximal
// element of each window.
class MaxPool1d : public Layer {
 public:
  MaxPool1d(int channels, int pool);
  const char* kind() const override { return "maxpool1d"; }
  Mat forward(const Mat& x) const override;
  Mat forward_train(const Mat& x) override;
  Mat backward(const Mat& dy) override;
  int out_features(int in_features) const override;
  int pool() const { return pool_; }

 private:
  Mat run(const Mat& x, std::vector<uint8_t>* argmax) const;
  int channels_, pool_;
  std::vector<uint8_t> argmax_;
  int in_len_ = 0, batch_ = 0;
};

class Softmax : public Layer {
 public:
  const char* kind() const override { return "softmax"; }
  Mat forward(const Mat& x) const override;
  Mat forward_train(const Mat& x) override;
  Mat backward(const Mat& dy) override;
  int out_features(int in_features) const override { return in_features; }

 private:
  Mat y_;
};

// Interprets consecutive float pairs as complex samples and projects any
// sample outside the unit disk back onto it; samples inside pass through.
// On the unit circle itself the scaling branch is taken.
class NormalizeComplex : public Layer {
 public:
  const char* kind() const override { return "normalize-complex"; }
  Mat forward(const Mat& x) const override;
  Mat forward_train(const Mat& x) override;
  Mat backward(const Mat& dy) override;
  int out_features(int in_features) const override { return in_features; }

 private:
  Mat x_;
};

// Shape bookkeeping only; values pass through unchanged. Kept in the stacks
// so the layer list mirrors the published layout row for row.
class Reshape : public Layer {
 public:
  explicit Reshape(std::vector<int> target_shape) : shape_(std::move(target_shape)) {}
  const char* kind() const override { return "reshape"; }
  Mat forward(const Mat& x) const override { return x; }
  Mat forward_train(const Mat& x) override { return x; }
  Mat backward(const Mat& dy) override { return dy; }
  int out_features(int in_features) const override { return in_features; }

 private:
  std::vector<int> shape_;
};

class Flatten : public Layer {
 public:
  const char* kind() const override { return "flatten"; }
  Mat forward(const Mat& x) const override { return x; }
  Mat forward_train(const Mat& x) override { return x; }
  Mat backward(const Mat& dy) override { return dy; }
  int out_features(int in_features) const override { return in_features; }
};

// Table lookup head: forward selects rows of the (rows, dim) table, backward
// scatter-adds into the table gradient.
class Embedding {
 public:
  Embedding(int rows, int dim, std::string name);
  Mat forward(const std::vector<int>& idx) const;
  Mat forward_train(const std::vector<int>& idx);
  void backward(const Mat& dy);
  Param& table() { return t_; }
  const Param& table() const { return t_; }
  int rows() const { return rows_; }
  int dim() const { return dim_; }
  void init_weights(RngStream& rng);

 private:
  int rows_, dim_;
  Param t_;
  std::vector<int> idx_;
};

// Row `index` of a (rows, dim) row-major table; bitwise row selection.
Vec embedding_forward(const Tensor& table, int index);

// y = W x + b on single vectors (the batched path lives in Dense).
Vec dense_forward(const Tensor& weights, const Tensor& bias, const Vec& x);

// Glorot-uniform limit used for dense/conv init.
float glorot_limit(int fan_in, int fan_out);

}  // namespace modem::nn
