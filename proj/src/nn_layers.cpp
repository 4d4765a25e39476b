#include "modem/nn/layers.hpp"

#include <cmath>

namespace modem::nn {

float glorot_limit(int fan_in, int fan_out) {
  return std::sqrt(6.0f / static_cast<float>(fan_in + fan_out));
}

namespace {

void fill_uniform(Vec& v, float limit, RngStream& rng) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] = static_cast<float>((2.0 * rng.uniform01() - 1.0) * limit);
}

}  // namespace

// ---------------------------------------------------------------- Dense

Dense::Dense(int in, int out, std::string name)
    : in_(in), out_(out), w_(name + ".weight", {out, in}), b_(name + ".bias", {out}) {
  if (in < 1 || out < 1) throw StructuralError("dense: dimensions must be positive");
}

int Dense::out_features(int in_features) const {
  if (in_features != in_) throw StructuralError("dense '" + w_.name + "': expected " +
                                                std::to_string(in_) + " inputs, got " +
                                                std::to_string(in_features));
  return out_;
}

void Dense::init_weights(RngStream& rng) {
  fill_uniform(w_.value, glorot_limit(in_, out_), rng);
  b_.value.setZero();
}

Mat Dense::forward(const Mat& x) const {
  if (x.rows() != in_) throw StructuralError("dense '" + w_.name + "': input rows mismatch");
  ConstMapRowMat w(w_.value.data(), out_, in_);
  Mat y(out_, x.cols());
  y.noalias() = w * x;
  y.colwise() += ConstMapVec(b_.value.data(), out_);
  return y;
}

Mat Dense::forward_train(const Mat& x) {
  x_ = x;
  return forward(x);
}

Mat Dense::backward(const Mat& dy) {
  ConstMapRowMat w(w_.value.data(), out_, in_);
  MapRowMat dw(w_.grad.data(), out_, in_);
  dw.noalias() += dy * x_.transpose();
  MapVec(b_.grad.data(), out_) += dy.rowwise().sum();
  Mat dx(in_, dy.cols());
  dx.noalias() = w.transpose() * dy;
  return dx;
}

// ----------------------------------------------------------------- Relu

Mat Relu::forward(const Mat& x) const { return x.cwiseMax(0.0f); }

Mat Relu::forward_train(const Mat& x) {
  x_ = x;
  return forward(x);
}

// derivative 0 at exactly 0
Mat Relu::backward(const Mat& dy) {
  return (x_.array() > 0.0f).select(dy, Mat::Zero(dy.rows(), dy.cols()));
}

// --------------------------------------------------------------- Conv1d

Conv1d::Conv1d(int in_ch, int out_ch, int k_len, std::string name)
    : in_ch_(in_ch),
      out_ch_(out_ch),
      k_len_(k_len),
      k_(name + ".kernel", {out_ch, k_len, in_ch}),
      b_(name + ".bias", {out_ch}) {
  if (in_ch < 1 || out_ch < 1 || k_len < 1) throw StructuralError("conv1d: bad hyperparameters");
}

int Conv1d::out_features(int in_features) const {
  if (in_features % in_ch_ != 0) throw StructuralError("conv1d '" + k_.name + "': input not a multiple of channels");
  const int len = in_features / in_ch_;
  if (len < k_len_) throw StructuralError("conv1d '" + k_.name + "': input shorter than kernel");
  return (len - k_len_ + 1) * out_ch_;
}

void Conv1d::init_weights(RngStream& rng) {
  fill_uniform(k_.value, glorot_limit(k_len_ * in_ch_, k_len_ * out_ch_), rng);
  b_.value.setZero();
}

// Gathers receptive fields into a (k_len*in_ch) x (Lo*B) patch matrix with
// columns ordered (frame, position) so the GEMM output buffer reinterprets
// directly as (Lo*out_ch) x B activations in (L, C) row-major layout.
Mat Conv1d::run(const Mat& x, Mat* patches_out) const {
  const int feat = static_cast<int>(x.rows());
  out_features(feat);  // validates
  const int len = feat / in_ch_;
  const int lo = len - k_len_ + 1;
  const int batch = static_cast<int>(x.cols());
  const int patch = k_len_ * in_ch_;

  Mat patches(patch, static_cast<Eigen::Index>(lo) * batch);
  for (int b = 0; b < batch; ++b) {
    const float* col = x.col(b).data();
    for (int t = 0; t < lo; ++t)
      patches.col(static_cast<Eigen::Index>(b) * lo + t) = ConstMapVec(col + t * in_ch_, patch);
  }

  Mat y(static_cast<Eigen::Index>(lo) * out_ch_, batch);
  MapMat ymap(y.data(), out_ch_, static_cast<Eigen::Index>(lo) * batch);
  ConstMapRowMat km(k_.value.data(), out_ch_, patch);
  ymap.noalias() = km * patches;
  ymap.colwise() += ConstMapVec(b_.value.data(), out_ch_);

  if (patches_out) *patches_out = std::move(patches);
  return y;
}

Mat Conv1d::forward(const Mat& x) const { return run(x, nullptr); }

Mat Conv1d::forward_train(const Mat& x) {
  in_len_ = static_cast<int>(x.rows()) / in_ch_;
  batch_ = static_cast<int>(x.cols());
  return run(x, &patches_);
}

Mat Conv1d::backward(const Mat& dy) {
  const int lo = in_len_ - k_len_ + 1;
  const int patch = k_len_ * in_ch_;
  ConstMapMat dymap(dy.data(), out_ch_, static_cast<Eigen::Index>(lo) * batch_);

  MapRowMat dk(k_.grad.data(), out_ch_, patch);
  dk.noalias() += dymap * patches_.transpose();
  MapVec(b_.grad.data(), out_ch_) += dymap.rowwise().sum();

  Mat dpatches(patch, static_cast<Eigen::Index>(lo) * batch_);
  ConstMapRowMat km(k_.value.data(), out_ch_, patch);
  dpatches.noalias() = km.transpose() * dymap;

  Mat dx = Mat::Zero(static_cast<Eigen::Index>(in_len_) * in_ch_, batch_);
  for (int b = 0; b < batch_; ++b) {
    float* col = dx.col(b).data();
    for (int t = 0; t < lo; ++t)
      MapVec(col + t * in_ch_, patch) += dpatches.col(static_cast<Eigen::Index>(b) * lo + t);
  }
  return dx;
}

// ------------------------------------------------------------- MaxPool1d

MaxPool1d::MaxPool1d(int channels, int pool) : channels_(channels), pool_(pool) {
  if (channels < 1 || pool < 1) throw StructuralError("maxpool1d: bad hyperparameters");
}

int MaxPool1d::out_features(int in_features) const {
  if (in_features % channels_ != 0) throw StructuralError("maxpool1d: input not a multiple of channels");
  return (in_features / channels_ / pool_) * channels_;
}

Mat MaxPool1d::run(const Mat& x, std::vector<uint8_t>* argmax) const {
  const int len = static_cast<int>(x.rows()) / channels_;
  const int lo = len / pool_;
  const int batch = static_cast<int>(x.cols());
  Mat y(static_cast<Eigen::Index>(lo) * channels_, batch);
  if (argmax) argmax->assign(static_cast<size_t>(lo) * channels_ * batch, 0);
  for (int b = 0; b < batch; ++b) {
    const float* in = x.col(b).data();
    float* out = y.col(b).data();
    for (int t = 0; t < lo; ++t) {
      const float* win = in + static_cast<size_t>(t) * pool_ * channels_;
      float* o = out + static_cast<size_t>(t) * channels_;
      for (int c = 0; c < channels_; ++c) {
        float best = win[c];
        int best_j = 0;
        for (int j = 1; j < pool_; ++j) {
          const float v = win[j * channels_ + c];
          if (v > best) {  // strict: ties keep the first maximal element
            best = v;
            best_j = j;
          }
        }
        o[c] = best;
        if (argmax)
          (*argmax)[(static_cast<size_t>(b) * lo + t) * channels_ + c] =
              static_cast<uint8_t>(best_j);
      }
    }
  }
  return y;
}

Mat MaxPool1d::forward(const Mat& x) const { return run(x, nullptr); }

Mat MaxPool1d::forward_train(const Mat& x) {
  in_len_ = static_cast<int>(x.rows()) / channels_;
  batch_ = static_cast<int>(x.cols());
  return run(x, &argmax_);
}

Mat MaxPool1d::backward(const Mat& dy) {
  const int lo = in_len_ / pool_;
  Mat dx = Mat::Zero(static_cast<Eigen::Index>(in_len_) * channels_, batch_);
  for (int b = 0; b < batch_; ++b) {
    const float* g = dy.col(b).data();
    float* out = dx.col(b).data();
    for (int t = 0; t < lo; ++t)
      for (int c = 0; c < channels_; ++c) {
        const int j = argmax_[(static_cast<size_t>(b) * lo + t) * channels_ + c];
        out[(static_cast<size_t>(t) * pool_ + j) * channels_ + c] +=
            g[static_cast<size_t>(t) * channels_ + c];
      }
  }
  return dx;
}

// -------------------------------------------------------------- Softmax

Mat Softmax::forward(const Mat& x) const {
  Mat y = x;
  for (Eigen::Index c = 0; c < y.cols(); ++c) {
    auto col = y.col(c);
    col.array() -= col.maxCoeff();
    col = col.array().exp();
    col /= col.sum();
  }
  return y;
}

Mat Softmax::forward_train(const Mat& x) {
  y_ = forward(x);
  return y_;
}

// dx_i = y_i * (dy_i - sum_j y_j dy_j)
Mat Softmax::backward(const Mat& dy) {
  Mat dx(dy.rows(), dy.cols());
  for (Eigen::Index c = 0; c < dy.cols(); ++c) {
    const float dot = y_.col(c).dot(dy.col(c));
    dx.col(c) = y_.col(c).array() * (dy.col(c).array() - dot);
  }
  return dx;
}

// ---------------------------------------------------- NormalizeComplex

Mat NormalizeComplex::forward(const Mat& x) const {
  if (x.rows() % 2 != 0) throw StructuralError("normalize-complex: odd input width");
  Mat y = x;
  for (Eigen::Index c = 0; c < y.cols(); ++c) {
    float* p = y.col(c).data();
    for (Eigen::Index i = 0; i < y.rows(); i += 2) {
      const float r2 = p[i] * p[i] + p[i + 1] * p[i + 1];
      if (r2 > 1.0f) {
        const float inv = 1.0f / std::sqrt(r2);
        p[i] *= inv;
        p[i + 1] *= inv;
      }
    }
  }
  return y;
}

Mat NormalizeComplex::forward_train(const Mat& x) {
  x_ = x;
  return forward(x);
}

Mat NormalizeComplex::backward(const Mat& dy) {
  Mat dx(dy.rows(), dy.cols());
  for (Eigen::Index c = 0; c < dy.cols(); ++c) {
    const float* p = x_.col(c).data();
    const float* g = dy.col(c).data();
    float* o = dx.col(c).data();
    for (Eigen::Index i = 0; i < dy.rows(); i += 2) {
      const float a = p[i], b = p[i + 1];
      const float r2 = a * a + b * b;
      if (r2 > 1.0f) {
        // y = x / |x|; Jacobian (I - y y^T) / |x|
        const float inv_r = 1.0f / std::sqrt(r2);
        const float inv_r3 = inv_r * inv_r * inv_r;
        o[i] = (b * b * g[i] - a * b * g[i + 1]) * inv_r3;
        o[i + 1] = (-a * b * g[i] + a * a * g[i + 1]) * inv_r3;
      } else {
        o[i] = g[i];
        o[i + 1] = g[i + 1];
      }
    }
  }
  return dx;
}

// ------------------------------------------------------------ Embedding

Embedding::Embedding(int rows, int dim, std::string name)
    : rows_(rows), dim_(dim), t_(name + ".table", {rows, dim}) {
  if (rows < 1 || dim < 1) throw StructuralError("embedding: bad dimensions");
}

void Embedding::init_weights(RngStream& rng) {
  fill_uniform(t_.value, 0.05f, rng);
}

Mat Embedding::forward(const std::vector<int>& idx) const {
  Mat y(dim_, static_cast<Eigen::Index>(idx.size()));
  for (size_t j = 0; j < idx.size(); ++j) {
    const int i = idx[j];
    if (i < 0 || i >= rows_)
      throw InputError("embedding '" + t_.name + "': index " + std::to_string(i) +
                       " out of range [0," + std::to_string(rows_) + ")");
    y.col(static_cast<Eigen::Index>(j)) = t_.value.segment(static_cast<Eigen::Index>(i) * dim_, dim_);
  }
  return y;
}

Mat Embedding::forward_train(const std::vector<int>& idx) {
  idx_ = idx;
  return forward(idx);
}

void Embedding::backward(const Mat& dy) {
  for (size_t j = 0; j < idx_.size(); ++j)
    t_.grad.segment(static_cast<Eigen::Index>(idx_[j]) * dim_, dim_) +=
        dy.col(static_cast<Eigen::Index>(j));
}

// ----------------------------------------------------- free functions

Vec embedding_forward(const Tensor& table, int index) {
  if (table.shape.size() != 2) throw StructuralError("embedding_forward: table must be 2-d");
  const int rows = table.shape[0], dim = table.shape[1];
  if (index < 0 || index >= rows)
    throw InputError("embedding_forward: index " + std::to_string(index) + " out of range [0," +
                     std::to_string(rows) + ")");
  return table.data.segment(static_cast<Eigen::Index>(index) * dim, dim);
}

Vec dense_forward(const Tensor& weights, const Tensor& bias, const Vec& x) {
  if (weights.shape.size() != 2) throw StructuralError("dense_forward: weights must be 2-d");
  const int out = weights.shape[0], in = weights.shape[1];
  if (x.size() != in || bias.size() != out) throw StructuralError("dense_forward: shape mismatch");
  ConstMapRowMat w(weights.data.data(), out, in);
  return w * x + bias.data;
}

}  // namespace modem::nn
