#pragma once

#include <Eigen/Core>
#include <complex>
#include <stdexcept>
#include <string>

namespace modem {

// 32-bit reals everywhere in the signal path; doubles only for accumulated
// statistics (loss means, error counts, chi-square sums).
using Scalar = float;
using Mat = Eigen::MatrixXf;  // activations: features x batch, one column per element
using Vec = Eigen::VectorXf;
using Complex = std::complex<float>;
using CVec = Eigen::VectorXcf;

// Weight tensors are stored flat in row-major order; these map them back
// into matrix form for Eigen kernels.
using RowMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapRowMat = Eigen::Map<RowMat>;
using ConstMapRowMat = Eigen::Map<const RowMat>;
using MapMat = Eigen::Map<Mat>;
using ConstMapMat = Eigen::Map<const Mat>;
using MapVec = Eigen::Map<Vec>;
using ConstMapVec = Eigen::Map<const Vec>;

// Error taxonomy. The CLI maps these onto exit codes (1 for the first four,
// 2 for divergence, 3 for verification failures).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct StructuralError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace modem
