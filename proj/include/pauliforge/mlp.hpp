// Copyright 2026 The pauliforge authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pauliforge/rng.hpp"

namespace pauliforge {

/// Dense feedforward network, rectified-linear on every hidden layer and
/// affine on the output. Samples are columns. The scalar type is a template
/// parameter: training runs in float, gradient checks instantiate double.
template <typename Scalar>
class Mlp {
 public:
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Mlp() = default;

  /// widths = {input, hidden..., output}; He-uniform initialization.
  Mlp(const std::vector<int>& widths, uint64_t seed) : widths_(widths) {
    if (widths.size() < 2) throw std::invalid_argument("Mlp: need at least two widths");
    Rng rng(seed);
    for (size_t l = 0; l + 1 < widths.size(); ++l) {
      const int in = widths[l], out = widths[l + 1];
      const double bound = std::sqrt(6.0 / in);
      Mat w(out, in);
      for (int i = 0; i < out; ++i)
        for (int j = 0; j < in; ++j) w(i, j) = static_cast<Scalar>(rng.uniform_in(-bound, bound));
      w_.push_back(std::move(w));
      b_.push_back(Vec::Zero(out));
    }
  }

  int input_width() const { return widths_.front(); }
  int output_width() const { return widths_.back(); }
  size_t layers() const { return w_.size(); }

  std::vector<Mat>& weights() { return w_; }
  std::vector<Vec>& biases() { return b_; }
  const std::vector<Mat>& weights() const { return w_; }
  const std::vector<Vec>& biases() const { return b_; }

  struct Cache {
    std::vector<Mat> acts;  // acts[0] = input, acts[l+1] = output of layer l
  };

  Mat forward(const Mat& x) const {
    Cache unused;
    return forward_cached(x, unused);
  }

  Mat forward_cached(const Mat& x, Cache& cache) const {
    if (x.rows() != widths_.front()) throw std::invalid_argument("Mlp: input width mismatch");
    cache.acts.clear();
    cache.acts.reserve(w_.size() + 1);
    cache.acts.push_back(x);
    Mat cur = x;
    for (size_t l = 0; l < w_.size(); ++l) {
      Mat z = (w_[l] * cur).colwise() + b_[l];
      if (l + 1 < w_.size()) z = z.cwiseMax(Scalar(0));
      cache.acts.push_back(z);
      cur = std::move(z);
    }
    return cache.acts.back();
  }

  struct Grads {
    std::vector<Mat> dw;
    std::vector<Vec> db;
  };

  Grads zero_grads() const {
    Grads g;
    for (size_t l = 0; l < w_.size(); ++l) {
      g.dw.push_back(Mat::Zero(w_[l].rows(), w_[l].cols()));
      g.db.push_back(Vec::Zero(b_[l].size()));
    }
    return g;
  }

  /// Backpropagates d(loss)/d(output) through the cached forward pass.
  void backward(const Cache& cache, const Mat& d_out, Grads& grads) const {
    Mat delta = d_out;
    for (size_t li = w_.size(); li-- > 0;) {
      if (li + 1 < w_.size()) {
        // gradient through the rectifier of layer li
        delta = delta.cwiseProduct(
            (cache.acts[li + 1].array() > Scalar(0)).template cast<Scalar>().matrix());
      }
      grads.dw[li].noalias() += delta * cache.acts[li].transpose();
      grads.db[li].noalias() += delta.rowwise().sum();
      if (li > 0) delta = (w_[li].transpose() * delta).eval();
    }
  }

  void copy_parameters_from(const Mlp& other) {
    w_ = other.w_;
    b_ = other.b_;
  }

  const std::vector<int>& widths() const { return widths_; }

 private:
  std::vector<int> widths_;
  std::vector<Mat> w_;
  std::vector<Vec> b_;
};

/// Adaptive-moment estimation over the paired weight/bias tensors of one
/// network. beta1 = 0.9, beta2 = 0.999, eps = 1e-8, bias-corrected.
template <typename Scalar>
class Adam {
 public:
  using Mat = typename Mlp<Scalar>::Mat;
  using Vec = typename Mlp<Scalar>::Vec;

  Adam() = default;
  explicit Adam(const Mlp<Scalar>& net) {
    for (size_t l = 0; l < net.layers(); ++l) {
      mw_.push_back(Mat::Zero(net.weights()[l].rows(), net.weights()[l].cols()));
      vw_.push_back(Mat::Zero(net.weights()[l].rows(), net.weights()[l].cols()));
      mb_.push_back(Vec::Zero(net.biases()[l].size()));
      vb_.push_back(Vec::Zero(net.biases()[l].size()));
    }
  }

  uint64_t step_count() const { return t_; }

  void step(Mlp<Scalar>& net, const typename Mlp<Scalar>::Grads& grads, double lr) {
    ++t_;
    const Scalar b1 = Scalar(0.9), b2 = Scalar(0.999), eps = Scalar(1e-8);
    const Scalar corr1 = Scalar(1) - static_cast<Scalar>(std::pow(0.9, static_cast<double>(t_)));
    const Scalar corr2 = Scalar(1) - static_cast<Scalar>(std::pow(0.999, static_cast<double>(t_)));
    const Scalar rate = static_cast<Scalar>(lr);
    for (size_t l = 0; l < net.layers(); ++l) {
      mw_[l] = b1 * mw_[l] + (Scalar(1) - b1) * grads.dw[l];
      vw_[l] = b2 * vw_[l] + (Scalar(1) - b2) * grads.dw[l].cwiseProduct(grads.dw[l]);
      net.weights()[l].noalias() -=
          rate * (mw_[l] / corr1).cwiseQuotient(((vw_[l] / corr2).cwiseSqrt().array() + eps).matrix());
      mb_[l] = b1 * mb_[l] + (Scalar(1) - b1) * grads.db[l];
      vb_[l] = b2 * vb_[l] + (Scalar(1) - b2) * grads.db[l].cwiseProduct(grads.db[l]);
      net.biases()[l].noalias() -=
          rate * (mb_[l] / corr1).cwiseQuotient(((vb_[l] / corr2).cwiseSqrt().array() + eps).matrix());
    }
  }

  std::vector<Mat>& moment1_w() { return mw_; }
  std::vector<Mat>& moment2_w() { return vw_; }
  std::vector<Vec>& moment1_b() { return mb_; }
  std::vector<Vec>& moment2_b() { return vb_; }
  void set_step_count(uint64_t t) { t_ = t; }

 private:
  uint64_t t_ = 0;
  std::vector<Mat> mw_, vw_;
  std::vector<Vec> mb_, vb_;
};

}  // namespace pauliforge
