// iplab/model.hpp

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "iplab/rng.hpp"

namespace iplab {

// Per-frame acoustic model: frames t-w..t+w are concatenated (zero-padded at
// the sequence edges) and passed through a two-layer ReLU network producing
// logits over alphabet + blank.
struct ModelParams {
  int context = 2;   // w
  int feat_dim = 0;  // D
  int hidden = 0;    // H
  int vocab = 0;     // V, includes blank

  Eigen::MatrixXd w1;  // (2w+1)*D x H
  Eigen::VectorXd b1;  // H
  Eigen::MatrixXd w2;  // H x V
  Eigen::VectorXd b2;  // V

  int window_dim() const { return (2 * context + 1) * feat_dim; }

  // Glorot-uniform weights, zero biases; deterministic given seed.
  static ModelParams init(int context, int feat_dim, int hidden, int vocab,
                          std::uint64_t seed);
  static ModelParams zeros_like(const ModelParams& other);

  bool same_shape(const ModelParams& other) const;
  void require_same_shape(const ModelParams& other) const;  // throws
  bool all_finite() const;
};

// Ordered view over the parameter tensors; the declared order (w1, b1, w2,
// b2) is the serialization order.
struct TensorView {
  const char* name;
  double* data;
  std::size_t size;
  std::vector<std::size_t> dims;
};
std::vector<TensorView> tensor_views(ModelParams& params);

struct ConstTensorView {
  const char* name;
  const double* data;
  std::size_t size;
  std::vector<std::size_t> dims;
};
std::vector<ConstTensorView> tensor_views(const ModelParams& params);

struct AugmentConfig {
  int n_freq_masks = 1;
  int freq_mask_width = 2;   // channels
  int n_time_masks = 1;
  int time_mask_width = 10;  // frames
  bool enabled = true;
};

// Zeroes n_freq_masks random channel bands (width uniform in
// [0, freq_mask_width]) and n_time_masks random frame spans (width uniform
// in [0, min(time_mask_width, T)]). The input is not mutated.
Eigen::MatrixXd augment(const Eigen::MatrixXd& x, const AugmentConfig& cfg,
                        Rng& rng);

// Activations cached for the backward pass.
struct ForwardTrace {
  Eigen::MatrixXd windowed;      // T x (2w+1)D
  Eigen::MatrixXd pre_hidden;    // T x H, before ReLU
  Eigen::MatrixXd hidden;        // T x H, after ReLU and dropout
  Eigen::MatrixXd dropout_mask;  // T x H; empty when no dropout was applied
};

// Returns T x V logits. In train mode with dropout_p > 0, rng must be
// non-null; inverted dropout scales kept units by 1/(1-p). Eval mode is
// deterministic. Trace may be null when no backward pass is needed.
Eigen::MatrixXd forward(const ModelParams& params, const Eigen::MatrixXd& x,
                        double dropout_p, bool train_mode, Rng* rng,
                        ForwardTrace* trace);

// Exact gradients of the forward map wrt all parameters, reusing the
// dropout mask stored in the trace.
ModelParams backward(const ModelParams& params, const ForwardTrace& trace,
                     const Eigen::MatrixXd& dlogits);

}  // namespace iplab
