#pragma once

// Continuous-weight training: reverse-mode differentiation of the squared
// error through the recurrent gate chain, plus Adam. The derivatives are
// hand-derived for this fixed architecture; the finite-difference tests pin
// their correctness.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "deductron/network.hpp"

namespace deductron {

struct GradientSet {
  MatrixXd dW1;
  VectorXd db1;
  MatrixXd dW2;
  VectorXd db2;
  double loss_value = 0.0;
};

// Gradients of sum_t |target_t - o_t|^2 for a continuous-mode network run
// with the rising sigmoid (complemented outputs). Gradient flow through the
// memory: dz_t/dz_{t-1} = (1-u)(1-v), dz_t/du_t = 1 - (1-v)z_{t-1},
// dz_t/dv_t = -(1-u)z_{t-1}.
GradientSet backward(const DeductronParams& params, const MatrixXd& inputs,
                     const MatrixXd& targets);

struct AdamConfig {
  double alpha = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  long step = 0;
  MatrixXd m_W1, m_W2, v_W1, v_W2;
  VectorXd m_b1, m_b2, v_b1, v_b2;

  explicit AdamState(const DeductronParams& params);
};

// One bias-corrected Adam update, in place.
void adam_step(AdamState& state, DeductronParams& params,
               const GradientSet& grads, const AdamConfig& cfg);

struct TrainingDiverged : std::runtime_error {
  explicit TrainingDiverged(long epoch_index)
      : std::runtime_error("training diverged at epoch " +
                           std::to_string(epoch_index)),
        epoch(epoch_index) {}
  long epoch;
};

struct SgdConfig {
  AdamConfig adam;
  long epochs = 10000;
  std::uint64_t seed = 0;
  double init_scale = 1.0;  // uniform init in [-init_scale, init_scale]
  double clip = 0.0;        // elementwise gradient clamp; 0 disables
  bool stop_when_perfect = false;
};

struct SgdResult {
  DeductronParams params;
  std::vector<double> loss_curve;  // loss before each epoch's update
  double final_accuracy = 0.0;     // thresholded bit accuracy on train
  long epochs_run = 0;
};

// Full-batch Adam over one window sequence. Throws TrainingDiverged when the
// loss stops being finite.
SgdResult train_sgd(const WindowSeq& train, Shape shape, const SgdConfig& cfg,
                    const std::optional<DeductronParams>& init = std::nullopt);

}  // namespace deductron
