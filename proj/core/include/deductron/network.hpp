#pragma once

// The three-layer recurrent network: an input perceptron layer whose
// activations split into write/erase control pairs (u, v), a memory layer of
// V-gates z <- (1-u)(1-v)z + u, and an output perceptron layer reading the
// memory.
//
// Two weight regimes share one parameter type:
//   * quantized  — weights in {-1, 0, 1}, biases in {0..5}; run with the hard
//     threshold or the falling sigmoid family S_beta(a) = 1/(1+e^{beta(a-1/2)}).
//   * continuous — arbitrary reals; run with the standard rising sigmoid,
//     with the network output complemented (o = 1 - sigma(W2 z + b2)).

#include <cstdint>
#include <span>
#include <Eigen/Dense>

#include "deductron/big_int.hpp"
#include "deductron/decoder.hpp"

namespace deductron {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class ParamMode { quantized, continuous };

struct Shape {
  int n_in = 6;
  int n_memory = 4;
  int n_out = 2;
};

struct DeductronParams {
  int n_in = 0;
  int n_memory = 0;
  int n_out = 0;
  ParamMode mode = ParamMode::quantized;
  MatrixXd W1;  // 2*n_memory x n_in
  VectorXd b1;  // 2*n_memory
  MatrixXd W2;  // n_out x n_memory
  VectorXd b2;  // n_out

  // Throws on inconsistent dimensions or, in quantized mode, on entries
  // outside the admissible sets.
  void validate() const;

  static DeductronParams zeros(Shape shape,
                               ParamMode mode = ParamMode::quantized);
};

struct ActivationSpec {
  enum class Kind { hard, falling_sigmoid, rising_sigmoid };
  Kind kind = Kind::hard;
  double beta = 0.0;  // inverse temperature of the falling sigmoid

  static ActivationSpec hard() { return {Kind::hard, 0.0}; }
  static ActivationSpec falling(double beta) {
    return {Kind::falling_sigmoid, beta};
  }
  static ActivationSpec rising() { return {Kind::rising_sigmoid, 0.0}; }

  // Scalar activation. Hard mode rejects an argument of exactly 1/2 so the
  // binary closure of the trace stays checkable.
  double operator()(double a) const;
};

// Elementwise (1-u)(1-v)z + u; holds z when u=v=0, writes u when v=1.
VectorXd v_gate(const VectorXd& z, const VectorXd& u, const VectorXd& v);

struct ForwardTrace {
  MatrixXd hidden;   // 2m x T, activations h_t
  MatrixXd memory;   // m  x T, z_t after the step-t gate update
  MatrixXd outputs;  // n_out x T

  Eigen::Block<const MatrixXd> u() const {
    return hidden.topRows(hidden.rows() / 2);
  }
  Eigen::Block<const MatrixXd> v() const {
    return hidden.bottomRows(hidden.rows() / 2);
  }
};

// Runs the network over a frame sequence (inputs is n_in x T). Memory starts
// cleared and is updated from the very first frame; the output at t reads the
// memory after the step-t update. With the rising sigmoid the outputs are
// complemented.
ForwardTrace forward(const DeductronParams& params, const ActivationSpec& act,
                     const MatrixXd& inputs);

// Column t = window t as a 6 x T input matrix.
MatrixXd to_input_matrix(std::span<const Window> windows);
// 2 x T matrix of emission targets.
MatrixXd to_target_matrix(const WindowSeq& seq);

// The quantized weights read off the hand-written decoder: 4 memory cells,
// six conjunction rows plus two constant-true rows.
DeductronParams handcrafted_params();

// Bridges the falling-threshold convention to the rising-sigmoid network:
// layer 1 maps (W, b) -> (-beta W, -beta (b - 1/2)) so that
// sigma(W' x + b') = S_beta(W x + b); layer 2 uses the opposite sign because
// the continuous forward pass complements its outputs.
DeductronParams quantized_to_continuous(const DeductronParams& params,
                                        double beta);

// Sum over frames and outputs of |target - output|^gamma, gamma in {1, 2}.
double loss(const MatrixXd& outputs, const MatrixXd& targets, int gamma);

// Number of quantized parameter assignments: 3^#weights * 6^#biases, exact.
BigInt search_space_size(int n_in, int n_memory, int n_out);

}  // namespace deductron
