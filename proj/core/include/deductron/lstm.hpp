#pragma once

// Peephole LSTM forward pass, kept as a parameter-count and behavior baseline
// next to the gate network. Gates see the previous cell state instead of a
// hidden state; forward only, no output layer.

#include <Eigen/Dense>

namespace deductron {

struct LstmParams {
  int n_in = 0;
  int n_cell = 0;
  Eigen::MatrixXd W_f, W_i, W_o, W_c;  // n_cell x n_in
  Eigen::MatrixXd U_f, U_i, U_o;       // n_cell x n_cell peepholes
  Eigen::VectorXd b_f, b_i, b_o, b_c;  // n_cell

  void validate() const;

  static LstmParams zeros(int n_in, int n_cell);
};

struct LstmTrace {
  Eigen::MatrixXd cell;    // c_t, n_cell x T
  Eigen::MatrixXd hidden;  // h_t, n_cell x T
};

// c_0 = 0;  f,i,o = logistic gates with peepholes on c_{t-1};
// c_t = f o c_{t-1} + i o tanh(W_c x_t + b_c);  h_t = o o tanh(c_t).
LstmTrace lstm_forward(const LstmParams& params, const Eigen::MatrixXd& inputs);

}  // namespace deductron
