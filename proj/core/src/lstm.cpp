#include "deductron/lstm.hpp"

#include <cmath>
#include <stdexcept>

namespace deductron {

namespace {

Eigen::VectorXd logistic(const Eigen::VectorXd& a) {
  return (1.0 / (1.0 + (-a.array()).exp())).matrix();
}

}  // namespace

void LstmParams::validate() const {
  if (n_in <= 0 || n_cell <= 0) {
    throw std::invalid_argument("lstm dimensions must be positive");
  }
  for (const Eigen::MatrixXd* W : {&W_f, &W_i, &W_o, &W_c}) {
    if (W->rows() != n_cell || W->cols() != n_in) {
      throw std::invalid_argument("input weight matrix has wrong shape");
    }
  }
  for (const Eigen::MatrixXd* U : {&U_f, &U_i, &U_o}) {
    if (U->rows() != n_cell || U->cols() != n_cell) {
      throw std::invalid_argument("peephole matrix has wrong shape");
    }
  }
  for (const Eigen::VectorXd* b : {&b_f, &b_i, &b_o, &b_c}) {
    if (b->size() != n_cell) {
      throw std::invalid_argument("bias vector has wrong length");
    }
  }
}

LstmParams LstmParams::zeros(int n_in, int n_cell) {
  LstmParams p;
  p.n_in = n_in;
  p.n_cell = n_cell;
  p.W_f = p.W_i = p.W_o = p.W_c = Eigen::MatrixXd::Zero(n_cell, n_in);
  p.U_f = p.U_i = p.U_o = Eigen::MatrixXd::Zero(n_cell, n_cell);
  p.b_f = p.b_i = p.b_o = p.b_c = Eigen::VectorXd::Zero(n_cell);
  return p;
}

LstmTrace lstm_forward(const LstmParams& params,
                       const Eigen::MatrixXd& inputs) {
  params.validate();
  if (inputs.rows() != params.n_in) {
    throw std::invalid_argument("input rows do not match n_in");
  }
  const Eigen::Index T = inputs.cols();
  LstmTrace trace;
  trace.cell.resize(params.n_cell, T);
  trace.hidden.resize(params.n_cell, T);

  Eigen::VectorXd c = Eigen::VectorXd::Zero(params.n_cell);
  for (Eigen::Index t = 0; t < T; ++t) {
    const Eigen::VectorXd x = inputs.col(t);
    const Eigen::VectorXd f = logistic(params.W_f * x + params.U_f * c + params.b_f);
    const Eigen::VectorXd i = logistic(params.W_i * x + params.U_i * c + params.b_i);
    const Eigen::VectorXd o = logistic(params.W_o * x + params.U_o * c + params.b_o);
    const Eigen::VectorXd g = (params.W_c * x + params.b_c).array().tanh();
    c = (f.array() * c.array() + i.array() * g.array()).matrix();
    trace.cell.col(t) = c;
    trace.hidden.col(t) = (o.array() * c.array().tanh()).matrix();
  }
  return trace;
}

}  // namespace deductron
