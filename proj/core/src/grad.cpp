#include "deductron/grad.hpp"

#include <cmath>

#include "deductron/anneal.hpp"

namespace deductron {

GradientSet backward(const DeductronParams& params, const MatrixXd& inputs,
                     const MatrixXd& targets) {
  params.validate();
  if (params.mode != ParamMode::continuous) {
    throw std::invalid_argument("backward requires continuous parameters");
  }
  const ForwardTrace trace =
      forward(params, ActivationSpec::rising(), inputs);
  if (targets.rows() != params.n_out || targets.cols() != inputs.cols()) {
    throw std::invalid_argument("target dimensions do not match outputs");
  }
  const Eigen::Index T = inputs.cols();
  const int m = params.n_memory;

  GradientSet g;
  g.dW1 = MatrixXd::Zero(params.W1.rows(), params.W1.cols());
  g.db1 = VectorXd::Zero(params.b1.size());
  g.dW2 = MatrixXd::Zero(params.W2.rows(), params.W2.cols());
  g.db2 = VectorXd::Zero(params.b2.size());
  g.loss_value = loss(trace.outputs, targets, 2);

  // Output layer: o = 1 - sigma(a2), so do/da2 = -(1-o) o.
  const MatrixXd d_out = 2.0 * (trace.outputs - targets);
  const MatrixXd d_a2 =
      (-d_out.array() * (1.0 - trace.outputs.array()) * trace.outputs.array())
          .matrix();
  g.dW2 = d_a2 * trace.memory.transpose();
  g.db2 = d_a2.rowwise().sum();

  const MatrixXd d_z_from_out = params.W2.transpose() * d_a2;  // m x T

  VectorXd dz = VectorXd::Zero(m);
  for (Eigen::Index t = T - 1; t >= 0; --t) {
    dz += d_z_from_out.col(t);
    const auto u = trace.hidden.col(t).head(m).array();
    const auto v = trace.hidden.col(t).tail(m).array();
    const Eigen::ArrayXd z_prev = t > 0
                                      ? trace.memory.col(t - 1).array().eval()
                                      : Eigen::ArrayXd::Zero(m).eval();
    VectorXd dh(2 * m);
    dh.head(m) = (dz.array() * (1.0 - (1.0 - v) * z_prev)).matrix();
    dh.tail(m) = (dz.array() * (-(1.0 - u) * z_prev)).matrix();

    const auto h = trace.hidden.col(t).array();
    const VectorXd d_a1 = (dh.array() * h * (1.0 - h)).matrix();
    g.dW1.noalias() += d_a1 * inputs.col(t).transpose();
    g.db1 += d_a1;

    dz = (dz.array() * (1.0 - u) * (1.0 - v)).matrix();
  }
  return g;
}

AdamState::AdamState(const DeductronParams& params)
    : m_W1(MatrixXd::Zero(params.W1.rows(), params.W1.cols())),
      m_W2(MatrixXd::Zero(params.W2.rows(), params.W2.cols())),
      v_W1(MatrixXd::Zero(params.W1.rows(), params.W1.cols())),
      v_W2(MatrixXd::Zero(params.W2.rows(), params.W2.cols())),
      m_b1(VectorXd::Zero(params.b1.size())),
      m_b2(VectorXd::Zero(params.b2.size())),
      v_b1(VectorXd::Zero(params.b1.size())),
      v_b2(VectorXd::Zero(params.b2.size())) {}

namespace {

template <typename Tensor>
void adam_update(Tensor& param, const Tensor& grad, Tensor& m, Tensor& v,
                 long step, const AdamConfig& cfg) {
  m = cfg.beta1 * m + (1.0 - cfg.beta1) * grad;
  v = (cfg.beta2 * v.array() + (1.0 - cfg.beta2) * grad.array().square())
          .matrix();
  const double m_corr = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
  const double v_corr = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
  param.array() -= cfg.alpha * (m.array() / m_corr) /
                   ((v.array() / v_corr).sqrt() + cfg.epsilon);
}

}  // namespace

void adam_step(AdamState& state, DeductronParams& params,
               const GradientSet& grads, const AdamConfig& cfg) {
  if (grads.dW1.rows() != params.W1.rows() ||
      grads.dW1.cols() != params.W1.cols() ||
      grads.dW2.rows() != params.W2.rows() ||
      grads.dW2.cols() != params.W2.cols() ||
      grads.db1.size() != params.b1.size() ||
      grads.db2.size() != params.b2.size()) {
    throw std::invalid_argument("gradient shapes do not match parameters");
  }
  ++state.step;
  adam_update(params.W1, grads.dW1, state.m_W1, state.v_W1, state.step, cfg);
  adam_update(params.b1, grads.db1, state.m_b1, state.v_b1, state.step, cfg);
  adam_update(params.W2, grads.dW2, state.m_W2, state.v_W2, state.step, cfg);
  adam_update(params.b2, grads.db2, state.m_b2, state.v_b2, state.step, cfg);
}

namespace {

DeductronParams random_continuous(Shape shape, double scale, Rng& rng) {
  DeductronParams p = DeductronParams::zeros(shape, ParamMode::continuous);
  std::uniform_real_distribution<double> dist(-scale, scale);
  for (Eigen::Index i = 0; i < p.W1.size(); ++i) p.W1.data()[i] = dist(rng);
  for (Eigen::Index i = 0; i < p.b1.size(); ++i) p.b1[i] = dist(rng);
  for (Eigen::Index i = 0; i < p.W2.size(); ++i) p.W2.data()[i] = dist(rng);
  for (Eigen::Index i = 0; i < p.b2.size(); ++i) p.b2[i] = dist(rng);
  return p;
}

void clip_gradients(GradientSet& g, double clip) {
  auto clamp = [clip](double x) { return std::clamp(x, -clip, clip); };
  g.dW1 = g.dW1.unaryExpr(clamp);
  g.db1 = g.db1.unaryExpr(clamp);
  g.dW2 = g.dW2.unaryExpr(clamp);
  g.db2 = g.db2.unaryExpr(clamp);
}

}  // namespace

SgdResult train_sgd(const WindowSeq& train, Shape shape, const SgdConfig& cfg,
                    const std::optional<DeductronParams>& init) {
  if (train.windows.empty()) throw std::invalid_argument("empty training set");
  if (train.targets.size() != train.windows.size()) {
    throw std::invalid_argument("training set has no targets");
  }
  const MatrixXd X = to_input_matrix(train.windows);
  const MatrixXd targets = to_target_matrix(train);

  Rng rng(cfg.seed);
  SgdResult result;
  result.params = init ? *init : random_continuous(shape, cfg.init_scale, rng);
  if (result.params.mode != ParamMode::continuous) {
    throw std::invalid_argument("initial parameters must be continuous");
  }
  AdamState state(result.params);
  result.loss_curve.reserve(static_cast<std::size_t>(cfg.epochs));

  for (long epoch = 0; epoch < cfg.epochs; ++epoch) {
    GradientSet g = backward(result.params, X, targets);
    if (!std::isfinite(g.loss_value)) throw TrainingDiverged(epoch);
    result.loss_curve.push_back(g.loss_value);
    result.epochs_run = epoch + 1;
    if (cfg.stop_when_perfect) {
      const AccuracyReport acc =
          evaluate_accuracy(result.params, ActivationSpec::rising(), train);
      if (acc.bit_accuracy == 1.0) break;
    }
    if (cfg.clip > 0.0) clip_gradients(g, cfg.clip);
    adam_step(state, result.params, g, cfg.adam);
  }

  result.final_accuracy =
      evaluate_accuracy(result.params, ActivationSpec::rising(), train)
          .bit_accuracy;
  return result;
}

}  // namespace deductron
