#include "deductron/anneal.hpp"

#include <cmath>
#include <stdexcept>

namespace deductron {

namespace {

constexpr double kWeightValues[] = {-1.0, 0.0, 1.0};
constexpr double kBiasValues[] = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0};

double count_neg(const MatrixXd& W, Eigen::Index row) {
  double n = 0;
  for (Eigen::Index j = 0; j < W.cols(); ++j) {
    if (W(row, j) == -1.0) n += 1;
  }
  return n;
}

}  // namespace

long AnnealSchedule::iteration_count() const {
  if (beta_step <= 0.0) throw std::invalid_argument("beta_step must be > 0");
  if (beta_end < beta_start) {
    throw std::invalid_argument("beta_end must be >= beta_start");
  }
  return std::llround((beta_end - beta_start) / beta_step);
}

DeductronParams propose(const DeductronParams& params, Rng& rng,
                        bool tied_bias) {
  if (params.mode != ParamMode::quantized) {
    throw std::invalid_argument("proposals require quantized parameters");
  }
  DeductronParams out = params;
  const long nw1 = params.W1.size();
  const long nw2 = params.W2.size();
  const long nb1 = tied_bias ? 0 : params.b1.size();
  const long nb2 = tied_bias ? 0 : params.b2.size();
  std::uniform_int_distribution<long> pos_dist(0, nw1 + nw2 + nb1 + nb2 - 1);
  std::uniform_int_distribution<int> w_dist(0, 2);
  std::uniform_int_distribution<int> b_dist(0, 5);
  const long pos = pos_dist(rng);

  auto redraw = [&rng](auto& dist, auto values, double old) {
    double v = old;
    while (v == old) v = values[dist(rng)];
    return v;
  };

  if (pos < nw1) {
    out.W1.data()[pos] = redraw(w_dist, kWeightValues, params.W1.data()[pos]);
    if (tied_bias) {
      Eigen::Index row = pos % params.W1.rows();  // column-major storage
      out.b1[row] = count_neg(out.W1, row);
    }
  } else if (pos < nw1 + nw2) {
    const long i = pos - nw1;
    out.W2.data()[i] = redraw(w_dist, kWeightValues, params.W2.data()[i]);
    if (tied_bias) {
      Eigen::Index row = i % params.W2.rows();
      out.b2[row] = count_neg(out.W2, row);
    }
  } else if (pos < nw1 + nw2 + nb1) {
    const long i = pos - nw1 - nw2;
    out.b1[i] = redraw(b_dist, kBiasValues, params.b1[i]);
  } else {
    const long i = pos - nw1 - nw2 - nb1;
    out.b2[i] = redraw(b_dist, kBiasValues, params.b2[i]);
  }
  return out;
}

DeductronParams random_quantized(Shape shape, Rng& rng) {
  DeductronParams p = DeductronParams::zeros(shape);
  std::uniform_int_distribution<int> w_dist(0, 2);
  std::uniform_int_distribution<int> b_dist(0, 5);
  for (Eigen::Index i = 0; i < p.W1.size(); ++i) {
    p.W1.data()[i] = kWeightValues[w_dist(rng)];
  }
  for (Eigen::Index i = 0; i < p.W2.size(); ++i) {
    p.W2.data()[i] = kWeightValues[w_dist(rng)];
  }
  for (Eigen::Index i = 0; i < p.b1.size(); ++i) {
    p.b1[i] = kBiasValues[b_dist(rng)];
  }
  for (Eigen::Index i = 0; i < p.b2.size(); ++i) {
    p.b2[i] = kBiasValues[b_dist(rng)];
  }
  return p;
}

bool anneal_accept(double delta_loss, double beta, Rng& rng) {
  if (delta_loss <= 0.0) return true;
  const double beta_accept = std::max(beta, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return unit(rng) < std::exp(-beta_accept * delta_loss);
}

AnnealResult anneal(const WindowSeq& train, Shape shape,
                    const AnnealSchedule& sched,
                    const std::optional<DeductronParams>& init) {
  if (train.windows.empty()) {
    throw std::invalid_argument("empty training set");
  }
  if (train.targets.size() != train.windows.size()) {
    throw std::invalid_argument("training set has no targets");
  }
  const MatrixXd X = to_input_matrix(train.windows);
  const MatrixXd targets = to_target_matrix(train);
  const ActivationSpec hard = ActivationSpec::hard();

  Rng rng(sched.seed);
  DeductronParams current = init ? *init : random_quantized(shape, rng);
  current.validate();

  auto hard_loss = [&](const DeductronParams& p) {
    return loss(forward(p, hard, X).outputs, targets, sched.gamma);
  };
  auto soft_loss = [&](const DeductronParams& p, double beta) {
    return loss(forward(p, ActivationSpec::falling(beta), X).outputs, targets,
                sched.gamma);
  };

  AnnealResult result;
  result.best_params = current;
  result.best_loss = hard_loss(current);
  result.iterations = sched.iteration_count();

  const long stride =
      std::max<long>(1, result.iterations / std::max(1, sched.history_points));
  long since_improvement = 0;

  for (long it = 0; it < result.iterations; ++it) {
    const double beta = sched.beta_start + static_cast<double>(it) * sched.beta_step;
    DeductronParams candidate = propose(current, rng, sched.tied_bias);

    const double cand_hard = hard_loss(candidate);
    if (cand_hard < result.best_loss) {
      result.best_params = candidate;
      result.best_loss = cand_hard;
      since_improvement = 0;
    } else {
      ++since_improvement;
    }

    const double current_soft = soft_loss(current, beta);
    const double cand_soft = soft_loss(candidate, beta);
    const double delta = cand_soft - current_soft;
    const bool take = sched.accept == AnnealSchedule::Accept::greedy
                          ? delta <= 0.0
                          : anneal_accept(delta, beta, rng);
    if (take) current = std::move(candidate);

    if (since_improvement >= sched.stuck_limit) {
      current = result.best_params;
      current.validate();
      ++result.restarts;
      since_improvement = 0;
    }

    if (it % stride == 0 || it + 1 == result.iterations) {
      result.history.push_back(
          {it, beta, take ? cand_soft : current_soft, result.best_loss});
    }
  }
  return result;
}

AccuracyReport evaluate_accuracy(const DeductronParams& params,
                                 const ActivationSpec& act,
                                 const WindowSeq& data) {
  if (data.targets.size() != data.windows.size()) {
    throw std::invalid_argument("data has no targets");
  }
  const MatrixXd X = to_input_matrix(data.windows);
  const MatrixXd targets = to_target_matrix(data);
  const ForwardTrace trace = forward(params, act, X);

  AccuracyReport report;
  report.total_bits = targets.size();
  for (Eigen::Index t = 0; t < targets.cols(); ++t) {
    bool px = trace.outputs(0, t) > 0.5;
    bool po = trace.outputs(1, t) > 0.5;
    if (px) report.emitted.push_back('X');
    if (po) report.emitted.push_back('O');
    for (Eigen::Index i = 0; i < targets.rows(); ++i) {
      const bool predicted = trace.outputs(i, t) > 0.5;
      const bool actual = targets(i, t) > 0.5;
      if (predicted == actual) ++report.correct_bits;
      if (predicted && actual) ++report.true_pos;
      if (predicted && !actual) ++report.false_pos;
      if (!predicted && !actual) ++report.true_neg;
      if (!predicted && actual) ++report.false_neg;
    }
  }
  report.bit_accuracy =
      static_cast<double>(report.correct_bits) / report.total_bits;
  report.expected = data.target_string();
  report.emissions_match = report.emitted == report.expected;
  return report;
}

}  // namespace deductron
