#include "deductron/network.hpp"

#include <cmath>
#include <stdexcept>

namespace deductron {

namespace {

bool is_quantized_weight(double w) { return w == -1.0 || w == 0.0 || w == 1.0; }

bool is_quantized_bias(double b) {
  return b == 0.0 || b == 1.0 || b == 2.0 || b == 3.0 || b == 4.0 || b == 5.0;
}

}  // namespace

void DeductronParams::validate() const {
  if (n_in <= 0 || n_memory <= 0 || n_out <= 0) {
    throw std::invalid_argument("network dimensions must be positive");
  }
  if (W1.rows() != 2 * n_memory || W1.cols() != n_in ||
      b1.size() != 2 * n_memory || W2.rows() != n_out ||
      W2.cols() != n_memory || b2.size() != n_out) {
    throw std::invalid_argument("parameter dimensions are inconsistent");
  }
  if (mode == ParamMode::quantized) {
    for (Eigen::Index i = 0; i < W1.size(); ++i) {
      if (!is_quantized_weight(W1.data()[i])) {
        throw std::invalid_argument("quantized weight outside {-1, 0, 1}");
      }
    }
    for (Eigen::Index i = 0; i < W2.size(); ++i) {
      if (!is_quantized_weight(W2.data()[i])) {
        throw std::invalid_argument("quantized weight outside {-1, 0, 1}");
      }
    }
    for (Eigen::Index i = 0; i < b1.size(); ++i) {
      if (!is_quantized_bias(b1[i])) {
        throw std::invalid_argument("quantized bias outside {0..5}");
      }
    }
    for (Eigen::Index i = 0; i < b2.size(); ++i) {
      if (!is_quantized_bias(b2[i])) {
        throw std::invalid_argument("quantized bias outside {0..5}");
      }
    }
  }
}

DeductronParams DeductronParams::zeros(Shape shape, ParamMode mode) {
  DeductronParams p;
  p.n_in = shape.n_in;
  p.n_memory = shape.n_memory;
  p.n_out = shape.n_out;
  p.mode = mode;
  p.W1 = MatrixXd::Zero(2 * shape.n_memory, shape.n_in);
  p.b1 = VectorXd::Zero(2 * shape.n_memory);
  p.W2 = MatrixXd::Zero(shape.n_out, shape.n_memory);
  p.b2 = VectorXd::Zero(shape.n_out);
  return p;
}

double ActivationSpec::operator()(double a) const {
  switch (kind) {
    case Kind::hard:
      if (a == 0.5) {
        throw std::domain_error(
            "hard threshold is undefined at an argument of exactly 0.5");
      }
      return a < 0.5 ? 1.0 : 0.0;
    case Kind::falling_sigmoid:
      return 1.0 / (1.0 + std::exp(beta * (a - 0.5)));
    case Kind::rising_sigmoid:
      return 1.0 / (1.0 + std::exp(-a));
  }
  throw std::logic_error("invalid activation kind");
}

VectorXd v_gate(const VectorXd& z, const VectorXd& u, const VectorXd& v) {
  if (z.size() != u.size() || z.size() != v.size()) {
    throw std::invalid_argument("v_gate operands must have equal length");
  }
  return ((1.0 - u.array()) * (1.0 - v.array()) * z.array() + u.array())
      .matrix();
}

ForwardTrace forward(const DeductronParams& params, const ActivationSpec& act,
                     const MatrixXd& inputs) {
  params.validate();
  if (inputs.rows() != params.n_in) {
    throw std::invalid_argument("input rows do not match n_in");
  }
  const Eigen::Index T = inputs.cols();
  if (T < 1) throw std::invalid_argument("need at least one frame");
  const int m = params.n_memory;

  ForwardTrace trace;
  MatrixXd a1 = (params.W1 * inputs).colwise() + params.b1;
  trace.hidden = a1.unaryExpr([&act](double x) { return act(x); });

  trace.memory.resize(m, T);
  VectorXd z = VectorXd::Zero(m);
  for (Eigen::Index t = 0; t < T; ++t) {
    z = v_gate(z, trace.hidden.col(t).head(m), trace.hidden.col(t).tail(m));
    trace.memory.col(t) = z;
  }

  MatrixXd a2 = (params.W2 * trace.memory).colwise() + params.b2;
  trace.outputs = a2.unaryExpr([&act](double x) { return act(x); });
  if (act.kind == ActivationSpec::Kind::rising_sigmoid) {
    trace.outputs = (1.0 - trace.outputs.array()).matrix();
  }
  return trace;
}

MatrixXd to_input_matrix(std::span<const Window> windows) {
  MatrixXd inputs(6, static_cast<Eigen::Index>(windows.size()));
  for (std::size_t t = 0; t < windows.size(); ++t) {
    for (int i = 0; i < 6; ++i) {
      inputs(i, static_cast<Eigen::Index>(t)) = windows[t].x[i];
    }
  }
  return inputs;
}

MatrixXd to_target_matrix(const WindowSeq& seq) {
  MatrixXd targets(2, static_cast<Eigen::Index>(seq.targets.size()));
  for (std::size_t t = 0; t < seq.targets.size(); ++t) {
    targets(0, static_cast<Eigen::Index>(t)) = seq.targets[t][0];
    targets(1, static_cast<Eigen::Index>(t)) = seq.targets[t][1];
  }
  return targets;
}

DeductronParams handcrafted_params() {
  DeductronParams p = DeductronParams::zeros({6, 4, 2});
  // Write-side rows u1..u4: detectors for start-of-X, start-of-O, a minimum
  // and a maximum in the incoming column; erase-side rows v1..v2 swap the
  // start detectors, v3..v4 are constant true so z3/z4 track the detectors.
  p.W1 << 0, 1, 1, 0, 0, -1,  //
      1, 1, 0, -1, 0, 0,      //
      1, 0, 0, -1, 0, 0,      //
      0, 0, 1, 0, 0, -1,      //
      1, 1, 0, -1, 0, 0,      //
      0, 1, 1, 0, 0, -1,      //
      0, 0, 0, 0, 0, 0,       //
      0, 0, 0, 0, 0, 0;
  p.b1 << 1, 1, 1, 1, 1, 1, 0, 0;
  p.W2 << -1, 0, -1, 0,  //
      0, -1, 0, -1;
  p.b2 << 2, 2;
  return p;
}

DeductronParams quantized_to_continuous(const DeductronParams& params,
                                        double beta) {
  params.validate();
  if (params.mode != ParamMode::quantized) {
    throw std::invalid_argument("expected quantized parameters");
  }
  if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
  DeductronParams out = params;
  out.mode = ParamMode::continuous;
  out.W1 = -beta * params.W1;
  out.b1 = -beta * (params.b1.array() - 0.5).matrix();
  out.W2 = beta * params.W2;
  out.b2 = beta * (params.b2.array() - 0.5).matrix();
  return out;
}

double loss(const MatrixXd& outputs, const MatrixXd& targets, int gamma) {
  if (outputs.rows() != targets.rows() || outputs.cols() != targets.cols()) {
    throw std::invalid_argument("output and target dimensions differ");
  }
  if (gamma == 1) return (targets - outputs).array().abs().sum();
  if (gamma == 2) return (targets - outputs).array().square().sum();
  throw std::invalid_argument("gamma must be 1 or 2");
}

BigInt search_space_size(int n_in, int n_memory, int n_out) {
  if (n_in <= 0 || n_memory <= 0 || n_out <= 0) {
    throw std::invalid_argument("dimensions must be positive");
  }
  const unsigned n_weights =
      static_cast<unsigned>(2 * n_memory * n_in + n_out * n_memory);
  const unsigned n_biases = static_cast<unsigned>(2 * n_memory + n_out);
  return boost::multiprecision::pow(BigInt(3), n_weights) *
         boost::multiprecision::pow(BigInt(6), n_biases);
}

}  // namespace deductron
