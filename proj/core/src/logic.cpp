#include "deductron/logic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace deductron {

namespace {

constexpr int kMaxExhaustiveInputs = 20;
constexpr int kMaxDnfInputs = 12;

void check_row(const std::vector<int>& weights, int bias) {
  for (int w : weights) {
    if (w < -1 || w > 1) {
      throw std::invalid_argument("row weight outside {-1, 0, 1}");
    }
  }
  if (bias < 0 || bias > 5) {
    throw std::invalid_argument("row bias outside {0..5}");
  }
}

std::vector<Literal> minterm(const std::vector<int>& weights,
                             unsigned assignment) {
  std::vector<Literal> clause;
  clause.reserve(weights.size());
  for (std::size_t j = 0; j < weights.size(); ++j) {
    clause.push_back({static_cast<int>(j), ((assignment >> j) & 1u) == 0});
  }
  return clause;
}

}  // namespace

int bias_from_weights(const std::vector<int>& weights) {
  int sum = 0;
  for (int w : weights) {
    if (w < -1 || w > 1) {
      throw std::invalid_argument("row weight outside {-1, 0, 1}");
    }
    sum += w * (w - 1) / 2;
  }
  return sum;
}

bool row_truth(const std::vector<int>& weights, int bias,
               unsigned assignment) {
  int a = bias;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    a += weights[j] * static_cast<int>((assignment >> j) & 1u);
  }
  return a <= 0;
}

UnitFormula row_to_formula(const std::vector<int>& weights, int bias,
                           bool want_dnf) {
  check_row(weights, bias);
  const int n = static_cast<int>(weights.size());
  UnitFormula unit;

  const bool all_zero =
      std::all_of(weights.begin(), weights.end(), [](int w) { return w == 0; });
  if (all_zero) {
    unit.kind = bias <= 0 ? UnitKind::constant_true : UnitKind::constant_false;
    return unit;
  }

  if (bias == bias_from_weights(weights)) {
    unit.kind = UnitKind::conjunction;
    for (int j = 0; j < n; ++j) {
      if (weights[j] == -1) unit.literals.push_back({j, false});
      if (weights[j] == +1) unit.literals.push_back({j, true});
    }
    return unit;
  }

  if (n > kMaxExhaustiveInputs) {
    throw std::invalid_argument("too many inputs for exhaustive classification");
  }
  bool any_true = false;
  bool any_false = false;
  std::vector<unsigned> satisfying;
  for (unsigned a = 0; a < (1u << n); ++a) {
    if (row_truth(weights, bias, a)) {
      any_true = true;
      if (want_dnf && n <= kMaxDnfInputs) satisfying.push_back(a);
    } else {
      any_false = true;
    }
  }
  if (!any_false) {
    unit.kind = UnitKind::constant_true;
  } else if (!any_true) {
    unit.kind = UnitKind::constant_false;
  } else {
    unit.kind = UnitKind::non_conjunctive;
    if (want_dnf && n <= kMaxDnfInputs) {
      std::vector<std::vector<Literal>> clauses;
      clauses.reserve(satisfying.size());
      for (unsigned a : satisfying) clauses.push_back(minterm(weights, a));
      unit.dnf = std::move(clauses);
    }
  }
  return unit;
}

namespace {

std::vector<int> matrix_row(const MatrixXd& W, Eigen::Index i) {
  std::vector<int> row(static_cast<std::size_t>(W.cols()));
  for (Eigen::Index j = 0; j < W.cols(); ++j) {
    row[static_cast<std::size_t>(j)] = static_cast<int>(W(i, j));
  }
  return row;
}

}  // namespace

LogicReport report(const DeductronParams& params, bool want_dnf) {
  params.validate();
  if (params.mode != ParamMode::quantized) {
    throw std::invalid_argument("logic extraction requires quantized weights");
  }
  LogicReport rep;
  for (Eigen::Index i = 0; i < params.W1.rows(); ++i) {
    rep.hidden.push_back(row_to_formula(matrix_row(params.W1, i),
                                        static_cast<int>(params.b1[i]),
                                        want_dnf));
  }
  for (Eigen::Index i = 0; i < params.W2.rows(); ++i) {
    rep.output.push_back(row_to_formula(matrix_row(params.W2, i),
                                        static_cast<int>(params.b2[i]),
                                        want_dnf));
  }
  return rep;
}

namespace {

std::string input_name(int j, int n_in) {
  // The 6-input case carries the window naming (column, bottom-to-top).
  static const char* kWindowNames[6] = {"x11", "x21", "x31",
                                        "x12", "x22", "x32"};
  if (n_in == 6) return kWindowNames[j];
  return "x" + std::to_string(j + 1);
}

std::string render_literal(const Literal& lit,
                           const std::vector<std::string>& names) {
  return (lit.negated ? "!" : "") + names[static_cast<std::size_t>(lit.index)];
}

std::string render_unit(const UnitFormula& unit,
                        const std::vector<std::string>& names) {
  switch (unit.kind) {
    case UnitKind::constant_true: return "TRUE";
    case UnitKind::constant_false: return "FALSE";
    case UnitKind::conjunction: {
      std::string s = "AND(";
      for (std::size_t k = 0; k < unit.literals.size(); ++k) {
        if (k) s += ", ";
        s += render_literal(unit.literals[k], names);
      }
      return s + ")";
    }
    case UnitKind::non_conjunctive: {
      if (!unit.dnf) return "<non-conjunctive>";
      std::string s = "OR(";
      for (std::size_t c = 0; c < unit.dnf->size(); ++c) {
        if (c) s += ", ";
        s += "AND(";
        const auto& clause = (*unit.dnf)[c];
        for (std::size_t k = 0; k < clause.size(); ++k) {
          if (k) s += ", ";
          s += render_literal(clause[k], names);
        }
        s += ")";
      }
      return s + ")";
    }
  }
  return "?";
}

}  // namespace

std::string render_report(const LogicReport& rep, int n_in, int n_memory) {
  std::vector<std::string> in_names;
  for (int j = 0; j < n_in; ++j) in_names.push_back(input_name(j, n_in));
  std::vector<std::string> mem_names;
  for (int j = 0; j < n_memory; ++j) {
    mem_names.push_back("z" + std::to_string(j + 1));
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < rep.hidden.size(); ++i) {
    out << "h" << (i + 1) << " = " << render_unit(rep.hidden[i], in_names)
        << "\n";
  }
  for (std::size_t i = 0; i < rep.output.size(); ++i) {
    out << "o" << (i + 1) << " = " << render_unit(rep.output[i], mem_names)
        << "\n";
  }
  return out.str();
}

DeductronParams round_to_quantized(const DeductronParams& params) {
  DeductronParams out = params;
  out.mode = ParamMode::quantized;
  auto round_weight = [](double w) {
    return std::clamp(std::round(w), -1.0, 1.0);
  };
  auto round_bias = [](double b) { return std::clamp(std::round(b), 0.0, 5.0); };
  out.W1 = out.W1.unaryExpr(round_weight);
  out.W2 = out.W2.unaryExpr(round_weight);
  out.b1 = out.b1.unaryExpr(round_bias);
  out.b2 = out.b2.unaryExpr(round_bias);
  return out;
}

}  // namespace deductron
