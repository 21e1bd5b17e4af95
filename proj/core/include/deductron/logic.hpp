#pragma once

// Reads quantized weight rows back as propositional logic. Under the falling
// threshold, a row whose bias equals its count of -1 entries computes a
// conjunction: w = -1 contributes a positive literal, w = +1 a negated one,
// w = 0 drops the input. Other rows are classified by exhaustive evaluation
// as constant or non-conjunctive, with an optional minterm DNF.

#include <optional>
#include <string>
#include <vector>

#include "deductron/network.hpp"

namespace deductron {

struct Literal {
  int index = 0;       // input position, 0-based
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

enum class UnitKind { conjunction, constant_true, constant_false,
                      non_conjunctive };

struct UnitFormula {
  UnitKind kind = UnitKind::constant_false;
  std::vector<Literal> literals;  // conjunction kind only
  // Minterm clauses covering the satisfying set (non_conjunctive, n <= 12).
  std::optional<std::vector<std::vector<Literal>>> dnf;
};

// g(w) = w(w-1)/2 summed over the row: the count of -1 entries.
int bias_from_weights(const std::vector<int>& weights);

// Classifies one perceptron row. Throws on entries outside {-1,0,1} or a
// bias outside {0..5}.
UnitFormula row_to_formula(const std::vector<int>& weights, int bias,
                           bool want_dnf = false);

// Hard-threshold truth value of a row on a bit assignment.
bool row_truth(const std::vector<int>& weights, int bias,
               unsigned assignment);

struct LogicReport {
  std::vector<UnitFormula> hidden;  // one per W1 row
  std::vector<UnitFormula> output;  // one per W2 row, over memory variables
};

LogicReport report(const DeductronParams& params, bool want_dnf = false);

// One line per unit, e.g. "h1 = AND(!x21, !x31, x32)".
std::string render_report(const LogicReport& rep, int n_in, int n_memory);

// Nearest quantized parameters (weights clamped/rounded into {-1,0,1},
// biases into {0..5}); meaningful only as a rough lens on trained weights.
DeductronParams round_to_quantized(const DeductronParams& params);

}  // namespace deductron
