#pragma once

// Simulated annealing over the quantized parameter space. Proposals flip a
// single weight or bias to a different admissible value; candidates are
// scored with the falling sigmoid at the current inverse temperature, while
// the global best is tracked by hard-threshold loss so "best" means actual
// binary decoding quality. After a long stretch without improvement the
// current state is reset to the best found so far.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deductron/network.hpp"

namespace deductron {

struct AnnealSchedule {
  double beta_start = 0.0;
  double beta_end = 10.0;
  double beta_step = 1e-5;
  long stuck_limit = 20000;  // iterations without improvement before restart
  int gamma = 1;
  std::uint64_t seed = 0;
  enum class Accept { metropolis, greedy };
  Accept accept = Accept::metropolis;
  bool tied_bias = false;  // biases forced to the count of -1s in their row
  int history_points = 1000;

  long iteration_count() const;
};

struct AnnealResult {
  DeductronParams best_params;
  double best_loss = 0.0;  // hard-threshold loss of best_params
  long iterations = 0;
  long restarts = 0;

  struct HistoryPoint {
    long iteration;
    double beta;
    double current_loss;  // at the recorded inverse temperature
    double best_loss;     // hard-threshold loss
  };
  std::vector<HistoryPoint> history;  // downsampled, always includes the end
};

// Returns a copy differing from params in exactly one entry. Weights are
// redrawn from {-1, 0, 1}, biases from {0..5}, until the value changes. With
// tied_bias only weights mutate and the row bias follows the -1 count.
DeductronParams propose(const DeductronParams& params, Rng& rng,
                        bool tied_bias = false);

// Uniform random quantized parameters.
DeductronParams random_quantized(Shape shape, Rng& rng);

// Metropolis decision at inverse temperature beta with a floor of 1, so the
// beta ~ 0 phase is not a pure random walk.
bool anneal_accept(double delta_loss, double beta, Rng& rng);

AnnealResult anneal(const WindowSeq& train, Shape shape,
                    const AnnealSchedule& sched,
                    const std::optional<DeductronParams>& init = std::nullopt);

struct AccuracyReport {
  double bit_accuracy = 0.0;
  long correct_bits = 0;
  long total_bits = 0;
  // Confusion counts over all output bits, thresholded at 1/2.
  long true_pos = 0, false_pos = 0, true_neg = 0, false_neg = 0;
  bool emissions_match = false;
  std::string emitted;   // from thresholded outputs
  std::string expected;  // from targets
};

AccuracyReport evaluate_accuracy(const DeductronParams& params,
                                 const ActivationSpec& act,
                                 const WindowSeq& data);

}  // namespace deductron
