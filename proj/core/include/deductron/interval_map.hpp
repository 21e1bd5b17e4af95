#pragma once

// Piecewise-expanding interval map on [0, 11) whose unit intervals are
// labeled with the 11-state chain. Iterating the map from an initial point
// yields valid wave sequences, like a custom pseudorandom generator.
//
// Plain binary floating point is useless here: every double is a dyadic
// rational, and multiplication by 2 or 4 exhausts the fractional bits until
// the orbit lands on an integer fixed point. Iteration therefore runs on an
// exact scaled-decimal representation (value = units / 10^digits), which
// keeps a factor 5^digits in the denominator forever.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "deductron/big_int.hpp"
#include "deductron/wlang.hpp"

namespace deductron {

// Affine branch x -> out + slope * (x - lo) on [lo, hi). Endpoints are
// half-integers, stored doubled so endpoint arithmetic stays exact.
struct MapBranch {
  int lo_halves = 0;
  int hi_halves = 0;
  int out_halves = 0;
  int slope = 2;  // 2 or 4

  double lo() const { return lo_halves / 2.0; }
  double hi() const { return hi_halves / 2.0; }
  double out_lo() const { return out_halves / 2.0; }
};

struct IntervalMapConfig {
  std::vector<MapBranch> branches;  // must tile [0, 11)
  int digits = 200;                 // decimal digits of the fixed-point state
  double perturbation = 0.0;        // optional offset added to branch outputs

  // The map as plotted: 14 branches, slopes 2 and 4.
  static IntervalMapConfig standard(int digits = 200);

  // Checks the branch list tiles [0, 11) with slopes in {2, 4}.
  void validate() const;
};

// Smallest digit count that keeps an n-frame trajectory fully chaotic
// (each step consumes up to log10(4) digits of the seed).
int recommended_digits(std::size_t n_frames);

// Single application in plain double arithmetic. Domain error outside
// [0, 11). Useful for demonstrating the dyadic collapse.
double interval_map_apply(double x, const IntervalMapConfig& cfg);

// Exact decimal point in [0, 11): value = units / 10^digits.
class DecimalPoint {
 public:
  DecimalPoint() = default;

  // Parses a plain decimal literal like "5.2"; excess fractional digits are
  // rejected rather than rounded.
  static DecimalPoint from_string(std::string_view text, int digits);

  // Uniform random point in [0, 11) with a final digit in {1,3,7,9}, which
  // guarantees the full 10^digits denominator (no dyadic collapse ever).
  static DecimalPoint random(Rng& rng, int digits);

  double to_double() const;
  std::string to_string() const;
  int interval() const;  // floor(value), in 0..10
  int digits() const { return digits_; }
  const BigInt& units() const { return units_; }

  friend bool operator==(const DecimalPoint&, const DecimalPoint&) = default;

 private:
  friend DecimalPoint interval_map_apply(const DecimalPoint&,
                                         const IntervalMapConfig&);
  BigInt units_;
  int digits_ = 0;
};

DecimalPoint interval_map_apply(const DecimalPoint& x,
                                const IntervalMapConfig& cfg);

// State labeling the unit interval [k, k+1).
PreciseState interval_state(int k);

// Literal orbit labels: result[i] is the state interval containing x_i.
// Throws if cfg.digits is too small to iterate reliably.
std::vector<PreciseState> generate_chaotic(const DecimalPoint& x0,
                                           std::size_t n_frames,
                                           const IntervalMapConfig& cfg);

// Orbit labels adjusted at the boundaries: skips ahead to the first state
// whose frame is blank/e1/e3 and extends past n_frames until the final frame
// is blank/e1/e3, so the result always validates as an image. Length is at
// least n_frames.
std::vector<PreciseState> generate_chaotic_wave(const DecimalPoint& x0,
                                                std::size_t n_frames,
                                                const IntervalMapConfig& cfg);

}  // namespace deductron
