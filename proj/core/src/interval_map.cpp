#include "deductron/interval_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace deductron {

namespace {

constexpr int kMinDigits = 32;

BigInt pow10(int digits) {
  BigInt r = 1;
  for (int i = 0; i < digits; ++i) r *= 10;
  return r;
}

}  // namespace

IntervalMapConfig IntervalMapConfig::standard(int digits) {
  IntervalMapConfig cfg;
  cfg.digits = digits;
  // (lo, hi, out_lo, slope), all in half-units.
  cfg.branches = {
      {0, 2, 0, 2},    // [0.0, 1.0)  -> 2x
      {2, 4, 2, 2},    // [1.0, 2.0)  -> 1 + 2(x-1)
      {4, 6, 4, 2},    // [2.0, 3.0)  -> 2 + 2(x-2)
      {6, 7, 6, 4},    // [3.0, 3.5)  -> 3 + 4(x-3)
      {7, 8, 0, 2},    // [3.5, 4.0)  -> 2(x-3.5)
      {8, 10, 8, 2},   // [4.0, 5.0)  -> 4 + 2(x-4)
      {10, 11, 0, 2},  // [5.0, 5.5)  -> 2(x-5)
      {11, 12, 10, 4}, // [5.5, 6.0)  -> 5 + 4(x-5.5)
      {12, 14, 12, 2}, // [6.0, 7.0)  -> 6 + 2(x-6)
      {14, 16, 14, 2}, // [7.0, 8.0)  -> 7 + 2(x-7)
      {16, 18, 16, 2}, // [8.0, 9.0)  -> 8 + 2(x-8)
      {18, 20, 18, 2}, // [9.0, 10.0) -> 9 + 2(x-9)
      {20, 21, 20, 2}, // [10.0, 10.5) -> 10 + 2(x-10)
      {21, 22, 10, 2}, // [10.5, 11.0) -> 5 + 2(x-10.5)
  };
  return cfg;
}

void IntervalMapConfig::validate() const {
  if (branches.empty()) throw std::invalid_argument("no branches configured");
  std::vector<MapBranch> sorted = branches;
  std::sort(sorted.begin(), sorted.end(),
            [](const MapBranch& a, const MapBranch& b) {
              return a.lo_halves < b.lo_halves;
            });
  if (sorted.front().lo_halves != 0 || sorted.back().hi_halves != 22) {
    throw std::invalid_argument("branches must cover [0, 11)");
  }
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const MapBranch& b = sorted[i];
    if (b.slope != 2 && b.slope != 4) {
      throw std::invalid_argument("branch slope must be 2 or 4");
    }
    if (b.hi_halves <= b.lo_halves) {
      throw std::invalid_argument("branch domain is empty");
    }
    if (i + 1 < sorted.size() && sorted[i + 1].lo_halves != b.hi_halves) {
      throw std::invalid_argument("branch domains must tile without gaps");
    }
  }
}

int recommended_digits(std::size_t n_frames) {
  return static_cast<int>(
             std::ceil(static_cast<double>(n_frames) * std::log10(4.0))) +
         16;
}

double interval_map_apply(double x, const IntervalMapConfig& cfg) {
  if (!(x >= 0.0) || !(x < 11.0)) {
    throw std::domain_error("interval map argument outside [0, 11)");
  }
  for (const MapBranch& b : cfg.branches) {
    if (x >= b.lo() && x < b.hi()) {
      double y = b.out_lo() + b.slope * (x - b.lo()) + cfg.perturbation;
      if (y < 0.0) y = 0.0;
      if (y >= 11.0) y = std::nextafter(11.0, 0.0);
      return y;
    }
  }
  throw std::domain_error("no branch covers the argument");
}

DecimalPoint DecimalPoint::from_string(std::string_view text, int digits) {
  if (digits < 1) throw std::invalid_argument("digits must be positive");
  std::size_t dot = text.find('.');
  std::string_view int_part = text.substr(0, dot);
  std::string_view frac_part =
      dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) {
    throw std::invalid_argument("empty decimal literal");
  }
  if (static_cast<int>(frac_part.size()) > digits) {
    throw std::invalid_argument("decimal literal has more fractional digits "
                                "than the configured precision");
  }
  BigInt units = 0;
  for (char c : int_part) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad decimal literal");
    units = units * 10 + (c - '0');
  }
  if (units >= 11) {
    throw std::domain_error("initial point outside [0, 11)");
  }
  for (char c : frac_part) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad decimal literal");
    units = units * 10 + (c - '0');
  }
  for (int i = static_cast<int>(frac_part.size()); i < digits; ++i) {
    units *= 10;
  }
  DecimalPoint p;
  p.units_ = units;
  p.digits_ = digits;
  return p;
}

DecimalPoint DecimalPoint::random(Rng& rng, int digits) {
  if (digits < 1) throw std::invalid_argument("digits must be positive");
  std::uniform_int_distribution<int> int_dist(0, 10);
  std::uniform_int_distribution<int> digit_dist(0, 9);
  BigInt units = int_dist(rng);
  for (int i = 0; i < digits - 1; ++i) units = units * 10 + digit_dist(rng);
  static constexpr int last[] = {1, 3, 7, 9};
  std::uniform_int_distribution<int> last_dist(0, 3);
  units = units * 10 + last[last_dist(rng)];
  DecimalPoint p;
  p.units_ = units;
  p.digits_ = digits;
  return p;
}

double DecimalPoint::to_double() const {
  // Convert through the leading ~18 digits; plenty for a double.
  BigInt scale = pow10(digits_);
  BigInt int_part = units_ / scale;
  BigInt rem = units_ % scale;
  double frac = 0.0;
  double unit = 1.0;
  BigInt s = scale;
  for (int i = 0; i < 18 && s > 1; ++i) {
    s /= 10;
    unit /= 10.0;
    BigInt d = rem / s;
    frac += static_cast<double>(d.convert_to<long>()) * unit;
    rem %= s;
  }
  return static_cast<double>(int_part.convert_to<long>()) + frac;
}

std::string DecimalPoint::to_string() const {
  BigInt scale = pow10(digits_);
  BigInt int_part = units_ / scale;
  BigInt rem = units_ % scale;
  std::string frac = rem.str();
  frac.insert(frac.begin(), digits_ - frac.size(), '0');
  return int_part.str() + "." + frac;
}

int DecimalPoint::interval() const {
  BigInt k = units_ / pow10(digits_);
  return k.convert_to<int>();
}

DecimalPoint interval_map_apply(const DecimalPoint& x,
                                const IntervalMapConfig& cfg) {
  const BigInt scale = pow10(x.digits());
  const BigInt half_scale = scale / 2;  // exact for digits >= 1
  const BigInt twice = x.units() * 2;
  for (const MapBranch& b : cfg.branches) {
    if (twice >= b.lo_halves * scale && twice < b.hi_halves * scale) {
      BigInt units = b.out_halves * half_scale +
                     b.slope * (x.units() - b.lo_halves * half_scale);
      if (cfg.perturbation != 0.0) {
        // Perturbation resolved to 1e-18.
        auto offset = static_cast<long long>(
            std::llround(cfg.perturbation * 1e18));
        units += BigInt(offset) * scale / BigInt(1000000000000000000LL);
      }
      if (units < 0) units = 0;
      if (units >= 11 * scale) units = 11 * scale - 1;
      DecimalPoint y;
      y.units_ = units;
      y.digits_ = x.digits();
      return y;
    }
  }
  throw std::domain_error("point outside the branch partition");
}

PreciseState interval_state(int k) {
  using P = PreciseState;
  static constexpr P order[] = {P::E3XS, P::E2XM, P::E1X, P::E2XP,
                                P::E3XF, P::Z,    P::E1OS, P::E2OP,
                                P::E3O,  P::E2OM, P::E1OF};
  if (k < 0 || k >= kNumPreciseStates) {
    throw std::domain_error("interval index outside 0..10");
  }
  return order[k];
}

namespace {

DecimalPoint rescale(const DecimalPoint& x, int digits) {
  if (x.digits() == digits) return x;
  if (x.digits() > digits) {
    throw std::invalid_argument(
        "initial point carries more digits than the configured precision");
  }
  return DecimalPoint::from_string(x.to_string(), digits);
}

void check_precision(const IntervalMapConfig& cfg) {
  if (cfg.digits < kMinDigits) {
    throw std::invalid_argument(
        "insufficient precision configured: need at least " +
        std::to_string(kMinDigits) + " decimal digits (use "
        "recommended_digits(n) for a fully chaotic n-frame trajectory)");
  }
}

}  // namespace

std::vector<PreciseState> generate_chaotic(const DecimalPoint& x0,
                                           std::size_t n_frames,
                                           const IntervalMapConfig& cfg) {
  if (n_frames == 0) throw std::invalid_argument("n_frames must be positive");
  check_precision(cfg);
  cfg.validate();
  DecimalPoint x = rescale(x0, cfg.digits);
  std::vector<PreciseState> seq;
  seq.reserve(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    seq.push_back(interval_state(x.interval()));
    if (i + 1 < n_frames) x = interval_map_apply(x, cfg);
  }
  return seq;
}

std::vector<PreciseState> generate_chaotic_wave(const DecimalPoint& x0,
                                                std::size_t n_frames,
                                                const IntervalMapConfig& cfg) {
  if (n_frames == 0) throw std::invalid_argument("n_frames must be positive");
  check_precision(cfg);
  cfg.validate();
  auto boundary_frame = [](PreciseState s) {
    Frame f = frame_of(s);
    return f == kFrameBlank || f == kFrameE1 || f == kFrameE3;
  };
  // Self-loop dwell time is bounded by the digit content of the point.
  const std::size_t cap = 4 * static_cast<std::size_t>(cfg.digits) + 64;

  DecimalPoint x = rescale(x0, cfg.digits);
  std::size_t skipped = 0;
  while (!boundary_frame(interval_state(x.interval()))) {
    x = interval_map_apply(x, cfg);
    if (++skipped > cap) {
      throw std::runtime_error("orbit failed to reach a wave boundary");
    }
  }
  std::vector<PreciseState> seq;
  seq.reserve(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    seq.push_back(interval_state(x.interval()));
    x = interval_map_apply(x, cfg);
  }
  std::size_t extended = 0;
  while (!boundary_frame(seq.back())) {
    seq.push_back(interval_state(x.interval()));
    x = interval_map_apply(x, cfg);
    if (++extended > cap) {
      throw std::runtime_error("orbit failed to reach a wave boundary");
    }
  }
  return seq;
}

}  // namespace deductron
