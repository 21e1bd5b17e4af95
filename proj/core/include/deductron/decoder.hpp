#pragma once

// Hand-crafted wave decoder. Processes an image left to right through a
// 6-bit sliding window of two consecutive columns, keeping two memory bits:
// z1 = inside an 'X' wave, z2 = inside an 'O' wave. An 'X' is emitted at a
// signal minimum while z1 is set, an 'O' at a maximum while z2 is set.
//
// step() is the conditional formulation; step_arith() replaces every
// conditional with threshold arithmetic. The two agree on every (window,
// state) pair, which is checked exhaustively in the tests.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "deductron/wlang.hpp"

namespace deductron {

// Two image columns linearized (x11, x21, x31, x12, x22, x32): column 1 then
// column 2, each bottom to top.
struct Window {
  std::array<std::uint8_t, 6> x{};

  friend constexpr bool operator==(const Window&, const Window&) = default;
};

struct DecoderState {
  std::uint8_t z1 = 0;  // inside 'X'
  std::uint8_t z2 = 0;  // inside 'O'

  friend constexpr bool operator==(const DecoderState&,
                                   const DecoderState&) = default;
};

struct StepResult {
  DecoderState state;
  std::uint8_t emit_x = 0;
  std::uint8_t emit_o = 0;
};

// Window sequence with the decoder's per-window emission targets; the
// training datum of the whole project.
struct WindowSeq {
  std::vector<Window> windows;
  std::vector<std::array<std::uint8_t, 2>> targets;  // (emit_X, emit_O)
  std::size_t n_cols = 0;                            // source column count

  std::size_t size() const { return windows.size(); }

  // "XOOXXO"-style string read off the targets.
  std::string target_string() const;
};

// Windows pairing columns (t, t+1); requires at least two columns.
std::vector<Window> windows_from_image(const Image& img);

StepResult step(DecoderState state, const Window& w);
StepResult step_arith(DecoderState state, const Window& w);

struct DecodeResult {
  WindowSeq seq;
  std::string emitted;
};

// Runs the decoder over the whole image from the cleared state, recording
// per-window emissions as targets.
DecodeResult decode(const Image& img);

}  // namespace deductron
