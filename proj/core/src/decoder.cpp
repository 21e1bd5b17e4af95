#include "deductron/decoder.hpp"

#include <stdexcept>

namespace deductron {

namespace {

// Threshold on integer activations: 1 iff a <= 0.
inline int s_int(int a) { return a <= 0 ? 1 : 0; }

}  // namespace

std::string WindowSeq::target_string() const {
  std::string out;
  for (const auto& t : targets) {
    if (t[0]) out.push_back('X');
    if (t[1]) out.push_back('O');
  }
  return out;
}

std::vector<Window> windows_from_image(const Image& img) {
  if (img.n_cols() < 2) {
    throw std::invalid_argument("need at least 2 columns to form windows");
  }
  std::vector<Window> windows;
  windows.reserve(img.n_cols() - 1);
  for (std::size_t t = 0; t + 1 < img.n_cols(); ++t) {
    const Frame& a = img.columns[t];
    const Frame& b = img.columns[t + 1];
    windows.push_back(Window{{a.bits[0], a.bits[1], a.bits[2],  //
                              b.bits[0], b.bits[1], b.bits[2]}});
  }
  return windows;
}

StepResult step(DecoderState state, const Window& w) {
  const bool y1 = !w.x[1] && !w.x[2] && w.x[5];  // start of 'X'
  const bool y2 = !w.x[1] && !w.x[0] && w.x[3];  // start of 'O'
  // Two sequential updates, the later one winning on the (invalid-input-only)
  // overlap, which keeps this in lockstep with the gate chain of step_arith.
  if (y1) {
    state.z1 = 1;
    state.z2 = 0;
  }
  if (y2) {
    state.z2 = 1;
    state.z1 = 0;
  }
  StepResult r;
  r.state = state;
  r.emit_x = static_cast<std::uint8_t>(w.x[3] && state.z1);
  r.emit_o = static_cast<std::uint8_t>(w.x[5] && state.z2);
  return r;
}

StepResult step_arith(DecoderState state, const Window& w) {
  const int y1 = s_int(w.x[1] + w.x[2] + (1 - w.x[5]));
  const int y2 = s_int(w.x[1] + w.x[0] + (1 - w.x[3]));
  int z1 = (1 - y1) * state.z1 + y1;
  int z2 = (1 - y1) * state.z2;
  z2 = (1 - y2) * z2 + y2;
  z1 = (1 - y2) * z1;
  StepResult r;
  r.state.z1 = static_cast<std::uint8_t>(z1);
  r.state.z2 = static_cast<std::uint8_t>(z2);
  r.emit_x = static_cast<std::uint8_t>(s_int((1 - w.x[3]) + (1 - z1)));
  r.emit_o = static_cast<std::uint8_t>(s_int((1 - w.x[5]) + (1 - z2)));
  return r;
}

DecodeResult decode(const Image& img) {
  DecodeResult result;
  result.seq.windows = windows_from_image(img);
  result.seq.n_cols = img.n_cols();
  result.seq.targets.reserve(result.seq.windows.size());
  DecoderState state;
  for (const Window& w : result.seq.windows) {
    StepResult r = step(state, w);
    state = r.state;
    result.seq.targets.push_back({r.emit_x, r.emit_o});
    if (r.emit_x) result.emitted.push_back('X');
    if (r.emit_o) result.emitted.push_back('O');
  }
  return result;
}

}  // namespace deductron
