#include "deductron/wlang.hpp"

#include <algorithm>
#include <stdexcept>

namespace deductron {

namespace {

template <typename State>
State pick_edge(State from, std::span<const State> edges, Rng& rng,
                const EdgeWeights<State>* weights) {
  if (weights == nullptr || weights->empty()) {
    std::uniform_int_distribution<std::size_t> dist(0, edges.size() - 1);
    return edges[dist(rng)];
  }
  double total = 0.0;
  for (State to : edges) {
    auto it = weights->find({from, to});
    total += (it == weights->end()) ? 1.0 : it->second;
  }
  std::uniform_real_distribution<double> dist(0.0, total);
  double r = dist(rng);
  for (State to : edges) {
    auto it = weights->find({from, to});
    double w = (it == weights->end()) ? 1.0 : it->second;
    if (r < w) return to;
    r -= w;
  }
  return edges.back();
}

// Resample the tail of a walk until the last state is acceptable. The window
// grows on repeated failure; some states (e.g. E2XM) cannot reach an accept
// state in a single step.
template <typename State, typename StepFn, typename AcceptFn>
void fix_terminal_state(std::vector<State>& seq, StepFn step, AcceptFn accept,
                        Rng& rng) {
  if (seq.empty() || accept(seq.back())) return;
  const std::size_t n = seq.size();
  std::size_t window = 1;
  while (window < n) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      for (std::size_t i = n - window; i < n; ++i) {
        seq[i] = step(seq[i - 1], rng);
      }
      if (accept(seq.back())) return;
    }
    ++window;
  }
  // Window spans everything but the start; keep resampling, this terminates
  // with probability 1 because accept states are reachable from every start.
  while (!accept(seq.back())) {
    for (std::size_t i = 1; i < n; ++i) seq[i] = step(seq[i - 1], rng);
  }
}

}  // namespace

Frame frame_of(BasicState s) {
  switch (s) {
    case BasicState::Z: return kFrameBlank;
    case BasicState::E1: return kFrameE1;
    case BasicState::E2P:
    case BasicState::E2M: return kFrameE2;
    case BasicState::E3: return kFrameE3;
  }
  throw std::logic_error("invalid BasicState");
}

Frame frame_of(PreciseState s) {
  switch (s) {
    case PreciseState::Z: return kFrameBlank;
    case PreciseState::E1X:
    case PreciseState::E1OS:
    case PreciseState::E1OF: return kFrameE1;
    case PreciseState::E2XM:
    case PreciseState::E2XP:
    case PreciseState::E2OP:
    case PreciseState::E2OM: return kFrameE2;
    case PreciseState::E3XS:
    case PreciseState::E3XF:
    case PreciseState::E3O: return kFrameE3;
  }
  throw std::logic_error("invalid PreciseState");
}

std::string_view to_token(BasicState s) {
  switch (s) {
    case BasicState::Z: return "Z";
    case BasicState::E1: return "E1";
    case BasicState::E2P: return "E2P";
    case BasicState::E2M: return "E2M";
    case BasicState::E3: return "E3";
  }
  throw std::logic_error("invalid BasicState");
}

std::string_view to_token(PreciseState s) {
  switch (s) {
    case PreciseState::E3XS: return "E3XS";
    case PreciseState::E2XM: return "E2XM";
    case PreciseState::E1X: return "E1X";
    case PreciseState::E2XP: return "E2XP";
    case PreciseState::E3XF: return "E3XF";
    case PreciseState::Z: return "Z";
    case PreciseState::E1OS: return "E1OS";
    case PreciseState::E2OP: return "E2OP";
    case PreciseState::E3O: return "E3O";
    case PreciseState::E2OM: return "E2OM";
    case PreciseState::E1OF: return "E1OF";
  }
  throw std::logic_error("invalid PreciseState");
}

std::optional<BasicState> parse_basic_state(std::string_view token) {
  using B = BasicState;
  for (B s : {B::Z, B::E1, B::E2P, B::E2M, B::E3}) {
    if (token == to_token(s)) return s;
  }
  return std::nullopt;
}

std::optional<PreciseState> parse_precise_state(std::string_view token) {
  using P = PreciseState;
  for (P s : {P::E3XS, P::E2XM, P::E1X, P::E2XP, P::E3XF, P::Z, P::E1OS,
              P::E2OP, P::E3O, P::E2OM, P::E1OF}) {
    if (token == to_token(s)) return s;
  }
  return std::nullopt;
}

std::span<const BasicState> basic_out_edges(BasicState s) {
  using B = BasicState;
  static constexpr B from_z[] = {B::Z, B::E1, B::E3};
  static constexpr B from_e1[] = {B::E1, B::Z, B::E2P, B::E3};
  static constexpr B from_e2p[] = {B::E2P, B::E3};
  static constexpr B from_e2m[] = {B::E2M, B::E1};
  static constexpr B from_e3[] = {B::E3, B::E1, B::Z, B::E2M};
  switch (s) {
    case B::Z: return from_z;
    case B::E1: return from_e1;
    case B::E2P: return from_e2p;
    case B::E2M: return from_e2m;
    case B::E3: return from_e3;
  }
  throw std::logic_error("invalid BasicState");
}

std::span<const PreciseState> precise_out_edges(PreciseState s) {
  using P = PreciseState;
  static constexpr P from_e3xs[] = {P::E3XS, P::E2XM};
  static constexpr P from_e2xm[] = {P::E2XM, P::E1X};
  static constexpr P from_e1x[] = {P::E1X, P::E2XP};
  static constexpr P from_e2xp[] = {P::E2XP, P::E3XS, P::E3XF};
  static constexpr P from_e3xf[] = {P::E3XF, P::Z};
  static constexpr P from_z[] = {P::Z, P::E3XS, P::E1OS};
  static constexpr P from_e1os[] = {P::E1OS, P::E2OP};
  static constexpr P from_e2op[] = {P::E2OP, P::E3O};
  static constexpr P from_e3o[] = {P::E3O, P::E2OM};
  static constexpr P from_e2om[] = {P::E2OM, P::E1OS, P::E1OF};
  static constexpr P from_e1of[] = {P::E1OF, P::Z};
  switch (s) {
    case P::E3XS: return from_e3xs;
    case P::E2XM: return from_e2xm;
    case P::E1X: return from_e1x;
    case P::E2XP: return from_e2xp;
    case P::E3XF: return from_e3xf;
    case P::Z: return from_z;
    case P::E1OS: return from_e1os;
    case P::E2OP: return from_e2op;
    case P::E3O: return from_e3o;
    case P::E2OM: return from_e2om;
    case P::E1OF: return from_e1of;
  }
  throw std::logic_error("invalid PreciseState");
}

BasicState basic_chain_step(BasicState s, Rng& rng,
                            const EdgeWeights<BasicState>* weights) {
  return pick_edge(s, basic_out_edges(s), rng, weights);
}

PreciseState precise_chain_step(PreciseState s, Rng& rng,
                                const EdgeWeights<PreciseState>* weights) {
  return pick_edge(s, precise_out_edges(s), rng, weights);
}

std::vector<BasicState> generate_basic(std::size_t n_frames, Rng& rng,
                                       const EdgeWeights<BasicState>* weights) {
  if (n_frames == 0) throw std::invalid_argument("n_frames must be positive");
  using B = BasicState;
  static constexpr B starts[] = {B::Z, B::E1, B::E3};
  std::vector<B> seq;
  seq.reserve(n_frames);
  std::uniform_int_distribution<int> start_dist(0, 2);
  seq.push_back(starts[start_dist(rng)]);
  for (std::size_t i = 1; i < n_frames; ++i) {
    seq.push_back(basic_chain_step(seq.back(), rng, weights));
  }
  auto accept = [](B s) { return s == B::Z || s == B::E1 || s == B::E3; };
  auto step = [weights](B s, Rng& r) { return basic_chain_step(s, r, weights); };
  fix_terminal_state(seq, step, accept, rng);
  return seq;
}

std::vector<PreciseState> generate_precise(
    std::size_t n_frames, Rng& rng, const EdgeWeights<PreciseState>* weights) {
  if (n_frames == 0) throw std::invalid_argument("n_frames must be positive");
  using P = PreciseState;
  std::vector<P> seq;
  seq.reserve(n_frames);
  seq.push_back(P::Z);
  for (std::size_t i = 1; i < n_frames; ++i) {
    seq.push_back(precise_chain_step(seq.back(), rng, weights));
  }
  auto accept = [](P s) {
    return s == P::Z || s == P::E3XF || s == P::E1OF;
  };
  auto step = [weights](P s, Rng& r) {
    return precise_chain_step(s, r, weights);
  };
  fix_terminal_state(seq, step, accept, rng);
  return seq;
}

Image states_to_image(std::span<const BasicState> states) {
  Image img;
  img.columns.reserve(states.size());
  for (BasicState s : states) img.columns.push_back(frame_of(s));
  return img;
}

Image states_to_image(std::span<const PreciseState> states) {
  Image img;
  img.columns.reserve(states.size());
  for (PreciseState s : states) img.columns.push_back(frame_of(s));
  return img;
}

ValidationResult validate_image(const Image& img) {
  using B = BasicState;
  if (img.columns.empty()) return {false, 0, "empty image"};

  auto classify = [](const Frame& f) -> std::optional<B> {
    if (f == kFrameBlank) return B::Z;
    if (f == kFrameE1) return B::E1;
    if (f == kFrameE2) return B::E2P;  // direction resolved from context
    if (f == kFrameE3) return B::E3;
    return std::nullopt;
  };

  auto first = classify(img.columns[0]);
  if (!first) return {false, 0, "column is not one of the frame symbols"};
  if (*first == B::E2P) {
    return {false, 0, "sequence cannot start on a middle-pixel column"};
  }
  B state = *first;
  for (std::size_t i = 1; i < img.columns.size(); ++i) {
    auto next = classify(img.columns[i]);
    if (!next) return {false, i, "column is not one of the frame symbols"};
    B target = *next;
    if (target == B::E2P) {
      // Resolve direction: rising after E1/E2P, falling after E3/E2M.
      if (state == B::E1 || state == B::E2P) {
        target = B::E2P;
      } else if (state == B::E3 || state == B::E2M) {
        target = B::E2M;
      }
    }
    auto edges = basic_out_edges(state);
    if (std::find(edges.begin(), edges.end(), target) == edges.end()) {
      return {false, i,
              "no transition from " + std::string(to_token(state)) + " to " +
                  std::string(to_token(target))};
    }
    state = target;
  }
  if (state == B::E2P || state == B::E2M) {
    return {false, img.columns.size() - 1, "sequence ends inside a span"};
  }
  return {};
}

const Image& xooxxo_image() {
  static const Image img = [] {
    // Pixel rows as printed, top row first.
    static constexpr std::uint8_t top[30] = {0, 1, 0, 0, 0, 1, 0, 0, 1, 0,
                                             0, 0, 1, 0, 0, 1, 0, 0, 0, 1,
                                             0, 0, 0, 1, 0, 0, 1, 0, 0, 0};
    static constexpr std::uint8_t mid[30] = {0, 0, 1, 0, 1, 0, 0, 1, 0, 1,
                                             0, 1, 0, 1, 0, 0, 1, 0, 1, 0,
                                             1, 0, 1, 0, 0, 1, 0, 1, 0, 0};
    static constexpr std::uint8_t bot[30] = {0, 0, 0, 1, 0, 0, 1, 0, 0, 0,
                                             1, 0, 0, 0, 1, 0, 0, 1, 0, 0,
                                             0, 1, 0, 0, 1, 0, 0, 0, 1, 0};
    Image im;
    im.columns.resize(30);
    for (int c = 0; c < 30; ++c) {
      im.columns[c] = Frame{{bot[c], mid[c], top[c]}};
    }
    return im;
  }();
  return img;
}

}  // namespace deductron
