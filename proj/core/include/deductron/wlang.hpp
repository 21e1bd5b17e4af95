#pragma once

// W-language core: frames, images, the two topological Markov chains that
// generate valid wave sequences, and the image validator.
//
// Conventions used throughout the project:
//   * A Frame stores its three pixels bottom-to-top, so e1 = (1,0,0) is the
//     bottom-only column (signal minimum) and e3 = (0,0,1) the top-only one.
//   * Image text files ("wimg") store rows top-to-bottom as printed; the
//     loader converts to the in-memory order (see io.hpp).
//   * All generators are pure given an explicit RNG; values are immutable
//     after construction and safe to share across threads.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace deductron {

using Rng = std::mt19937_64;

// One 3-pixel image column, bottom-to-top.
struct Frame {
  std::array<std::uint8_t, 3> bits{};  // (bottom, middle, top)

  constexpr std::uint8_t bottom() const { return bits[0]; }
  constexpr std::uint8_t middle() const { return bits[1]; }
  constexpr std::uint8_t top() const { return bits[2]; }

  friend constexpr bool operator==(const Frame&, const Frame&) = default;
};

inline constexpr Frame kFrameBlank{{0, 0, 0}};
inline constexpr Frame kFrameE1{{1, 0, 0}};
inline constexpr Frame kFrameE2{{0, 1, 0}};
inline constexpr Frame kFrameE3{{0, 0, 1}};

struct Image {
  std::vector<Frame> columns;

  std::size_t n_cols() const { return columns.size(); }
};

// Coarse 5-state chain. The split of the middle row into E2P/E2M remembers
// whether the wave is rising or falling.
enum class BasicState { Z, E1, E2P, E2M, E3 };

// 11-state chain that additionally enforces character completion. Enum order
// matches the interval labels of the chaotic map, left to right.
enum class PreciseState {
  E3XS, E2XM, E1X, E2XP, E3XF, Z, E1OS, E2OP, E3O, E2OM, E1OF
};

inline constexpr int kNumBasicStates = 5;
inline constexpr int kNumPreciseStates = 11;

Frame frame_of(BasicState s);
Frame frame_of(PreciseState s);

std::string_view to_token(BasicState s);
std::string_view to_token(PreciseState s);
std::optional<BasicState> parse_basic_state(std::string_view token);
std::optional<PreciseState> parse_precise_state(std::string_view token);

// Out-edge lists (self-loop first). These are the ground truth for the
// steppers and the validator.
std::span<const BasicState> basic_out_edges(BasicState s);
std::span<const PreciseState> precise_out_edges(PreciseState s);

// Optional per-edge weight overrides; edges not present keep weight 1.
template <typename State>
using EdgeWeights = std::map<std::pair<State, State>, double>;

// One random step along an out-edge, uniform unless weights are given.
BasicState basic_chain_step(BasicState s, Rng& rng,
                            const EdgeWeights<BasicState>* weights = nullptr);
PreciseState precise_chain_step(
    PreciseState s, Rng& rng,
    const EdgeWeights<PreciseState>* weights = nullptr);

// Random walk of n_frames states starting in {Z, E1, E3}. The final state is
// forced into {Z, E1, E3} by resampling the tail of the walk, which keeps the
// requested length.
std::vector<BasicState> generate_basic(
    std::size_t n_frames, Rng& rng,
    const EdgeWeights<BasicState>* weights = nullptr);

// Same idea for the 11-state chain: starts at Z, ends in {Z, E3XF, E1OF}.
std::vector<PreciseState> generate_precise(
    std::size_t n_frames, Rng& rng,
    const EdgeWeights<PreciseState>* weights = nullptr);

Image states_to_image(std::span<const BasicState> states);
Image states_to_image(std::span<const PreciseState> states);

struct ValidationResult {
  bool valid = true;
  std::size_t violation_index = 0;  // column index of the first offense
  std::string reason;

  explicit operator bool() const { return valid; }
};

// True iff the column sequence is generable by the 5-state chain starting and
// ending on a blank, e1 or e3 column. Tracks the rising/falling context of
// middle-row spans.
ValidationResult validate_image(const Image& img);

// The fixed 30-column sample image that decodes to "XOOXXO".
const Image& xooxxo_image();

}  // namespace deductron
