#pragma once

// Text file formats. Every format opens with a fixed tag token that doubles
// as the format version; loaders reject anything else. Lines starting with
// '#' after the payload are ignored, which is where writers append the
// resolved run configuration.
//
//   wimg   "wimg <n_cols>" then three rows of 0/1 digits, TOP row first
//          (rows are stored as printed; in-memory frames are bottom-to-top).
//   wset   "wset <n_windows> <n_in> <n_out>" then one window per line:
//          n_in bits, '|', n_out target bits.
//   wchain "wchain <basic|precise> <n>" then one state token per line.
//   params JSON with {format, version, mode, n_in, n_memory, n_out,
//          W1 (row-major), b1, W2, b2}; quantized entries are integers.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "deductron/decoder.hpp"
#include "deductron/lstm.hpp"
#include "deductron/network.hpp"
#include "deductron/wlang.hpp"

namespace deductron {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Image read_image(const std::filesystem::path& path);
void write_image(const std::filesystem::path& path, const Image& img,
                 std::string_view run_info = {});

WindowSeq read_window_seq(const std::filesystem::path& path);
void write_window_seq(const std::filesystem::path& path, const WindowSeq& seq,
                      std::string_view run_info = {});

std::vector<BasicState> read_basic_chain(const std::filesystem::path& path);
std::vector<PreciseState> read_precise_chain(
    const std::filesystem::path& path);
void write_chain(const std::filesystem::path& path,
                 std::span<const BasicState> states,
                 std::string_view run_info = {});
void write_chain(const std::filesystem::path& path,
                 std::span<const PreciseState> states,
                 std::string_view run_info = {});

DeductronParams read_params(const std::filesystem::path& path);
void write_params(const std::filesystem::path& path,
                  const DeductronParams& params,
                  std::string_view run_info = {});

LstmParams read_lstm_params(const std::filesystem::path& path);
void write_lstm_params(const std::filesystem::path& path,
                       const LstmParams& params,
                       std::string_view run_info = {});

}  // namespace deductron
