#include "deductron/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace deductron {

namespace {

using nlohmann::json;

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

[[noreturn]] void bad_format(const std::filesystem::path& path,
                             const std::string& what) {
  throw IoError(path.string() + ": " + what);
}

void append_run_info(std::ofstream& out, std::string_view run_info) {
  if (!run_info.empty()) out << "# run: " << run_info << "\n";
}

int read_bit(std::istream& in, const std::filesystem::path& path) {
  int v;
  if (!(in >> v) || (v != 0 && v != 1)) {
    bad_format(path, "expected a 0/1 digit");
  }
  return v;
}

}  // namespace

Image read_image(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string tag;
  std::size_t n_cols = 0;
  if (!(in >> tag) || tag != "wimg") {
    bad_format(path, "unknown image format (expected 'wimg')");
  }
  if (!(in >> n_cols) || n_cols == 0) bad_format(path, "bad column count");
  // Rows on disk run top to bottom.
  std::vector<std::vector<int>> rows(3, std::vector<int>(n_cols));
  for (auto& row : rows) {
    for (auto& bit : row) bit = read_bit(in, path);
  }
  Image img;
  img.columns.resize(n_cols);
  for (std::size_t c = 0; c < n_cols; ++c) {
    img.columns[c] = Frame{{static_cast<std::uint8_t>(rows[2][c]),
                            static_cast<std::uint8_t>(rows[1][c]),
                            static_cast<std::uint8_t>(rows[0][c])}};
  }
  return img;
}

void write_image(const std::filesystem::path& path, const Image& img,
                 std::string_view run_info) {
  std::ofstream out = open_out(path);
  out << "wimg " << img.n_cols() << "\n";
  for (int row = 2; row >= 0; --row) {  // top row first
    for (std::size_t c = 0; c < img.n_cols(); ++c) {
      if (c) out << ' ';
      out << static_cast<int>(img.columns[c].bits[static_cast<std::size_t>(row)]);
    }
    out << "\n";
  }
  append_run_info(out, run_info);
}

WindowSeq read_window_seq(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string tag;
  std::size_t n_windows = 0;
  int n_in = 0, n_out = 0;
  if (!(in >> tag) || tag != "wset") {
    bad_format(path, "unknown dataset format (expected 'wset')");
  }
  if (!(in >> n_windows >> n_in >> n_out)) bad_format(path, "bad header");
  if (n_in != 6 || n_out != 2) {
    bad_format(path, "unsupported window dimensions (need 6 inputs, 2 targets)");
  }
  WindowSeq seq;
  seq.n_cols = n_windows + 1;
  seq.windows.resize(n_windows);
  seq.targets.resize(n_windows);
  for (std::size_t t = 0; t < n_windows; ++t) {
    for (int i = 0; i < 6; ++i) {
      seq.windows[t].x[static_cast<std::size_t>(i)] =
          static_cast<std::uint8_t>(read_bit(in, path));
    }
    std::string sep;
    if (!(in >> sep) || sep != "|") bad_format(path, "expected '|' separator");
    for (int i = 0; i < 2; ++i) {
      seq.targets[t][static_cast<std::size_t>(i)] =
          static_cast<std::uint8_t>(read_bit(in, path));
    }
  }
  return seq;
}

void write_window_seq(const std::filesystem::path& path, const WindowSeq& seq,
                      std::string_view run_info) {
  std::ofstream out = open_out(path);
  out << "wset " << seq.windows.size() << " 6 2\n";
  for (std::size_t t = 0; t < seq.windows.size(); ++t) {
    for (int i = 0; i < 6; ++i) {
      out << static_cast<int>(seq.windows[t].x[static_cast<std::size_t>(i)])
          << ' ';
    }
    out << '|';
    for (int i = 0; i < 2; ++i) {
      out << ' '
          << static_cast<int>(seq.targets[t][static_cast<std::size_t>(i)]);
    }
    out << "\n";
  }
  append_run_info(out, run_info);
}

namespace {

template <typename State, typename Parse>
std::vector<State> read_chain_impl(const std::filesystem::path& path,
                                   std::string_view variant, Parse parse) {
  std::ifstream in = open_in(path);
  std::string tag, var;
  std::size_t n = 0;
  if (!(in >> tag) || tag != "wchain") {
    throw IoError(path.string() + ": unknown chain format (expected 'wchain')");
  }
  if (!(in >> var >> n) || var != variant) {
    throw IoError(path.string() + ": expected a '" + std::string(variant) +
                  "' chain");
  }
  std::vector<State> states;
  states.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string token;
    if (!(in >> token)) {
      throw IoError(path.string() + ": truncated chain file");
    }
    auto s = parse(token);
    if (!s) throw IoError(path.string() + ": unknown state token " + token);
    states.push_back(*s);
  }
  return states;
}

template <typename State>
void write_chain_impl(const std::filesystem::path& path,
                      std::span<const State> states, std::string_view variant,
                      std::string_view run_info) {
  std::ofstream out = open_out(path);
  out << "wchain " << variant << ' ' << states.size() << "\n";
  for (State s : states) out << to_token(s) << "\n";
  append_run_info(out, run_info);
}

}  // namespace

std::vector<BasicState> read_basic_chain(const std::filesystem::path& path) {
  return read_chain_impl<BasicState>(path, "basic", parse_basic_state);
}

std::vector<PreciseState> read_precise_chain(
    const std::filesystem::path& path) {
  return read_chain_impl<PreciseState>(path, "precise", parse_precise_state);
}

void write_chain(const std::filesystem::path& path,
                 std::span<const BasicState> states,
                 std::string_view run_info) {
  write_chain_impl(path, states, "basic", run_info);
}

void write_chain(const std::filesystem::path& path,
                 std::span<const PreciseState> states,
                 std::string_view run_info) {
  write_chain_impl(path, states, "precise", run_info);
}

namespace {

json matrix_to_json(const MatrixXd& M, bool integral) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (integral) {
        arr.push_back(static_cast<long long>(M(i, j)));
      } else {
        arr.push_back(M(i, j));
      }
    }
  }
  return arr;
}

json vector_to_json(const VectorXd& v, bool integral) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (integral) {
      arr.push_back(static_cast<long long>(v[i]));
    } else {
      arr.push_back(v[i]);
    }
  }
  return arr;
}

MatrixXd matrix_from_json(const json& arr, Eigen::Index rows,
                          Eigen::Index cols, const std::string& name) {
  if (!arr.is_array() || static_cast<Eigen::Index>(arr.size()) != rows * cols) {
    throw IoError("field " + name + " has the wrong number of entries");
  }
  MatrixXd M(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      M(i, j) = arr[static_cast<std::size_t>(k++)].get<double>();
    }
  }
  return M;
}

VectorXd vector_from_json(const json& arr, Eigen::Index size,
                          const std::string& name) {
  if (!arr.is_array() || static_cast<Eigen::Index>(arr.size()) != size) {
    throw IoError("field " + name + " has the wrong number of entries");
  }
  VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    v[i] = arr[static_cast<std::size_t>(i)].get<double>();
  }
  return v;
}

json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return doc;
}

void check_format(const json& doc, const std::filesystem::path& path,
                  std::string_view format) {
  if (!doc.is_object() || doc.value("format", "") != format ||
      doc.value("version", 0) != 1) {
    throw IoError(path.string() + ": not a " + std::string(format) +
                  " v1 file");
  }
}

}  // namespace

DeductronParams read_params(const std::filesystem::path& path) {
  const json doc = parse_json_file(path);
  check_format(doc, path, "deductron-params");
  DeductronParams p;
  try {
    p.n_in = doc.at("n_in").get<int>();
    p.n_memory = doc.at("n_memory").get<int>();
    p.n_out = doc.at("n_out").get<int>();
    const std::string mode = doc.at("mode").get<std::string>();
    if (mode == "quantized") {
      p.mode = ParamMode::quantized;
    } else if (mode == "continuous") {
      p.mode = ParamMode::continuous;
    } else {
      throw IoError(path.string() + ": unknown mode " + mode);
    }
    p.W1 = matrix_from_json(doc.at("W1"), 2 * p.n_memory, p.n_in, "W1");
    p.b1 = vector_from_json(doc.at("b1"), 2 * p.n_memory, "b1");
    p.W2 = matrix_from_json(doc.at("W2"), p.n_out, p.n_memory, "W2");
    p.b2 = vector_from_json(doc.at("b2"), p.n_out, "b2");
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  p.validate();
  return p;
}

void write_params(const std::filesystem::path& path,
                  const DeductronParams& params, std::string_view run_info) {
  params.validate();
  const bool integral = params.mode == ParamMode::quantized;
  json doc;
  doc["format"] = "deductron-params";
  doc["version"] = 1;
  doc["mode"] = integral ? "quantized" : "continuous";
  doc["n_in"] = params.n_in;
  doc["n_memory"] = params.n_memory;
  doc["n_out"] = params.n_out;
  doc["W1"] = matrix_to_json(params.W1, integral);
  doc["b1"] = vector_to_json(params.b1, integral);
  doc["W2"] = matrix_to_json(params.W2, integral);
  doc["b2"] = vector_to_json(params.b2, integral);
  if (!run_info.empty()) doc["run"] = run_info;
  std::ofstream out = open_out(path);
  out << doc.dump(2) << "\n";
}

LstmParams read_lstm_params(const std::filesystem::path& path) {
  const json doc = parse_json_file(path);
  check_format(doc, path, "lstm-params");
  LstmParams p;
  try {
    p.n_in = doc.at("n_in").get<int>();
    p.n_cell = doc.at("n_cell").get<int>();
    p.W_f = matrix_from_json(doc.at("W_f"), p.n_cell, p.n_in, "W_f");
    p.W_i = matrix_from_json(doc.at("W_i"), p.n_cell, p.n_in, "W_i");
    p.W_o = matrix_from_json(doc.at("W_o"), p.n_cell, p.n_in, "W_o");
    p.W_c = matrix_from_json(doc.at("W_c"), p.n_cell, p.n_in, "W_c");
    p.U_f = matrix_from_json(doc.at("U_f"), p.n_cell, p.n_cell, "U_f");
    p.U_i = matrix_from_json(doc.at("U_i"), p.n_cell, p.n_cell, "U_i");
    p.U_o = matrix_from_json(doc.at("U_o"), p.n_cell, p.n_cell, "U_o");
    p.b_f = vector_from_json(doc.at("b_f"), p.n_cell, "b_f");
    p.b_i = vector_from_json(doc.at("b_i"), p.n_cell, "b_i");
    p.b_o = vector_from_json(doc.at("b_o"), p.n_cell, "b_o");
    p.b_c = vector_from_json(doc.at("b_c"), p.n_cell, "b_c");
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  p.validate();
  return p;
}

void write_lstm_params(const std::filesystem::path& path,
                       const LstmParams& params, std::string_view run_info) {
  params.validate();
  json doc;
  doc["format"] = "lstm-params";
  doc["version"] = 1;
  doc["n_in"] = params.n_in;
  doc["n_cell"] = params.n_cell;
  doc["W_f"] = matrix_to_json(params.W_f, false);
  doc["W_i"] = matrix_to_json(params.W_i, false);
  doc["W_o"] = matrix_to_json(params.W_o, false);
  doc["W_c"] = matrix_to_json(params.W_c, false);
  doc["U_f"] = matrix_to_json(params.U_f, false);
  doc["U_i"] = matrix_to_json(params.U_i, false);
  doc["U_o"] = matrix_to_json(params.U_o, false);
  doc["b_f"] = vector_to_json(params.b_f, false);
  doc["b_i"] = vector_to_json(params.b_i, false);
  doc["b_o"] = vector_to_json(params.b_o, false);
  doc["b_c"] = vector_to_json(params.b_c, false);
  if (!run_info.empty()) doc["run"] = run_info;
  std::ofstream out = open_out(path);
  out << doc.dump(2) << "\n";
}

}  // namespace deductron
