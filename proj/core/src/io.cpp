#include "fastdeblur/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fastdeblur/errors.hpp"

namespace fastdeblur::io {
namespace {

std::string slurp(const std::filesystem::path& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double parse_double(const std::string& token, const std::filesystem::path& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw FormatError("");
    return v;
  } catch (...) {
    throw FormatError(path.string() + ": not a number: '" + token + "'");
  }
}

} // namespace

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw FormatError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::vector<double> read_signal(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::vector<double> v;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    v.push_back(parse_double(line.substr(start), path));
  }
  if (v.size() < 5)
    throw FormatError(path.string() + ": signal needs at least 5 values");
  for (double x : v)
    if (!std::isfinite(x))
      throw FormatError(path.string() + ": signal values must be finite");
  return v;
}

void write_signal(const std::filesystem::path& path, std::span<const double> v,
                  const std::string& header) {
  std::string out;
  if (!header.empty()) out += "# " + header + "\n";
  for (double x : v) {
    out += format_double(x);
    out += '\n';
  }
  atomic_write(path, out);
}

namespace {

// pulls the next whitespace/comment-delimited PGM header token
std::string next_pgm_token(const std::string& data, std::size_t& pos) {
  for (;;) {
    while (pos < data.size() && std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
    if (pos < data.size() && data[pos] == '#') {
      while (pos < data.size() && data[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  std::size_t start = pos;
  while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
  if (start == pos) throw FormatError("pgm: truncated header");
  return data.substr(start, pos - start);
}

int parse_pgm_int(const std::string& data, std::size_t& pos) {
  const std::string tok = next_pgm_token(data, pos);
  int v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw FormatError("pgm: bad integer '" + tok + "'");
  return v;
}

} // namespace

Image read_pgm(const std::filesystem::path& path) {
  const std::string data = slurp(path, /*binary=*/true);
  std::size_t pos = 0;
  const std::string magic = next_pgm_token(data, pos);
  if (magic != "P2" && magic != "P5")
    throw FormatError(path.string() + ": not a P2/P5 pgm file");
  Image img;
  img.cols = parse_pgm_int(data, pos);
  img.rows = parse_pgm_int(data, pos);
  img.maxval = parse_pgm_int(data, pos);
  if (img.rows < 5 || img.cols < 5)
    throw FormatError(path.string() + ": image must be at least 5x5");
  if (img.maxval < 1 || img.maxval > 65535)
    throw FormatError(path.string() + ": maxval must be in [1, 65535]");
  const std::size_t count =
      static_cast<std::size_t>(img.rows) * static_cast<std::size_t>(img.cols);
  img.pixels.resize(count);

  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      const int v = parse_pgm_int(data, pos);
      if (v < 0 || v > img.maxval)
        throw FormatError(path.string() + ": sample out of range");
      img.pixels[i] = static_cast<double>(v) / img.maxval;
    }
  } else {
    ++pos; // exactly one whitespace byte after maxval
    const int bytes = img.maxval > 255 ? 2 : 1;
    if (pos + count * static_cast<std::size_t>(bytes) > data.size())
      throw FormatError(path.string() + ": truncated pixel data");
    for (std::size_t i = 0; i < count; ++i) {
      int v;
      if (bytes == 1) {
        v = static_cast<unsigned char>(data[pos + i]);
      } else {
        v = (static_cast<unsigned char>(data[pos + 2 * i]) << 8) |
            static_cast<unsigned char>(data[pos + 2 * i + 1]);
      }
      if (v > img.maxval) throw FormatError(path.string() + ": sample out of range");
      img.pixels[i] = static_cast<double>(v) / img.maxval;
    }
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const Image& img) {
  if (img.rows < 1 || img.cols < 1 ||
      img.pixels.size() != static_cast<std::size_t>(img.rows) * img.cols)
    throw DimensionError("write_pgm: inconsistent image dimensions");
  if (img.maxval < 1 || img.maxval > 65535)
    throw ParameterError("write_pgm: maxval must be in [1, 65535]");
  std::string out = "P5\n" + std::to_string(img.cols) + " " +
                    std::to_string(img.rows) + "\n" + std::to_string(img.maxval) +
                    "\n";
  const int bytes = img.maxval > 255 ? 2 : 1;
  out.reserve(out.size() + img.pixels.size() * static_cast<std::size_t>(bytes));
  for (double p : img.pixels) {
    const double clamped = std::min(1.0, std::max(0.0, p));
    const int v = static_cast<int>(std::floor(clamped * img.maxval + 0.5));
    if (bytes == 1) {
      out += static_cast<char>(v);
    } else {
      out += static_cast<char>((v >> 8) & 0xFF);
      out += static_cast<char>(v & 0xFF);
    }
  }
  atomic_write(path, out);
}

PsfFile read_psf_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  PsfFile file;
  int crow = 0, ccol = 0;
  std::string line;
  // first non-comment line: rows cols center_row center_col
  while (std::getline(in, line)) {
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream head(line);
    if (!(head >> file.rows >> file.cols >> crow >> ccol))
      throw FormatError(path.string() + ": psf header must be 'rows cols center_row center_col'");
    break;
  }
  if (file.rows < 1 || file.cols < 1)
    throw FormatError(path.string() + ": psf dimensions must be positive");
  if (file.rows % 2 == 0 || file.cols % 2 == 0)
    throw FormatError(path.string() + ": psf dimensions must be odd");
  if (crow != (file.rows + 1) / 2 || ccol != (file.cols + 1) / 2)
    throw FormatError(path.string() + ": psf center must be the middle entry");
  const std::size_t count =
      static_cast<std::size_t>(file.rows) * static_cast<std::size_t>(file.cols);
  file.weights.reserve(count);
  std::string token;
  while (in >> token) {
    if (token[0] == '#') {
      std::getline(in, line);
      continue;
    }
    file.weights.push_back(parse_double(token, path));
  }
  if (file.weights.size() != count)
    throw FormatError(path.string() + ": expected " + std::to_string(count) +
                      " psf weights, got " + std::to_string(file.weights.size()));
  return file;
}

Psf to_psf(const PsfFile& file, bool normalize) {
  if (!file.is_1d())
    throw ValidationError("psf file is 2D; a 1D mask has one row or one column");
  return make_psf(file.weights, normalize);
}

Psf2D to_psf2d(const PsfFile& file, bool normalize) {
  if (file.is_1d()) {
    // promote a 1D mask to a separable 2D mask only when explicitly 1x1
    if (file.rows == 1 && file.cols == 1)
      return make_psf2d(file.weights, 1, 1, normalize);
    throw ValidationError("psf file is 1D; pass a rows x cols mask for images");
  }
  return make_psf2d(file.weights, file.rows, file.cols, normalize);
}

} // namespace fastdeblur::io
