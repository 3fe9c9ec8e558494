#ifndef FASTDEBLUR_IO_HPP
#define FASTDEBLUR_IO_HPP

#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fastdeblur/multidim.hpp"
#include "fastdeblur/psf.hpp"

namespace fastdeblur::io {

/// CSV signal: one value per line, '#'-prefixed header lines allowed.
/// Signals must hold at least 5 finite values.
std::vector<double> read_signal(const std::filesystem::path& path);
/// Writes with shortest round-trip decimal formatting; atomic (temp+rename).
void write_signal(const std::filesystem::path& path, std::span<const double> v,
                  const std::string& header = "");

/// Grayscale image in [0,1]; at least 5x5.
struct Image {
  int rows = 0, cols = 0;
  int maxval = 255; // source maxval, reused on write
  std::vector<double> pixels; // row-major
};

/// PGM, P2 (ASCII) or P5 (binary, 1 or 2 bytes big-endian), maxval <= 65535.
Image read_pgm(const std::filesystem::path& path);
/// Denormalizes with round-half-up; atomic write. P5 output.
void write_pgm(const std::filesystem::path& path, const Image& img);

/// PSF file: "rows cols center_row center_col" (1-based center), then
/// row-major weights. rows and cols must be odd with the center in the
/// middle. A single row or column loads as a 1D mask.
struct PsfFile {
  int rows = 0, cols = 0;
  std::vector<double> weights;
  bool is_1d() const { return rows == 1 || cols == 1; }
};

PsfFile read_psf_file(const std::filesystem::path& path);
Psf to_psf(const PsfFile& file, bool normalize);
Psf2D to_psf2d(const PsfFile& file, bool normalize);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

/// Writes content to a temporary sibling and renames it over path.
void atomic_write(const std::filesystem::path& path, const std::string& content);

} // namespace fastdeblur::io

#endif // FASTDEBLUR_IO_HPP
