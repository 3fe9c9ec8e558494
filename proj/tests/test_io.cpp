#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "fastdeblur/errors.hpp"
#include "fastdeblur/io.hpp"
#include "test_util.hpp"

using namespace fastdeblur;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("fastdeblur_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("signal CSV round-trip is lossless at full double precision") {
  TempDir dir;
  const fs::path p = dir.path / "sig.csv";
  std::vector<double> v{1.0,
                        -2.5,
                        3.141592653589793,
                        1e-300,
                        6.02214076e23,
                        -0.1,
                        123456789.123456789};
  io::write_signal(p, v, "test signal");
  const auto back = io::read_signal(p);
  REQUIRE(back.size() == v.size());
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(back[i] == v[i]); // bitwise
}

TEST_CASE("format_double round-trips random doubles bitwise") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) {
    const double x = dist(rng) * std::pow(10.0, (i % 40) - 20);
    const std::string s = io::format_double(x);
    CHECK(std::stod(s) == x);
  }
}

TEST_CASE("signal validation") {
  TempDir dir;
  const fs::path p = dir.path / "bad.csv";
  {
    std::ofstream out(p);
    out << "# heading\n1.0\n2.0\n3.0\n";
  }
  CHECK_THROWS_AS((void)io::read_signal(p), FormatError); // fewer than 5 values
  {
    std::ofstream out(p);
    out << "1\n2\n3\npotato\n5\n6\n";
  }
  CHECK_THROWS_AS((void)io::read_signal(p), FormatError);
  CHECK_THROWS_AS((void)io::read_signal(dir.path / "missing.csv"), FormatError);
}

TEST_CASE("pgm round-trip up to quantization") {
  TempDir dir;
  const fs::path p = dir.path / "img.pgm";
  io::Image img;
  img.rows = 6;
  img.cols = 7;
  img.maxval = 255;
  img.pixels.resize(42);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (auto& px : img.pixels) px = dist(rng);

  io::write_pgm(p, img);
  const auto back = io::read_pgm(p);
  CHECK(back.rows == img.rows);
  CHECK(back.cols == img.cols);
  for (std::size_t i = 0; i < img.pixels.size(); ++i)
    CHECK(std::abs(back.pixels[i] - img.pixels[i]) <= 0.5 / 255 + 1e-12);

  // second write/read is exactly stable (quantization is idempotent)
  io::write_pgm(p, back);
  const auto again = io::read_pgm(p);
  for (std::size_t i = 0; i < back.pixels.size(); ++i)
    CHECK(again.pixels[i] == back.pixels[i]);
}

TEST_CASE("pgm 16-bit and P2 parsing") {
  TempDir dir;
  const fs::path p16 = dir.path / "img16.pgm";
  io::Image img;
  img.rows = 5;
  img.cols = 5;
  img.maxval = 65535;
  img.pixels.assign(25, 0.0);
  for (int i = 0; i < 25; ++i) img.pixels[static_cast<std::size_t>(i)] = i / 24.0;
  io::write_pgm(p16, img);
  const auto back = io::read_pgm(p16);
  CHECK(back.maxval == 65535);
  for (std::size_t i = 0; i < img.pixels.size(); ++i)
    CHECK(std::abs(back.pixels[i] - img.pixels[i]) <= 0.5 / 65535 + 1e-12);

  const fs::path p2 = dir.path / "ascii.pgm";
  {
    std::ofstream out(p2);
    out << "P2\n# comment\n5 5\n10\n";
    for (int i = 0; i < 25; ++i) out << (i % 11) << "\n";
  }
  const auto ascii = io::read_pgm(p2);
  CHECK(ascii.rows == 5);
  CHECK(ascii.pixels[3] == doctest::Approx(0.3));
}

TEST_CASE("pgm validation") {
  TempDir dir;
  const fs::path p = dir.path / "bad.pgm";
  {
    std::ofstream out(p);
    out << "P6\n5 5\n255\n";
  }
  CHECK_THROWS_AS((void)io::read_pgm(p), FormatError);
  {
    std::ofstream out(p);
    out << "P2\n3 3\n255\n"; // too small
    for (int i = 0; i < 9; ++i) out << "0\n";
  }
  CHECK_THROWS_AS((void)io::read_pgm(p), FormatError);
}

TEST_CASE("psf file parsing") {
  TempDir dir;
  const fs::path p1 = dir.path / "psf1d.txt";
  {
    std::ofstream out(p1);
    out << "# gaussian-ish\n1 5 1 3\n0.1 0.2 0.4 0.2 0.1\n";
  }
  const auto f1 = io::read_psf_file(p1);
  CHECK(f1.is_1d());
  const Psf psf = io::to_psf(f1, false);
  CHECK(psf.m == 2);
  CHECK(psf.symmetric);

  const fs::path p2 = dir.path / "psf2d.txt";
  {
    std::ofstream out(p2);
    out << "3 3 2 2\n0 0.1 0\n0.1 0.6 0.1\n0 0.1 0\n";
  }
  const auto f2 = io::read_psf_file(p2);
  CHECK_FALSE(f2.is_1d());
  const Psf2D psf2 = io::to_psf2d(f2, false);
  CHECK(psf2.m1 == 1);
  CHECK(psf2.symmetric);

  const fs::path bad = dir.path / "bad.txt";
  {
    std::ofstream out(bad);
    out << "2 3 1 2\n0.5 0.5 0 0 0 0\n"; // even rows
  }
  CHECK_THROWS_AS((void)io::read_psf_file(bad), FormatError);
  {
    std::ofstream out(bad);
    out << "1 5 1 2\n0.1 0.2 0.4 0.2 0.1\n"; // off-center
  }
  CHECK_THROWS_AS((void)io::read_psf_file(bad), FormatError);
  {
    std::ofstream out(bad);
    out << "1 5 1 3\n0.1 0.2 0.4 0.2\n"; // missing weight
  }
  CHECK_THROWS_AS((void)io::read_psf_file(bad), FormatError);
}

TEST_CASE("atomic write leaves no temp file behind") {
  TempDir dir;
  const fs::path p = dir.path / "out.txt";
  io::atomic_write(p, "payload");
  CHECK(fs::exists(p));
  int entries = 0;
  for (const auto& _ : fs::directory_iterator(dir.path)) {
    (void)_;
    ++entries;
  }
  CHECK(entries == 1);
}
