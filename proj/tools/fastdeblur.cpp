// fastdeblur: blur simulation, spectral restoration, eigenvalue inspection,
// and boundary-condition comparison sweeps over CSV signals and PGM images.
//
// Exit codes: 0 success, 2 validation failure, 3 numerical degeneracy.

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "fastdeblur/errors.hpp"
#include "fastdeblur/io.hpp"
#include "fastdeblur/multidim.hpp"
#include "fastdeblur/operators.hpp"
#include "fastdeblur/pipeline.hpp"
#include "fastdeblur/regularize.hpp"

namespace fd = fastdeblur;
namespace fs = std::filesystem;

namespace {

struct GridOpts {
  double mu_lo = 1e-12;
  double mu_hi = 10.0;
  int mu_count = 200;

  fd::GcvSearch search() const { return {mu_lo, mu_hi, mu_count}; }
};

void add_grid_opts(CLI::App* cmd, GridOpts& g) {
  cmd->add_option("--mu-lo", g.mu_lo, "lower end of the mu grid")
      ->capture_default_str();
  cmd->add_option("--mu-hi", g.mu_hi, "upper end of the mu grid")
      ->capture_default_str();
  cmd->add_option("--mu-count", g.mu_count, "number of log-spaced mu samples")
      ->capture_default_str();
}

fd::BoundaryCondition parse_bc_or_throw(const std::string& name) {
  const auto bc = fd::parse_boundary_condition(name);
  if (!bc)
    throw fd::ValidationError(
        "unknown boundary condition '" + name +
        "' (periodic, reflective, antireflective, hoc-cosine, hoc-fourier)");
  return *bc;
}

fd::SmootherKind parse_reg_or_throw(const std::string& name) {
  if (name == "identity") return fd::SmootherKind::identity;
  if (name == "laplacian") return fd::SmootherKind::laplacian;
  throw fd::ValidationError("unknown smoother '" + name +
                            "' (identity, laplacian)");
}

// 1D signal or row-major image, dispatched on extension or forced by --dims.
struct GridData {
  std::vector<double> values;
  int rows = 0, cols = 0; // rows == 1 for signals
  bool is_image = false;
  int pgm_maxval = 255;
  bool from_pgm = false;
};

std::optional<std::pair<int, int>> parse_dims(const std::string& dims) {
  if (dims.empty()) return std::nullopt;
  const auto x = dims.find('x');
  if (x == std::string::npos)
    throw fd::ValidationError("--dims must look like ROWSxCOLS");
  try {
    const int r = std::stoi(dims.substr(0, x));
    const int c = std::stoi(dims.substr(x + 1));
    if (r < 1 || c < 1) throw fd::ValidationError("--dims must be positive");
    return std::make_pair(r, c);
  } catch (const fd::Error&) {
    throw;
  } catch (...) {
    throw fd::ValidationError("--dims must look like ROWSxCOLS");
  }
}

GridData load_grid(const fs::path& path, const std::string& dims) {
  GridData data;
  const auto forced = parse_dims(dims);
  if (path.extension() == ".pgm") {
    const fd::io::Image img = fd::io::read_pgm(path);
    data.values = img.pixels;
    data.rows = img.rows;
    data.cols = img.cols;
    data.is_image = true;
    data.pgm_maxval = img.maxval;
    data.from_pgm = true;
    return data;
  }
  data.values = fd::io::read_signal(path);
  if (forced) {
    const auto [r, c] = *forced;
    if (static_cast<int>(data.values.size()) != r * c)
      throw fd::ValidationError("--dims does not match the value count");
    data.rows = r;
    data.cols = c;
    data.is_image = true;
  } else {
    data.rows = 1;
    data.cols = static_cast<int>(data.values.size());
  }
  return data;
}

void write_grid(const fs::path& path, const GridData& shape,
                const std::vector<double>& values, int rows, int cols) {
  if (shape.from_pgm) {
    fd::io::Image img;
    img.rows = rows;
    img.cols = cols;
    img.maxval = shape.pgm_maxval;
    img.pixels = values;
    fd::io::write_pgm(path, img);
  } else {
    fd::io::write_signal(path, values);
  }
}

int run_eigs(const std::string& psf_path, int n, int n2, const std::string& bc_name,
             const std::string& out, bool normalize) {
  const auto bc = parse_bc_or_throw(bc_name);
  const auto file = fd::io::read_psf_file(psf_path);
  std::string csv = "index,real,imag\n";
  if (file.is_1d()) {
    const fd::Psf psf = fd::io::to_psf(file, normalize);
    const fd::BlurOperator op = fd::build_operator(psf, n, bc);
    std::visit(
        [&](const auto& o) {
          for (std::size_t i = 0; i < o.eigenvalues.size(); ++i) {
            const fd::cplx d(o.eigenvalues[i]);
            csv += std::to_string(i + 1) + "," + fd::io::format_double(d.real()) +
                   "," + fd::io::format_double(d.imag()) + "\n";
          }
        },
        op);
  } else {
    const fd::Psf2D psf = fd::io::to_psf2d(file, normalize);
    const int m2 = n2 > 0 ? n2 : n;
    const fd::BlurOperator2D op = fd::build_operator_2d(psf, n, m2, bc);
    std::visit(
        [&](const auto& o) {
          for (std::size_t i = 0; i < o.eigenvalues.size(); ++i) {
            const fd::cplx d(o.eigenvalues[i]);
            csv += std::to_string(i + 1) + "," + fd::io::format_double(d.real()) +
                   "," + fd::io::format_double(d.imag()) + "\n";
          }
        },
        op);
  }
  fd::io::atomic_write(out, csv);
  return 0;
}

int run_blur(const std::string& input, const std::string& psf_path,
             const std::string& bc_name, double noise, std::uint64_t seed,
             const std::string& output, bool normalize, const std::string& dims) {
  if (noise < 0) throw fd::ValidationError("--noise must be nonnegative");
  const GridData data = load_grid(input, dims);
  const auto file = fd::io::read_psf_file(psf_path);

  std::vector<double> blurred;
  int out_rows = data.rows, out_cols = data.cols;
  if (!data.is_image) {
    const fd::Psf psf = fd::io::to_psf(file, normalize);
    if (bc_name == "true-extended") {
      blurred = fd::convolve_valid(data.values, psf);
      out_cols = static_cast<int>(blurred.size());
    } else {
      const auto op = fd::build_operator(psf, data.cols, parse_bc_or_throw(bc_name));
      blurred = fd::blur_apply(op, data.values);
    }
  } else {
    const fd::Psf2D psf = fd::io::to_psf2d(file, normalize);
    if (bc_name == "true-extended") {
      blurred = fd::convolve_valid_2d(data.values, data.rows, data.cols, psf);
      out_rows = data.rows - 2 * psf.m1;
      out_cols = data.cols - 2 * psf.m2;
    } else {
      const auto op = fd::build_operator_2d(psf, data.rows, data.cols,
                                            parse_bc_or_throw(bc_name));
      blurred = fd::blur_apply_2d(op, data.values);
    }
  }
  blurred = fd::add_noise(blurred, noise, seed);
  write_grid(output, data, blurred, out_rows, out_cols);
  return 0;
}

int run_deblur(const std::string& input, const std::string& psf_path,
               const std::string& bc_name, const std::string& reg,
               const std::string& mu_arg, const std::string& truth_path,
               const std::string& output, const std::string& curves,
               bool normalize, const std::string& dims, const GridOpts& grid) {
  const auto bc = parse_bc_or_throw(bc_name);
  const auto smoother = parse_reg_or_throw(reg);
  const GridData data = load_grid(input, dims);
  const auto file = fd::io::read_psf_file(psf_path);

  fd::MuChoice mu;
  if (mu_arg == "gcv") {
    mu.use_gcv = true;
  } else {
    try {
      mu.fixed_mu = std::stod(mu_arg);
    } catch (...) {
      throw fd::ValidationError("--mu must be a positive number or 'gcv'");
    }
    if (!(mu.fixed_mu > 0)) throw fd::ValidationError("--mu must be positive");
  }

  std::vector<double> truth;
  if (!truth_path.empty()) {
    const GridData t = load_grid(truth_path, dims);
    if (t.values.size() != data.values.size())
      throw fd::ValidationError("--truth dimensions do not match the input");
    truth = t.values;
  }

  const bool want_curve = !curves.empty();
  fd::RestorationReport report;
  std::function<std::vector<double>(double)> solve_at;
  if (!data.is_image) {
    const fd::Psf psf = fd::io::to_psf(file, normalize);
    const auto op = fd::build_operator(psf, data.cols, bc);
    const auto L = fd::smoothing_eigenvalues(smoother, op);
    report = fd::deblur(op, L, data.values, mu, truth, want_curve, grid.search());
    solve_at = [op, L, values = data.values](double m) {
      return fd::tikhonov_solve(op, L, values, m);
    };
  } else {
    const fd::Psf2D psf = fd::io::to_psf2d(file, normalize);
    const auto op = fd::build_operator_2d(psf, data.rows, data.cols, bc);
    const auto L = fd::smoothing_eigenvalues_2d(smoother, op);
    report =
        fd::deblur_2d(op, L, data.values, mu, truth, want_curve, grid.search());
    solve_at = [op, L, values = data.values](double m) {
      return fd::tikhonov_solve_2d(op, L, values, m);
    };
  }

  write_grid(output, data, report.restored, data.rows, data.cols);
  std::cout << "mu=" << fd::io::format_double(report.mu_used) << " source="
            << (report.mu_source == fd::MuSource::gcv ? "gcv" : "fixed") << "\n";
  if (report.rre) std::cout << "rre=" << fd::io::format_double(*report.rre) << "\n";
  if (fd::is_complex_basis(bc)) {
    double fnorm = 0.0;
    for (double x : report.restored) fnorm += x * x;
    fnorm = std::sqrt(fnorm);
    std::cout << "imag_residue=" << fd::io::format_double(report.imag_residue);
    if (report.imag_residue > 1e-6 * fnorm) std::cout << " (above 1e-6 threshold)";
    std::cout << "\n";
  }

  if (want_curve) {
    std::string csv = truth.empty() ? "mu,G\n" : "mu,G,rre\n";
    for (const auto& [m, g] : report.gcv_curve) {
      csv += fd::io::format_double(m) + "," + fd::io::format_double(g);
      if (!truth.empty())
        csv += "," + fd::io::format_double(fd::rre(truth, solve_at(m)));
      csv += "\n";
    }
    fd::io::atomic_write(curves, csv);
  }
  return 0;
}

int run_compare(const std::string& input, const std::string& psf_path, double noise,
                std::uint64_t seed, const std::string& bc_list,
                const std::string& reg, const std::string& out, bool normalize,
                const std::string& dims, const GridOpts& grid) {
  const auto smoother = parse_reg_or_throw(reg);
  const GridData data = load_grid(input, dims);
  const auto file = fd::io::read_psf_file(psf_path);

  std::vector<fd::BoundaryCondition> bcs;
  std::string token;
  for (char c : bc_list + ",") {
    if (c == ',') {
      if (!token.empty()) bcs.push_back(parse_bc_or_throw(token));
      token.clear();
    } else {
      token += c;
    }
  }
  if (bcs.empty()) throw fd::ValidationError("--bc-list must name at least one bc");

  std::string csv = "bc,min_rre,mu_opt,mu_gcv,rre_gcv\n";
  if (!data.is_image) {
    const fd::Psf psf = fd::io::to_psf(file, normalize);
    const auto truth_full = data.values;
    const std::vector<double> truth(truth_full.begin() + psf.m,
                                    truth_full.end() - psf.m);
    auto g = fd::convolve_valid(truth_full, psf);
    g = fd::add_noise(g, noise, seed);
    for (const auto bc : bcs) {
      const auto op = fd::build_operator(psf, static_cast<int>(g.size()), bc);
      const auto L = fd::smoothing_eigenvalues(smoother, op);
      const auto sweep = fd::sweep_mu(op, L, g, truth, grid.search());
      csv += std::string(fd::to_string(bc)) + "," +
             fd::io::format_double(sweep.min_rre) + "," +
             fd::io::format_double(sweep.mu_opt) + "," +
             fd::io::format_double(sweep.mu_gcv) + "," +
             fd::io::format_double(sweep.rre_gcv) + "\n";
    }
  } else {
    const fd::Psf2D psf = fd::io::to_psf2d(file, normalize);
    const int n1 = data.rows - 2 * psf.m1;
    const int n2 = data.cols - 2 * psf.m2;
    if (n1 < 5 || n2 < 5)
      throw fd::ValidationError("extended image too small for the psf support");
    std::vector<double> truth(static_cast<std::size_t>(n1) * n2);
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j)
        truth[static_cast<std::size_t>(i) * n2 + static_cast<std::size_t>(j)] =
            data.values[static_cast<std::size_t>(i + psf.m1) * data.cols +
                        static_cast<std::size_t>(j + psf.m2)];
    auto g = fd::convolve_valid_2d(data.values, data.rows, data.cols, psf);
    g = fd::add_noise(g, noise, seed);
    for (const auto bc : bcs) {
      const auto op = fd::build_operator_2d(psf, n1, n2, bc);
      const auto L = fd::smoothing_eigenvalues_2d(smoother, op);
      const auto sweep = fd::sweep_mu_2d(op, L, g, truth, grid.search());
      csv += std::string(fd::to_string(bc)) + "," +
             fd::io::format_double(sweep.min_rre) + "," +
             fd::io::format_double(sweep.mu_opt) + "," +
             fd::io::format_double(sweep.mu_gcv) + "," +
             fd::io::format_double(sweep.rre_gcv) + "\n";
    }
  }
  fd::io::atomic_write(out, csv);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"fast boundary-corrected deblurring toolkit"};
  app.require_subcommand(1);

  bool normalize = false;
  app.add_flag("--normalize", normalize,
               "rescale psf weights to unit sum instead of rejecting them");

  // eigs
  auto* eigs = app.add_subcommand("eigs", "write operator eigenvalues as CSV");
  std::string e_psf, e_bc, e_out;
  int e_n = 0, e_n2 = 0;
  eigs->add_option("--psf", e_psf, "psf file")->required();
  eigs->add_option("--n", e_n, "operator order (rows for 2D)")->required();
  eigs->add_option("--n2", e_n2, "columns for 2D (defaults to --n)");
  eigs->add_option("--bc", e_bc, "boundary condition")->required();
  eigs->add_option("--out", e_out, "output CSV path")->required();

  // blur
  auto* blur = app.add_subcommand("blur", "blur a signal or image");
  std::string b_in, b_psf, b_bc = "true-extended", b_out, b_dims;
  double b_noise = 0.0;
  std::uint64_t b_seed = 0;
  blur->add_option("--input", b_in, "input signal (.csv) or image (.pgm)")
      ->required();
  blur->add_option("--psf", b_psf, "psf file")->required();
  blur->add_option("--bc", b_bc,
                   "boundary condition, or 'true-extended' to convolve an "
                   "extended scene and crop the field of view")
      ->capture_default_str();
  blur->add_option("--noise", b_noise, "relative gaussian noise level")
      ->capture_default_str();
  blur->add_option("--seed", b_seed, "noise seed")->capture_default_str();
  blur->add_option("--output", b_out, "output path")->required();
  blur->add_option("--dims", b_dims, "treat CSV input as ROWSxCOLS image");

  // deblur
  auto* deblur = app.add_subcommand("deblur", "restore a blurred signal or image");
  std::string d_in, d_psf, d_bc, d_reg = "identity", d_mu, d_truth, d_out, d_curves,
              d_dims;
  GridOpts d_grid;
  deblur->add_option("--input", d_in, "observed signal or image")->required();
  deblur->add_option("--psf", d_psf, "psf file")->required();
  deblur->add_option("--bc", d_bc, "boundary condition")->required();
  deblur->add_option("--reg", d_reg, "smoother: identity or laplacian")
      ->capture_default_str();
  deblur->add_option("--mu", d_mu, "regularization parameter or 'gcv'")
      ->required();
  deblur->add_option("--truth", d_truth, "ground truth for RRE reporting");
  deblur->add_option("--output", d_out, "restored output path")->required();
  deblur->add_option("--curves", d_curves, "write mu,G[,rre] samples as CSV");
  deblur->add_option("--dims", d_dims, "treat CSV input as ROWSxCOLS image");
  add_grid_opts(deblur, d_grid);

  // compare
  auto* compare = app.add_subcommand(
      "compare", "sweep mu for several boundary conditions against the truth");
  std::string c_in, c_psf, c_bcs, c_reg = "identity", c_out, c_dims;
  double c_noise = 0.0;
  std::uint64_t c_seed = 0;
  GridOpts c_grid;
  compare->add_option("--input", c_in, "extended true scene (.csv or .pgm)")
      ->required();
  compare->add_option("--psf", c_psf, "psf file")->required();
  compare->add_option("--noise", c_noise, "relative gaussian noise level")
      ->capture_default_str();
  compare->add_option("--seed", c_seed, "noise seed")->capture_default_str();
  compare->add_option("--bc-list", c_bcs, "comma-separated boundary conditions")
      ->required();
  compare->add_option("--reg", c_reg, "smoother: identity or laplacian")
      ->capture_default_str();
  compare->add_option("--out", c_out, "output table CSV")->required();
  compare->add_option("--dims", c_dims, "treat CSV input as ROWSxCOLS image");
  add_grid_opts(compare, c_grid);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*eigs) return run_eigs(e_psf, e_n, e_n2, e_bc, e_out, normalize);
    if (*blur)
      return run_blur(b_in, b_psf, b_bc, b_noise, b_seed, b_out, normalize, b_dims);
    if (*deblur)
      return run_deblur(d_in, d_psf, d_bc, d_reg, d_mu, d_truth, d_out, d_curves,
                        normalize, d_dims, d_grid);
    if (*compare)
      return run_compare(c_in, c_psf, c_noise, c_seed, c_bcs, c_reg, c_out,
                         normalize, c_dims, c_grid);
  } catch (const fd::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fd::DegenerateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
