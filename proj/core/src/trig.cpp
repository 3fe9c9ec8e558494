// Fast trigonometric transforms with the exact entry-wise normalizations the
// rest of the library relies on. All kernels reduce to complex FFTs, which
// FFTW computes in O(n log n) for every size (Bluestein for large prime
// factors); the DCT-II/III use the even/odd reordering with a quarter-wave
// twiddle, the DST-I an odd extension of length 2(m+1). Scaling corrections
// from FFTW's unnormalized convention happen here and nowhere else.

#include "fastdeblur/trig.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>

#include <fftw3.h>

#include "fastdeblur/errors.hpp"
#include "trig_detail.hpp"

namespace fastdeblur {
namespace {

constexpr double kPi = std::numbers::pi;

// One cached FFTW plan. The dummy buffers keep valid pointers alive for
// planning; execution always goes through the new-array interface, which is
// thread-safe on a shared plan as long as the arrays differ.
struct PlanEntry {
  fftw_plan plan = nullptr;
  std::vector<cplx> in, out;

  PlanEntry() = default;
  PlanEntry(const PlanEntry&) = delete;
  PlanEntry& operator=(const PlanEntry&) = delete;
  ~PlanEntry() {
    if (plan) fftw_destroy_plan(plan);
  }
};

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

// key: (forward?, n)
std::map<std::pair<int, int>, PlanEntry>& plan_cache() {
  static std::map<std::pair<int, int>, PlanEntry> cache;
  return cache;
}

fftw_plan get_c2c_plan(int n, bool forward) {
  std::lock_guard<std::mutex> lock(plan_mutex());
  const std::pair<int, int> key{forward ? 0 : 1, n};
  auto it = plan_cache().find(key);
  if (it == plan_cache().end()) {
    it = plan_cache().try_emplace(key).first;
    PlanEntry& e = it->second;
    e.in.resize(static_cast<std::size_t>(n));
    e.out.resize(static_cast<std::size_t>(n));
    e.plan = fftw_plan_dft_1d(
        n, reinterpret_cast<fftw_complex*>(e.in.data()),
        reinterpret_cast<fftw_complex*>(e.out.data()),
        forward ? FFTW_FORWARD : FFTW_BACKWARD,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!e.plan) throw Error("fftw: failed to create c2c plan");
  }
  return it->second.plan;
}

// Quarter-wave twiddles e^{-i pi k/(2m)}, k = 0..m-1, cached per size.
std::shared_ptr<const std::vector<cplx>> get_dct_twiddles(std::size_t m) {
  static std::mutex mu;
  static std::map<std::size_t, std::shared_ptr<const std::vector<cplx>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) {
    auto tw = std::make_shared<std::vector<cplx>>(m);
    for (std::size_t k = 0; k < m; ++k) {
      const double ang = -0.5 * kPi * static_cast<double>(k) / static_cast<double>(m);
      (*tw)[k] = cplx{std::cos(ang), std::sin(ang)};
    }
    it = cache.emplace(m, std::move(tw)).first;
  }
  return it->second;
}

void check_nonempty(std::size_t m) {
  if (m == 0) throw ValidationError("transform input must not be empty");
}

// Reusable per-thread scratch, grow-only, never zero-initialized in the
// steady state. Distinct slots keep simultaneous buffers apart.
std::span<cplx> scratch(std::size_t slot, std::size_t m) {
  thread_local std::vector<cplx> pool[2];
  if (pool[slot].size() < m) pool[slot].resize(m);
  return std::span<cplx>(pool[slot].data(), m);
}

} // namespace

namespace detail {

void fft_c2c(std::span<const cplx> in, std::span<cplx> out, bool forward) {
  const int n = static_cast<int>(in.size());
  fftw_plan plan = get_c2c_plan(n, forward);
  // out-of-place c2c preserves its input; FFTW's API is just not const-clean
  fftw_execute_dft(plan,
                   reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

} // namespace detail

std::vector<cplx> fourier_apply(std::span<const cplx> v, Direction direction) {
  check_nonempty(v.size());
  const std::size_t m = v.size();
  std::vector<cplx> out(m);
  detail::fft_c2c(v, out, direction == Direction::forward);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (auto& x : out) x *= scale;
  return out;
}

std::vector<double> cosine_apply(std::span<const double> v, Direction direction) {
  check_nonempty(v.size());
  const std::size_t m = v.size();
  if (m == 1) return {v[0]};
  std::vector<double> out(m);
  std::span<cplx> buf = scratch(0, m);
  std::span<cplx> spec = scratch(1, m);

  const auto twiddles = get_dct_twiddles(m);
  const auto& tw = *twiddles;
  if (direction == Direction::forward) {
    // C v: reorder even samples then reversed odd samples, one FFT, then the
    // quarter-wave twiddle picks out sum_j v_j cos((2j+1) k pi / (2m))
    const std::size_t half = (m + 1) / 2;
    for (std::size_t j = 0; j < half; ++j) buf[j] = v[2 * j];
    for (std::size_t j = 0; 2 * j + 1 < m; ++j) buf[m - 1 - j] = v[2 * j + 1];
    detail::fft_c2c(buf, spec, /*forward=*/true);
    const double s0 = std::sqrt(1.0 / static_cast<double>(m));
    const double s = std::sqrt(2.0 / static_cast<double>(m));
    for (std::size_t k = 0; k < m; ++k)
      out[k] = (k == 0 ? s0 : s) * (tw[k] * spec[k]).real();
  } else {
    // C^T u: the transpose runs the same factorization backwards
    const double s0 = std::sqrt(1.0 / static_cast<double>(m));
    const double s = std::sqrt(2.0 / static_cast<double>(m));
    for (std::size_t k = 0; k < m; ++k)
      buf[k] = (k == 0 ? s0 : s) * v[k] * tw[k];
    detail::fft_c2c(buf, spec, /*forward=*/true);
    const std::size_t half = (m + 1) / 2;
    for (std::size_t j = 0; j < half; ++j) out[2 * j] = spec[j].real();
    for (std::size_t j = 0; 2 * j + 1 < m; ++j)
      out[2 * j + 1] = spec[m - 1 - j].real();
  }
  return out;
}

std::vector<double> sine_apply(std::span<const double> v) {
  check_nonempty(v.size());
  const std::size_t m = v.size();
  // odd extension of length 2(m+1): (0, v, 0, -reverse(v))
  const std::size_t len = 2 * (m + 1);
  std::span<cplx> buf = scratch(0, len);
  std::span<cplx> spec = scratch(1, len);
  buf[0] = cplx{};
  buf[m + 1] = cplx{};
  for (std::size_t j = 0; j < m; ++j) {
    buf[j + 1] = v[j];
    buf[len - 1 - j] = -v[j];
  }
  detail::fft_c2c(buf, spec, /*forward=*/true);
  std::vector<double> out(m);
  const double scale = -0.5 * std::sqrt(2.0 / (static_cast<double>(m) + 1.0));
  for (std::size_t i = 0; i < m; ++i) out[i] = scale * spec[i + 1].imag();
  return out;
}

TrigPlan::TrigPlan(TrigKind kind, int size, Direction direction)
    : kind_(kind), size_(size), direction_(direction) {
  if (size < 1) throw ValidationError("transform size must be >= 1");
  // warm the shared cache so later applies never plan
  switch (kind) {
    case TrigKind::fourier:
      get_c2c_plan(size, direction == Direction::forward);
      break;
    case TrigKind::cosine:
      if (size > 1) get_c2c_plan(size, true);
      break;
    case TrigKind::sine:
      get_c2c_plan(2 * (size + 1), true);
      break;
  }
}

std::vector<double> TrigPlan::apply(std::span<const double> v) const {
  if (kind_ == TrigKind::fourier)
    throw ValidationError("fourier plan requires complex input");
  if (static_cast<int>(v.size()) != size_)
    throw DimensionError("plan/input size mismatch");
  return kind_ == TrigKind::cosine ? cosine_apply(v, direction_) : sine_apply(v);
}

std::vector<cplx> TrigPlan::apply(std::span<const cplx> v) const {
  if (kind_ != TrigKind::fourier)
    throw ValidationError("real-kind plan requires real input");
  if (static_cast<int>(v.size()) != size_)
    throw DimensionError("plan/input size mismatch");
  return fourier_apply(v, direction_);
}

} // namespace fastdeblur
