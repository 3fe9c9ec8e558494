#ifndef FASTDEBLUR_TRIG_HPP
#define FASTDEBLUR_TRIG_HPP

#include <complex>
#include <span>
#include <vector>

namespace fastdeblur {

using cplx = std::complex<double>;

/// The three unitary/orthogonal transforms used as building blocks:
///   fourier  F_ij = exp(-i 2pi (i-1)(j-1)/m) / sqrt(m)          (unitary)
///   cosine   C_ij = sqrt((2-delta_{i1})/m) cos((i-1)(2j-1)pi/(2m))  (orthogonal DCT-II)
///   sine     Q_ij = sqrt(2/(m+1)) sin(i j pi/(m+1))             (symmetric involution, DST-I)
enum class TrigKind { fourier, cosine, sine };

enum class Direction { forward, inverse };

/// Cached, reusable transform of a fixed kind/size/direction. Plans are
/// immutable after construction and safe to share across threads; concurrent
/// applies on distinct buffers are permitted. Construction is cheap after the
/// first plan of a given (kind, size, direction) has been built.
class TrigPlan {
public:
  TrigPlan(TrigKind kind, int size, Direction direction);

  TrigKind kind() const { return kind_; }
  int size() const { return size_; }
  Direction direction() const { return direction_; }

  /// Real-input apply; valid for cosine and sine kinds.
  std::vector<double> apply(std::span<const double> v) const;
  /// Complex-input apply; valid for the fourier kind.
  std::vector<cplx> apply(std::span<const cplx> v) const;

private:
  TrigKind kind_;
  int size_;
  Direction direction_;
};

/// y = F v (forward) or y = F^H v (inverse), F the unitary DFT matrix.
std::vector<cplx> fourier_apply(std::span<const cplx> v, Direction direction);

/// y = C v (forward) or y = C^T v (inverse), C the orthogonal DCT-II matrix.
std::vector<double> cosine_apply(std::span<const double> v, Direction direction);

/// y = Q v; Q is its own inverse.
std::vector<double> sine_apply(std::span<const double> v);

} // namespace fastdeblur

#endif // FASTDEBLUR_TRIG_HPP
