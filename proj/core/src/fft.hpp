#pragma once

#include <complex>
#include <cstddef>
#include <memory>

namespace incexp::detail {

/// Real <-> half-complex transforms of a fixed even length m, unnormalized, FFTW conventions:
/// forward X_j = sum_k x_k e^{-2 pi i jk/m}, inverse x_k = sum_j X_j e^{+2 pi i jk/m}.
/// Plans are created under a process-wide lock; execution is thread-safe.
class RealFft {
 public:
  explicit RealFft(std::size_t m);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return m_; }
  /// `in` has m reals, `out` m/2+1 complex values.
  void forward(const double* in, std::complex<double>* out) const;
  /// `in` has m/2+1 complex values and is overwritten; `out` receives m reals.
  void inverse(std::complex<double>* in, double* out) const;

 private:
  struct Impl;
  std::size_t m_;
  std::unique_ptr<Impl> impl_;
};

/// Buffer allocated with the FFT library's SIMD alignment.
template <class T>
struct AlignedBuffer {
  explicit AlignedBuffer(std::size_t count);
  ~AlignedBuffer();
  AlignedBuffer(const AlignedBuffer&) = delete;
  AlignedBuffer& operator=(const AlignedBuffer&) = delete;
  T* data;
  std::size_t size;
};

}  // namespace incexp::detail
