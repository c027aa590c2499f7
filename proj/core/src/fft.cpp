#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <new>

#include "incexp/error.hpp"

namespace incexp::detail {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

template <class T>
AlignedBuffer<T>::AlignedBuffer(std::size_t count)
    : data(static_cast<T*>(fftw_malloc(sizeof(T) * count))), size(count) {
  if (data == nullptr) throw std::bad_alloc();
}

template <class T>
AlignedBuffer<T>::~AlignedBuffer() {
  fftw_free(data);
}

template struct AlignedBuffer<double>;
template struct AlignedBuffer<std::complex<double>>;

struct RealFft::Impl {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

RealFft::RealFft(std::size_t m) : m_(m), impl_(std::make_unique<Impl>()) {
  if (m < 2 || m % 2 != 0) throw InvalidParameter("RealFft: length must be even and >= 2");
  AlignedBuffer<double> real(m);
  AlignedBuffer<std::complex<double>> cplx(m / 2 + 1);
  auto* c = reinterpret_cast<fftw_complex*>(cplx.data);
  const int n = static_cast<int>(m);
  std::lock_guard<std::mutex> lock(planner_mutex());
  impl_->r2c = fftw_plan_dft_r2c_1d(n, real.data, c, FFTW_ESTIMATE);
  impl_->c2r = fftw_plan_dft_c2r_1d(n, c, real.data, FFTW_ESTIMATE);
  if (impl_->r2c == nullptr || impl_->c2r == nullptr) throw NumericalError("RealFft: plan creation failed");
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (impl_->r2c != nullptr) fftw_destroy_plan(impl_->r2c);
  if (impl_->c2r != nullptr) fftw_destroy_plan(impl_->c2r);
}

void RealFft::forward(const double* in, std::complex<double>* out) const {
  AlignedBuffer<double> real(m_);
  AlignedBuffer<std::complex<double>> cplx(m_ / 2 + 1);
  std::copy(in, in + m_, real.data);
  fftw_execute_dft_r2c(impl_->r2c, real.data, reinterpret_cast<fftw_complex*>(cplx.data));
  std::copy(cplx.data, cplx.data + m_ / 2 + 1, out);
}

void RealFft::inverse(std::complex<double>* in, double* out) const {
  AlignedBuffer<double> real(m_);
  AlignedBuffer<std::complex<double>> cplx(m_ / 2 + 1);
  std::copy(in, in + m_ / 2 + 1, cplx.data);
  fftw_execute_dft_c2r(impl_->c2r, reinterpret_cast<fftw_complex*>(cplx.data), real.data);
  std::copy(real.data, real.data + m_, out);
}

}  // namespace incexp::detail
