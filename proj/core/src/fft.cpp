#include "trotter/fft.hpp"

#include "trotter/errors.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace trotter::fft {

namespace {

class PlanCache {
public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  // SIMD plans need FFTW's preferred alignment; other buffers get a
  // separate unaligned plan.
  fftw_plan get(int n, int columns, int sign, bool aligned) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(n, columns, sign, aligned);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t size = static_cast<std::size_t>(n) * columns;
    auto* buf = fftw_alloc_complex(size);
    if (!buf) throw Error("FFTW failed to allocate a planning buffer");
    int dims[] = {n};
    const unsigned flags = FFTW_MEASURE | (aligned ? 0u : unsigned(FFTW_UNALIGNED));
    // Planning may only touch FFTW's global state under the lock.
    fftw_plan plan = fftw_plan_many_dft(1, dims, columns, buf, nullptr, 1, n, buf,
                                        nullptr, 1, n, sign, flags);
    fftw_free(buf);
    if (!plan) throw Error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void transform(std::span<std::complex<double>> data, int n, int sign) {
  if (n <= 0 || data.size() % static_cast<std::size_t>(n) != 0) {
    throw DomainError("FFT buffer is not a whole number of columns");
  }
  if (data.empty()) return;
  const int columns = static_cast<int>(data.size() / n);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  const bool aligned = fftw_alignment_of(reinterpret_cast<double*>(buf)) == 0;
  fftw_execute_dft(cache().get(n, columns, sign, aligned), buf, buf);
}

} // namespace

void forward(std::span<std::complex<double>> data, int n) {
  transform(data, n, FFTW_FORWARD);
}

void backward(std::span<std::complex<double>> data, int n) {
  transform(data, n, FFTW_BACKWARD);
}

} // namespace trotter::fft
