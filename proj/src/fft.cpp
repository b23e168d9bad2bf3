#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace prcis::detail {

namespace {

// FFTW planning is not thread-safe, execution with new-array functions is.
// Plans are created once per size under a lock and reused; FFTW_ESTIMATE
// keeps the chosen algorithm, and thus the rounding, fixed from run to run.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

  const PlanPair& get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;

    std::vector<double> real(n);
    std::vector<std::complex<double>> cplx(n / 2 + 1);
    auto* c = reinterpret_cast<fftw_complex*>(cplx.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    p.forward = fftw_plan_dft_r2c_1d(static_cast<int>(n), real.data(), c, flags);
    p.backward = fftw_plan_dft_c2r_1d(static_cast<int>(n), c, real.data(),
                                      flags | FFTW_PRESERVE_INPUT);
    if (!p.forward || !p.backward) {
      throw std::runtime_error("FFTW failed to create a plan of size " +
                               std::to_string(n));
    }
    return plans_.emplace(n, p).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<std::complex<double>> rfft(std::span<const double> in,
                                       std::size_t n) {
  std::vector<double> padded(n, 0.0);
  std::copy(in.begin(), in.end(), padded.begin());
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_execute_dft_r2c(cache().get(n).forward, padded.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> irfft_unscaled(std::span<const std::complex<double>> in,
                                   std::size_t n) {
  std::vector<std::complex<double>> work(in.begin(), in.end());
  std::vector<double> out(n);
  fftw_execute_dft_c2r(cache().get(n).backward,
                       reinterpret_cast<fftw_complex*>(work.data()),
                       out.data());
  return out;
}

}  // namespace prcis::detail
