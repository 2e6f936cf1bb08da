#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "error.hpp"

namespace zkd::fft {
namespace {

enum class Kind { kForward, kBackward, kBackwardReal };

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan Get(Kind kind, int nx, int ny) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(kind, nx, ny);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const std::size_t n = static_cast<std::size_t>(nx) * ny;
    fftw_plan plan = nullptr;
    if (kind == Kind::kBackwardReal) {
      std::vector<std::complex<double>> in(static_cast<std::size_t>(nx) * (ny / 2 + 1));
      std::vector<double> out(n);
      plan = fftw_plan_dft_c2r_2d(nx, ny, reinterpret_cast<fftw_complex*>(in.data()),
                                  out.data(), flags);
    } else {
      std::vector<std::complex<double>> in(n), out(n);
      plan = fftw_plan_dft_2d(nx, ny, reinterpret_cast<fftw_complex*>(in.data()),
                              reinterpret_cast<fftw_complex*>(out.data()),
                              kind == Kind::kForward ? FFTW_FORWARD : FFTW_BACKWARD,
                              flags);
    }
    Require(plan != nullptr, ErrorCode::kInternal, "FFTW planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<Kind, int, int>, fftw_plan> plans_;
};

PlanCache& Cache() {
  static PlanCache cache;
  return cache;
}

void CheckSize(std::size_t actual, std::size_t expected) {
  Require(actual == expected, ErrorCode::kInvalidArgument, "FFT buffer size mismatch");
}

}  // namespace

void Forward2d(int nx, int ny, std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out) {
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  CheckSize(in.size(), n);
  CheckSize(out.size(), n);
  fftw_execute_dft(Cache().Get(Kind::kForward, nx, ny),
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

void Backward2d(int nx, int ny, std::span<const std::complex<double>> in,
                std::span<std::complex<double>> out) {
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  CheckSize(in.size(), n);
  CheckSize(out.size(), n);
  fftw_execute_dft(Cache().Get(Kind::kBackward, nx, ny),
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

void BackwardReal2d(int nx, int ny, std::span<const std::complex<double>> half,
                    std::span<double> out) {
  CheckSize(half.size(), static_cast<std::size_t>(nx) * (ny / 2 + 1));
  CheckSize(out.size(), static_cast<std::size_t>(nx) * ny);
  // c2r destroys its input, so work on a copy.
  std::vector<std::complex<double>> scratch(half.begin(), half.end());
  fftw_execute_dft_c2r(Cache().Get(Kind::kBackwardReal, nx, ny),
                       reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

}  // namespace zkd::fft
