#include "lenssplit/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace lenssplit {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::span<cplx> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

FourierPlan::FourierPlan(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("FourierPlan: length must be positive");
  std::vector<cplx> scratch(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  auto* p = as_fftw(scratch);
  forward_plan_ = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_FORWARD, flags);
  backward_plan_ = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_BACKWARD, flags);
  if (!forward_plan_ || !backward_plan_) throw std::runtime_error("FFTW planning failed");
}

FourierPlan::~FourierPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

void FourierPlan::forward(std::span<cplx> data) const {
  if (data.size() != n_) throw std::invalid_argument("FourierPlan: length mismatch");
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(data), as_fftw(data));
}

void FourierPlan::backward(std::span<cplx> data) const {
  if (data.size() != n_) throw std::invalid_argument("FourierPlan: length mismatch");
  fftw_execute_dft(static_cast<fftw_plan>(backward_plan_), as_fftw(data), as_fftw(data));
}

std::shared_ptr<const FourierPlan> FourierPlan::get(std::size_t n) {
  static std::mutex cache_mutex;
  static std::map<std::size_t, std::shared_ptr<const FourierPlan>> cache;
  std::lock_guard lock(cache_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto plan = std::make_shared<const FourierPlan>(n);
  cache.emplace(n, plan);
  return plan;
}

}  // namespace lenssplit
