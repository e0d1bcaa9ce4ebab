#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "lenssplit/types.hpp"

namespace lenssplit {

/// In-place complex DFT of a fixed length, backed by FFTW.
///
/// forward computes X_k = sum_j x_j e^{-2 pi i jk/n} and backward the same
/// with +i; neither normalizes. Plans are created with FFTW_ESTIMATE so the
/// algorithm (and hence the rounding) is identical from run to run. Execution
/// is thread-safe; plan creation is serialized internally.
class FourierPlan {
 public:
  explicit FourierPlan(std::size_t n);
  ~FourierPlan();
  FourierPlan(const FourierPlan&) = delete;
  FourierPlan& operator=(const FourierPlan&) = delete;

  std::size_t size() const noexcept { return n_; }
  void forward(std::span<cplx> data) const;
  void backward(std::span<cplx> data) const;

  /// Shared plan for length n; plans are cached for the process lifetime.
  static std::shared_ptr<const FourierPlan> get(std::size_t n);

 private:
  std::size_t n_;
  void* forward_plan_;
  void* backward_plan_;
};

}  // namespace lenssplit
