#include "sigstab/stability.hpp"

namespace sigstab {

std::vector<StabilityReport> analyze_batch(const std::vector<Matrix>& ms, const AnalyzeOptions& opts) {
  std::vector<StabilityReport> out(ms.size());
  // Parallelism is across matrices; each analysis runs its serial kernels.
  AnalyzeOptions inner = opts;
  inner.exec = Exec::serial;
  const auto count = static_cast<long>(ms.size());
  if (opts.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < count; ++k) out[k] = analyze(ms[k], inner);
  } else {
    for (long k = 0; k < count; ++k) out[k] = analyze(ms[k], inner);
  }
  return out;
}

}  // namespace sigstab
