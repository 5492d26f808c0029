#include "relgs/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace relgs {
namespace {

// The fftw planner is not thread-safe; plan creation is serialized and plans
// are cached per (rank, n, direction). Execution via fftw_execute_dft on
// caller buffers is safe for concurrent use.
class PlanCache {
 public:
  fftw_plan get(int rank, int n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    const auto key = std::make_tuple(rank, n, sign);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    std::size_t total = 1;
    for (int a = 0; a < rank; ++a) total *= static_cast<std::size_t>(n);
    fftw_complex* buf = fftw_alloc_complex(total);
    std::vector<int> dims(static_cast<std::size_t>(rank), n);
    fftw_plan plan = fftw_plan_dft(rank, dims.data(), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    cache_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> cache_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

// Parity of the per-axis frequency index sum; carries the e^{-ik.(-L,..)}
// boundary phase, which is (-1)^{sum j'} on this grid. Since n is even the
// parity of j' equals the parity of the storage index.
inline double index_parity_sign(const Grid& g, std::size_t flat) {
  const auto n = static_cast<std::size_t>(g.points_per_axis());
  int parity = 0;
  for (int a = g.dim() - 1; a >= 0; --a) {
    parity += static_cast<int>(flat % n);
    flat /= n;
  }
  return (parity & 1) ? -1.0 : 1.0;
}

void execute(const Grid& g, int sign, std::vector<std::complex<double>>& buf) {
  fftw_plan plan = plan_cache().get(g.dim(), g.points_per_axis(), sign);
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_execute_dft(plan, data, data);
}

}  // namespace

std::vector<std::complex<double>> forward_transform(
    const Grid& grid, const std::vector<double>& values) {
  std::vector<std::complex<double>> buf(values.begin(), values.end());
  execute(grid, FFTW_FORWARD, buf);
  const double scale = grid.cell_volume();
  for (std::size_t i = 0; i < buf.size(); ++i) {
    buf[i] *= scale * index_parity_sign(grid, i);
  }
  return buf;
}

std::vector<std::complex<double>> inverse_transform_complex(
    const Grid& grid, const std::vector<std::complex<double>>& spectrum) {
  std::vector<std::complex<double>> buf(spectrum);
  const double scale = 1.0 / grid.volume();
  for (std::size_t i = 0; i < buf.size(); ++i) {
    buf[i] *= scale * index_parity_sign(grid, i);
  }
  execute(grid, FFTW_BACKWARD, buf);
  return buf;
}

std::vector<double> inverse_transform(
    const Grid& grid, const std::vector<std::complex<double>>& spectrum) {
  auto buf = inverse_transform_complex(grid, spectrum);
  std::vector<double> out(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
  return out;
}

}  // namespace relgs
