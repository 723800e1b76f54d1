#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace mhdlab::detail {

namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int dim, int n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    const auto key = std::make_tuple(dim, n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::size_t total = 1;
    int dims[3] = {n, n, n};
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(n);
    std::vector<fftw_complex> scratch_in(total), scratch_out(total);
    // ESTIMATE keeps planning deterministic; UNALIGNED lets any buffer be used
    // with the new-array execute interface.
    fftw_plan plan = fftw_plan_dft(dim, dims, scratch_in.data(), scratch_out.data(),
                                   sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void fft(const Grid& grid, const std::complex<double>* in, std::complex<double>* out, int sign) {
  fftw_plan plan = cache().get(grid.dim(), grid.n(), sign);
  // FFTW never writes to the input of an out-of-place complex transform.
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace mhdlab::detail
