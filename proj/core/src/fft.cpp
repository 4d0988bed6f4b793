#include "sqg/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace sqg::fft {
namespace {

// FFTW planning is not thread-safe; executing distinct plans is. Plans are
// created with FFTW_UNALIGNED so they can run on any caller buffer.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;
std::map<std::pair<int, int>, PlanPair>& plan_cache() {
  static std::map<std::pair<int, int>, PlanPair> cache;
  return cache;
}

PlanPair plans_for(const GridSpec& grid) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(grid.nx, grid.ny);
  auto it = plan_cache().find(key);
  if (it != plan_cache().end()) return it->second;

  std::vector<std::complex<double>> scratch(grid.size());
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  PlanPair pp;
  // n0 = ny (slow), n1 = nx (fast) for layout [iy*nx + ix].
  pp.fwd = fftw_plan_dft_2d(grid.ny, grid.nx, p, p, FFTW_FORWARD,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
  pp.bwd = fftw_plan_dft_2d(grid.ny, grid.nx, p, p, FFTW_BACKWARD,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_cache()[key] = pp;
  return pp;
}

}  // namespace

void forward(const GridSpec& grid, std::complex<double>* data) {
  auto pp = plans_for(grid);
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(pp.fwd, p, p);
}

void backward(const GridSpec& grid, std::complex<double>* data) {
  auto pp = plans_for(grid);
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(pp.bwd, p, p);
}

}  // namespace sqg::fft
