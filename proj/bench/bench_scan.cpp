// Compares the serial reference scan kernel with the OpenMP kernel and
// verifies that they produce identical pixels.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "bow/scan.hpp"

using namespace bow;
using Clock = std::chrono::steady_clock;

namespace {

double time_scan(ScanResult (*kernel)(const SliceFamily&, const ScanConfig&),
                 const SliceFamily& fam, const ScanConfig& cfg,
                 ScanResult& out) {
  auto t0 = Clock::now();
  out = kernel(fam, cfg);
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int size = argc > 1 ? std::atoi(argv[1]) : 128;
  int threads = argc > 2 ? std::atoi(argv[2]) : 8;
  int budget = argc > 3 ? std::atoi(argv[3]) : 200;

  SliceFamily fam = SliceFamily::diagonal();
  ScanConfig cfg;
  cfg.window = {-3, -3, 3, 3};
  cfg.width = size;
  cfg.height = size;
  cfg.bq.depth_budget = budget;

  ScanResult serial, parallel;
  cfg.threads = 1;
  double ts = time_scan(scan_serial, fam, cfg, serial);
  cfg.threads = threads;
  double tp = time_scan(scan_parallel, fam, cfg, parallel);

  bool same = encode_pgm(serial) == encode_pgm(parallel);
  std::printf("grid %dx%d, budget %d\n", size, size, budget);
  std::printf("serial          : %8.3f s\n", ts);
  std::printf("parallel (%2d thr): %7.3f s\n", threads, tp);
  std::printf("speedup         : %8.2fx\n", ts / tp);
  std::printf("pixel-identical : %s\n", same ? "yes" : "NO");
  return same ? 0 : 1;
}
