#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bow/bq.hpp"

namespace bow {

struct SliceFamily {
  enum class Kind { Diagonal, FixedXY, CustomAffine };
  Kind kind = Kind::Diagonal;
  Complex x0{0.0}, y0{0.0};  // FixedXY: t -> (x0, y0, t)
  // CustomAffine: trace i = affine[i][0] + affine[i][1] * t.
  std::array<std::array<Complex, 2>, 3> affine{};

  TraceTriple at(const Complex& t) const;
  static SliceFamily diagonal();
  static SliceFamily fixed_xy(Complex x0, Complex y0);
};

struct Window {
  double re0 = -3, im0 = -3, re1 = 3, im1 = 3;
};

enum class ImageFormat : uint8_t { pgm, ppm };

struct ScanConfig {
  Window window;
  int width = 64, height = 64;
  BqConfig bq;
  int threads = 1;
  ImageFormat image = ImageFormat::pgm;
};

enum class PixelClass : uint8_t {
  Bq,
  NotBqInterval,
  NotBqExceptional,
  Unknown,
  Elementary
};

struct PixelVerdict {
  PixelClass cls = PixelClass::Unknown;
  int depth_used = 0;
};

struct ScanResult {
  int width = 0, height = 0;
  std::vector<PixelVerdict> pixels;  // row-major, top row first
  std::array<long long, 5> counts{};  // indexed by PixelClass
};

/// Parameter of the pixel centre (row i from im0, column j from re0).
Complex pixel_parameter(const Window& w, int width, int height, int i, int j);

PixelVerdict classify_pixel(const SliceFamily& fam, const Complex& t,
                            const BqConfig& cfg);

/// Serial reference kernel.
ScanResult scan_serial(const SliceFamily& fam, const ScanConfig& cfg);

/// OpenMP kernel over rows; pixel-identical to scan_serial by construction.
ScanResult scan_parallel(const SliceFamily& fam, const ScanConfig& cfg);

/// Full file bytes, including the P5/P6 header (maxval 255).
std::vector<uint8_t> encode_pgm(const ScanResult& r);
std::vector<uint8_t> encode_ppm(const ScanResult& r);

std::string sidecar_json(const SliceFamily& fam, const ScanConfig& cfg,
                         const ScanResult& r);

const char* pixel_class_name(PixelClass c);

}  // namespace bow
