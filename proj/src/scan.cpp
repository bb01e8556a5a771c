#include "bow/scan.hpp"

#include <algorithm>

#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bow {

TraceTriple SliceFamily::at(const Complex& t) const {
  switch (kind) {
    case Kind::Diagonal:
      return {t, t, t};
    case Kind::FixedXY:
      return {x0, y0, t};
    default:
      return {affine[0][0] + affine[0][1] * t,
              affine[1][0] + affine[1][1] * t,
              affine[2][0] + affine[2][1] * t};
  }
}

SliceFamily SliceFamily::diagonal() { return {}; }

SliceFamily SliceFamily::fixed_xy(Complex x0, Complex y0) {
  SliceFamily f;
  f.kind = Kind::FixedXY;
  f.x0 = x0;
  f.y0 = y0;
  return f;
}

Complex pixel_parameter(const Window& w, int width, int height, int i,
                        int j) {
  double re = w.re0 + (w.re1 - w.re0) * (j + 0.5) / width;
  double im = w.im0 + (w.im1 - w.im0) * (i + 0.5) / height;
  return {re, im};
}

PixelVerdict classify_pixel(const SliceFamily& fam, const Complex& t,
                            const BqConfig& cfg) {
  try {
    BqVerdict v = bq_test(fam.at(t), cfg);
    switch (v.outcome) {
      case BqOutcome::SatisfiesBQ:
        return {PixelClass::Bq, v.depth_used};
      case BqOutcome::FailsBQ:
        return {v.witness->kind == WitnessKind::PrimitiveInInterval
                    ? PixelClass::NotBqInterval
                    : PixelClass::NotBqExceptional,
                v.depth_used};
      default:
        return {PixelClass::Unknown, v.depth_used};
    }
  } catch (const ElementaryRepresentation&) {
    return {PixelClass::Elementary, 0};
  }
}

namespace {

ScanResult run_scan(const SliceFamily& fam, const ScanConfig& cfg,
                    bool parallel) {
  if (cfg.width < 1 || cfg.height < 1)
    throw std::invalid_argument("scan: resolution must be at least 1x1");
  ScanResult r;
  r.width = cfg.width;
  r.height = cfg.height;
  r.pixels.resize(static_cast<size_t>(cfg.width) * cfg.height);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(cfg.threads) \
    if (parallel)
#endif
  for (int i = 0; i < cfg.height; ++i) {
    for (int j = 0; j < cfg.width; ++j) {
      Complex t = pixel_parameter(cfg.window, cfg.width, cfg.height, i, j);
      r.pixels[static_cast<size_t>(i) * cfg.width + j] =
          classify_pixel(fam, t, cfg.bq);
    }
  }
  (void)parallel;
  for (const PixelVerdict& p : r.pixels)
    ++r.counts[static_cast<size_t>(p.cls)];
  return r;
}

}  // namespace

ScanResult scan_serial(const SliceFamily& fam, const ScanConfig& cfg) {
  return run_scan(fam, cfg, false);
}

ScanResult scan_parallel(const SliceFamily& fam, const ScanConfig& cfg) {
  return run_scan(fam, cfg, true);
}

namespace {

uint8_t grey_of(const PixelVerdict& p) {
  switch (p.cls) {
    case PixelClass::Bq:
      return 255;
    case PixelClass::NotBqInterval:
      return static_cast<uint8_t>(16 + std::min(p.depth_used * 8, 100));
    case PixelClass::NotBqExceptional:
      return static_cast<uint8_t>(140 + std::min(p.depth_used * 8, 80));
    case PixelClass::Elementary:
      return 8;
    default:
      return 0;
  }
}

std::array<uint8_t, 3> rgb_of(const PixelVerdict& p) {
  switch (p.cls) {
    case PixelClass::Bq:
      return {255, 255, 255};
    case PixelClass::NotBqInterval:
      return {40, 40,
              static_cast<uint8_t>(255 - std::min(p.depth_used * 8, 180))};
    case PixelClass::NotBqExceptional:
      return {220, 40, 40};
    case PixelClass::Elementary:
      return {128, 128, 128};
    default:
      return {0, 0, 0};
  }
}

void append_header(std::vector<uint8_t>& out, const char* magic,
                   const ScanResult& r) {
  std::string h = std::string(magic) + "\n" + std::to_string(r.width) + " " +
                  std::to_string(r.height) + "\n255\n";
  out.insert(out.end(), h.begin(), h.end());
}

}  // namespace

std::vector<uint8_t> encode_pgm(const ScanResult& r) {
  std::vector<uint8_t> out;
  out.reserve(r.pixels.size() + 32);
  append_header(out, "P5", r);
  for (const PixelVerdict& p : r.pixels) out.push_back(grey_of(p));
  return out;
}

std::vector<uint8_t> encode_ppm(const ScanResult& r) {
  std::vector<uint8_t> out;
  out.reserve(3 * r.pixels.size() + 32);
  append_header(out, "P6", r);
  for (const PixelVerdict& p : r.pixels) {
    auto rgb = rgb_of(p);
    out.insert(out.end(), rgb.begin(), rgb.end());
  }
  return out;
}

const char* pixel_class_name(PixelClass c) {
  switch (c) {
    case PixelClass::Bq:
      return "bq";
    case PixelClass::NotBqInterval:
      return "not_bq_interval";
    case PixelClass::NotBqExceptional:
      return "not_bq_exceptional";
    case PixelClass::Elementary:
      return "elementary";
    default:
      return "unknown";
  }
}

std::string sidecar_json(const SliceFamily& fam, const ScanConfig& cfg,
                         const ScanResult& r) {
  nlohmann::json j;
  j["schema_version"] = 1;
  switch (fam.kind) {
    case SliceFamily::Kind::Diagonal:
      j["family"] = "diagonal";
      break;
    case SliceFamily::Kind::FixedXY:
      j["family"] = "fixed-xy";
      j["x0"] = {fam.x0.real(), fam.x0.imag()};
      j["y0"] = {fam.y0.real(), fam.y0.imag()};
      break;
    default:
      j["family"] = "custom";
      for (int i = 0; i < 3; ++i)
        j["affine"].push_back({{fam.affine[i][0].real(),
                                fam.affine[i][0].imag()},
                               {fam.affine[i][1].real(),
                                fam.affine[i][1].imag()}});
  }
  j["window"] = {cfg.window.re0, cfg.window.im0, cfg.window.re1,
                 cfg.window.im1};
  j["size"] = {cfg.width, cfg.height};
  j["budget"] = cfg.bq.depth_budget;
  j["m"] = cfg.bq.m;
  j["image"] = cfg.image == ImageFormat::pgm ? "pgm" : "ppm";
  for (size_t k = 0; k < r.counts.size(); ++k)
    j["counts"][pixel_class_name(static_cast<PixelClass>(k))] = r.counts[k];
  return j.dump(2);
}

}  // namespace bow
