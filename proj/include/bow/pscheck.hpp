#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bow/farey.hpp"
#include "bow/h3.hpp"
#include "bow/markoff.hpp"

namespace bow {

struct NotCyclicallyShortest : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Orbit path O, E1 O, E1 E2 O, ... over one period of the word.
struct BrokenGeodesic {
  Word word;
  std::vector<H3Point> vertices;
};

BrokenGeodesic broken_geodesic(const Word& w, const MoebiusMatrix& A,
                               const MoebiusMatrix& B,
                               const H3Point& O = base_point());

/// Interior angle at Q of the triangle P, Q, R (hyperbolic cosine rule).
double bending_angle(const H3Point& P, const H3Point& Q, const H3Point& R);

struct QgEstimate {
  double K_hat = 1.0;
  double eps_hat = 0.0;
  double min_ratio = 0.0;  // min d(O, rho(w) O) / ||w|| over tested subwords
  int level = 0;
};

/// Quasigeodesic ratio statistics over all primitives with |p|+q <= level
/// and all cyclic subwords of their doubled words.
QgEstimate ps_estimate(const TraceTriple& base, int level);

enum class PsOutcome { LikelyPS, NotPS, Unknown };

struct PsConfig {
  int level = 10;       // deepest primitive layer tested
  double floor = 1e-3;  // min_ratio collapse threshold
  double tol = 1e-9;
};

struct PsVerdict {
  PsOutcome outcome = PsOutcome::Unknown;
  QgEstimate estimate;           // at the final level
  std::optional<Word> witness;   // elliptic/parabolic primitive, if found
  std::optional<Rational> witness_region;
};

PsVerdict ps_verdict(const TraceTriple& base, const PsConfig& cfg = {});

struct BipRecord {
  Rational region;
  BasicPair pair = BasicPair::AB;
  Word word;                  // palindromic representative
  bool parabolic = false;     // degenerate axis: meets E at infinity
  bool no_intersection = false;
  H3Point point;              // intersection with the hyperelliptic axis
  double distance = 0.0;      // d(point, O)
  double residual = 0.0;      // |cosh delta|, zero iff perpendicular crossing
};

struct BipReport {
  std::vector<BipRecord> records;
  double D_hat = 0.0;  // max distance over intersecting records
  int level = 0;
};

/// One record per region with 0 <= p, |p|+q <= level: the palindromic
/// representative for the first admissible basic pair, its axis, and the
/// perpendicular intersection with the matching hyperelliptic axis.
BipReport bip_report(const TraceTriple& base, int level);

struct DecayProbe {
  std::vector<double> gaps;          // |complex distance(Ax U_i, Ax U_{i+1})|
  // Hexagon-estimate exponent m_i = Re lambda_i + Re lambda_{i+1}; the gap
  // decays like e^{-m_i} along a descending path.
  std::vector<double> half_lengths;
  bool has_slope = false;
  double slope = 0.0, intercept = 0.0;  // log gap ~ slope * m + intercept
  double sum_gaps = 0.0;
  double end_span = 0.0;  // d(Ax U_0, Ax U_k) <= sum_gaps
};

/// Axis-gap decay along a descending path whose consecutive regions are
/// palindromic with respect to one common basic pair.
DecayProbe perpendicular_decay_probe(const TraceTriple& base,
                                     const std::vector<RegionRef>& path);

std::string ps_json(const PsVerdict& v);
std::string bip_json(const BipReport& r);

}  // namespace bow
