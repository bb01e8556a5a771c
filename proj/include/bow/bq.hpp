#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bow/h3.hpp"
#include "bow/markoff.hpp"

namespace bow {

struct ReducibleRepresentation : std::domain_error {
  using std::domain_error::domain_error;
};

enum class BqOutcome { SatisfiesBQ, FailsBQ, Unknown };

enum class WitnessKind { PrimitiveInInterval, ExceptionalBoundary };

enum class RecurrenceClass { EscapesBothWays, DecaysOneWay, Bounded, Unknown };

std::string to_string(RecurrenceClass c);

struct BqWitness {
  WitnessKind kind = WitnessKind::PrimitiveInInterval;
  RegionRef region;
  // For ExceptionalBoundary: how the boundary recurrence behaved.
  RecurrenceClass recurrence = RecurrenceClass::Unknown;
};

/// Finite candidate attracting tree: the BFS-closed set of vertices whose
/// every outgoing edge is certified decisively inward.
struct AttractingTree {
  std::vector<TreeVertex> vertices;
  std::vector<OrientedEdge> boundary;  // crossing edges, oriented inward
  std::vector<RegionRef> omega2;       // discovered regions with |phi| <= 2
};

struct BqConfig {
  double m = 3.0;            // Omega threshold, >= 2
  int depth_budget = 1024;   // tree vertices explored
  int boundary_budget = 100; // boundary recurrence steps
  double tol = 1e-9;
};

struct BqVerdict {
  BqOutcome outcome = BqOutcome::Unknown;
  std::optional<AttractingTree> certificate;  // set iff SatisfiesBQ
  std::optional<BqWitness> witness;           // set iff FailsBQ
  int depth_used = 0;
  int certificate_size = 0;  // vertices in the certificate
};

/// Trace t counted as lying in the real interval [-2, 2].
bool in_real_interval(const Complex& t, double tol = 1e-9);

/// Semi-decision procedure: sink descent followed by BFS growth of the
/// candidate attracting tree, with interval and exceptional-boundary
/// witnesses reported as soon as they are discovered.
BqVerdict bq_test(const TraceTriple& base, const BqConfig& cfg = {});

/// Classifies the growth of the boundary values y_{i+1} = phi(u) y_i -
/// y_{i-1} of a region in both directions.
RecurrenceClass boundary_recurrence(const TraceTriple& base,
                                    const Rational& region, int steps);

/// Independently recomputes every trace and orientation in the certificate.
bool validate_certificate(const TraceTriple& base, const AttractingTree& cert);

struct FibGrowthReport {
  double c_lower = 0;  // min log+|phi| / (|p|+q) outside the exceptional set
  double c_upper = 0;  // max over all regions
  std::vector<RegionRef> violations;  // regions below the growth floor
};

/// Growth statistic log+|phi(p/q)| / (|p|+q) over all regions with
/// |p|+q <= level. `floor` is the lower-bound threshold for violations;
/// `exceptional` lists regions exempt from it (default: the base layer).
FibGrowthReport fibonacci_growth_report(
    const TraceTriple& base, int level, double floor = 0.05,
    const std::vector<Rational>& exceptional = {Rational(0, 1),
                                                Rational::infinity(),
                                                Rational(1, 1),
                                                Rational(-1, 1)});

std::string verdict_json(const BqVerdict& v);

}  // namespace bow
