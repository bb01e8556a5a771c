#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "bow/rational.hpp"

namespace bow {

using Complex = std::complex<double>;

struct NotInWake : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct PlugholeNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Trace modulus beyond which values saturate to the absorbing sentinel.
constexpr double kEscapeBound = 1e150;

inline bool is_escaped(const Complex& t) {
  return std::abs(t) >= kEscapeBound;
}

/// Saturating Vieta flip: x*y - z clamped to the escape sentinel.
Complex vieta_flip(const Complex& x, const Complex& y, const Complex& z);

/// Ordered traces (x, y, z) of (U, V, UV) at a Farey-tree vertex.
struct TraceTriple {
  Complex x, y, z;
  Complex mu() const { return x * x + y * y + z * z - x * y * z; }
};

Complex mu_of(const TraceTriple& t);

/// Replaces one coordinate by the Vieta flip: slot 3 gives (x, y, xy-z).
TraceTriple neighbour_triple(const TraceTriple& t, int slot);

/// A Farey region together with its trace value.
struct RegionRef {
  Rational addr;
  Complex trace;
};

/// A vertex of the Farey tree: three pairwise-neighbour regions.
struct TreeVertex {
  RegionRef u, v, w;
};

inline TreeVertex base_vertex(const TraceTriple& t) {
  return {{Rational(0, 1), t.x}, {Rational::infinity(), t.y},
          {Rational(1, 1), t.z}};
}

/// Directed edge of the trace tree. Regions (u, v) are adjacent to the
/// edge; w and z are the third regions at its two ends, z-hat = uv - w.
struct OrientedEdge {
  RegionRef u, v;   // adjacent regions
  RegionRef w, z;   // end regions
  bool toward_w;    // arrow direction (from the larger-modulus end)
  bool decisive;    // moduli differ beyond the tie tolerance
};

/// Orients the edge with ends w and z = uv - w: arrow toward the strictly
/// smaller modulus; ties resolve toward w and are flagged non-decisive.
OrientedEdge orient_edge(const RegionRef& u, const RegionRef& v,
                         const RegionRef& w);

/// Trace of the region labelled r, replayed along its Stern-Brocot path
/// from the base assignment (x at 0/1, y at 1/0, z at 1/1).
Complex region_trace(const TraceTriple& base, const Rational& r);

struct OmegaSet {
  std::vector<RegionRef> regions;  // all discovered regions with |phi| <= m
  bool complete = false;           // frontier exhausted vs budget-truncated
  int steps_used = 0;
};

/// All regions with |phi| <= m reachable within `budget` tree expansions.
OmegaSet enumerate_omega(const TraceTriple& base, double m, int budget);

struct SinkResult {
  TreeVertex vertex;
  bool found = false;        // false => budget exhausted (Unknown)
  double min_trace_seen = 0;
  int steps = 0;
};

/// Follows decisively decreasing arrows from `start` until no decisive
/// outgoing descent exists (a sink or tie).
SinkResult find_sink(const TraceTriple& base, const TreeVertex& start,
                     int budget);

/// Boundary regions y_i of a region in order round its boundary, seeded
/// from its two Stern-Brocot parents y_0, y_1 and extended both ways.
struct BoundaryWalk {
  RegionRef u;                 // the region whose boundary this is
  std::vector<RegionRef> ys;   // y_{-steps} ... y_0 ... y_{steps+1}
  int index0 = 0;              // position of y_0 in ys
  const RegionRef& y(int i) const { return ys.at(index0 + i); }
};
BoundaryWalk boundary_walk(const TraceTriple& base, const Rational& region,
                           int steps);

/// Scans the boundary of `region` for a vertex where consecutive boundary
/// edges point toward each other and returns the third edge there, oriented
/// out of the region.
OrientedEdge plughole(const TraceTriple& base, const Rational& region,
                      int search_width);

/// Fibonacci weight of a region in the wake of an edge: 1 on the two
/// adjacent regions, otherwise the sum of the two closer neighbours.
long long fib_weight(const OrientedEdge& edge, const Rational& region);

bool in_wake(const OrientedEdge& edge, const Rational& region);

/// Plughole descent u_0 = from, ..., u_k with u_k the first region inside
/// Omega(M); consecutive regions alternate between the types of the basic
/// pair {type(from), other_type}.
std::vector<RegionRef> descending_path(const TraceTriple& base,
                                       const Rational& from, double M,
                                       Mod2Type other_type, int budget);

}  // namespace bow
