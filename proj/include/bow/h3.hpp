#pragma once

#include <complex>
#include <stdexcept>

#include "bow/word.hpp"

namespace bow {

using Complex = std::complex<double>;

struct ElementaryRepresentation : std::domain_error {
  using std::domain_error::domain_error;
};
struct IdentityMatrix : std::domain_error {
  using std::domain_error::domain_error;
};
struct ParabolicNoAxis : std::domain_error {
  using std::domain_error::domain_error;
};
struct SharedEndpoint : std::domain_error {
  using std::domain_error::domain_error;
};
struct NonLoxodromic : std::domain_error {
  using std::domain_error::domain_error;
};
struct DegenerateSegment : std::domain_error {
  using std::domain_error::domain_error;
};

/// 2x2 complex matrix of determinant 1 acting on upper half-space.
struct MoebiusMatrix {
  Complex a{1}, b{0}, c{0}, d{1};

  Complex det() const { return a * d - b * c; }
  Complex trace() const { return a + d; }
  MoebiusMatrix inverse() const { return {d, -b, -c, a}; }  // adjugate, det 1
  friend MoebiusMatrix operator*(const MoebiusMatrix& m,
                                 const MoebiusMatrix& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
};

/// Point of upper half-space: horizontal complex coordinate and height > 0.
struct H3Point {
  Complex w{0.0};
  double t = 1.0;
};

inline H3Point base_point() { return H3Point{Complex{0.0}, 1.0}; }

/// A point of the sphere at infinity, C together with infinity.
struct BoundaryPoint {
  bool inf = false;
  Complex z{0.0};
  static BoundaryPoint infinity() { return {true, {}}; }
  static BoundaryPoint at(Complex z) { return {false, z}; }
};

/// An unoriented geodesic given by two distinct ideal endpoints.
struct Geodesic {
  BoundaryPoint e1, e2;
};

/// Half the complex length: lambda = (l + i theta)/2 with Re lambda >= 0,
/// so Tr X = +-2 cosh(lambda) and l(X) = 2 Re(lambda).
struct ComplexLength {
  Complex lambda{0.0};
  enum class Kind : uint8_t { Loxodromic, Parabolic, Elliptic } kind;
  double translation_length() const { return 2.0 * lambda.real(); }
};

struct TraceTripleValues {
  Complex x, y, z;
};

/// Normal-form lift: A = [[x,1],[-1,0]], B = [[0,zeta],[-1/zeta,y]] with
/// zeta the root of zeta^2 + z zeta + 1 = 0 of modulus <= 1 (tie: Im >= 0).
std::pair<MoebiusMatrix, MoebiusMatrix> lift_representation(
    const TraceTripleValues& t);

/// Ordered matrix product of the word's letters.
MoebiusMatrix evaluate_word(const Word& w, const MoebiusMatrix& A,
                            const MoebiusMatrix& B);

/// Isometric Poincare extension of the Moebius action to upper half-space.
H3Point apply_moebius(const MoebiusMatrix& m, const H3Point& p);

BoundaryPoint apply_moebius(const MoebiusMatrix& m, const BoundaryPoint& p);

/// cosh d = 1 + (|w1-w2|^2 + (t1-t2)^2) / (2 t1 t2).
double h3_distance(const H3Point& p, const H3Point& q);

ComplexLength complex_half_length(const MoebiusMatrix& m);

/// Endpoints of the invariant axis: roots of c w^2 + (d-a) w - b = 0.
Geodesic axis(const MoebiusMatrix& m);

struct Perpendicular {
  Geodesic line;
  Complex delta;  // complex distance, Re delta = d >= 0
  /// Feet of the perpendicular: closest point on each input geodesic.
  H3Point foot1, foot2;
};

/// Unique common perpendicular of two geodesics without shared endpoints,
/// and the complex distance between them. Crossing geodesics give d = 0 and
/// Im delta the crossing angle.
Perpendicular common_perpendicular(const Geodesic& g1, const Geodesic& g2);

/// The three special hyperelliptic axes E(A,B), E(A,AB), E(B,AB).
struct HyperellipticAxes {
  Geodesic e_ab, e_a_ab, e_b_ab;
};
HyperellipticAxes hyperelliptic_axes(const MoebiusMatrix& A,
                                     const MoebiusMatrix& B);

/// Right-hand side of the hexagon estimate
/// |cosh s3 / (sinh s1 sinh s5)| + |1 - coth s1 coth s5|
/// with s1, s3, s5 the half complex lengths of U, UV^-1, V^-1.
double hexagon_bound(const MoebiusMatrix& U, const MoebiusMatrix& V);

/// Parametrisation by arclength, for oracle-style searches.
H3Point geodesic_point(const Geodesic& g, double s);

/// Order-2 rotation about a geodesic (trace-0 elliptic fixing both ends).
MoebiusMatrix pi_rotation(const Geodesic& g);

}  // namespace bow
