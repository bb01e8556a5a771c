#include "bow/h3.hpp"

#include <cmath>

namespace bow {

namespace {

constexpr double kTol = 1e-9;

double golden_min(double lo, double hi, const auto& f) {
  constexpr double phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * (1.0 + std::abs(a)); ++it) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a); f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a); f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

/// Moebius map with det 1 sending g.e1 -> 0 and g.e2 -> infinity.
MoebiusMatrix frame_to_zero_inf(const Geodesic& g) {
  if (g.e1.inf && g.e2.inf)
    throw SharedEndpoint("geodesic with both endpoints at infinity");
  if (g.e1.inf) {
    Complex q = g.e2.z;
    const Complex i{0.0, 1.0};
    return {Complex{0.0}, -i, -i, i * q};
  }
  if (g.e2.inf) {
    return {Complex{1.0}, -g.e1.z, Complex{0.0}, Complex{1.0}};
  }
  Complex p = g.e1.z, q = g.e2.z;
  Complex s = std::sqrt(p - q);
  if (std::abs(p - q) < 1e-14)
    throw SharedEndpoint("degenerate geodesic endpoints");
  return {Complex{1.0} / s, -p / s, Complex{1.0} / s, -q / s};
}

bool near_identity(const MoebiusMatrix& m) {
  for (double sgn : {1.0, -1.0}) {
    if (std::abs(m.a - sgn) < kTol && std::abs(m.d - sgn) < kTol &&
        std::abs(m.b) < kTol && std::abs(m.c) < kTol)
      return true;
  }
  return false;
}

}  // namespace

std::pair<MoebiusMatrix, MoebiusMatrix> lift_representation(
    const TraceTripleValues& t) {
  Complex mu = t.x * t.x + t.y * t.y + t.z * t.z - t.x * t.y * t.z;
  if (std::abs(mu - 4.0) <= 1e-9 * (1.0 + std::abs(mu)))
    throw ElementaryRepresentation("mu = 4: elementary/reducible point");
  // zeta^2 + z zeta + 1 = 0; the two roots are inverses of each other.
  Complex disc = std::sqrt(t.z * t.z - 4.0);
  Complex r1 = (-t.z + disc) / 2.0, r2 = (-t.z - disc) / 2.0;
  Complex zeta;
  double m1 = std::abs(r1), m2 = std::abs(r2);
  if (std::abs(m1 - m2) <= 1e-12 * (m1 + m2))
    zeta = r1.imag() >= 0.0 ? r1 : r2;
  else
    zeta = m1 < m2 ? r1 : r2;
  MoebiusMatrix A{t.x, Complex{1.0}, Complex{-1.0}, Complex{0.0}};
  MoebiusMatrix B{Complex{0.0}, zeta, -1.0 / zeta, t.y};
  return {A, B};
}

MoebiusMatrix evaluate_word(const Word& w, const MoebiusMatrix& A,
                            const MoebiusMatrix& B) {
  MoebiusMatrix m;
  MoebiusMatrix Ai = A.inverse(), Bi = B.inverse();
  for (Let l : w.letters()) {
    switch (l) {
      case Let::a: m = m * A; break;
      case Let::A: m = m * Ai; break;
      case Let::b: m = m * B; break;
      case Let::B: m = m * Bi; break;
    }
  }
  return m;
}

H3Point apply_moebius(const MoebiusMatrix& m, const H3Point& p) {
  Complex cwd = m.c * p.w + m.d;
  double denom = std::norm(cwd) + std::norm(m.c) * p.t * p.t;
  Complex w = ((m.a * p.w + m.b) * std::conj(cwd) +
               m.a * std::conj(m.c) * p.t * p.t) /
              denom;
  return {w, p.t / denom};
}

BoundaryPoint apply_moebius(const MoebiusMatrix& m, const BoundaryPoint& p) {
  if (p.inf) {
    if (std::abs(m.c) < 1e-300) return BoundaryPoint::infinity();
    return BoundaryPoint::at(m.a / m.c);
  }
  Complex denom = m.c * p.z + m.d;
  Complex numer = m.a * p.z + m.b;
  if (std::abs(denom) < 1e-14 * (1.0 + std::abs(numer)))
    return BoundaryPoint::infinity();
  return BoundaryPoint::at(numer / denom);
}

double h3_distance(const H3Point& p, const H3Point& q) {
  double arg =
      1.0 + (std::norm(p.w - q.w) + (p.t - q.t) * (p.t - q.t)) /
                (2.0 * p.t * q.t);
  return std::acosh(std::max(arg, 1.0));
}

ComplexLength complex_half_length(const MoebiusMatrix& m) {
  if (near_identity(m)) throw IdentityMatrix("complex_half_length of +-I");
  Complex tr = m.trace();
  ComplexLength cl;
  if (std::abs(tr - 2.0) < kTol || std::abs(tr + 2.0) < kTol) {
    cl.lambda = Complex{0.0};
    cl.kind = ComplexLength::Kind::Parabolic;
    return cl;
  }
  Complex lambda = std::acosh(tr / 2.0);  // principal branch, Re >= 0
  if (lambda.real() < 0.0) lambda = -lambda;
  cl.lambda = lambda;
  bool real_interval = std::abs(tr.imag()) < kTol && std::abs(tr.real()) < 2.0;
  cl.kind = real_interval ? ComplexLength::Kind::Elliptic
                          : ComplexLength::Kind::Loxodromic;
  return cl;
}

Geodesic axis(const MoebiusMatrix& m) {
  if (near_identity(m)) throw IdentityMatrix("axis of +-I");
  Complex tr = m.trace();
  if (std::abs(tr * tr - 4.0) < 1e-12 * (1.0 + std::norm(tr)))
    throw ParabolicNoAxis("parabolic element has no axis");
  double scale = std::abs(m.a) + std::abs(m.b) + std::abs(m.c) + std::abs(m.d);
  if (std::abs(m.c) <= 1e-14 * scale) {
    // Fixed points: infinity and b/(d-a).
    return {BoundaryPoint::infinity(), BoundaryPoint::at(m.b / (m.d - m.a))};
  }
  Complex disc = std::sqrt(tr * tr - 4.0);
  Complex w1 = (m.a - m.d + disc) / (2.0 * m.c);
  Complex w2 = (m.a - m.d - disc) / (2.0 * m.c);
  return {BoundaryPoint::at(w1), BoundaryPoint::at(w2)};
}

H3Point geodesic_point(const Geodesic& g, double s) {
  if (g.e1.inf || g.e2.inf) {
    Complex base = g.e1.inf ? g.e2.z : g.e1.z;
    return {base, std::exp(g.e1.inf ? -s : s)};
  }
  Complex mid = (g.e1.z + g.e2.z) / 2.0;
  Complex half = (g.e2.z - g.e1.z) / 2.0;
  double rho = std::abs(half);
  Complex dir = half / rho;
  return {mid + rho * std::tanh(s) * dir, rho / std::cosh(s)};
}

namespace {

bool same_boundary_point(const BoundaryPoint& p, const BoundaryPoint& q) {
  if (p.inf || q.inf) return p.inf && q.inf;
  return std::abs(p.z - q.z) < 1e-14 * (1.0 + std::abs(p.z) + std::abs(q.z));
}

/// Cross-ratio ((p1-q1)(p2-q2)) / ((p1-q2)(p2-q1)); an infinite point drops
/// its two factors (it appears once above and once below).
Complex endpoint_cross_ratio(const BoundaryPoint& p1, const BoundaryPoint& p2,
                             const BoundaryPoint& q1,
                             const BoundaryPoint& q2) {
  Complex num{1.0}, den{1.0};
  if (!p1.inf && !q1.inf) num *= p1.z - q1.z;
  if (!p2.inf && !q2.inf) num *= p2.z - q2.z;
  if (!p1.inf && !q2.inf) den *= p1.z - q2.z;
  if (!p2.inf && !q1.inf) den *= p2.z - q1.z;
  return num / den;
}

}  // namespace

Perpendicular common_perpendicular(const Geodesic& g1, const Geodesic& g2) {
  for (const BoundaryPoint* p : {&g1.e1, &g1.e2})
    for (const BoundaryPoint* q : {&g2.e1, &g2.e2})
      if (same_boundary_point(*p, *q))
        throw SharedEndpoint("geodesics share an endpoint");
  // The cross-ratio is Moebius-invariant and, unlike the frame coordinates,
  // stays accurate when the two axes nearly coincide.
  Complex R = endpoint_cross_ratio(g1.e1, g1.e2, g2.e1, g2.e2);
  if (std::abs(1.0 - R) < 1e-15)
    throw SharedEndpoint("geodesics are indistinguishable");
  // cosh delta = (1+R)/(1-R); |R| > 1 is the swapped-orientation branch
  // (cosh flips sign, i.e. delta shifts by i pi).
  bool swapped = std::abs(R) > 1.0;
  if (swapped) R = 1.0 / R;
  Complex delta;
  Complex u = 2.0 * R / (1.0 - R);  // cosh delta - 1
  if (std::abs(u) < 1e-4) {
    // acosh(1+u) expanded about u = 0; the direct acosh would round u away.
    delta = std::sqrt(2.0 * u) * (1.0 - u / 12.0 + 3.0 * u * u / 160.0);
  } else {
    delta = std::acosh((1.0 + R) / (1.0 - R));
  }
  if (delta.real() < 0.0) delta = -delta;
  if (swapped) delta += Complex{0.0, M_PI};

  MoebiusMatrix T = frame_to_zero_inf(g1);
  BoundaryPoint pa = apply_moebius(T, g2.e1);
  BoundaryPoint pb = apply_moebius(T, g2.e2);
  if (pa.inf || pb.inf) throw SharedEndpoint("geodesics share an endpoint");
  Complex alpha = pa.z, beta = pb.z;

  Complex s = std::sqrt(alpha * beta);
  MoebiusMatrix Ti = T.inverse();
  Perpendicular perp;
  perp.delta = delta;
  perp.line = {apply_moebius(Ti, BoundaryPoint::at(s)),
               apply_moebius(Ti, BoundaryPoint::at(-s))};
  // Foot on g1: the perpendicular crosses the vertical axis at height |s|.
  perp.foot1 = apply_moebius(Ti, H3Point{Complex{0.0}, std::abs(s)});
  // Foot on g2: the point of g2 closest to the vertical axis.
  Geodesic img{BoundaryPoint::at(alpha), BoundaryPoint::at(beta)};
  auto off_axis = [&](double u) {
    H3Point p = geodesic_point(img, u);
    return std::abs(p.w) / p.t;
  };
  double u_star = golden_min(-40.0, 40.0, off_axis);
  perp.foot2 = apply_moebius(Ti, geodesic_point(img, u_star));
  return perp;
}

HyperellipticAxes hyperelliptic_axes(const MoebiusMatrix& A,
                                     const MoebiusMatrix& B) {
  MoebiusMatrix AB = A * B;
  Geodesic ax_a = axis(A), ax_b = axis(B), ax_ab = axis(AB);
  return {common_perpendicular(ax_a, ax_b).line,
          common_perpendicular(ax_a, ax_ab).line,
          common_perpendicular(ax_b, ax_ab).line};
}

double hexagon_bound(const MoebiusMatrix& U, const MoebiusMatrix& V) {
  MoebiusMatrix UVi = U * V.inverse();
  ComplexLength l1 = complex_half_length(U);
  ComplexLength l3 = complex_half_length(UVi);
  ComplexLength l5 = complex_half_length(V.inverse());
  if (l1.kind != ComplexLength::Kind::Loxodromic ||
      l3.kind != ComplexLength::Kind::Loxodromic ||
      l5.kind != ComplexLength::Kind::Loxodromic)
    throw NonLoxodromic("hexagon_bound needs loxodromic U, V, UV^-1");
  Complex s1 = l1.lambda, s3 = l3.lambda, s5 = l5.lambda;
  Complex term1 = std::cosh(s3) / (std::sinh(s1) * std::sinh(s5));
  Complex coth1 = std::cosh(s1) / std::sinh(s1);
  Complex coth5 = std::cosh(s5) / std::sinh(s5);
  return std::abs(term1) + std::abs(1.0 - coth1 * coth5);
}

MoebiusMatrix pi_rotation(const Geodesic& g) {
  if (g.e1.inf || g.e2.inf) {
    Complex p = g.e1.inf ? g.e2.z : g.e1.z;
    const Complex i{0.0, 1.0};
    return {i, -2.0 * p * i, Complex{0.0}, -i};
  }
  Complex p = g.e1.z, q = g.e2.z;
  Complex n = Complex{0.0, 1.0} * (p - q);
  return {(p + q) / n, -2.0 * p * q / n, 2.0 / n, -(p + q) / n};
}

}  // namespace bow
