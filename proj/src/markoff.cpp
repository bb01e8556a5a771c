#include "bow/markoff.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <set>
#include <unordered_map>

namespace bow {

namespace {

double tie_tol(double a, double b) { return 1e-9 * (1.0 + std::max(a, b)); }

Rational mirror(const Rational& r) {
  return r.is_infinity() ? r : Rational(-r.p, r.q);
}

// Final triangle (l, h; med) of the Stern-Brocot replay of r, with traces.
// Valid for every region except 0/1 and 1/0.
struct Triangle {
  RegionRef l, h, med;
};

Triangle replay_triangle(const TraceTriple& base, const Rational& r) {
  SbPath path = stern_brocot_path(r);
  Rational l(0, 1), h = Rational::infinity(), med(1, 1);
  Complex lt = base.x, ht = base.y;
  Complex mt = path.mirrored ? vieta_flip(base.x, base.y, base.z) : base.z;
  for (SbStep st : path.steps) {
    if (st == SbStep::Left) {
      Complex nm = vieta_flip(lt, mt, ht);
      h = med;
      ht = mt;
      med = mediant(l, h);
      mt = nm;
    } else {
      Complex nm = vieta_flip(mt, ht, lt);
      l = med;
      lt = mt;
      med = mediant(l, h);
      mt = nm;
    }
  }
  if (path.mirrored) {
    // The replay ran in the positive tree; the mirror map -p/q is a tree
    // isomorphism fixing 0/1 and 1/0, so only the addresses change.
    return {{mirror(l), lt}, {mirror(h), ht}, {mirror(med), mt}};
  }
  return {{l, lt}, {h, ht}, {med, mt}};
}

using VKey = std::array<long long, 6>;

VKey vertex_key(const TreeVertex& v) {
  std::array<std::pair<long long, long long>, 3> a = {
      std::pair{v.u.addr.p, v.u.addr.q},
      std::pair{v.v.addr.p, v.v.addr.q},
      std::pair{v.w.addr.p, v.w.addr.q}};
  std::sort(a.begin(), a.end());
  return {a[0].first, a[0].second, a[1].first,
          a[1].second, a[2].first, a[2].second};
}

// Coordinates of a region in the basis of an edge's adjacent regions
// (a -> (1,0), b -> (0,1)), normalised projectively so n >= 0.
struct FanCoords {
  long long m = 0, n = 0;
};

FanCoords fan_coords(const OrientedEdge& e, const Rational& r) {
  const Rational& a = e.u.addr;
  const Rational& b = e.v.addr;
  __int128 det = static_cast<__int128>(a.p) * b.q -
                 static_cast<__int128>(a.q) * b.p;
  __int128 m = static_cast<__int128>(b.q) * r.p -
               static_cast<__int128>(b.p) * r.q;
  __int128 n = static_cast<__int128>(a.p) * r.q -
               static_cast<__int128>(a.q) * r.p;
  if (det == -1) {
    m = -m;
    n = -n;
  }
  if (n < 0 || (n == 0 && m < 0)) {
    m = -m;
    n = -n;
  }
  return {static_cast<long long>(m), static_cast<long long>(n)};
}

const RegionRef& tail_region(const OrientedEdge& e) {
  return e.toward_w ? e.z : e.w;
}

}  // namespace

Complex vieta_flip(const Complex& x, const Complex& y, const Complex& z) {
  if (is_escaped(x) || is_escaped(y) || is_escaped(z))
    return Complex(kEscapeBound, 0);
  Complex r = x * y - z;
  if (std::abs(r) >= kEscapeBound) return Complex(kEscapeBound, 0);
  return r;
}

Complex mu_of(const TraceTriple& t) { return t.mu(); }

TraceTriple neighbour_triple(const TraceTriple& t, int slot) {
  switch (slot) {
    case 1:
      return {vieta_flip(t.y, t.z, t.x), t.y, t.z};
    case 2:
      return {t.x, vieta_flip(t.x, t.z, t.y), t.z};
    case 3:
      return {t.x, t.y, vieta_flip(t.x, t.y, t.z)};
    default:
      throw std::invalid_argument("neighbour_triple: slot must be 1, 2 or 3");
  }
}

OrientedEdge orient_edge(const RegionRef& u, const RegionRef& v,
                         const RegionRef& w) {
  Rational zaddr = farey_flip(u.addr, v.addr, w.addr);
  Complex zt = vieta_flip(u.trace, v.trace, w.trace);
  double mw = std::abs(w.trace), mz = std::abs(zt);
  OrientedEdge e{u, v, w, RegionRef{zaddr, zt}, true, false};
  double tol = tie_tol(mw, mz);
  if (mz > mw + tol) {
    e.toward_w = true;
    e.decisive = true;
  } else if (mw > mz + tol) {
    e.toward_w = false;
    e.decisive = true;
  }
  return e;
}

Complex region_trace(const TraceTriple& base, const Rational& r) {
  if (r == Rational(0, 1)) return base.x;
  if (r.is_infinity()) return base.y;
  return replay_triangle(base, r).med.trace;
}

SinkResult find_sink(const TraceTriple&, const TreeVertex& start,
                     int budget) {
  SinkResult res;
  res.vertex = start;
  TreeVertex v = start;
  auto note = [&res](const RegionRef& r) {
    res.min_trace_seen = std::min(res.min_trace_seen, std::abs(r.trace));
  };
  res.min_trace_seen = std::abs(v.u.trace);
  note(v.v);
  note(v.w);
  for (int step = 0;; ++step) {
    std::array<RegionRef*, 3> rr = {&v.u, &v.v, &v.w};
    int best = -1;
    double best_mod = 0;
    RegionRef best_z;
    for (int k = 0; k < 3; ++k) {
      const RegionRef& a = *rr[(k + 1) % 3];
      const RegionRef& b = *rr[(k + 2) % 3];
      OrientedEdge e = orient_edge(a, b, *rr[k]);
      if (!e.decisive || e.toward_w) continue;  // not a strict descent
      double mz = std::abs(e.z.trace);
      if (best < 0 || mz < best_mod) {
        best = k;
        best_mod = mz;
        best_z = e.z;
      }
    }
    if (best < 0) {
      res.found = true;
      break;
    }
    if (step >= budget) {
      res.found = false;
      break;
    }
    *rr[best] = best_z;
    note(best_z);
    res.steps = step + 1;
  }
  res.vertex = v;
  return res;
}

OmegaSet enumerate_omega(const TraceTriple& base, double m, int budget) {
  OmegaSet out;
  double in_tol = 1e-9 * (1.0 + std::abs(m));
  SinkResult sink = find_sink(base, base_vertex(base), budget);
  std::set<VKey> visited;
  std::deque<TreeVertex> queue;
  queue.push_back(sink.vertex);
  visited.insert(vertex_key(sink.vertex));
  std::unordered_map<Rational, Complex> regions;
  out.complete = true;
  while (!queue.empty()) {
    if (out.steps_used >= budget) {
      out.complete = false;
      break;
    }
    TreeVertex v = queue.front();
    queue.pop_front();
    ++out.steps_used;
    std::array<RegionRef, 3> rr = {v.u, v.v, v.w};
    for (const RegionRef& r : rr)
      if (std::abs(r.trace) <= m + in_tol) regions.emplace(r.addr, r.trace);
    for (int k = 0; k < 3; ++k) {
      const RegionRef& a = rr[(k + 1) % 3];
      const RegionRef& b = rr[(k + 2) % 3];
      OrientedEdge e = orient_edge(a, b, rr[k]);
      // Certified skip: nothing of modulus <= m lies past a decisively
      // inward edge whose far region and both adjacent regions exceed the
      // connectedness threshold.
      bool skip = e.decisive && e.toward_w &&
                  std::abs(e.z.trace) > m + in_tol &&
                  std::abs(a.trace) > 2.0 + 1e-9 &&
                  std::abs(b.trace) > 2.0 + 1e-9;
      if (skip) continue;
      TreeVertex nv{a, b, e.z};
      if (visited.insert(vertex_key(nv)).second) queue.push_back(nv);
    }
  }
  out.regions.reserve(regions.size());
  for (const auto& [addr, tr] : regions) out.regions.push_back({addr, tr});
  std::sort(out.regions.begin(), out.regions.end(),
            [](const RegionRef& l, const RegionRef& r) {
              return l.addr < r.addr;
            });
  return out;
}

BoundaryWalk boundary_walk(const TraceTriple& base, const Rational& region,
                           int steps) {
  BoundaryWalk walk;
  RegionRef y0, y1;
  if (region == Rational(0, 1)) {
    walk.u = {region, base.x};
    y0 = {Rational::infinity(), base.y};
    y1 = {Rational(1, 1), base.z};
  } else if (region.is_infinity()) {
    walk.u = {region, base.y};
    y0 = {Rational(0, 1), base.x};
    y1 = {Rational(1, 1), base.z};
  } else {
    Triangle tri = replay_triangle(base, region);
    walk.u = tri.med;
    y0 = tri.l;
    y1 = tri.h;
  }
  std::vector<RegionRef> fwd = {y0, y1};
  for (int i = 0; i < steps; ++i) {
    const RegionRef& prev = fwd[fwd.size() - 2];
    const RegionRef& cur = fwd.back();
    Rational next = farey_flip(walk.u.addr, cur.addr, prev.addr);
    fwd.push_back({next, vieta_flip(walk.u.trace, cur.trace, prev.trace)});
  }
  std::vector<RegionRef> bwd = {y1, y0};
  for (int i = 0; i < steps; ++i) {
    const RegionRef& prev = bwd[bwd.size() - 2];
    const RegionRef& cur = bwd.back();
    Rational next = farey_flip(walk.u.addr, cur.addr, prev.addr);
    bwd.push_back({next, vieta_flip(walk.u.trace, cur.trace, prev.trace)});
  }
  walk.ys.assign(bwd.rbegin(), bwd.rend() - 2);  // y_{-steps} .. y_{-1}
  walk.index0 = static_cast<int>(walk.ys.size());
  walk.ys.insert(walk.ys.end(), fwd.begin(), fwd.end());
  return walk;
}

OrientedEdge plughole(const TraceTriple& base, const Rational& region,
                      int search_width) {
  BoundaryWalk walk = boundary_walk(base, region, search_width + 2);
  auto mod = [&walk](int i) { return std::abs(walk.y(i).trace); };
  for (int step = 0; step <= 2 * search_width; ++step) {
    // scan order 0, -1, 1, -2, 2, ...
    int i = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
    // Edge (u, y_i) points toward the vertex q_i between y_i and y_{i+1}
    // iff the end region there is not the larger one; ties count as meeting.
    double f1 = mod(i + 1), b1 = mod(i - 1);
    if (f1 > b1 + tie_tol(f1, b1)) continue;
    double f2 = mod(i + 2), b2 = mod(i);
    if (b2 > f2 + tie_tol(f2, b2)) continue;
    // Heads meet at q_i; the third edge there must point decisively out.
    OrientedEdge e = orient_edge(walk.y(i), walk.y(i + 1), walk.u);
    if (!e.decisive || e.toward_w) continue;
    return e;
  }
  throw PlugholeNotFound("no plughole on the boundary of " + region.str() +
                         " within width " + std::to_string(search_width));
}

bool in_wake(const OrientedEdge& edge, const Rational& region) {
  if (region == edge.u.addr || region == edge.v.addr) return true;
  FanCoords c = fan_coords(edge, region);
  if (c.n == 0 || c.m == 0) return true;  // the adjacent regions themselves
  FanCoords t = fan_coords(edge, tail_region(edge).addr);
  return (c.m > 0) == (t.m > 0);
}

long long fib_weight(const OrientedEdge& edge, const Rational& region) {
  if (region == edge.u.addr || region == edge.v.addr) return 1;
  if (!in_wake(edge, region))
    throw NotInWake("region " + region.str() + " is not in the wake");
  FanCoords c = fan_coords(edge, region);
  return std::llabs(c.m) + std::llabs(c.n);
}

std::vector<RegionRef> descending_path(const TraceTriple& base,
                                       const Rational& from, double M,
                                       Mod2Type other_type, int budget) {
  Mod2Type eta = mod2_type(from);
  if (other_type == eta)
    throw std::invalid_argument(
        "descending_path: other_type must differ from the type of `from`");
  double in_tol = 1e-9 * (1.0 + std::abs(M));
  std::vector<RegionRef> path;
  path.push_back({from, region_trace(base, from)});
  int width = std::max(32, budget);
  while (std::abs(path.back().trace) > M + in_tol) {
    if (static_cast<int>(path.size()) > budget)
      throw BudgetExhausted("descending_path: budget exhausted before Omega");
    OrientedEdge e = plughole(base, path.back().addr, width);
    Mod2Type want =
        (mod2_type(path.back().addr) == eta) ? other_type : eta;
    if (mod2_type(e.u.addr) == want)
      path.push_back(e.u);
    else if (mod2_type(e.v.addr) == want)
      path.push_back(e.v);
    else
      throw std::logic_error("descending_path: no adjacent region of the "
                             "required type");
  }
  return path;
}

}  // namespace bow
