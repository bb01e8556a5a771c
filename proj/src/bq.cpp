#include "bow/bq.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_set>

#include "json.hpp"

namespace bow {

namespace {

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

enum class Growth { Escapes, Decays, Bounded, Ambiguous };

Growth classify_direction(const Complex& u, Complex prev, Complex cur,
                          int steps) {
  double seed = std::max({std::abs(prev), std::abs(cur), 1e-300});
  double peak = seed;
  for (int i = 0; i < steps; ++i) {
    Complex nxt = vieta_flip(u, cur, prev);
    prev = cur;
    cur = nxt;
    peak = std::max(peak, std::abs(cur));
  }
  double last = std::abs(cur);
  if (last >= kEscapeBound || last > 1e6 * (1.0 + seed)) return Growth::Escapes;
  if (last < 1e-6 * seed) return Growth::Decays;
  if (peak <= 1e3 * (1.0 + seed)) return Growth::Bounded;
  return Growth::Ambiguous;
}

}  // namespace

std::string to_string(RecurrenceClass c) {
  switch (c) {
    case RecurrenceClass::EscapesBothWays:
      return "escapes_both_ways";
    case RecurrenceClass::DecaysOneWay:
      return "decays_one_way";
    case RecurrenceClass::Bounded:
      return "bounded";
    default:
      return "unknown";
  }
}

bool in_real_interval(const Complex& t, double tol) {
  return std::abs(t.imag()) <= tol && t.real() >= -2.0 - tol &&
         t.real() <= 2.0 + tol;
}

RecurrenceClass boundary_recurrence(const TraceTriple& base,
                                    const Rational& region, int steps) {
  BoundaryWalk walk = boundary_walk(base, region, 0);
  Complex u = walk.u.trace;
  Complex y0 = walk.y(0).trace, y1 = walk.y(1).trace;
  Growth fwd = classify_direction(u, y0, y1, steps);
  Growth bwd = classify_direction(u, y1, y0, steps);
  if (fwd == Growth::Escapes && bwd == Growth::Escapes)
    return RecurrenceClass::EscapesBothWays;
  if ((fwd == Growth::Escapes && bwd == Growth::Decays) ||
      (fwd == Growth::Decays && bwd == Growth::Escapes))
    return RecurrenceClass::DecaysOneWay;
  if (fwd == Growth::Bounded && bwd == Growth::Bounded)
    return RecurrenceClass::Bounded;
  return RecurrenceClass::Unknown;
}

BqVerdict bq_test(const TraceTriple& base, const BqConfig& cfg) {
  Complex mu = base.mu();
  if (std::abs(mu - 4.0) <= 1e-9 * (1.0 + std::abs(mu)))
    throw ElementaryRepresentation(
        "mu = 4: elementary (reducible) representation");

  BqVerdict out;
  Complex smu = std::sqrt(mu);
  double prox = cfg.tol * (1.0 + std::abs(smu));

  auto check_region = [&](const RegionRef& r, int depth) -> bool {
    if (std::abs(r.trace - smu) <= prox || std::abs(r.trace + smu) <= prox) {
      RecurrenceClass rc =
          boundary_recurrence(base, r.addr, cfg.boundary_budget);
      if (rc != RecurrenceClass::EscapesBothWays) {
        out.outcome = BqOutcome::FailsBQ;
        out.witness = BqWitness{WitnessKind::ExceptionalBoundary, r, rc};
        out.depth_used = depth;
        return true;
      }
    }
    if (in_real_interval(r.trace, cfg.tol)) {
      out.outcome = BqOutcome::FailsBQ;
      out.witness = BqWitness{WitnessKind::PrimitiveInInterval, r,
                              RecurrenceClass::Unknown};
      out.depth_used = depth;
      return true;
    }
    return false;
  };

  TreeVertex bv = base_vertex(base);
  for (const RegionRef& r : {bv.u, bv.v, bv.w})
    if (check_region(r, 0)) return out;

  SinkResult sink = find_sink(base, bv, cfg.depth_budget);

  AttractingTree tree;
  std::set<VKey> visited;
  std::unordered_set<Rational> omega2_seen, checked;
  std::deque<TreeVertex> queue;
  queue.push_back(sink.vertex);
  visited.insert(vertex_key(sink.vertex));
  int depth = 0;
  while (!queue.empty()) {
    if (depth >= cfg.depth_budget) {
      out.outcome = BqOutcome::Unknown;
      out.depth_used = depth;
      return out;
    }
    TreeVertex v = queue.front();
    queue.pop_front();
    ++depth;
    std::array<RegionRef, 3> rr = {v.u, v.v, v.w};
    for (const RegionRef& r : rr) {
      if (!checked.insert(r.addr).second) continue;
      if (check_region(r, depth)) return out;
      if (std::abs(r.trace) <= 2.0 + cfg.tol &&
          omega2_seen.insert(r.addr).second)
        tree.omega2.push_back(r);
    }
    tree.vertices.push_back(v);
    for (int k = 0; k < 3; ++k) {
      const RegionRef& a = rr[(k + 1) % 3];
      const RegionRef& b = rr[(k + 2) % 3];
      OrientedEdge e = orient_edge(a, b, rr[k]);
      bool crossing = e.decisive && e.toward_w &&
                      std::abs(e.z.trace) > cfg.m + cfg.tol &&
                      std::abs(a.trace) > 2.0 + cfg.tol &&
                      std::abs(b.trace) > 2.0 + cfg.tol;
      if (crossing) {
        if (checked.insert(e.z.addr).second && check_region(e.z, depth))
          return out;
        tree.boundary.push_back(e);
        continue;
      }
      TreeVertex nv{a, b, e.z};
      if (visited.insert(vertex_key(nv)).second) queue.push_back(nv);
    }
  }
  out.depth_used = depth;
  if (!tree.omega2.empty()) {
    // Finitely many small-trace regions is consistent with BQ, but the
    // certificate standard requires none; stay conservative.
    out.outcome = BqOutcome::Unknown;
    return out;
  }
  out.outcome = BqOutcome::SatisfiesBQ;
  out.certificate_size = static_cast<int>(tree.vertices.size());
  out.certificate = std::move(tree);
  return out;
}

bool validate_certificate(const TraceTriple& base,
                          const AttractingTree& cert) {
  if (cert.vertices.empty()) return false;
  auto trace_ok = [&](const RegionRef& r) {
    Complex t = region_trace(base, r.addr);
    return std::abs(t - r.trace) <= 1e-9 * (1.0 + std::abs(t));
  };
  const size_t n = cert.vertices.size();
  std::set<VKey> keys;
  for (const TreeVertex& v : cert.vertices) {
    if (!trace_ok(v.u) || !trace_ok(v.v) || !trace_ok(v.w)) return false;
    if (!is_neighbour(v.u.addr, v.v.addr) ||
        !is_neighbour(v.v.addr, v.w.addr) ||
        !is_neighbour(v.u.addr, v.w.addr))
      return false;
    for (const RegionRef* r : {&v.u, &v.v, &v.w})
      if (in_real_interval(r->trace)) return false;
    keys.insert(vertex_key(v));
  }
  // Connectivity: vertices are adjacent iff they share two regions.
  std::vector<size_t> parent(n);
  for (size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  auto shares_two = [](const TreeVertex& a, const TreeVertex& b) {
    int shared = 0;
    for (const RegionRef* x : {&a.u, &a.v, &a.w})
      for (const RegionRef* y : {&b.u, &b.v, &b.w})
        if (x->addr == y->addr) ++shared;
    return shared == 2;
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (shares_two(cert.vertices[i], cert.vertices[j]))
        parent[find(i)] = find(j);
  for (size_t i = 0; i < n; ++i)
    if (find(i) != find(0)) return false;
  // Boundary records: recompute orientation; must be decisively inward with
  // both adjacent traces outside the connectedness disc.
  std::set<VKey> sealed;  // far vertices covered by a boundary record
  for (const OrientedEdge& e : cert.boundary) {
    RegionRef u{e.u.addr, region_trace(base, e.u.addr)};
    RegionRef v{e.v.addr, region_trace(base, e.v.addr)};
    RegionRef w{e.w.addr, region_trace(base, e.w.addr)};
    if (!e.toward_w) return false;  // record claims outward: tampered
    OrientedEdge re = orient_edge(u, v, w);
    if (!re.decisive || !re.toward_w) return false;
    if (std::abs(u.trace) <= 2.0 || std::abs(v.trace) <= 2.0) return false;
    if (in_real_interval(re.z.trace)) return false;
    if (std::abs(re.z.trace - e.z.trace) > 1e-9 * (1.0 + std::abs(re.z.trace)))
      return false;
    sealed.insert(vertex_key(TreeVertex{u, v, re.z}));
  }
  // Closure: every edge leaving the tree must carry a boundary record.
  for (const TreeVertex& v : cert.vertices) {
    std::array<const RegionRef*, 3> rr = {&v.u, &v.v, &v.w};
    for (int k = 0; k < 3; ++k) {
      const RegionRef& a = *rr[(k + 1) % 3];
      const RegionRef& b = *rr[(k + 2) % 3];
      OrientedEdge e = orient_edge(a, b, *rr[k]);
      VKey far = vertex_key(TreeVertex{a, b, e.z});
      if (!keys.count(far) && !sealed.count(far)) return false;
    }
  }
  return true;
}

FibGrowthReport fibonacci_growth_report(
    const TraceTriple& base, int level, double floor,
    const std::vector<Rational>& exceptional) {
  FibGrowthReport rep;
  rep.c_lower = std::numeric_limits<double>::infinity();
  bool any_lower = false;
  std::unordered_set<Rational> seen;
  auto consider = [&](const Rational& r) {
    if (!seen.insert(r).second) return;
    Complex t = region_trace(base, r);
    double norm =
        r.is_infinity() ? 1.0 : static_cast<double>(std::llabs(r.p) + r.q);
    double ratio = std::log(std::max(1.0, std::abs(t))) / norm;
    rep.c_upper = std::max(rep.c_upper, ratio);
    if (std::find(exceptional.begin(), exceptional.end(), r) !=
        exceptional.end())
      return;
    any_lower = true;
    rep.c_lower = std::min(rep.c_lower, ratio);
    if (ratio < floor) rep.violations.push_back({r, t});
  };
  // The base layer is always reported.
  consider(Rational(0, 1));
  consider(Rational::infinity());
  consider(Rational(1, 1));
  consider(Rational(-1, 1));
  for (long long q = 1; q <= level; ++q)
    for (long long p = -(level - q); p <= level - q; ++p)
      if (std::gcd(std::llabs(p), q) == 1) consider(Rational(p, q));
  if (!any_lower) rep.c_lower = 0;
  return rep;
}

std::string verdict_json(const BqVerdict& v) {
  nlohmann::json j;
  switch (v.outcome) {
    case BqOutcome::SatisfiesBQ:
      j["verdict"] = "bq";
      break;
    case BqOutcome::FailsBQ:
      j["verdict"] = "not_bq";
      break;
    default:
      j["verdict"] = "unknown";
  }
  if (v.witness) {
    const BqWitness& w = *v.witness;
    j["witness"] = {
        {"kind", w.kind == WitnessKind::PrimitiveInInterval
                     ? "primitive_in_interval"
                     : "exceptional_boundary"},
        {"region", w.region.addr.str()},
        {"trace", {w.region.trace.real(), w.region.trace.imag()}},
        {"recurrence", to_string(w.recurrence)}};
  } else {
    j["witness"] = nullptr;
  }
  j["certificate_size"] = v.certificate_size;
  j["depth_used"] = v.depth_used;
  return j.dump();
}

}  // namespace bow
