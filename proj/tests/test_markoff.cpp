#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <map>
#include <numeric>

#include "bow/markoff.hpp"
#include "doctest.h"

using namespace bow;
using boost::multiprecision::cpp_int;

namespace {

// Exact integer replay of the trace tree: descend the Stern-Brocot triangle
// from an integer base triple, flipping with exact Vieta arithmetic.
void integer_traces(const Rational& l, cpp_int tl, const Rational& h,
                    cpp_int th, const Rational& m, cpp_int tm, int depth,
                    std::map<Rational, cpp_int>& out) {
  out.emplace(m, tm);
  if (depth == 0) return;
  integer_traces(l, tl, m, tm, mediant(l, m), tl * tm - th, depth - 1, out);
  integer_traces(m, tm, h, th, mediant(m, h), tm * th - tl, depth - 1, out);
}

std::map<Rational, cpp_int> integer_tree(cpp_int x, cpp_int y, cpp_int z,
                                         int depth) {
  std::map<Rational, cpp_int> out;
  Rational a(0, 1), b = Rational::infinity();
  out.emplace(a, x);
  out.emplace(b, y);
  integer_traces(a, x, b, y, Rational(1, 1), z, depth, out);
  // Mirror side: the flip of z across (0/1, 1/0) seeds the negative tree.
  integer_traces(a, x, b, y, Rational(-1, 1), x * y - z, depth, out);
  return out;
}

}  // namespace

TEST_CASE("vieta flip and neighbour triples") {
  CHECK(vieta_flip(3, 3, 3) == Complex(6, 0));
  CHECK(vieta_flip(3, 6, 3) == Complex(15, 0));
  TraceTriple t{3, 3, 3};
  CHECK(mu_of(t) == Complex(0, 0));
  for (int slot : {1, 2, 3}) {
    TraceTriple n = neighbour_triple(t, slot);
    CHECK(std::abs(mu_of(n) - mu_of(t)) < 1e-12);  // mu is flip-invariant
    TraceTriple back = neighbour_triple(n, slot);
    CHECK(std::abs(back.x - t.x) < 1e-12);  // each flip is an involution
    CHECK(std::abs(back.y - t.y) < 1e-12);
    CHECK(std::abs(back.z - t.z) < 1e-12);
  }
  // Saturation: once escaped, flips stay at the sentinel.
  Complex big = vieta_flip(1e200, 1e200, 0);
  CHECK(is_escaped(big));
  CHECK(is_escaped(vieta_flip(big, 2, 0)));
}

TEST_CASE("region traces against the exact integer recursion") {
  TraceTriple base{3, 3, 3};
  auto oracle = integer_tree(3, 3, 3, 10);
  int checked = 0;
  for (const auto& [r, exact] : oracle) {
    if (std::abs(r.p) + r.q > 8) continue;
    Complex t = region_trace(base, r);
    CHECK(t.imag() == 0.0);
    CHECK(t.real() == static_cast<double>(exact));
    ++checked;
  }
  CHECK(checked > 30);
  // Spot values: 3x the Markoff numbers 1, 2, 5, 29, 433.
  CHECK(region_trace(base, Rational(1, 2)).real() == 6.0);
  CHECK(region_trace(base, Rational(1, 3)).real() == 15.0);
  CHECK(region_trace(base, Rational(2, 5)).real() == 87.0);
  CHECK(region_trace(base, Rational(3, 7)).real() == 507.0);
  CHECK(region_trace(base, Rational(-1, 2)).real() == 15.0);
}

TEST_CASE("region traces on an asymmetric integer base") {
  TraceTriple base{3, 4, 6};  // mu = 3*3 + 16 + 36 - 72 = -11
  auto oracle = integer_tree(3, 4, 6, 9);
  for (const auto& [r, exact] : oracle) {
    if (std::abs(r.p) + r.q > 7) continue;
    if (abs(exact) > cpp_int(1) << 52) continue;
    CHECK(region_trace(base, r).real() == static_cast<double>(exact));
  }
}

TEST_CASE("orient edge") {
  TraceTriple base{3, 3, 3};
  RegionRef u{Rational(0, 1), 3}, v{Rational(1, 1), 3};
  RegionRef w{Rational::infinity(), 3};
  OrientedEdge e = orient_edge(u, v, w);
  // z-hat = 3*3 - 3 = 6, so the arrow points toward w decisively.
  CHECK(e.toward_w);
  CHECK(e.decisive);
  CHECK(e.z.trace == Complex(6, 0));
  CHECK(e.z.addr == Rational(1, 2));

  // Tie: equal moduli resolve toward w but are flagged non-decisive.
  RegionRef u2{Rational(0, 1), 2}, v2{Rational(1, 1), 2};
  RegionRef w2{Rational::infinity(), 2};
  OrientedEdge e2 = orient_edge(u2, v2, w2);  // z-hat = 2
  CHECK(e2.toward_w);
  CHECK_FALSE(e2.decisive);
}

TEST_CASE("omega enumeration") {
  TraceTriple base{3, 3, 3};
  OmegaSet om = enumerate_omega(base, 3.0, 1000);
  CHECK(om.complete);
  REQUIRE(om.regions.size() == 3);  // exactly the base triangle
  for (const auto& r : om.regions) CHECK(std::abs(r.trace) <= 3.0 + 1e-12);

  OmegaSet om2 = enumerate_omega(base, 2.0, 1000);
  CHECK(om2.complete);
  CHECK(om2.regions.empty());

  // On (1,1,1) every region trace lies in [-2,2]; the set is infinite and
  // the budget truncates it.
  OmegaSet om3 = enumerate_omega(TraceTriple{1, 1, 1}, 2.0, 50);
  CHECK_FALSE(om3.complete);
  CHECK(om3.regions.size() > 10);
}

TEST_CASE("find sink descends to the base vertex") {
  TraceTriple base{3, 3, 3};
  // Start one step away: vertex (0/1, 1/1, 1/2) with traces (3, 3, 6).
  TreeVertex start{{Rational(0, 1), 3},
                   {Rational(1, 1), 3},
                   {Rational(1, 2), 6}};
  SinkResult s = find_sink(base, start, 100);
  CHECK(s.found);
  CHECK(s.min_trace_seen == 3.0);
  std::set<Rational> addrs{s.vertex.u.addr, s.vertex.v.addr, s.vertex.w.addr};
  CHECK(addrs == std::set<Rational>{Rational(0, 1), Rational::infinity(),
                                    Rational(1, 1)});
  // Zero budget reports failure rather than guessing.
  CHECK_FALSE(find_sink(base, start, 0).found);
}

TEST_CASE("boundary walk satisfies the edge recurrence") {
  TraceTriple base{3, 3, 3};
  for (const Rational& r : {Rational(1, 2), Rational(2, 5), Rational(0, 1),
                            Rational::infinity(), Rational(-1, 2)}) {
    BoundaryWalk w = boundary_walk(base, r, 6);
    Complex phi = region_trace(base, r);
    CHECK(w.u.trace == phi);
    REQUIRE(w.ys.size() >= 4);
    for (int i = 1; i + 1 < static_cast<int>(w.ys.size()); ++i) {
      Complex expect = phi * w.ys[i].trace - w.ys[i - 1].trace;
      CHECK(std::abs(w.ys[i + 1].trace - expect) <=
            1e-9 * (1 + std::abs(expect)));
      // Consecutive boundary regions are Farey neighbours of u and of
      // each other.
      CHECK(is_neighbour(w.ys[i].addr, r));
      CHECK(is_neighbour(w.ys[i].addr, w.ys[i + 1].addr));
    }
  }
}

TEST_CASE("plughole of a large region") {
  TraceTriple base{3, 3, 3};
  Rational r(2, 5);  // trace 87
  OrientedEdge e = plughole(base, r, 64);
  // The third edge at the meeting vertex sits between two consecutive
  // boundary regions and points decisively away from r.
  CHECK(e.decisive);
  CHECK_FALSE(e.toward_w);
  CHECK(e.w.addr == r);
  CHECK(is_neighbour(e.u.addr, r));
  CHECK(is_neighbour(e.v.addr, r));
  CHECK(is_neighbour(e.u.addr, e.v.addr));
  CHECK(std::abs(e.z.trace) < std::abs(e.w.trace));
  CHECK(e.z.trace == vieta_flip(e.u.trace, e.v.trace, e.w.trace));
  // Both boundary edges at that vertex point toward it: each adjacent
  // boundary region beats its outer neighbour on the walk.
  BoundaryWalk bw = boundary_walk(base, r, 66);
  int iu = -1, iv = -1;
  for (int i = 0; i < static_cast<int>(bw.ys.size()); ++i) {
    if (bw.ys[i].addr == e.u.addr) iu = i;
    if (bw.ys[i].addr == e.v.addr) iv = i;
  }
  REQUIRE(iu >= 1);
  REQUIRE(iv >= 0);
  REQUIRE(std::abs(iu - iv) == 1);
  int lo = std::min(iu, iv), hi = std::max(iu, iv);
  REQUIRE(hi + 1 < static_cast<int>(bw.ys.size()));
  CHECK(std::abs(bw.ys[lo].trace) <= std::abs(bw.ys[hi + 1].trace) + 1e-9);
  CHECK(std::abs(bw.ys[hi].trace) <= std::abs(bw.ys[lo - 1].trace) + 1e-9);
}

TEST_CASE("fibonacci weights and wakes") {
  TraceTriple base{3, 3, 3};
  RegionRef u{Rational(0, 1), 3}, v{Rational(1, 1), 3};
  RegionRef w{Rational::infinity(), 3};
  OrientedEdge e = orient_edge(u, v, w);  // arrow toward 1/2 side
  CHECK(fib_weight(e, Rational(0, 1)) == 1);
  CHECK(fib_weight(e, Rational(1, 1)) == 1);
  CHECK(fib_weight(e, Rational(1, 2)) == 2);
  CHECK(fib_weight(e, Rational(1, 3)) == 3);
  CHECK(fib_weight(e, Rational(2, 3)) == 3);
  CHECK(fib_weight(e, Rational(2, 5)) == 5);
  CHECK(in_wake(e, Rational(1, 2)));
  CHECK(in_wake(e, Rational(2, 5)));
  CHECK_FALSE(in_wake(e, Rational::infinity()));
  CHECK_FALSE(in_wake(e, Rational(-1, 2)));
  CHECK_THROWS_AS(fib_weight(e, Rational::infinity()), NotInWake);

  // Mediant additivity inside the wake: F(mediant) = F(l) + F(h).
  Rational l(1, 2), h(1, 3), m = mediant(l, h);
  CHECK(fib_weight(e, m) == fib_weight(e, l) + fib_weight(e, h));
}

TEST_CASE("descending path") {
  TraceTriple base{3, 3, 3};
  Rational from(13, 21);
  Mod2Type eta = mod2_type(from);
  Mod2Type other = (eta == kType01) ? kType10
                   : (eta == kType10) ? kType11
                                      : kType01;
  auto path = descending_path(base, from, 3.5, other, 200);
  REQUIRE(!path.empty());
  CHECK(path.front().addr == from);
  CHECK(std::abs(path.back().trace) <= 3.5);
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    CHECK(is_neighbour(path[i].addr, path[i + 1].addr));
    CHECK(std::abs(path[i + 1].trace) < std::abs(path[i].trace));
    // Types alternate within the basic pair {eta, other}.
    Mod2Type ti = mod2_type(path[i].addr);
    Mod2Type tj = mod2_type(path[i + 1].addr);
    CHECK(ti != tj);
    CHECK((ti == eta || ti == other));
    CHECK((tj == eta || tj == other));
  }
  CHECK_THROWS_AS(descending_path(base, from, 3.5, eta, 200),
                  std::invalid_argument);
  CHECK_THROWS_AS(descending_path(base, from, 3.5, other, 0),
                  BudgetExhausted);
}
