#include "bow/rational.hpp"

#include <cstdlib>
#include <numeric>

namespace bow {

namespace {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("rational address overflow");
  return r;
}

__int128 cross(const Rational& l, const Rational& r) {
  return static_cast<__int128>(l.p) * r.q - static_cast<__int128>(l.q) * r.p;
}

}  // namespace

Rational::Rational(long long num, long long den) : p(num), q(den) {
  if (q < 0) {
    p = -p;
    q = -q;
  }
  if (q == 0) {
    if (p == 0) throw std::invalid_argument("0/0 is not a rational");
    p = 1;  // both +-1/0 normalise to the single point at infinity
    return;
  }
  long long g = std::gcd(p < 0 ? -p : p, q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
}

bool Rational::operator<(const Rational& o) const {
  if (is_infinity()) return false;
  if (o.is_infinity()) return true;
  return static_cast<__int128>(p) * o.q < static_cast<__int128>(o.p) * q;
}

std::string Rational::str() const {
  return std::to_string(p) + "/" + std::to_string(q);
}

bool is_neighbour(const Rational& l, const Rational& r) {
  __int128 d = cross(l, r);
  return d == 1 || d == -1;
}

Rational mediant(const Rational& l, const Rational& r) {
  if (!is_neighbour(l, r)) throw NotNeighbours("mediant of non-neighbours");
  long long lp = l.p, lq = l.q, rp = r.p, rq = r.q;
  // Pick the infinity representative (+-1/0) whose side matches the finite
  // argument, so e.g. mediant(-1/1, 1/0) = -2/1.
  if (l.is_infinity() && rp < 0) lp = -1;
  if (r.is_infinity() && lp < 0) rp = -1;
  return Rational(checked_add(lp, rp), checked_add(lq, rq));
}

Rational farey_flip(const Rational& a, const Rational& b, const Rational& w) {
  Rational c1(checked_add(a.p, b.p), checked_add(a.q, b.q));
  Rational c2(checked_add(a.p, -b.p), checked_add(a.q, -b.q));
  if (c1 == w) return c2;
  if (c2 == w) return c1;
  throw std::logic_error("farey_flip: regions are not a vertex triple");
}

SbPath stern_brocot_path(const Rational& r) {
  SbPath path;
  if (r == Rational(0, 1)) {
    path.base = SbPath::Base::A;
    return path;
  }
  if (r.is_infinity()) {
    path.base = SbPath::Base::B;
    return path;
  }
  Rational target = r;
  if (r.p < 0) {
    path.mirrored = true;
    target = Rational(-r.p, r.q);
  }
  if (target == Rational(1, 1)) return path;
  Rational l(0, 1), h = Rational::infinity(), med(1, 1);
  while (!(med == target)) {
    if (target < med) {
      path.steps.push_back(SbStep::Left);
      h = med;
    } else {
      path.steps.push_back(SbStep::Right);
      l = med;
    }
    med = mediant(l, h);
  }
  return path;
}

std::string Mod2Type::str() const {
  return std::to_string(p2) + "/" + std::to_string(q2);
}

Mod2Type mod2_type(const Rational& r) {
  return Mod2Type{static_cast<uint8_t>(std::llabs(r.p) % 2),
                  static_cast<uint8_t>(r.q % 2)};
}

}  // namespace bow
