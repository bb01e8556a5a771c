#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bow {

struct NotNeighbours : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A reduced fraction p/q addressing a Farey region. q >= 0, gcd(|p|,q) = 1,
/// and the single point at infinity is stored as 1/0.
struct Rational {
  long long p = 0;
  long long q = 1;

  Rational() = default;
  Rational(long long num, long long den);

  static Rational infinity() { return Rational(1, 0); }

  bool is_infinity() const { return q == 0; }

  friend bool operator==(const Rational&, const Rational&) = default;

  // Numeric order with infinity counted as +inf.
  bool operator<(const Rational& o) const;

  std::string str() const;
};

/// |ps - qr| = 1 for l = p/q, r = r/s.
bool is_neighbour(const Rational& l, const Rational& r);

/// Farey mediant (p+r)/(q+s) of a neighbour pair. When one argument is
/// infinity its representative sign is matched to the other argument so the
/// mediant lies between them on the circle.
Rational mediant(const Rational& l, const Rational& r);

/// Given three pairwise-neighbour regions (a, b, w) around a vertex, the
/// third region on the far side of the edge (a, b).
Rational farey_flip(const Rational& a, const Rational& b, const Rational& w);

enum class SbStep : uint8_t { Left, Right };

/// Address of a region in the triangle tree rooted at (0/1, 1/0, 1/1).
/// `mirrored` selects the negative side: the path is replayed for |r| in the
/// mirrored base triangle (0/1, 1/0, -1/1). The base tag identifies which of
/// the three base regions anchors an empty path.
struct SbPath {
  enum class Base : uint8_t { A, B, AB };  // 0/1, 1/0, 1/1
  Base base = Base::AB;
  bool mirrored = false;
  std::vector<SbStep> steps;  // each step descends into a child triangle
};

/// Minimal triangle-tree path whose mediant replay reproduces r.
SbPath stern_brocot_path(const Rational& r);

/// Mod-2 equivalence class of p/q: one of 0/1, 1/0, 1/1.
struct Mod2Type {
  uint8_t p2 = 0, q2 = 1;
  friend bool operator==(const Mod2Type&, const Mod2Type&) = default;
  std::string str() const;
};

inline constexpr Mod2Type kType01{0, 1};
inline constexpr Mod2Type kType10{1, 0};
inline constexpr Mod2Type kType11{1, 1};

Mod2Type mod2_type(const Rational& r);

}  // namespace bow

template <>
struct std::hash<bow::Rational> {
  size_t operator()(const bow::Rational& r) const noexcept {
    return std::hash<long long>()(r.p) * 0x9e3779b97f4a7c15ull ^
           std::hash<long long>()(r.q);
  }
};
