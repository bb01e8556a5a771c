#include "bow/pscheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "json.hpp"

namespace bow {

namespace {

MoebiusMatrix letter_matrix(Let l, const MoebiusMatrix& A,
                            const MoebiusMatrix& B) {
  switch (l) {
    case Let::a:
      return A;
    case Let::A:
      return A.inverse();
    case Let::b:
      return B;
    default:
      return B.inverse();
  }
}

/// All regions with |p|+q <= level, negatives included, 1/0 first.
std::vector<Rational> layer(int level, bool include_negative) {
  std::vector<Rational> out;
  out.push_back(Rational::infinity());
  for (long long q = 1; q <= level; ++q)
    for (long long p = include_negative ? -(level - q) : 0; p <= level - q;
         ++p)
      if (std::gcd(std::llabs(p), q) == 1) out.emplace_back(p, q);
  return out;
}

const Geodesic& axis_for_pair(const HyperellipticAxes& axes, BasicPair p) {
  switch (p) {
    case BasicPair::AB:
      return axes.e_ab;
    case BasicPair::A_AB:
      return axes.e_a_ab;
    default:
      return axes.e_b_ab;
  }
}

}  // namespace

BrokenGeodesic broken_geodesic(const Word& w, const MoebiusMatrix& A,
                               const MoebiusMatrix& B, const H3Point& O) {
  if (!w.cyclically_shortest())
    throw NotCyclicallyShortest("broken geodesic needs a cyclically shortest "
                                "word");
  BrokenGeodesic bg;
  bg.word = w;
  bg.vertices.push_back(O);
  MoebiusMatrix prefix;
  for (Let l : w.letters()) {
    prefix = prefix * letter_matrix(l, A, B);
    bg.vertices.push_back(apply_moebius(prefix, O));
  }
  return bg;
}

double bending_angle(const H3Point& P, const H3Point& Q, const H3Point& R) {
  double c1 = h3_distance(Q, P);
  double c2 = h3_distance(Q, R);
  if (c1 < 1e-12 || c2 < 1e-12)
    throw DegenerateSegment("bending angle at a repeated vertex");
  double opp = h3_distance(P, R);
  double cosang = (std::cosh(c1) * std::cosh(c2) - std::cosh(opp)) /
                  (std::sinh(c1) * std::sinh(c2));
  return std::acos(std::clamp(cosang, -1.0, 1.0));
}

QgEstimate ps_estimate(const TraceTriple& base, int level) {
  auto [A, B] = lift_representation({base.x, base.y, base.z});
  const H3Point O = base_point();
  QgEstimate est;
  est.level = level;
  est.min_ratio = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> samples;  // (||w||, d)
  for (const Rational& r : layer(level, true)) {
    Word w = farey_word(r);
    size_t n = w.length();
    // Accumulate each subword of the doubled word from scratch; a global
    // prefix-product shortcut would cancel catastrophically once the
    // prefixes grow large.
    for (size_t i = 0; i < 2 * n; ++i) {
      MoebiusMatrix g;
      for (size_t j = i + 1; j <= 2 * n; ++j) {
        g = g * letter_matrix(w.letters()[(j - 1) % n], A, B);
        double d = h3_distance(O, apply_moebius(g, O));
        double len = static_cast<double>(j - i);
        samples.emplace_back(len, d);
        est.min_ratio = std::min(est.min_ratio, d / len);
      }
    }
  }
  double max_ratio = 1.0;
  for (const auto& [len, d] : samples) max_ratio = std::max(max_ratio, d / len);
  est.K_hat = max_ratio;
  for (const auto& [len, d] : samples)
    est.eps_hat = std::max(est.eps_hat, len / est.K_hat - d);
  if (!std::isfinite(est.min_ratio)) est.min_ratio = 0.0;
  return est;
}

PsVerdict ps_verdict(const TraceTriple& base, const PsConfig& cfg) {
  PsVerdict out;
  // An elliptic or parabolic primitive image rules PS out directly.
  for (const Rational& r : layer(cfg.level, true)) {
    Complex t = region_trace(base, r);
    if (std::abs(t.imag()) <= cfg.tol && t.real() >= -2.0 - cfg.tol &&
        t.real() <= 2.0 + cfg.tol) {
      out.outcome = PsOutcome::NotPS;
      out.witness = farey_word(r);
      out.witness_region = r;
      out.estimate = ps_estimate(base, cfg.level);
      return out;
    }
  }
  int top = std::max(cfg.level, 4);
  QgEstimate e0 = ps_estimate(base, top - 2);
  QgEstimate e1 = ps_estimate(base, top - 1);
  QgEstimate e2 = ps_estimate(base, top);
  out.estimate = e2;
  bool decreasing = e2.min_ratio < e1.min_ratio && e1.min_ratio < e0.min_ratio;
  if (e2.min_ratio < cfg.floor && decreasing) {
    out.outcome = PsOutcome::NotPS;
    return out;
  }
  bool stable = e2.min_ratio >= 0.9 * e1.min_ratio &&
                e1.min_ratio >= 0.9 * e0.min_ratio;
  if (e2.min_ratio >= cfg.floor && stable)
    out.outcome = PsOutcome::LikelyPS;
  else
    out.outcome = PsOutcome::Unknown;
  return out;
}

BipReport bip_report(const TraceTriple& base, int level) {
  auto [A, B] = lift_representation({base.x, base.y, base.z});
  const H3Point O = base_point();
  HyperellipticAxes axes = hyperelliptic_axes(A, B);
  BipReport rep;
  rep.level = level;
  for (const Rational& r : layer(level, false)) {
    BipRecord rec;
    rec.region = r;
    bool have_word = false;
    for (BasicPair p :
         {BasicPair::AB, BasicPair::A_AB, BasicPair::B_AB}) {
      if (!admits(p, mod2_type(r))) continue;
      try {
        rec.word = palindromic_representative(r, p);
        rec.pair = p;
        have_word = true;
        break;
      } catch (const NotFound&) {
      }
    }
    if (!have_word) continue;  // no palindromic rotation for this region
    MoebiusMatrix M = evaluate_word(rec.word, A, B);
    ComplexLength cl = complex_half_length(M);
    if (cl.kind == ComplexLength::Kind::Parabolic) {
      rec.parabolic = true;  // degenerate axis meeting E at infinity
      rep.records.push_back(rec);
      continue;
    }
    Geodesic ax = axis(M);
    Perpendicular perp =
        common_perpendicular(ax, axis_for_pair(axes, rec.pair));
    rec.residual = std::abs(std::cosh(perp.delta));
    if (perp.delta.real() > 1e-6) {
      rec.no_intersection = true;  // unbounded-evidence entry
      rep.records.push_back(rec);
      continue;
    }
    rec.point = {0.5 * (perp.foot1.w + perp.foot2.w),
                 0.5 * (perp.foot1.t + perp.foot2.t)};
    rec.distance = h3_distance(rec.point, O);
    rep.D_hat = std::max(rep.D_hat, rec.distance);
    rep.records.push_back(rec);
  }
  return rep;
}

DecayProbe perpendicular_decay_probe(const TraceTriple& base,
                                     const std::vector<RegionRef>& path) {
  DecayProbe probe;
  if (path.size() < 2) return probe;
  BasicPair pair =
      pair_for_types(mod2_type(path[0].addr), mod2_type(path[1].addr));
  auto [A, B] = lift_representation({base.x, base.y, base.z});
  std::vector<Geodesic> axes;
  std::vector<double> half;
  for (const RegionRef& r : path) {
    Word w = palindromic_representative(r.addr, pair);
    MoebiusMatrix M = evaluate_word(w, A, B);
    ComplexLength cl = complex_half_length(M);
    if (cl.kind != ComplexLength::Kind::Loxodromic)
      throw NonLoxodromic("decay probe needs loxodromic images");
    axes.push_back(axis(M));
    half.push_back(cl.lambda.real());
  }
  for (size_t i = 0; i + 1 < axes.size(); ++i) {
    // |delta| covers both the disjoint case (distance) and the Fuchsian
    // case, where consecutive axes cross at a small angle. Pairs whose
    // endpoints agree to double precision are skipped: their gap is below
    // what endpoint coordinates can resolve.
    try {
      double gap = std::abs(common_perpendicular(axes[i], axes[i + 1]).delta);
      probe.gaps.push_back(gap);
      probe.half_lengths.push_back(half[i] + half[i + 1]);
      probe.sum_gaps += gap;
    } catch (const SharedEndpoint&) {
    }
  }
  try {
    probe.end_span =
        std::abs(common_perpendicular(axes.front(), axes.back()).delta);
  } catch (const SharedEndpoint&) {
    probe.end_span = 0.0;
  }
  // Least-squares fit of log gap against the half-length floor.
  std::vector<std::pair<double, double>> pts;
  for (size_t i = 0; i < probe.gaps.size(); ++i)
    if (probe.gaps[i] > 0)
      pts.emplace_back(probe.half_lengths[i], std::log(probe.gaps[i]));
  if (pts.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double n = static_cast<double>(pts.size());
    double denom = n * sxx - sx * sx;
    if (std::abs(denom) > 1e-12) {
      probe.slope = (n * sxy - sx * sy) / denom;
      probe.intercept = (sy - probe.slope * sx) / n;
      probe.has_slope = true;
    }
  }
  return probe;
}

std::string ps_json(const PsVerdict& v) {
  nlohmann::json j;
  j["min_ratio"] = v.estimate.min_ratio;
  j["K"] = v.estimate.K_hat;
  j["eps"] = v.estimate.eps_hat;
  j["level"] = v.estimate.level;
  switch (v.outcome) {
    case PsOutcome::LikelyPS:
      j["verdict"] = "likely_ps";
      break;
    case PsOutcome::NotPS:
      j["verdict"] = "not_ps";
      break;
    default:
      j["verdict"] = "unknown";
  }
  if (v.witness) j["witness"] = v.witness->str();
  return j.dump();
}

std::string bip_json(const BipReport& r) {
  nlohmann::json j;
  j["D_hat"] = r.D_hat;
  j["level"] = r.level;
  j["records"] = nlohmann::json::array();
  for (const BipRecord& rec : r.records) {
    nlohmann::json e;
    e["region"] = rec.region.str();
    e["pair"] = pair_name(rec.pair);
    e["word"] = rec.word.str();
    e["parabolic"] = rec.parabolic;
    e["no_intersection"] = rec.no_intersection;
    e["distance"] = rec.distance;
    e["residual"] = rec.residual;
    j["records"].push_back(e);
  }
  return j.dump();
}

}  // namespace bow
