#include "bow/farey.hpp"

#include <algorithm>
#include <array>

namespace bow {

std::pair<Mod2Type, Mod2Type> pair_types(BasicPair p) {
  switch (p) {
    case BasicPair::AB: return {kType01, kType10};
    case BasicPair::A_AB: return {kType01, kType11};
    case BasicPair::B_AB: return {kType10, kType11};
  }
  throw std::logic_error("bad BasicPair");
}

bool admits(BasicPair p, Mod2Type t) {
  auto [t1, t2] = pair_types(p);
  return t == t1 || t == t2;
}

BasicPair pair_for_types(Mod2Type eta, Mod2Type eta2) {
  for (BasicPair p : {BasicPair::AB, BasicPair::A_AB, BasicPair::B_AB}) {
    auto [t1, t2] = pair_types(p);
    if ((eta == t1 && eta2 == t2) || (eta == t2 && eta2 == t1)) return p;
  }
  throw TypeMismatch("pair_for_types: equal or invalid types");
}

const char* pair_name(BasicPair p) {
  switch (p) {
    case BasicPair::AB: return "(a,b)";
    case BasicPair::A_AB: return "(a,ab)";
    case BasicPair::B_AB: return "(b,ab)";
  }
  return "?";
}

Word farey_word(const Rational& r) {
  if (r.p < 0) {
    // Mirror convention for the left half of the diagram: b -> b^-1.
    Word pos = farey_word(Rational(-r.p, r.q));
    return pos.substituted(Word::parse("a"), Word::parse("B"));
  }
  if (r == Rational(0, 1)) return Word::parse("a");
  if (r.is_infinity()) return Word::parse("b");
  Word wl = Word::parse("a"), wh = Word::parse("b"), wm = Word::parse("ab");
  Rational l(0, 1), h = Rational::infinity(), med(1, 1);
  while (!(med == r)) {
    if (r < med) {
      h = med;
      wh = wm;
    } else {
      l = med;
      wl = wm;
    }
    med = mediant(l, h);
    wm = wl.concat(wh);  // anticlockwise order: smaller fraction first
  }
  return wm;
}

EdgeColour edge_colour(const Rational& l, const Rational& r) {
  if (!is_neighbour(l, r)) throw NotNeighbours("edge_colour of non-edge");
  Mod2Type tl = mod2_type(l), tr = mod2_type(r);
  if ((tl == kType01 && tr == kType10) || (tl == kType10 && tr == kType01))
    return EdgeColour::r;
  if ((tl == kType01 && tr == kType11) || (tl == kType11 && tr == kType01))
    return EdgeColour::g;
  if ((tl == kType10 && tr == kType11) || (tl == kType11 && tr == kType10))
    return EdgeColour::b;
  throw std::logic_error("neighbours with equal mod-2 type");
}

Word rewrite_in_pair(const Word& w, BasicPair pair) {
  switch (pair) {
    case BasicPair::AB:
      return w;
    case BasicPair::A_AB:
      // result a = a, result b = ab; so b = a^-1 (ab) -> "Ab".
      return w.substituted(Word::parse("a"), Word::parse("Ab"));
    case BasicPair::B_AB:
      // result a = b, result b = ab; so a = (ab) b^-1 -> "bA", b -> "a".
      return w.substituted(Word::parse("bA"), Word::parse("a"));
  }
  throw std::logic_error("bad BasicPair");
}

Word palindromic_representative(const Rational& r, BasicPair pair) {
  if (!admits(pair, mod2_type(r)))
    throw TypeMismatch("region type " + mod2_type(r).str() +
                       " is not realised by pair " + pair_name(pair));
  Word w = farey_word(r);
  Word wi = w.inverse_word();
  std::vector<Word> hits;
  for (const Word* base : {&w, &wi})
    for (size_t k = 0; k < std::max<size_t>(base->length(), 1); ++k) {
      Word cand = base->rotated(k);
      if (rewrite_in_pair(cand, pair).is_palindrome()) hits.push_back(cand);
    }
  if (hits.empty())
    throw NotFound("no palindromic rotation for " + r.str() + " in " +
                   pair_name(pair));
  return *std::min_element(hits.begin(), hits.end());
}

}  // namespace bow
