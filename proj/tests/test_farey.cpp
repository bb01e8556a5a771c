#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numeric>
#include <set>

#include "bow/farey.hpp"
#include "bow/rational.hpp"
#include "bow/word.hpp"
#include "doctest.h"

using namespace bow;

TEST_CASE("rational normalisation") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(0, -5) == Rational(0, 1));
  CHECK(Rational(-7, 0) == Rational::infinity());
  CHECK(Rational::infinity().is_infinity());
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational::infinity().str() == "1/0");
  CHECK_THROWS(Rational(0, 0));
}

TEST_CASE("rational order") {
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK(Rational(-1, 2) < Rational(0, 1));
  CHECK(Rational(5, 1) < Rational::infinity());
  CHECK_FALSE(Rational::infinity() < Rational::infinity());
}

TEST_CASE("neighbours and mediants") {
  CHECK(is_neighbour(Rational(0, 1), Rational::infinity()));
  CHECK(is_neighbour(Rational(1, 2), Rational(1, 3)));
  CHECK(is_neighbour(Rational(1, 2), Rational(1, 1)));
  CHECK_FALSE(is_neighbour(Rational(1, 3), Rational(1, 1)));
  CHECK(mediant(Rational(0, 1), Rational(1, 1)) == Rational(1, 2));
  CHECK(mediant(Rational(1, 2), Rational(1, 3)) == Rational(2, 5));
  CHECK(mediant(Rational(0, 1), Rational::infinity()) == Rational(1, 1));
  // On the negative side infinity acts as -1/0.
  CHECK(mediant(Rational(-1, 1), Rational::infinity()) == Rational(-2, 1));
  CHECK_THROWS_AS(mediant(Rational(1, 3), Rational(1, 1)), NotNeighbours);
}

TEST_CASE("farey flip") {
  // Around the base vertex (0/1, 1/0, 1/1): flipping across (0/1, 1/0)
  // replaces 1/1 by -1/1.
  CHECK(farey_flip(Rational(0, 1), Rational::infinity(), Rational(1, 1)) ==
        Rational(-1, 1));
  CHECK(farey_flip(Rational(0, 1), Rational(1, 1), Rational::infinity()) ==
        Rational(1, 2));
  CHECK(farey_flip(Rational(1, 2), Rational(1, 3), Rational(0, 1)) ==
        Rational(2, 5));
  // Involution: flipping back returns the original third region.
  Rational w = farey_flip(Rational(1, 2), Rational(1, 1), Rational(0, 1));
  CHECK(farey_flip(Rational(1, 2), Rational(1, 1), w) == Rational(0, 1));
}

TEST_CASE("stern-brocot path replay") {
  auto path = stern_brocot_path(Rational(2, 5));
  CHECK(path.steps.size() == 3);
  CHECK_FALSE(path.mirrored);
  CHECK(stern_brocot_path(Rational(0, 1)).base == SbPath::Base::A);
  CHECK(stern_brocot_path(Rational::infinity()).base == SbPath::Base::B);
  CHECK(stern_brocot_path(Rational(1, 1)).base == SbPath::Base::AB);
  CHECK(stern_brocot_path(Rational(1, 1)).steps.empty());
  CHECK(stern_brocot_path(Rational(-2, 5)).mirrored);
  CHECK(stern_brocot_path(Rational(-2, 5)).steps.size() == 3);

  // Replaying the mediant recursion from (0/1, 1/0) reproduces the target.
  for (long long q = 1; q <= 12; ++q)
    for (long long p = 1; p <= 12; ++p) {
      if (std::gcd(p, q) != 1) continue;
      Rational r(p, q);
      auto sb = stern_brocot_path(r);
      Rational l(0, 1), h = Rational::infinity(), med(1, 1);
      for (auto s : sb.steps) {
        if (s == SbStep::Left)
          h = med;
        else
          l = med;
        med = mediant(l, h);
      }
      CHECK(med == r);
    }
}

TEST_CASE("mod-2 types") {
  CHECK(mod2_type(Rational(0, 1)) == kType01);
  CHECK(mod2_type(Rational::infinity()) == kType10);
  CHECK(mod2_type(Rational(1, 1)) == kType11);
  CHECK(mod2_type(Rational(2, 5)) == kType01);
  CHECK(mod2_type(Rational(-3, 5)) == kType11);
  CHECK(mod2_type(Rational(5, 2)) == kType10);
  // The three regions at any Farey vertex carry the three distinct types.
  Rational a(1, 2), b(1, 3);
  Rational c = mediant(a, b);
  std::set<std::string> types{mod2_type(a).str(), mod2_type(b).str(),
                              mod2_type(c).str()};
  CHECK(types.size() == 3);
}

TEST_CASE("word reduction and parsing") {
  CHECK(Word::parse("aA").empty());
  CHECK(Word::parse("abBA").empty());
  CHECK(Word::parse("aaB").str() == "aaB");
  CHECK(Word::parse("abAB").length() == 4);
  CHECK(Word::parse("ab").inverse_word().str() == "BA");
  CHECK(Word::parse("aab").exp_a() == 2);
  CHECK(Word::parse("aab").exp_b() == 1);
  CHECK(Word::parse("aB").exp_b() == -1);
  CHECK_THROWS_AS(Word::parse("abc"), std::invalid_argument);
}

TEST_CASE("word rotation and cyclic reduction") {
  Word w = Word::parse("aab");
  CHECK(w.rotated(1).str() == "aba");
  CHECK(w.rotated(3) == w);
  CHECK(w.cyclically_shortest());
  CHECK_FALSE(Word::parse("Aba").cyclically_shortest());
  CHECK(Word::parse("aba").is_palindrome());
  CHECK_FALSE(Word::parse("aab").is_palindrome());
  CHECK(Word::parse("a").is_palindrome());
}

TEST_CASE("word substitution") {
  // a -> ab, b -> b sends aab to abab b = ab ab b.
  Word image_a = Word::parse("ab"), image_b = Word::parse("b");
  CHECK(Word::parse("aab").substituted(image_a, image_b).str() == "ababb");
  // Substituting a basis into itself is the identity.
  Word w = Word::parse("aBab");
  CHECK(w.substituted(Word::parse("a"), Word::parse("b")) == w);
}

TEST_CASE("farey words at small slopes") {
  CHECK(farey_word(Rational(0, 1)).str() == "a");
  CHECK(farey_word(Rational::infinity()).str() == "b");
  CHECK(farey_word(Rational(1, 1)).str() == "ab");
  CHECK(farey_word(Rational(1, 2)).str() == "aab");
  CHECK(farey_word(Rational(2, 1)).str() == "abb");
  CHECK(farey_word(Rational(1, 3)).str() == "aaab");
  CHECK(farey_word(Rational(2, 5)).str() == "aaabaab");
  CHECK(farey_word(Rational(-1, 1)).str() == "aB");
  CHECK(farey_word(Rational(-1, 2)).str() == "aaB");
}

TEST_CASE("farey word invariants") {
  for (long long q = 1; q <= 20; ++q)
    for (long long p = -20; p <= 20; ++p) {
      if (std::gcd(std::abs(p), q) != 1) continue;
      Rational r(p, q);
      Word w = farey_word(r);
      CHECK(w.length() == static_cast<size_t>(std::abs(p) + q));
      CHECK(w.exp_a() == q);
      CHECK(w.exp_b() == p);
      CHECK(w.cyclically_shortest());
    }
  Word winf = farey_word(Rational::infinity());
  CHECK(winf.exp_a() == 0);
  CHECK(winf.exp_b() == 1);
}

TEST_CASE("basic pairs and types") {
  CHECK(admits(BasicPair::AB, kType01));
  CHECK(admits(BasicPair::AB, kType10));
  CHECK_FALSE(admits(BasicPair::AB, kType11));
  CHECK(admits(BasicPair::A_AB, kType01));
  CHECK(admits(BasicPair::A_AB, kType11));
  CHECK(admits(BasicPair::B_AB, kType10));
  CHECK(pair_for_types(kType01, kType10) == BasicPair::AB);
  CHECK(pair_for_types(kType11, kType01) == BasicPair::A_AB);
  CHECK(pair_for_types(kType10, kType11) == BasicPair::B_AB);
  CHECK_THROWS_AS(pair_for_types(kType01, kType01), TypeMismatch);
  CHECK(std::string(pair_name(BasicPair::AB)) == "(a,b)");
}

TEST_CASE("edge colours") {
  CHECK(edge_colour(Rational(0, 1), Rational::infinity()) == EdgeColour::r);
  CHECK(edge_colour(Rational(0, 1), Rational(1, 1)) == EdgeColour::g);
  CHECK(edge_colour(Rational::infinity(), Rational(1, 1)) == EdgeColour::b);
  // Types: 1/2 ~ 1/0, 1/3 ~ 1/1, so the edge takes colour b.
  CHECK(edge_colour(Rational(1, 2), Rational(1, 3)) == EdgeColour::b);
  CHECK_THROWS_AS(edge_colour(Rational(1, 3), Rational(1, 1)), NotNeighbours);
}

TEST_CASE("rewrite in pair") {
  // In the pair (a, ab) the word ab is the second letter.
  CHECK(rewrite_in_pair(Word::parse("ab"), BasicPair::A_AB).str() == "b");
  CHECK(rewrite_in_pair(Word::parse("a"), BasicPair::A_AB).str() == "a");
  CHECK(rewrite_in_pair(Word::parse("a"), BasicPair::AB).str() == "a");
  CHECK(rewrite_in_pair(Word::parse("b"), BasicPair::AB).str() == "b");
  // aab = a * (ab) in the pair (a, ab).
  CHECK(rewrite_in_pair(Word::parse("aab"), BasicPair::A_AB).str() == "ab");
}

TEST_CASE("palindromic representatives") {
  // 1/2 has type 1/0 and its admissible pairs are (a,b) and (b,ab).
  Word v = palindromic_representative(Rational(1, 2), BasicPair::AB);
  CHECK(rewrite_in_pair(v, BasicPair::AB).is_palindrome());
  CHECK(v.str() == "aba");
  Word v2 = palindromic_representative(Rational(1, 2), BasicPair::B_AB);
  CHECK(rewrite_in_pair(v2, BasicPair::B_AB).is_palindrome());
  CHECK_THROWS_AS(palindromic_representative(Rational(1, 2), BasicPair::A_AB),
                  TypeMismatch);

  // Uniqueness up to inverse: exactly two palindromic candidates among the
  // rotations of w and of w^-1, and they are mutually inverse.
  for (long long q = 1; q <= 12; ++q)
    for (long long p = 1; p <= 12; ++p) {
      if (std::gcd(p, q) != 1) continue;
      Rational r(p, q);
      Word w = farey_word(r);
      Mod2Type t = mod2_type(r);
      for (BasicPair pr : {BasicPair::AB, BasicPair::A_AB, BasicPair::B_AB}) {
        if (!admits(pr, t)) continue;
        std::set<Word> pals;
        for (const Word& base : {w, w.inverse_word()})
          for (size_t k = 0; k < base.length(); ++k) {
            Word rot = base.rotated(k);
            if (rewrite_in_pair(rot, pr).is_palindrome()) pals.insert(rot);
          }
        REQUIRE(pals.size() == 2);
        CHECK(pals.begin()->inverse_word() == *std::next(pals.begin()));
        Word rep = palindromic_representative(r, pr);
        CHECK(pals.count(rep) == 1);
      }
    }
}
