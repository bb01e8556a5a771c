#pragma once

#include <stdexcept>

#include "bow/rational.hpp"
#include "bow/word.hpp"

namespace bow {

struct TypeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotFound : std::logic_error {
  using std::logic_error::logic_error;
};

/// The three basic generator pairs, with the order inside each pair fixed
/// globally (ab, never ba).
enum class BasicPair : uint8_t { AB, A_AB, B_AB };

/// The unordered pair of mod-2 types a basic pair realises.
std::pair<Mod2Type, Mod2Type> pair_types(BasicPair p);

bool admits(BasicPair p, Mod2Type t);

/// The basic pair containing both given types (eta != eta').
BasicPair pair_for_types(Mod2Type eta, Mod2Type eta2);

const char* pair_name(BasicPair p);

/// Canonical cyclically-shortest word for p/q, built by concatenation along
/// the Stern-Brocot path from a <-> 0/1, b <-> 1/0, ab <-> 1/1. Negative
/// fractions mirror the positive word with b -> b^-1.
Word farey_word(const Rational& r);

enum class EdgeColour : uint8_t { r, g, b };

/// Colour of the Farey edge (l, r) from the unordered pair of mod-2 types:
/// (0/1,1/0) -> r, (0/1,1/1) -> g, (1/0,1/1) -> b.
EdgeColour edge_colour(const Rational& l, const Rational& r);

/// The same group element written as a freely reduced word in the two
/// letters of `pair` (result letter a = first member, b = second member).
Word rewrite_in_pair(const Word& w, BasicPair pair);

/// The unique (up to inverse) cyclic rotation of farey_word(r) or of its
/// inverse whose rewrite in `pair` is a palindrome; the lexicographically
/// smaller of the inverse pair is returned, in the original letters.
Word palindromic_representative(const Rational& r, BasicPair pair);

}  // namespace bow
