#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bow {

/// Letters of F2 with inverses, ordered a < a^-1 < b < b^-1 for tie-breaks.
enum class Let : uint8_t { a = 0, A = 1, b = 2, B = 3 };

inline Let inverse(Let l) {
  return static_cast<Let>(static_cast<uint8_t>(l) ^ 1);
}

/// A freely reduced word in {a, a^-1, b, b^-1}.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Let> letters);  // reduces
  static Word parse(const std::string& s);  // "aab", "ab⁻¹" written as "aB"

  const std::vector<Let>& letters() const { return ls_; }
  size_t length() const { return ls_.size(); }
  bool empty() const { return ls_.empty(); }

  long long exp_a() const;
  long long exp_b() const;

  bool cyclically_shortest() const;
  bool is_palindrome() const;

  Word inverse_word() const;
  Word rotated(size_t k) const;       // cyclic permutation by k
  Word concat(const Word& o) const;   // free product, reduced

  /// Letter-by-letter substitution into another (reduced) word basis.
  /// image_a / image_b are the images of a and b.
  Word substituted(const Word& image_a, const Word& image_b) const;

  std::string str() const;  // a, A=a^-1, b, B=b^-1

  friend bool operator==(const Word&, const Word&) = default;
  bool operator<(const Word& o) const { return ls_ < o.ls_; }

 private:
  void push_reduced(Let l);
  std::vector<Let> ls_;
};

}  // namespace bow
