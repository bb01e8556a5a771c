#include "bow/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace bow {

Word::Word(std::vector<Let> letters) {
  ls_.reserve(letters.size());
  for (Let l : letters) push_reduced(l);
}

void Word::push_reduced(Let l) {
  if (!ls_.empty() && ls_.back() == inverse(l))
    ls_.pop_back();
  else
    ls_.push_back(l);
}

Word Word::parse(const std::string& s) {
  std::vector<Let> ls;
  for (char c : s) {
    switch (c) {
      case 'a': ls.push_back(Let::a); break;
      case 'A': ls.push_back(Let::A); break;
      case 'b': ls.push_back(Let::b); break;
      case 'B': ls.push_back(Let::B); break;
      case ' ': break;
      default: throw std::invalid_argument("bad word letter");
    }
  }
  return Word(std::move(ls));
}

long long Word::exp_a() const {
  long long e = 0;
  for (Let l : ls_) {
    if (l == Let::a) ++e;
    if (l == Let::A) --e;
  }
  return e;
}

long long Word::exp_b() const {
  long long e = 0;
  for (Let l : ls_) {
    if (l == Let::b) ++e;
    if (l == Let::B) --e;
  }
  return e;
}

bool Word::cyclically_shortest() const {
  if (ls_.size() < 2) return true;
  return ls_.front() != inverse(ls_.back());
}

bool Word::is_palindrome() const {
  size_t n = ls_.size();
  for (size_t i = 0; i < n / 2; ++i)
    if (ls_[i] != ls_[n - 1 - i]) return false;
  return true;
}

Word Word::inverse_word() const {
  std::vector<Let> r;
  r.reserve(ls_.size());
  for (auto it = ls_.rbegin(); it != ls_.rend(); ++it)
    r.push_back(inverse(*it));
  Word w;
  w.ls_ = std::move(r);  // inverse of a reduced word is reduced
  return w;
}

Word Word::rotated(size_t k) const {
  if (ls_.empty()) return *this;
  k %= ls_.size();
  std::vector<Let> r(ls_.begin() + k, ls_.end());
  r.insert(r.end(), ls_.begin(), ls_.begin() + k);
  return Word(std::move(r));
}

Word Word::concat(const Word& o) const {
  Word r = *this;
  for (Let l : o.ls_) r.push_reduced(l);
  return r;
}

Word Word::substituted(const Word& image_a, const Word& image_b) const {
  Word ia_inv = image_a.inverse_word();
  Word ib_inv = image_b.inverse_word();
  Word r;
  for (Let l : ls_) {
    const Word* img = nullptr;
    switch (l) {
      case Let::a: img = &image_a; break;
      case Let::A: img = &ia_inv; break;
      case Let::b: img = &image_b; break;
      case Let::B: img = &ib_inv; break;
    }
    for (Let m : img->ls_) r.push_reduced(m);
  }
  return r;
}

std::string Word::str() const {
  static const char names[] = {'a', 'A', 'b', 'B'};
  std::string s;
  s.reserve(ls_.size());
  for (Let l : ls_) s.push_back(names[static_cast<uint8_t>(l)]);
  return s;
}

}  // namespace bow
