#include "coxdiv/word.hpp"

#include <bit>
#include <sstream>

namespace coxdiv {

Word Word::parse(const PresentationGraph& g, const std::string& text) {
  Word w;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) {
      w.letters.push_back(g.gen(token));
      token.clear();
    }
  };
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == ',' || c == '\n')
      flush();
    else
      token.push_back(c);
  }
  flush();
  return w;
}

std::string NormalForm::str(const PresentationGraph& g) const {
  if (s_.empty()) return "e";
  std::ostringstream out;
  for (std::size_t i = 0; i < s_.size(); ++i) {
    if (i) out << ' ';
    out << g.name(static_cast<Gen>(s_[i]));
  }
  return out.str();
}

GenSet::GenSet(const PresentationGraph& g, const std::vector<std::string>& names) {
  for (const auto& name : names) add(g.gen(name));
}

GenSet GenSet::all(const PresentationGraph& g) {
  GenSet s;
  for (int i = 0; i < g.rank(); ++i) s.add(static_cast<Gen>(i));
  return s;
}

int GenSet::size() const { return std::popcount(bits_); }

std::vector<Gen> GenSet::members() const {
  std::vector<Gen> out;
  for (int i = 0; i < kMaxRank; ++i)
    if (contains(static_cast<Gen>(i))) out.push_back(static_cast<Gen>(i));
  return out;
}

namespace {

void check_letters(const Word& w, const PresentationGraph& g) {
  for (Gen s : w.letters)
    if (s >= g.rank())
      fail(Errc::invalid_word, "letter index " + std::to_string(int(s)) + " out of range");
}

}  // namespace

NormalForm normal_form(const Word& w, const PresentationGraph& g) {
  check_letters(w, g);
  Letters acc;
  acc.reserve(w.letters.size());
  for (Gen s : w.letters) detail::push_letter(acc, s, g);
  detail::canonicalize(acc, g);
  return NormalForm::adopt_canonical(std::move(acc));
}

bool is_reduced(const Word& w, const PresentationGraph& g) {
  check_letters(w, g);
  Letters acc;
  acc.reserve(w.letters.size());
  for (Gen s : w.letters) detail::push_letter(acc, s, g);
  return acc.size() == w.letters.size();
}

NormalForm right_mul(const NormalForm& x, Gen s, const PresentationGraph& g) {
  if (s >= g.rank()) fail(Errc::invalid_word, "letter index out of range");
  Letters w = x.letters();
  detail::push_letter(w, s, g);
  detail::canonicalize(w, g);
  return NormalForm::adopt_canonical(std::move(w));
}

NormalForm mul(const NormalForm& x, const NormalForm& y, const PresentationGraph& g) {
  Letters w = x.letters();
  w.reserve(x.length() + y.length());
  for (char c : y.letters()) detail::push_letter(w, static_cast<Gen>(c), g);
  detail::canonicalize(w, g);
  return NormalForm::adopt_canonical(std::move(w));
}

NormalForm inverse(const NormalForm& x, const PresentationGraph& g) {
  Letters w(x.letters().rbegin(), x.letters().rend());  // generators are involutions
  detail::canonicalize(w, g);
  return NormalForm::adopt_canonical(std::move(w));
}

std::int64_t word_distance(const NormalForm& u, const NormalForm& v, const PresentationGraph& g) {
  Letters w(u.letters().rbegin(), u.letters().rend());
  for (char c : v.letters()) detail::push_letter(w, static_cast<Gen>(c), g);
  return static_cast<std::int64_t>(w.size());
}

bool subgroup_membership(const NormalForm& x, const GenSet& sub, const PresentationGraph& g) {
  (void)g;
  for (char c : x.letters())
    if (!sub.contains(static_cast<Gen>(c))) return false;
  return true;
}

NormalForm coset_min_rep(const NormalForm& x, const GenSet& sub, const PresentationGraph& g) {
  Letters w = x.letters();
  for (;;) {
    const std::uint64_t desc = detail::right_descents(w, g) & sub.bits();
    if (!desc) break;
    const Gen t = static_cast<Gen>(std::countr_zero(desc));
    detail::push_letter(w, t, g);  // guaranteed to shorten: t is a right descent
  }
  detail::canonicalize(w, g);
  return NormalForm::adopt_canonical(std::move(w));
}

}  // namespace coxdiv
