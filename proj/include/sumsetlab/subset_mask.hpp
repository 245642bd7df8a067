#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace sumsetlab {

/// Dense element index. Every group in the library is encoded on 0..n-1.
using Element = std::uint32_t;

/// Fixed-width bit vector describing a subset of a group of order n.
///
/// Bits at positions >= n are always clear, so popcount is the cardinality
/// and word-wise comparison orders masks by their integer value.
class SubsetMask {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  SubsetMask() = default;
  explicit SubsetMask(std::size_t universe)
      : universe_(universe), words_((universe + kWordBits - 1) / kWordBits, 0) {}

  static SubsetMask from_elements(std::size_t universe, std::span<const Element> elements) {
    SubsetMask m(universe);
    for (Element e : elements) m.set(e);
    return m;
  }
  static SubsetMask from_elements(std::size_t universe, std::initializer_list<Element> elements) {
    return from_elements(universe, std::span<const Element>(elements.begin(), elements.size()));
  }
  static SubsetMask full(std::size_t universe) {
    SubsetMask m(universe);
    for (std::size_t i = 0; i < universe; ++i) m.set(static_cast<Element>(i));
    return m;
  }
  /// Mask whose low word is `bits`; requires universe <= 64.
  static SubsetMask from_word(std::size_t universe, Word bits) {
    if (universe > kWordBits) throw std::invalid_argument("from_word: universe exceeds one word");
    SubsetMask m(universe);
    if (universe > 0) m.words_[0] = bits & low_mask(universe);
    return m;
  }

  std::size_t universe() const { return universe_; }
  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }
  Word low_word() const { return words_.empty() ? 0 : words_[0]; }

  bool test(Element e) const { return e < universe_ && ((words_[e / kWordBits] >> (e % kWordBits)) & 1U); }
  void set(Element e) {
    check_index(e);
    words_[e / kWordBits] |= Word{1} << (e % kWordBits);
  }
  void reset(Element e) {
    check_index(e);
    words_[e / kWordBits] &= ~(Word{1} << (e % kWordBits));
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (Word w : words_)
      if (w) return false;
    return true;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      Word w = words_[wi];
      while (w) {
        f(static_cast<Element>(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w))));
        w &= w - 1;
      }
    }
  }

  /// Sorted element indices.
  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(count());
    for_each([&](Element e) { out.push_back(e); });
    return out;
  }

  bool is_subset_of(const SubsetMask& other) const {
    check_same(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  SubsetMask& operator|=(const SubsetMask& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  SubsetMask& operator&=(const SubsetMask& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  friend SubsetMask operator|(SubsetMask a, const SubsetMask& b) { return a |= b; }
  friend SubsetMask operator&(SubsetMask a, const SubsetMask& b) { return a &= b; }

  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;

  /// Orders masks by integer value (most significant word first).
  friend std::strong_ordering operator<=>(const SubsetMask& a, const SubsetMask& b) {
    if (auto c = a.universe_ <=> b.universe_; c != 0) return c;
    for (std::size_t i = a.words_.size(); i-- > 0;)
      if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  static Word low_mask(std::size_t bits) {
    return bits >= kWordBits ? ~Word{0} : ((Word{1} << bits) - 1);
  }

 private:
  void check_index(Element e) const {
    if (e >= universe_) throw std::out_of_range("SubsetMask: element index out of range");
  }
  void check_same(const SubsetMask& o) const {
    if (o.universe_ != universe_) throw std::invalid_argument("SubsetMask: universe mismatch");
  }

  std::size_t universe_ = 0;
  std::vector<Word> words_;
};

}  // namespace sumsetlab
