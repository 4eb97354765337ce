#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sqwords {

using letter_t = std::uint8_t;

/// Raised when an operation is applied outside its mathematical domain
/// (empty word where a letter is required, non-square passed as a square, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A word that was required to be a factor of the input is not one.
class not_a_factor_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request exceeds a configured resource cap.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable finite word over letter ids 0..255.
///
/// Letters are ordered numerically and words lexicographically, with a proper
/// prefix ordered before any of its extensions. Positions are 0-based in code;
/// rotation indices in reports are 1-based.
class Word {
 public:
  Word() = default;
  explicit Word(std::span<const letter_t> letters)
      : letters_(letters.begin(), letters.end()) {}
  Word(std::initializer_list<letter_t> letters)
      : letters_(letters.begin(), letters.end()) {}

  /// Each byte of `text` becomes one letter; byte order is the letter order.
  static Word from_bytes(std::string_view text) {
    Word w;
    w.letters_.assign(text.begin(), text.end());
    return w;
  }

  /// Parses pairs of hex digits, one letter per pair.
  static Word from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) {
      throw std::invalid_argument("hex word must have an even number of digits");
    }
    auto nibble = [](char c) -> int {
      if (c >= '0' && c <= '9') return c - '0';
      if (c >= 'a' && c <= 'f') return c - 'a' + 10;
      if (c >= 'A' && c <= 'F') return c - 'A' + 10;
      throw std::invalid_argument(std::string("invalid hex digit '") + c + "'");
    };
    Word w;
    w.letters_.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
      w.letters_.push_back(static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
    }
    return w;
  }

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  letter_t operator[](std::size_t i) const noexcept {
    return static_cast<letter_t>(letters_[i]);
  }

  std::span<const letter_t> letters() const noexcept {
    return {reinterpret_cast<const letter_t*>(letters_.data()), letters_.size()};
  }

  /// Factor of length `len` starting at 0-based position `pos`.
  Word factor(std::size_t pos, std::size_t len) const {
    Word w;
    w.letters_ = letters_.substr(pos, len);
    return w;
  }
  Word prefix(std::size_t len) const { return factor(0, len); }
  Word suffix_from(std::size_t pos) const { return factor(pos, size() - pos); }

  /// Rotation starting at 0-based position `start`.
  Word rotate(std::size_t start) const {
    if (empty()) return {};
    start %= size();
    Word w;
    w.letters_ = letters_.substr(start) + letters_.substr(0, start);
    return w;
  }

  Word operator+(const Word& other) const {
    Word w;
    w.letters_ = letters_ + other.letters_;
    return w;
  }

  bool contains(const Word& f) const noexcept {
    return letters_.find(f.letters_) != std::string::npos;
  }

  /// Raw bytes; for words built from ASCII this is the original text.
  const std::string& bytes() const noexcept { return letters_; }

  std::string hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (unsigned char c : letters_) {
      out.push_back(digits[c >> 4]);
      out.push_back(digits[c & 15]);
    }
    return out;
  }

  // std::char_traits<char> compares as unsigned char, which is the letter order.
  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept {
    return a.letters_.compare(b.letters_) <=> 0;
  }

 private:
  std::string letters_;
};

/// Ordering by length first, then lexicographically. Used for reports and
/// for the arc index of the union Rauzy graph.
struct ShortlexLess {
  bool operator()(const Word& a, const Word& b) const noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Text form used in reports: the bytes when every letter is printable ASCII,
/// `a`, `b`, ... when every letter id is below 26, hex otherwise.
inline std::string display(const Word& w) {
  bool printable = true;
  bool small = true;
  for (letter_t c : w.letters()) {
    printable = printable && c >= 0x21 && c <= 0x7e;
    small = small && c < 26;
  }
  if (printable) return w.bytes();
  if (small) {
    std::string out;
    for (letter_t c : w.letters()) out.push_back(static_cast<char>('a' + c));
    return out;
  }
  return "0x" + w.hex();
}

inline std::ostream& operator<<(std::ostream& os, const Word& w) {
  return os << (w.empty() ? std::string("ε") : display(w));
}

/// Number of distinct letters occurring in `w`.
inline std::size_t alphabet_size(const Word& w) {
  bool seen[256] = {};
  std::size_t count = 0;
  for (letter_t c : w.letters()) {
    if (!seen[c]) {
      seen[c] = true;
      ++count;
    }
  }
  return count;
}

}  // namespace sqwords

template <>
struct std::hash<sqwords::Word> {
  std::size_t operator()(const sqwords::Word& w) const noexcept {
    return std::hash<std::string>{}(w.bytes());
  }
};
