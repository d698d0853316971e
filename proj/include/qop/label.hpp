#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

namespace qop {

/// Outcome label: either a nonempty atomic name or an ordered pair of labels.
///
/// The text form writes pairs as "(x,y)" and escapes '\\', '(', ')' and ','
/// inside atomic names with a backslash, so the text is injective: two labels
/// compare equal exactly when their text forms do. Products built from labels
/// containing separators therefore never collide.
class Label {
 public:
  Label(std::string atom);  // NOLINT(google-explicit-constructor)
  Label(const char* atom) : Label(std::string(atom)) {}  // NOLINT

  static Label pair(const Label& first, const Label& second);
  static Label parse(std::string_view text);

  bool is_pair() const noexcept { return parts_ != nullptr; }
  /// Unescaped name of an atomic label. Throws for pairs.
  const std::string& atom() const;
  const Label& first() const;
  const Label& second() const;

  const std::string& text() const noexcept { return text_; }

  friend bool operator==(const Label& a, const Label& b) noexcept { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(const Label& a, const Label& b) noexcept {
    return a.text_ <=> b.text_;
  }

 private:
  Label() = default;

  std::string atom_;
  std::shared_ptr<const std::pair<Label, Label>> parts_;
  std::string text_;
};

std::string escape_atom(std::string_view atom);

}  // namespace qop

template <>
struct std::hash<qop::Label> {
  std::size_t operator()(const qop::Label& label) const noexcept {
    return std::hash<std::string>{}(label.text());
  }
};
