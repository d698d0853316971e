#include "qop/label.hpp"

#include "qop/error.hpp"

namespace qop {

namespace {

bool is_reserved(char c) { return c == '\\' || c == '(' || c == ')' || c == ','; }

class LabelParser {
 public:
  explicit LabelParser(std::string_view text) : text_(text) {}

  Label parse_all() {
    Label label = parse_one();
    if (pos_ != text_.size()) fail("trailing characters");
    return label;
  }

 private:
  Label parse_one() {
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      Label first = parse_one();
      expect(',');
      Label second = parse_one();
      expect(')');
      return Label::pair(first, second);
    }
    std::string atom;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\\') {
        if (pos_ + 1 >= text_.size()) fail("dangling escape");
        atom.push_back(text_[pos_ + 1]);
        pos_ += 2;
        continue;
      }
      if (is_reserved(c)) break;
      atom.push_back(c);
      ++pos_;
    }
    if (atom.empty()) fail("empty atomic label");
    return Label(atom);
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError,
                "label \"" + std::string(text_) + "\" at " + std::to_string(pos_) + ": " + why);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string escape_atom(std::string_view atom) {
  std::string out;
  out.reserve(atom.size());
  for (char c : atom) {
    if (is_reserved(c)) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

Label::Label(std::string atom) : atom_(std::move(atom)) {
  if (atom_.empty()) throw Error(ErrorCode::UnknownLabel, "outcome labels must be nonempty");
  text_ = escape_atom(atom_);
}

Label Label::pair(const Label& first, const Label& second) {
  Label label;
  label.parts_ = std::make_shared<const std::pair<Label, Label>>(first, second);
  label.text_ = "(" + first.text_ + "," + second.text_ + ")";
  return label;
}

Label Label::parse(std::string_view text) { return LabelParser(text).parse_all(); }

const std::string& Label::atom() const {
  if (is_pair()) throw Error(ErrorCode::UnknownLabel, text_ + " is a product label");
  return atom_;
}

const Label& Label::first() const {
  if (!is_pair()) throw Error(ErrorCode::UnknownLabel, text_ + " is not a product label");
  return parts_->first;
}

const Label& Label::second() const {
  if (!is_pair()) throw Error(ErrorCode::UnknownLabel, text_ + " is not a product label");
  return parts_->second;
}

}  // namespace qop
