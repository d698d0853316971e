#include "support.hpp"

using namespace qop;

TEST_SUITE("label") {
  TEST_CASE("atomic labels keep their text") {
    const Label x("x1");
    CHECK(x.text() == "x1");
    CHECK(x.atom() == "x1");
    CHECK_FALSE(x.is_pair());
    CHECK_CODE(Label(""), ErrorCode::UnknownLabel);
  }

  TEST_CASE("pairs print as (x,y)") {
    const Label p = Label::pair("0", "+");
    CHECK(p.text() == "(0,+)");
    CHECK(p.first() == Label("0"));
    CHECK(p.second() == Label("+"));
    CHECK_CODE(p.atom(), ErrorCode::UnknownLabel);
    CHECK_CODE(Label("a").first(), ErrorCode::UnknownLabel);
  }

  TEST_CASE("separators inside atoms are escaped so products never collide") {
    // ("a,b", "c") and ("a", "b,c") share the naive text "(a,b,c)".
    const Label left = Label::pair("a,b", "c");
    const Label right = Label::pair("a", "b,c");
    CHECK(left != right);
    CHECK(left.text() == "(a\\,b,c)");
    CHECK(escape_atom("(x)") == "\\(x\\)");
  }

  TEST_CASE("parse inverts text") {
    const Label nested = Label::pair(Label::pair("x", "y,z"), "w\\");
    const Label back = Label::parse(nested.text());
    CHECK(back == nested);
    CHECK(back.is_pair());
    CHECK(back.first().second().atom() == "y,z");
    CHECK(back.second().atom() == "w\\");
    CHECK(Label::parse("plain") == Label("plain"));
  }

  TEST_CASE("malformed text is a ParseError") {
    for (const char* bad : {"", "(a,b", "(a)", "a)", "(,b)", "a\\", "(a,b)c"}) {
      CAPTURE(bad);
      CHECK_CODE(Label::parse(bad), ErrorCode::ParseError);
    }
  }

  TEST_CASE("ordering and hashing follow text") {
    CHECK(Label("a") < Label("b"));
    CHECK(std::hash<Label>{}(Label::pair("a", "b")) == std::hash<std::string>{}("(a,b)"));
  }
}
