#include <doctest.h>

#include "approx/errors.hpp"
#include "approx/finite_ring.hpp"
#include "approx/ring.hpp"

using namespace approx;

TEST_CASE("ring grammar round trips") {
  for (const char* text : {"Z", "Zn:12", "prod:[Zn:2,Zn:2]", "GF:2/x^5", "Fun:p=2,n=2",
                           "prod:[Z,Z,Z]", "GF:3/x^2+1"}) {
    CAPTURE(text);
    CHECK(Ring::parse(text).to_string() == text);
  }
  CHECK_THROWS_AS(Ring::parse("Zn:1"), ParseError);
  CHECK_THROWS_AS(Ring::parse("Q"), ParseError);
  try {
    Ring::parse("prod:[Zn:2,W]");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 11);
  }
  CHECK_THROWS_AS(Ring::parse("prod:[Z,Zn:3]"), ParseError);
}

TEST_CASE("elementary arithmetic") {
  auto z12 = Ring::residue(12);
  CHECK((z12.from_integer(7) + z12.from_integer(8)).to_string() == "3");

  auto f2 = Ring::parse("GF:2/x^5");
  auto a = f2.parse_element("x^4+x^2+1");
  auto b = f2.parse_element("x^3+x^2");
  CHECK((a + b).to_string() == "x^4+x^3+1");
  CHECK((f2.parse_element("x^3") * f2.parse_element("x^2")).is_zero());

  auto z3 = Ring::parse("prod:[Z,Z,Z]");
  auto p = z3.parse_element("(130,135,125)");
  auto q = z3.parse_element("(130,130,130)");
  CHECK((p - q).to_string() == "(0,5,-5)");

  CHECK_THROWS_AS(z12.one() + Ring::residue(6).one(), DomainMismatch);
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_elements(Ring::residue(3)).size() == 3);
  CHECK(enumerate_elements(Ring::parse("prod:[Zn:2,Zn:2]")).size() == 4);
  CHECK(enumerate_elements(Ring::functions(2, 1)).size() == 4);
  CHECK(*Ring::functions(3, 1).cardinality() == 27);
  CHECK(*Ring::parse("GF:3/x^2+1").cardinality() == 9);
  CHECK_THROWS_AS(enumerate_elements(Ring::integers()), NotEnumerable);
  auto els = enumerate_elements(Ring::residue(3));
  CHECK(els[0].to_string() == "0");
  CHECK(els[2].to_string() == "2");
}

TEST_CASE("element parse/format round trip and index") {
  for (const char* text : {"Zn:6", "prod:[Zn:2,Zn:3]", "GF:2/x^3+x+1", "Fun:p=2,n=2",
                           "Fun:p=3,n=1", "prod:[Zn:2,GF:2/x^2]"}) {
    auto r = Ring::parse(text);
    CAPTURE(text);
    auto els = enumerate_elements(r);
    for (std::size_t i = 0; i < els.size(); ++i) {
      CHECK(els[i].index() == i);
      CHECK(r.parse_element(els[i].to_string()) == els[i]);
    }
  }
}

TEST_CASE("function ring elements are evaluation tables") {
  auto r = Ring::functions(2, 2);
  auto f = r.parse_element("x1*x2");
  // Points in order (0,0),(0,1),(1,0),(1,1).
  CHECK(f.digits() == RingElem::Digits{0, 0, 0, 1});
  CHECK((f * f) == f);
  auto g = r.parse_element("x1^2+x2^3");
  CHECK(g == r.parse_element("x1+x2"));
  CHECK(g.to_string() == "x1+x2");
}

TEST_CASE("ring axioms hold exhaustively on the test rings") {
  for (const char* text : {"Zn:12", "Zn:7", "prod:[Zn:2,Zn:2]", "prod:[Zn:2,Zn:4]",
                           "GF:2/x^5", "GF:2/x^2+x+1", "GF:3/x^2+1", "Fun:p=2,n=1",
                           "Fun:p=2,n=2", "Fun:p=3,n=1"}) {
    CAPTURE(text);
    CHECK_FALSE(find_ring_axiom_violation(Ring::parse(text).finite()).has_value());
  }
}

TEST_CASE("subgroup enumeration") {
  auto count = [](const char* text) {
    return enumerate_subgroups(Ring::parse(text).finite()).size();
  };
  CHECK(count("Zn:12") == 6);
  CHECK(count("prod:[Zn:2,Zn:2]") == 5);
  CHECK(count("Zn:5") == 2);
  // Divisor count for every n up to 64.
  for (std::uint64_t n = 2; n <= 64; ++n) {
    std::size_t tau = 0;
    for (std::uint64_t d = 1; d <= n; ++d) tau += n % d == 0;
    auto subs = enumerate_subgroups(Ring::residue(n).finite());
    CAPTURE(n);
    CHECK(subs.size() == tau);
    for (const auto& s : subs) {
      auto k = s.count();
      CHECK(n % k == 0);
      CHECK(s.test((n / k) % n));  // n/k generates the subgroup of order k
    }
  }
  CHECK_THROWS_AS(enumerate_subgroups(Ring::residue(65).finite()), ResourceLimit);
  CHECK_NOTHROW(enumerate_subgroups(Ring::residue(65).finite(), 65));
}

TEST_CASE("materialization guard") {
  CHECK_THROWS_AS(Ring::residue(2000).finite(), ResourceLimit);
  CHECK_THROWS_AS(Ring::integers().finite(), NotEnumerable);
}
