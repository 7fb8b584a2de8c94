// Copyright 2026 The fairsoft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <string>
#include <vector>

#include "fairsoft/error.hpp"
#include "fairsoft/hash.hpp"
#include "fairsoft/text.hpp"
#include "fairsoft/weblink.hpp"
#include "fairsoft/xml.hpp"
#include "link_grammar.hpp"

using namespace fairsoft;

TEST_CASE("trim, split, join, collapse") {
  CHECK(text::trim("  a b \n") == "a b");
  CHECK(text::trim("   ").empty());
  CHECK(text::collapse_whitespace("  a \t\n b  ") == "a b");
  CHECK(text::split("a,,b", ',') == std::vector<std::string>{"a", "", "b"});
  std::vector<std::string> parts{"x", "y", "z"};
  CHECK(text::join(parts, "/") == "x/y/z");
  CHECK(text::iequals("SPSS", "spss"));
  CHECK_FALSE(text::iequals("SPSS", "spsss"));
  CHECK(text::starts_with_icase("HTTPS://x", "https://"));
}

TEST_CASE("utf8 validation and boundaries") {
  std::string s = "Z\xc3\xbcrich";
  CHECK(text::is_valid_utf8(s));
  CHECK(text::is_codepoint_boundary(s, 1));
  CHECK_FALSE(text::is_codepoint_boundary(s, 2));
  CHECK(text::is_codepoint_boundary(s, 3));
  CHECK(text::is_codepoint_boundary(s, s.size()));
  CHECK_FALSE(text::is_valid_utf8("\xc3"));
  CHECK_FALSE(text::is_valid_utf8("\xc0\x80"));  // overlong
  CHECK_FALSE(text::is_valid_utf8("\xed\xa0\x80"));  // surrogate
}

TEST_CASE("hex and url coding") {
  std::vector<std::uint8_t> b{0x00, 0xab, 0xff};
  CHECK(text::to_hex(b) == "00abff");
  CHECK(text::from_hex("00abff").value() == b);
  CHECK_FALSE(text::from_hex("0g").has_value());
  CHECK_FALSE(text::from_hex("abc").has_value());
  CHECK(text::url_encode("a b/c") == "a%20b%2Fc");
  CHECK(text::url_decode("a%20b%2Fc") == "a b/c");
  CHECK(text::is_http_url("https://x.org"));
  CHECK_FALSE(text::is_http_url("ftp://x.org"));
  CHECK_FALSE(text::is_http_url("http://"));
}

TEST_CASE("base64url has no padding") {
  std::vector<std::uint8_t> b{0xfb, 0xff};
  CHECK(text::base64url(b) == "-_8");
  std::vector<std::uint8_t> m{'M', 'a', 'n'};
  CHECK(text::base64url(m) == "TWFu");
}

TEST_CASE("hash known answers") {
  CHECK(hash::sha1_hex("abc") == "a9993e364706816aba3e25717850c26c9cd0d89d");
  CHECK(hash::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  hash::Sha1 h;
  h.update("a").update("bc");
  CHECK(text::to_hex(h.finish()) == "a9993e364706816aba3e25717850c26c9cd0d89d");
  CHECK(hash::random_bytes(16).size() == 16);
  CHECK(hash::random_bytes(16) != hash::random_bytes(16));
}

TEST_CASE("xml parse with namespaces and mixed content") {
  auto root = xml::parse(R"(<a xmlns="urn:x" xmlns:y="urn:y"><y:b k="v">one<c/>two</y:b><b>&amp;</b></a>)");
  CHECK(root.is("urn:x", "a"));
  auto* b = root.first_child("urn:y", "b");
  REQUIRE(b);
  CHECK(b->attribute("k").value() == "v");
  CHECK(b->text_content() == "onetwo");
  CHECK(root.children_named("urn:x", "b").size() == 1);
  CHECK(root.descendants("urn:x", "c").size() == 1);
  CHECK(root.text_content() == "onetwo&");
}

TEST_CASE("xml errors and escaping") {
  try {
    xml::parse("<a><b></a>");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
  CHECK(xml::escape("<&>") == "&lt;&amp;&gt;");
  CHECK(xml::escape_attribute("\"'") == "&quot;'");
}

TEST_CASE("link header format and parse") {
  weblink::Link l{"https://a.org/x", {{"rel", "cite-as"}}};
  weblink::Link d{"https://a.org/c.json", {{"rel", "describedby"}, {"type", "application/ld+json"}}};
  std::string header = weblink::format_link(l) + ", " + weblink::format_link(d);
  CHECK(header == R"(<https://a.org/x>; rel="cite-as", <https://a.org/c.json>; rel="describedby"; type="application/ld+json")");
  auto parsed = weblink::parse_link_header(header);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0] == l);
  CHECK(parsed[1] == d);

  auto loose = weblink::parse_link_header(R"(<u>;REL=next , <v> ; rel="a\"b")");
  REQUIRE(loose.size() == 2);
  CHECK(loose[0].param("rel").value() == "next");
  CHECK(loose[1].param("rel").value() == "a\"b");
  CHECK_THROWS(weblink::parse_link_header("<u; rel=x"));
  CHECK_THROWS(weblink::parse_link_header("u; rel=x"));
}

TEST_CASE("independent grammar checker accepts and rejects") {
  auto ok = testing::check_link_header(R"(<https://a.org/x?y=1#f>; rel="cite-as", <https://a.org/c>; rel=describedby; type="application/ld+json")");
  CHECK(ok.ok);
  CHECK(ok.links.size() == 2);
  CHECK_FALSE(testing::check_link_header("<https://a.org/x y>; rel=a").ok);
  CHECK_FALSE(testing::check_link_header("<https://a.org/x>").ok);  // no rel
  CHECK_FALSE(testing::check_link_header("<https://a.org/%zz>; rel=a").ok);
  CHECK_FALSE(testing::check_link_header("<https://a.org/x>; rel=\"a").ok);
  CHECK_FALSE(testing::check_link_header("").ok);
  CHECK_FALSE(testing::check_link_header("<1http://x>; rel=a").ok);
}
