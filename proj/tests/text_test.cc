#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mtqe/error.h"
#include "mtqe/text.h"
#include "test_util.h"

namespace mtqe {
namespace {

TEST_CASE("utf8 validation") {
  CHECK(is_valid_utf8(""));
  CHECK(is_valid_utf8("plain ascii"));
  CHECK(is_valid_utf8("लड़का दौड़ा।"));
  CHECK_FALSE(is_valid_utf8("\xff"));
  CHECK_FALSE(is_valid_utf8("\xc0\xaf"));        // overlong '/'
  CHECK_FALSE(is_valid_utf8("\xed\xa0\x80"));    // surrogate
  CHECK_FALSE(is_valid_utf8("abc\xe0\xa4"));     // truncated
}

TEST_CASE("scalar length counts code points") {
  CHECK(utf8_length("") == 0);
  CHECK(utf8_length("abc") == 3);
  CHECK(utf8_length("क") == 1);
  CHECK(utf8_length("लड़का") == 5);  // ल ड ़ क ा
}

TEST_CASE("punctuation covers category P and the dandas") {
  for (char32_t cp : {U'.', U',', U'!', U'?', U'"', U'(', U'-', U'—', U'¿',
                      U'।', U'॥'}) {
    CHECK(is_punctuation(cp));
  }
  for (char32_t cp : {U'a', U'1', U'+', U'<', U'$', U' ', U'क'}) {
    CHECK_FALSE(is_punctuation(cp));
  }
  CHECK(is_punctuation_token("।"));
  CHECK(is_punctuation_token("..."));
  CHECK_FALSE(is_punctuation_token(""));
  CHECK_FALSE(is_punctuation_token("a."));
}

TEST_CASE("whitespace") {
  CHECK(is_whitespace(U' '));
  CHECK(is_whitespace(U'\t'));
  CHECK(is_whitespace(U'　'));
  CHECK(is_whitespace(U' '));
  CHECK_FALSE(is_whitespace(U'x'));
}

TEST_CASE("lowercasing is per code point") {
  CHECK(to_lower("The BOY") == "the boy");
  CHECK(to_lower("ÉCOLE") == "école");
  CHECK(to_lower("लड़का") == "लड़का");
}

TEST_CASE("atomic_write replaces contents and leaves no temporaries") {
  testing::TempDir dir;
  const std::string path = dir.file("out.txt");
  atomic_write(path, "first\n");
  atomic_write(path, "second\n");
  CHECK(read_file(path) == "second\n");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir.path())) {
    ++entries;
  }
  CHECK(entries == 1);
}

TEST_CASE("atomic_write into a missing directory fails with the path") {
  testing::TempDir dir;
  const std::string path = dir.file("nope/out.txt");
  try {
    atomic_write(path, "x");
    FAIL("expected IoFailure");
  } catch (const IoFailure& e) {
    CHECK(e.path() == path);
  }
}

TEST_CASE("read_lines strips CR and handles a missing final newline") {
  testing::TempDir dir;
  testing::write_text(dir.file("a.txt"), "one\r\ntwo\nthree");
  const auto lines = read_lines(dir.file("a.txt"));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "one");
  CHECK(lines[2] == "three");
  CHECK_THROWS_AS(read_lines(dir.file("missing.txt")), IoFailure);
}

}  // namespace
}  // namespace mtqe
