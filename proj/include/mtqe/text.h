#ifndef MTQE_TEXT_H_
#define MTQE_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mtqe {

// UTF-8 helpers backed by ICU character properties.

bool is_valid_utf8(std::string_view s);

// Decodes valid UTF-8 into code points. Behavior on invalid input is
// unspecified; validate first.
std::vector<char32_t> decode_utf8(std::string_view s);
void append_utf8(std::string& out, char32_t cp);

// Number of Unicode scalar values.
std::size_t utf8_length(std::string_view s);

// General category P*, plus the Devanagari danda and double danda.
bool is_punctuation(char32_t cp);
bool is_whitespace(char32_t cp);

// True for a non-empty token made only of punctuation code points.
bool is_punctuation_token(std::string_view token);

// Simple (1:1) lowercase mapping per code point.
std::string to_lower(std::string_view s);

// File plumbing. Both throw IoFailure naming the path.
std::vector<std::string> read_lines(const std::string& path);
std::string read_file(const std::string& path);

// Writes to a sibling temporary and renames over path, so readers never
// observe a partial file.
void atomic_write(const std::string& path, std::string_view contents);

}  // namespace mtqe

#endif  // MTQE_TEXT_H_
