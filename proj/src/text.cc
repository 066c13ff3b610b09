#include "mtqe/text.h"

#include <unicode/uchar.h>
#include <unicode/utf8.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mtqe/error.h"

namespace mtqe {

namespace {

constexpr char32_t kDanda = 0x0964;
constexpr char32_t kDoubleDanda = 0x0965;

template <typename Fn>
bool for_each_code_point(std::string_view s, Fn&& fn) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  const auto length = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 cp;
    U8_NEXT(bytes, i, length, cp);
    if (cp < 0) return false;
    if (!fn(static_cast<char32_t>(cp))) return true;
  }
  return true;
}

}  // namespace

bool is_valid_utf8(std::string_view s) {
  return for_each_code_point(s, [](char32_t) { return true; });
}

std::vector<char32_t> decode_utf8(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  for_each_code_point(s, [&](char32_t cp) {
    out.push_back(cp);
    return true;
  });
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool error = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
  if (!error) out.append(reinterpret_cast<const char*>(buf), n);
}

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for_each_code_point(s, [&](char32_t) {
    ++n;
    return true;
  });
  return n;
}

bool is_punctuation(char32_t cp) {
  return cp == kDanda || cp == kDoubleDanda ||
         u_ispunct(static_cast<UChar32>(cp));
}

bool is_whitespace(char32_t cp) {
  return u_isUWhiteSpace(static_cast<UChar32>(cp));
}

bool is_punctuation_token(std::string_view token) {
  if (token.empty()) return false;
  bool all = true;
  for_each_code_point(token, [&](char32_t cp) {
    all = is_punctuation(cp);
    return all;
  });
  return all;
}

std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for_each_code_point(s, [&](char32_t cp) {
    append_utf8(out, static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp))));
    return true;
  });
  return out;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure(path, "cannot open file");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  if (in.bad()) throw IoFailure(path, "read error");
  return lines;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoFailure(path, "read error");
  return std::move(ss).str();
}

void atomic_write(const std::string& path, std::string_view contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure(path, "cannot open for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw IoFailure(path, "write failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoFailure(path, "rename failed (" + ec.message() + ")");
  }
}

}  // namespace mtqe
