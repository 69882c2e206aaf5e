#include "dmsi/delay.hpp"

#include <cctype>
#include <charconv>

#include "dmsi/error.hpp"

namespace dmsi {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::int64_t out = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw ValidationError("malformed rational '" + std::string(whole) + "'");
  }
  return out;
}

}  // namespace

Delay::Delay(std::int64_t whole) : value_(whole) {
  if (whole < 0) {
    throw ValidationError("negative delay " + std::to_string(whole));
  }
}

Delay::Delay(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) {
    throw ValidationError("zero denominator");
  }
  value_ = Rep(numerator, denominator);
  if (value_.numerator() < 0) {
    throw ValidationError("negative delay " + to_string());
  }
}

Delay Delay::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Delay(parse_int(text, text));
  }
  return Delay(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
}

std::string Delay::to_string() const {
  if (is_integer()) {
    return std::to_string(value_.numerator());
  }
  return std::to_string(value_.numerator()) + "/" + std::to_string(value_.denominator());
}

Delay operator/(const Delay& a, const Delay& b) {
  if (b.value_.numerator() == 0) {
    throw ValidationError("division by zero");
  }
  Delay out;
  out.value_ = a.value_ / b.value_;
  return out;
}

}  // namespace dmsi
