#include "gsb/rational.hpp"

#include <charconv>
#include <string_view>

namespace gsb {

namespace {

std::int64_t parse_int(std::string_view text, const std::string& whole) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument("not a rational: '" + whole + "'");
  return value;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text, text));
  return {parse_int(std::string_view(text).substr(0, slash), text),
          parse_int(std::string_view(text).substr(slash + 1), text)};
}

std::string Rational::to_fixed(int decimals) const {
  std::int64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const bool negative = num_ < 0;
  const std::int64_t magnitude = negative ? -num_ : num_;
  // round(|x| * scale) with ties going up
  const std::int64_t scaled = (2 * magnitude * scale + den_) / (2 * den_);
  std::string digits = std::to_string(scaled);
  if (decimals > 0) {
    if (digits.size() <= static_cast<std::size_t>(decimals))
      digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
  }
  return (negative && scaled != 0 ? "-" : "") + digits;
}

}  // namespace gsb
