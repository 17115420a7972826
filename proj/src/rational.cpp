#include "manna/rational.hpp"

#include <cctype>

namespace manna {

std::optional<Rat> parse_rat(const std::string& text) {
  if (text.empty()) return std::nullopt;
  // mpq_class(string) accepts forms we do not want (whitespace, bases), so
  // validate the shape first: optional '-', digits, optional '/<digits>'.
  std::size_t pos = 0;
  auto digits = [&](std::size_t from) {
    std::size_t i = from;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    return i;
  };
  if (text[pos] == '-' || text[pos] == '+') ++pos;
  std::size_t end = digits(pos);
  if (end == pos) return std::nullopt;
  if (end < text.size()) {
    if (text[end] != '/') return std::nullopt;
    std::size_t den_end = digits(end + 1);
    if (den_end == end + 1 || den_end != text.size()) return std::nullopt;
    // Denominator must be nonzero.
    bool all_zero = true;
    for (std::size_t i = end + 1; i < den_end; ++i)
      if (text[i] != '0') all_zero = false;
    if (all_zero) return std::nullopt;
  }
  Rat value;
  if (value.set_str(text, 10) != 0) return std::nullopt;
  value.canonicalize();
  return value;
}

std::string rat_str(const Rat& value) {
  return value.get_str();
}

double rat_double(const Rat& value) {
  return value.get_d();
}

}  // namespace manna
