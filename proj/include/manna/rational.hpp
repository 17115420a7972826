#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace manna {

// Exact rational scalar used throughout the solver. mpq_class keeps values in
// canonical lowest terms after every arithmetic operation — but only when its
// operands are canonical. The two-argument constructor does NOT reduce, so
// ratios must be built via frac() below (GMP comparisons silently misbehave on
// non-canonical values).
using Rat = mpq_class;

inline Rat frac(unsigned long num, unsigned long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p", "-p", "p/q" (q > 0 after canonicalization). Returns nullopt on
// anything else; never throws.
std::optional<Rat> parse_rat(const std::string& text);

// Canonical rendering: "p" for integers, "p/q" otherwise, lowest terms.
std::string rat_str(const Rat& value);

// Decimal approximation for human-readable output.
double rat_double(const Rat& value);

inline int sgn(const Rat& value) { return ::sgn(value); }

inline Rat rat_abs(const Rat& value) { return value < 0 ? Rat(-value) : value; }

}  // namespace manna
