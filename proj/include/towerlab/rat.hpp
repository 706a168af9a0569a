#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace towerlab {

// Exact rational scalar. Always in lowest terms, denominator > 0; every
// operation is exact.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

using Vec = std::vector<Rat>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Resource guard tripped (enumeration or structure-table size).
struct CapExceeded : Error {
  using Error::Error;
};

// Incompatible operands: ambient dimensions, strand counts, families, delta.
struct MismatchError : Error {
  using Error::Error;
};

// A stated hypothesis does not hold (e.g. non-proper inclusion, nonzero
// radical, no equivariant complement).
struct HypothesisFailure : Error {
  using Error::Error;
};

// A computational consistency check failed: character multiplicativity or a
// well-definedness check of an induced map. Signals a convention bug, never
// a math outcome; must abort the computation.
struct ConventionFailure : Error {
  using Error::Error;
};

// Proof replay produced quantities that contradict the certified bounds.
struct InternalContradiction : Error {
  using Error::Error;
};

inline Rat rat_pow(const Rat& base, unsigned exp) {
  Rat r(1);
  for (unsigned k = 0; k < exp; ++k) r *= base;
  return r;
}

// "p/q" with q omitted when 1, e.g. "3", "-1/2".
inline std::string rat_to_string(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

// Parses the serialized form above. Rejects anything else.
inline Rat rat_from_string(std::string_view s) {
  auto fail = [&] { throw MismatchError("bad rational: '" + std::string(s) + "'"); };
  size_t pos = 0;
  auto scan_int = [&](bool allow_sign) -> std::string {
    std::string out;
    if (allow_sign && pos < s.size() && (s[pos] == '-' || s[pos] == '+')) out += s[pos++];
    size_t digits = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      out += s[pos++];
      ++digits;
    }
    if (digits == 0) fail();
    return out;
  };
  std::string num = scan_int(true);
  std::string den = "1";
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    den = scan_int(false);
  }
  if (pos != s.size()) fail();
  Int q(den);
  if (q == 0) fail();
  return Rat(Int(num), q);
}

}  // namespace towerlab
