#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace exm {

// Every distance in the system is an exact rational. cpp_rational keeps
// values canonical (lowest terms, positive denominator) after each operation.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline const Rat& rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }

inline const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

// 2^-k as an exact rational, k >= 0.
inline Rat pow2_inv(unsigned k) {
  BigInt den = BigInt(1) << k;
  return Rat(1, den);
}

// Canonical wire format: "p/q" in lowest terms, q > 0, even for integers
// ("0/1", "2/1"). Locale-free.
inline std::string rat_to_string(const Rat& x) {
  return numerator(x).str() + "/" + denominator(x).str();
}

// Accepts "p/q" or a bare integer "p". Returns nullopt on malformed input.
inline std::optional<Rat> rat_parse(std::string_view s) {
  if (s.empty()) return std::nullopt;
  auto is_int = [](std::string_view v) {
    if (v.empty()) return false;
    std::size_t i = (v[0] == '-' || v[0] == '+') ? 1 : 0;
    if (i == v.size()) return false;
    for (; i < v.size(); ++i)
      if (v[i] < '0' || v[i] > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) {
      if (!is_int(s)) return std::nullopt;
      return Rat(BigInt(std::string(s)));
    }
    std::string_view ns = s.substr(0, slash);
    std::string_view ds = s.substr(slash + 1);
    if (!is_int(ns) || !is_int(ds)) return std::nullopt;
    BigInt den{std::string(ds)};
    if (den == 0) return std::nullopt;
    return Rat(BigInt(std::string(ns)), den);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// Parse or throw; for inputs that are already trusted (tests, literals).
inline Rat rat(std::string_view s) {
  auto r = rat_parse(s);
  if (!r) throw std::invalid_argument("bad rational literal: " + std::string(s));
  return *r;
}

}  // namespace exm
