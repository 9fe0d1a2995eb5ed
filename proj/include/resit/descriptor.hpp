#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "resit/bigint.hpp"
#include "resit/errors.hpp"
#include "resit/extension_field.hpp"
#include "resit/laurent_field.hpp"
#include "resit/prime_field.hpp"
#include "resit/rational_field.hpp"

namespace resit {

using AnyField = std::variant<PrimeField, ExtensionField, RationalField, LaurentField>;

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

inline std::uint64_t parse_u64(const std::string& s, const char* what) {
  if (s.empty()) fail(Err::ParseError, std::string("empty ") + what);
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') fail(Err::ParseError, std::string("bad ") + what + ": " + s);
    if (v > (std::numeric_limits<std::uint64_t>::max() - (c - '0')) / 10) {
      fail(Err::ParseError, std::string(what) + " overflows: " + s);
    }
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

// Parse a univariate modulus like "x^2+x+1" or "x^3+2*x+1" into ascending
// coefficients over F_p. Coefficients must be plain nonnegative integers.
inline std::vector<std::uint64_t> parse_modulus(const std::string& text, std::uint64_t p) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  if (s.empty()) fail(Err::ParseError, "empty extension modulus");
  std::vector<std::uint64_t> coeffs;
  auto bump = [&](std::size_t deg, std::uint64_t c) {
    if (coeffs.size() <= deg) coeffs.resize(deg + 1, 0);
    coeffs[deg] = (coeffs[deg] + c) % p;
  };
  std::size_t i = 0;
  while (i < s.size()) {
    if (i > 0) {
      if (s[i] != '+') {
        fail(Err::ParseError, "expected '+' in modulus at position " + std::to_string(i),
             static_cast<long>(i));
      }
      ++i;
    }
    std::uint64_t c = 1;
    bool saw_digit = false;
    std::size_t j = i;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
    if (j > i) {
      c = parse_u64(s.substr(i, j - i), "modulus coefficient");
      saw_digit = true;
      i = j;
    }
    if (i < s.size() && s[i] == '*') {
      if (!saw_digit) fail(Err::ParseError, "stray '*' in modulus", static_cast<long>(i));
      ++i;
    }
    std::size_t deg = 0;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      deg = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t k = i;
        while (k < s.size() && s[k] >= '0' && s[k] <= '9') ++k;
        if (k == i) fail(Err::ParseError, "missing exponent in modulus", static_cast<long>(i));
        deg = static_cast<std::size_t>(parse_u64(s.substr(i, k - i), "modulus exponent"));
        i = k;
      }
    } else if (!saw_digit) {
      fail(Err::ParseError, "unexpected character in modulus at position " + std::to_string(i),
           static_cast<long>(i));
    }
    bump(deg, c % p);
  }
  return coeffs;
}

inline std::string modulus_string(const std::vector<std::uint64_t>& m) {
  std::string out;
  for (std::size_t d = m.size(); d-- > 0;) {
    if (m[d] == 0) continue;
    if (!out.empty()) out += "+";
    if (d == 0) {
      out += std::to_string(m[d]);
    } else {
      if (m[d] != 1) out += std::to_string(m[d]) + "*";
      out += (d == 1) ? "x" : "x^" + std::to_string(d);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail

// Parse a field descriptor: "rational", "p=5", "p=5;ext=x^2+x+1",
// "p=5;laurent=t;tprec=64".
inline AnyField parse_descriptor(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  if (s == "rational") return RationalField{};
  std::optional<std::uint64_t> p;
  std::optional<std::string> ext;
  bool laurent = false;
  std::int64_t tprec = 64;
  for (const std::string& part : detail::split(s, ';')) {
    std::size_t eq = part.find('=');
    if (eq == std::string::npos) fail(Err::ParseError, "bad descriptor component: " + part);
    std::string key = part.substr(0, eq), val = part.substr(eq + 1);
    if (key == "p") {
      p = detail::parse_u64(val, "characteristic");
    } else if (key == "ext") {
      ext = val;
    } else if (key == "laurent") {
      if (val != "t") fail(Err::ParseError, "laurent variable must be t, got: " + val);
      laurent = true;
    } else if (key == "tprec") {
      tprec = static_cast<std::int64_t>(detail::parse_u64(val, "tprec"));
    } else {
      fail(Err::ParseError, "unknown descriptor key: " + key);
    }
  }
  if (!p) fail(Err::ParseError, "descriptor needs p=<prime> or rational");
  if (ext && laurent) fail(Err::ParseError, "descriptor cannot be both ext and laurent");
  if (ext) return ExtensionField(*p, detail::parse_modulus(*ext, *p));
  if (laurent) return LaurentField(*p, tprec);
  return PrimeField(*p);
}

inline std::string descriptor_string(const PrimeField& f) {
  return "p=" + std::to_string(f.p());
}
inline std::string descriptor_string(const ExtensionField& f) {
  return "p=" + std::to_string(f.p()) + ";ext=" + detail::modulus_string(f.modulus());
}
inline std::string descriptor_string(const RationalField&) { return "rational"; }
inline std::string descriptor_string(const LaurentField& f) {
  return "p=" + std::to_string(f.p()) + ";laurent=t;tprec=" + std::to_string(f.tprec());
}
inline std::string descriptor_string(const AnyField& f) {
  return std::visit([](const auto& g) { return descriptor_string(g); }, f);
}

// Exhaustive q-th root search in a finite field; empty when no root exists.
inline std::optional<PrimeField::Element> q_th_root(const PrimeField& f,
                                                    PrimeField::Element a, long q) {
  if (f.test_zero(a) == ZeroTest::Zero || q < 1) fail(Err::BadParameters, "need a != 0, q >= 1");
  for (std::uint64_t x = 1; x < f.p(); ++x) {
    if (f.eq(field_pow(f, x, BigInt(q)), a)) return x;
  }
  return std::nullopt;
}

inline std::optional<ExtensionField::Element> q_th_root(const ExtensionField& f,
                                                        const ExtensionField::Element& a, long q) {
  if (f.test_zero(a) == ZeroTest::Zero || q < 1) fail(Err::BadParameters, "need a != 0, q >= 1");
  for (std::uint64_t k = 1; k < f.size(); ++k) {
    ExtensionField::Element x = f.element_at(k);
    if (f.eq(field_pow(f, x, BigInt(q)), a)) return x;
  }
  return std::nullopt;
}

[[noreturn]] inline std::optional<RationalField::Element> q_th_root(const RationalField&,
                                                                    const RationalField::Element&,
                                                                    long) {
  fail(Err::UnsupportedField, "q-th roots are only searched in finite fields");
}

[[noreturn]] inline std::optional<LaurentField::Element> q_th_root(const LaurentField&,
                                                                   const LaurentField::Element&,
                                                                   long) {
  fail(Err::UnsupportedField, "q-th roots are only searched in finite fields");
}

}  // namespace resit
