#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <type_traits>

#include "resit/bigint.hpp"
#include "resit/errors.hpp"
#include "resit/laurent_field.hpp"
#include "resit/series.hpp"

namespace resit {

namespace detail {

// Recursive-descent evaluator for series expressions:
//   expr   := ['-'] term (('+'|'-') term)*   with an optional trailing
//             '+ O(z^N)' marker that truncates the result
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := int | 'z' | 't' | '(' expr ')'
// Evaluation happens directly over the field at window w; 't' is only
// meaningful when the coefficients themselves are Laurent series.
template <class F>
class SeriesParser {
 public:
  SeriesParser(const std::string& text, const F& field, long w)
      : s_(text), f_(field), w_(w) {}

  PowerSeries<F> run() {
    auto value = expr();
    if (pos_ < s_.size()) {
      fail(Err::ParseError, "unexpected character '" + std::string(1, s_[pos_]) +
                                "' at position " + std::to_string(pos_));
    }
    return value;
  }

 private:
  using Series = PowerSeries<F>;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c, const char* where) {
    if (!eat(c)) {
      fail(Err::ParseError, std::string("expected '") + c + "' in " + where +
                                " at position " + std::to_string(pos_));
    }
  }

  [[noreturn]] void bad_token(const char* what) {
    std::string got = pos_ < s_.size() ? "'" + std::string(1, s_[pos_]) + "'" : "end of input";
    fail(Err::ParseError, std::string("expected ") + what + ", got " + got + " at position " +
                              std::to_string(pos_));
  }

  long parse_uint(const char* where) {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      bad_token(where);
    }
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1000000) fail(Err::ParseError, "exponent too large at position " + std::to_string(pos_));
      ++pos_;
    }
    return v;
  }

  Series expr() {
    bool negate = eat('-');
    auto acc = term();
    if (negate) acc = acc.neg();
    while (true) {
      skip();
      if (eat('+')) {
        if (peek('O')) return order_marker(std::move(acc));
        acc = add(acc, term());
      } else if (eat('-')) {
        acc = sub(acc, term());
      } else {
        return acc;
      }
    }
  }

  Series term() {
    auto acc = factor();
    while (eat('*')) acc = mul(acc, factor());
    return acc;
  }

  Series factor() {
    auto base = this->base();
    if (eat('^')) return pow(base, parse_uint("exponent"));
    return base;
  }

  Series base() {
    skip();
    if (pos_ >= s_.size()) bad_token("a number, 'z', 't', or '('");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      BigInt n = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        n = n * 10 + (s_[pos_] - '0');
        ++pos_;
      }
      return Series::constant(f_, f_.embed(n), w_);
    }
    if (c == 'z') {
      ++pos_;
      return Series::identity(f_, w_);
    }
    if (c == 't') {
      ++pos_;
      if constexpr (std::is_same_v<F, LaurentField>) {
        return Series::constant(f_, f_.make(1, {1}), w_);
      } else {
        fail(Err::ParseError,
             "'t' at position " + std::to_string(pos_ - 1) +
                 " is only available over Laurent series coefficients");
      }
    }
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      expect(')', "parenthesized group");
      return inner;
    }
    bad_token("a number, 'z', 't', or '('");
  }

  Series order_marker(Series acc) {
    expect('O', "precision marker");
    expect('(', "precision marker");
    expect('z', "precision marker");
    expect('^', "precision marker");
    long n = parse_uint("precision marker exponent");
    expect(')', "precision marker");
    skip();
    if (pos_ < s_.size()) {
      fail(Err::ParseError, "the O(z^N) marker must end the expression (position " +
                                std::to_string(pos_) + ")");
    }
    if (n < 2) fail(Err::ParseError, "O(z^N) needs N >= 2 to leave a working window");
    long capped = std::min(w_, n - 1);
    auto low = acc.at_prec(capped);
    return Series::make(f_, low.coeffs(), capped, false);
  }

  const std::string& s_;
  const F& f_;
  long w_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Evaluate a series expression over the field at window w. The optional
// trailing '+ O(z^N)' marker declares the input known only mod z^N: the
// window shrinks to min(w, N-1) and the result is flagged inexact.
template <class F>
PowerSeries<F> parse_series(const std::string& text, const F& field, long w) {
  if (w < 1) fail(Err::PrecisionTooSmall, "working precision must be >= 1");
  return detail::SeriesParser<F>(text, field, w).run();
}

}  // namespace resit
