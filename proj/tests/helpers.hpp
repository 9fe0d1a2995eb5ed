#pragma once

#include <catch2/catch_amalgamated.hpp>
#include <string>

#include "resit/errors.hpp"

// Matcher for REQUIRE_THROWS_MATCHES(expr, resit::Error, ErrCode(...)).
class ErrCode : public Catch::Matchers::MatcherBase<resit::Error> {
 public:
  explicit ErrCode(resit::Err code) : code_(code) {}

  bool match(const resit::Error& e) const override { return e.code() == code_; }

  std::string describe() const override {
    return "has error code " + std::string(resit::err_name(code_));
  }

 private:
  resit::Err code_;
};
