#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace prefrep {

// A database value: an integer ("nat" in schema files) or an uninterpreted
// name. Integers are stored signed so generated fixtures can carry values
// below zero. Order comparisons between values of different kinds are only
// used for canonical container ordering, never as query semantics.
class Value {
public:
  static Value nat(std::int64_t v) { return Value(v); }
  static Value name(std::string s) { return Value(std::move(s)); }

  bool is_nat() const { return rep_.index() == 0; }
  bool is_name() const { return rep_.index() == 1; }

  std::int64_t as_nat() const { return std::get<std::int64_t>(rep_); }
  const std::string& as_name() const { return std::get<std::string>(rep_); }

  // Plain rendering: decimal for nats, the raw string for names.
  std::string to_string() const {
    return is_nat() ? std::to_string(as_nat()) : as_name();
  }

  friend bool operator==(const Value& a, const Value& b) { return a.rep_ == b.rep_; }
  friend bool operator!=(const Value& a, const Value& b) { return a.rep_ != b.rep_; }
  friend bool operator<(const Value& a, const Value& b) { return a.rep_ < b.rep_; }

private:
  explicit Value(std::int64_t v) : rep_(v) {}
  explicit Value(std::string s) : rep_(std::move(s)) {}

  std::variant<std::int64_t, std::string> rep_;
};

}  // namespace prefrep
