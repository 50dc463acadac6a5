#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mixsim {

/// Shortest decimal text that parses back to exactly `value`.
inline std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, end);
}

inline double parse_number(std::string_view text) {
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw std::invalid_argument("parse_number: not a number: " + std::string(text));
  }
  return value;
}

}  // namespace mixsim
