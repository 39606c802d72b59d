#include "ecb/jsonout.hpp"

#include <cmath>
#include <cstdio>

namespace ecb {

std::string fmt_sig(double v, int sig) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", sig, v);
  return buf;
}

void JsonWriter::comma() {
  if (!first_.empty()) {
    if (!first_.back()) out_ += ',';
    first_.back() = false;
  }
}

void JsonWriter::key(std::string_view k) {
  comma();
  out_ += '"';
  out_ += k;
  out_ += "\":";
}

void JsonWriter::begin_object() {
  comma();
  out_ += '{';
  first_.push_back(true);
}

void JsonWriter::end_object() {
  out_ += '}';
  first_.pop_back();
}

void JsonWriter::begin_array() {
  comma();
  out_ += '[';
  first_.push_back(true);
}

void JsonWriter::end_array() {
  out_ += ']';
  first_.pop_back();
}

void JsonWriter::field(std::string_view k, double v) {
  key(k);
  out_ += fmt_sig(v);
}

void JsonWriter::field(std::string_view k, std::uint64_t v) {
  key(k);
  out_ += std::to_string(v);
}

void JsonWriter::field(std::string_view k, std::int64_t v) {
  key(k);
  out_ += std::to_string(v);
}

void JsonWriter::field(std::string_view k, int v) {
  key(k);
  out_ += std::to_string(v);
}

void JsonWriter::field(std::string_view k, std::string_view v) {
  key(k);
  out_ += '"';
  out_ += v;
  out_ += '"';
}

}  // namespace ecb
