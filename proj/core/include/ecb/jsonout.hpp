#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ecb {

// Shortest decimal form with 12 significant digits; all numeric CLI output
// goes through this so runs are byte-identical.
std::string fmt_sig(double v, int sig = 12);

// Minimal deterministic JSON emitter (insertion-ordered fields, numbers via
// fmt_sig). Enough for the report/result schemas; not a general library.
class JsonWriter {
 public:
  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void field(std::string_view key, double v);
  void field(std::string_view key, std::uint64_t v);
  void field(std::string_view key, std::int64_t v);
  void field(std::string_view key, int v);
  void field(std::string_view key, std::string_view v);
  const std::string& str() const { return out_; }

 private:
  void comma();
  void key(std::string_view k);
  std::string out_;
  std::vector<bool> first_;  // per nesting level
};

}  // namespace ecb
