#pragma once

#include <string>
#include <vector>

namespace spdc {

/// Minimal JSON emitter for result files: insertion-ordered keys, floats
/// printed with 9 significant digits, fully deterministic output.
class JsonWriter {
 public:
  JsonWriter& put(const std::string& key, double value);
  JsonWriter& put(const std::string& key, int value);
  JsonWriter& put(const std::string& key, long long value);
  JsonWriter& put(const std::string& key, bool value);
  JsonWriter& put(const std::string& key, const std::string& value);
  JsonWriter& put(const std::string& key, const char* value);
  JsonWriter& put(const std::string& key, const std::vector<double>& values);
  JsonWriter& put(const std::string& key, const std::vector<std::string>& values);
  JsonWriter& put_raw(const std::string& key, const std::string& raw_json);

  std::string str() const;

  static std::string format_double(double v);
  static std::string escape(const std::string& s);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace spdc
