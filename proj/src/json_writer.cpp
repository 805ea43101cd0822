#include "spdc/json_writer.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "spdc/errors.hpp"

namespace spdc {

std::string JsonWriter::format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string JsonWriter::escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

JsonWriter& JsonWriter::put(const std::string& key, double value) {
  entries_.emplace_back(key, format_double(value));
  return *this;
}

JsonWriter& JsonWriter::put(const std::string& key, int value) {
  entries_.emplace_back(key, std::to_string(value));
  return *this;
}

JsonWriter& JsonWriter::put(const std::string& key, long long value) {
  entries_.emplace_back(key, std::to_string(value));
  return *this;
}

JsonWriter& JsonWriter::put(const std::string& key, bool value) {
  entries_.emplace_back(key, value ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::put(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, "\"" + escape(value) + "\"");
  return *this;
}

JsonWriter& JsonWriter::put(const std::string& key, const char* value) {
  return put(key, std::string(value));
}

JsonWriter& JsonWriter::put(const std::string& key, const std::vector<double>& values) {
  std::string arr = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) arr += ", ";
    arr += format_double(values[i]);
  }
  arr += "]";
  entries_.emplace_back(key, std::move(arr));
  return *this;
}

JsonWriter& JsonWriter::put(const std::string& key, const std::vector<std::string>& values) {
  std::string arr = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) arr += ", ";
    arr += "\"" + escape(values[i]) + "\"";
  }
  arr += "]";
  entries_.emplace_back(key, std::move(arr));
  return *this;
}

JsonWriter& JsonWriter::put_raw(const std::string& key, const std::string& raw_json) {
  entries_.emplace_back(key, raw_json);
  return *this;
}

std::string JsonWriter::str() const {
  std::string out = "{\n";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out += "  \"" + escape(entries_[i].first) + "\": " + entries_[i].second;
    if (i + 1 < entries_.size()) out += ",";
    out += "\n";
  }
  out += "}\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("write failed: " + path);
}

}  // namespace spdc
