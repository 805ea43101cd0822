#include "spdc/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "spdc/errors.hpp"

namespace spdc {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t offset, const std::string& why) {
  std::ostringstream msg;
  msg << path << ": parse error at byte " << offset << ": " << why;
  throw DataError(msg.str());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open image file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_dimensions(int w, int h) {
  if (w < 64 || h < 64) {
    std::ostringstream msg;
    msg << "image dimensions " << w << "x" << h << " are below the 64x64 minimum";
    throw DataError(msg.str());
  }
}

// Reads one whitespace-delimited PGM header token, skipping '#' comments.
std::string next_token(const std::string& data, std::size_t& pos, const std::string& path) {
  while (pos < data.size()) {
    const char c = data[pos];
    if (c == '#') {
      while (pos < data.size() && data[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else {
      break;
    }
  }
  if (pos >= data.size()) parse_fail(path, pos, "unexpected end of header");
  const std::size_t start = pos;
  while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
  return data.substr(start, pos - start);
}

int parse_header_int(const std::string& data, std::size_t& pos, const std::string& path,
                     const char* what) {
  const std::size_t at = pos;
  const std::string tok = next_token(data, pos, path);
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    parse_fail(path, at, std::string("invalid ") + what + " '" + tok + "'");
  }
}

RingImage read_pgm16(const std::string& path, double pixel_pitch) {
  const std::string data = read_file(path);
  std::size_t pos = 0;
  const std::string magic = next_token(data, pos, path);
  if (magic != "P5") parse_fail(path, 0, "expected magic 'P5', got '" + magic + "'");
  const int w = parse_header_int(data, pos, path, "width");
  const int h = parse_header_int(data, pos, path, "height");
  const int maxval = parse_header_int(data, pos, path, "maxval");
  if (maxval != 65535) parse_fail(path, pos, "expected maxval 65535");
  if (pos >= data.size() || !std::isspace(static_cast<unsigned char>(data[pos]))) {
    parse_fail(path, pos, "missing whitespace after maxval");
  }
  ++pos;  // single whitespace separates header from raster
  check_dimensions(w, h);

  const std::size_t need = 2 * static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (data.size() - pos < need) {
    parse_fail(path, data.size(), "truncated raster: expected " + std::to_string(need) +
                                      " bytes after header");
  }
  RingImage img;
  img.width = w;
  img.height = h;
  img.pixel_pitch = pixel_pitch;
  img.provenance = ImageProvenance::Ingested;
  img.center_estimate = {0.5 * (w - 1), 0.5 * (h - 1)};
  img.pixels.resize(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    const unsigned hi = static_cast<unsigned char>(data[pos + 2 * i]);
    const unsigned lo = static_cast<unsigned char>(data[pos + 2 * i + 1]);
    img.pixels[i] = static_cast<double>((hi << 8) | lo);
  }
  return img;
}

RingImage read_csv(const std::string& path) {
  const std::string data = read_file(path);
  std::size_t pos = 0;
  auto next_line = [&](const char* what) -> std::string {
    if (pos >= data.size()) parse_fail(path, pos, std::string("missing ") + what);
    const std::size_t start = pos;
    const std::size_t nl = data.find('\n', pos);
    pos = (nl == std::string::npos) ? data.size() : nl + 1;
    std::string line = data.substr(start, (nl == std::string::npos ? data.size() : nl) - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };

  const std::string header = next_line("header");
  if (header != "width,height,pixel_pitch_um") {
    parse_fail(path, 0, "expected header 'width,height,pixel_pitch_um', got '" + header + "'");
  }
  const std::size_t meta_at = pos;
  const std::string meta = next_line("metadata line");
  int w = 0, h = 0;
  double pitch_um = 0.0;
  if (std::sscanf(meta.c_str(), "%d,%d,%lf", &w, &h, &pitch_um) != 3) {
    parse_fail(path, meta_at, "invalid metadata line '" + meta + "'");
  }
  check_dimensions(w, h);
  if (!(pitch_um > 0.0)) parse_fail(path, meta_at, "pixel pitch must be positive");

  RingImage img;
  img.width = w;
  img.height = h;
  img.pixel_pitch = pitch_um * 1e-6;
  img.provenance = ImageProvenance::Ingested;
  img.center_estimate = {0.5 * (w - 1), 0.5 * (h - 1)};
  img.pixels.reserve(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (int row = 0; row < h; ++row) {
    const std::size_t row_at = pos;
    const std::string line = next_line("pixel row");
    const char* cursor = line.c_str();
    for (int col = 0; col < w; ++col) {
      char* end = nullptr;
      const double v = std::strtod(cursor, &end);
      if (end == cursor) {
        parse_fail(path, row_at + static_cast<std::size_t>(cursor - line.c_str()),
                   "expected a number in row " + std::to_string(row));
      }
      if (v < 0.0 || !std::isfinite(v)) {
        parse_fail(path, row_at + static_cast<std::size_t>(cursor - line.c_str()),
                   "negative or non-finite pixel value in row " + std::to_string(row));
      }
      img.pixels.push_back(v);
      cursor = end;
      if (col + 1 < w) {
        if (*cursor != ',') {
          parse_fail(path, row_at + static_cast<std::size_t>(cursor - line.c_str()),
                     "expected ',' in row " + std::to_string(row));
        }
        ++cursor;
      }
    }
  }
  return img;
}

}  // namespace

void write_pgm16(const RingImage& image, const std::string& path) {
  image.validate();
  const double vmax = *std::max_element(image.pixels.begin(), image.pixels.end());
  const double scale = vmax > 0.0 ? 65535.0 / vmax : 0.0;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << "P5\n" << image.width << " " << image.height << "\n65535\n";
  std::string raster;
  raster.resize(2 * image.pixels.size());
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    const unsigned v =
        static_cast<unsigned>(std::lround(std::clamp(image.pixels[i] * scale, 0.0, 65535.0)));
    raster[2 * i] = static_cast<char>((v >> 8) & 0xff);
    raster[2 * i + 1] = static_cast<char>(v & 0xff);
  }
  out.write(raster.data(), static_cast<std::streamsize>(raster.size()));
  if (!out) throw DataError("write failed: " + path);
}

void write_csv_image(const RingImage& image, const std::string& path) {
  image.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << "width,height,pixel_pitch_um\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%d,%d,%.17g\n", image.width, image.height,
                image.pixel_pitch * 1e6);
  out << buf;
  for (int row = 0; row < image.height; ++row) {
    for (int col = 0; col < image.width; ++col) {
      std::snprintf(buf, sizeof(buf), "%.17g", image.at(col, row));
      out << buf;
      out.put(col + 1 < image.width ? ',' : '\n');
    }
  }
  if (!out) throw DataError("write failed: " + path);
}

RingImage ingest_image(const std::string& path, double pixel_pitch, ImageFormat format) {
  if (format == ImageFormat::PGM16) {
    if (!(pixel_pitch > 0.0)) throw DomainError("pixel pitch must be positive");
    return read_pgm16(path, pixel_pitch);
  }
  return read_csv(path);
}

}  // namespace spdc
