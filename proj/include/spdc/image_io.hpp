#pragma once

#include <string>

#include "spdc/ring.hpp"

namespace spdc {

enum class ImageFormat { PGM16, CSV };

/// 16-bit big-endian binary PGM (P5, maxval 65535). Pixels are scaled so the
/// image maximum maps to 65535; the quantization scale is image_max/65535.
void write_pgm16(const RingImage& image, const std::string& path);

/// Lossless CSV: header line "width,height,pixel_pitch_um", a second line
/// with those three values, then height rows of width full-precision pixels.
void write_csv_image(const RingImage& image, const std::string& path);

/// Reads a ring image from disk. For PGM16 the pixel pitch argument supplies
/// the metadata the format lacks; CSV carries its own pitch and ignores the
/// argument. Parse failures report the byte offset. Dimensions below 64x64
/// and negative CSV values are rejected.
RingImage ingest_image(const std::string& path, double pixel_pitch, ImageFormat format);

}  // namespace spdc
