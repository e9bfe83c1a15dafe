#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "depthsr/image.hpp"

namespace depthsr {

enum class ImageFormat {
  Pgm8,
  Pgm16,
  Pfm,
  Png,  // read-only
};

/// Guess the format from the file extension (.pgm -> Pgm16, .pfm, .png).
ImageFormat format_from_extension(const std::filesystem::path& path);
std::optional<ImageFormat> parse_format_name(std::string_view name);

/// Decoded file contents before they are committed to a depth or guide image.
/// `data` is interleaved; `max_value` is the PGM/PNG maxval (1.0 for PFM).
struct RawImage {
  int width = 0;
  int height = 0;
  int channels = 1;
  double max_value = 1.0;
  std::vector<double> data;
};

RawImage decode_image(const std::filesystem::path& path, ImageFormat format);

/// Reads a single-channel depth map. PGM values are returned as stored
/// (no maxval normalization); PFM values as-is.
DepthImage read_depth(const std::filesystem::path& path, std::optional<ImageFormat> format = {});

/// Reads a guidance image and normalizes it to [0, 1]. Three-channel inputs
/// (PPM, color PFM, RGB PNG) are converted with `to_grayscale`.
GuideImage read_guide(const std::filesystem::path& path, std::optional<ImageFormat> format = {});

/// Writes a depth map. Integer formats round half away from zero and clamp
/// to [0, maxval]; any non-finite pixel is rejected before touching the file.
void write_depth(const DepthImage& img, const std::filesystem::path& path,
                 std::optional<ImageFormat> format = {});

/// Writes a guide; PGM output is scaled by the format maxval.
void write_guide(const GuideImage& img, const std::filesystem::path& path,
                 std::optional<ImageFormat> format = {});

}  // namespace depthsr
