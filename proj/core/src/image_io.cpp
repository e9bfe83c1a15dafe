#include "depthsr/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "depthsr/color.hpp"

namespace depthsr {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::MalformedHeader: return "malformed header";
    case ParseErrorKind::TruncatedPayload: return "truncated payload";
    case ParseErrorKind::UnsupportedFormat: return "unsupported format";
  }
  return "parse error";
}

namespace {

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spill(const std::filesystem::path& path, const std::string& header,
           const std::vector<std::uint8_t>& payload) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

/// Cursor over a netpbm-style header: whitespace separated tokens, '#' comments.
class HeaderReader {
 public:
  explicit HeaderReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  std::string token() {
    skip_space_and_comments();
    std::string out;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_])) out.push_back(static_cast<char>(bytes_[pos_++]));
    if (out.empty()) throw ParseError(ParseErrorKind::MalformedHeader, "unexpected end of header");
    return out;
  }

  long integer(const char* what) {
    const std::string tok = token();
    long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw ParseError(ParseErrorKind::MalformedHeader, std::string("bad ") + what + " '" + tok + "'");
    }
    return value;
  }

  double real(const char* what) {
    const std::string tok = token();
    char* end = nullptr;
    const double value = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) {
      throw ParseError(ParseErrorKind::MalformedHeader, std::string("bad ") + what + " '" + tok + "'");
    }
    return value;
  }

  // Exactly one whitespace byte separates the header from binary data.
  void end_of_header() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw ParseError(ParseErrorKind::MalformedHeader, "missing separator after header");
    }
    ++pos_;
  }

  std::size_t position() const { return pos_; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

void check_dims(long w, long h) {
  if (w <= 0 || h <= 0 || w > (1L << 20) || h > (1L << 20)) {
    throw ParseError(ParseErrorKind::MalformedHeader, "invalid dimensions " + std::to_string(w) + "x" +
                                                          std::to_string(h));
  }
}

RawImage decode_netpbm(const std::vector<std::uint8_t>& bytes) {
  HeaderReader hdr(bytes);
  const std::string magic = hdr.token();
  int channels = 0;
  bool ascii = false;
  if (magic == "P2") { channels = 1; ascii = true; }
  else if (magic == "P5") { channels = 1; }
  else if (magic == "P3") { channels = 3; ascii = true; }
  else if (magic == "P6") { channels = 3; }
  else throw ParseError(ParseErrorKind::UnsupportedFormat, "netpbm magic '" + magic + "'");

  const long w = hdr.integer("width");
  const long h = hdr.integer("height");
  check_dims(w, h);
  const long maxval = hdr.integer("maxval");
  if (maxval <= 0 || maxval > 65535) {
    throw ParseError(ParseErrorKind::MalformedHeader, "maxval " + std::to_string(maxval) + " outside [1, 65535]");
  }

  RawImage img{static_cast<int>(w), static_cast<int>(h), channels, static_cast<double>(maxval), {}};
  const std::size_t count = static_cast<std::size_t>(w) * h * channels;
  img.data.resize(count);

  if (ascii) {
    for (std::size_t i = 0; i < count; ++i) {
      long v = 0;
      try {
        v = hdr.integer("sample");
      } catch (const ParseError&) {
        throw ParseError(ParseErrorKind::TruncatedPayload,
                         "expected " + std::to_string(count) + " samples, got " + std::to_string(i));
      }
      if (v < 0 || v > maxval) {
        throw ParseError(ParseErrorKind::MalformedHeader, "sample " + std::to_string(v) + " exceeds maxval");
      }
      img.data[i] = static_cast<double>(v);
    }
    return img;
  }

  hdr.end_of_header();
  const std::size_t bytes_per = maxval < 256 ? 1 : 2;
  const std::size_t offset = hdr.position();
  if (bytes.size() - offset < count * bytes_per) {
    throw ParseError(ParseErrorKind::TruncatedPayload,
                     "need " + std::to_string(count * bytes_per) + " bytes, have " +
                         std::to_string(bytes.size() - offset));
  }
  const std::uint8_t* p = bytes.data() + offset;
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned v = bytes_per == 1 ? p[i] : (unsigned{p[2 * i]} << 8) | p[2 * i + 1];
    if (v > static_cast<unsigned>(maxval)) {
      throw ParseError(ParseErrorKind::MalformedHeader, "sample " + std::to_string(v) + " exceeds maxval");
    }
    img.data[i] = static_cast<double>(v);
  }
  return img;
}

float load_float(const std::uint8_t* p, bool little_endian) {
  std::uint32_t bits = 0;
  std::memcpy(&bits, p, 4);
  const bool host_little = std::endian::native == std::endian::little;
  if (host_little != little_endian) bits = __builtin_bswap32(bits);
  float f;
  std::memcpy(&f, &bits, 4);
  return f;
}

RawImage decode_pfm(const std::vector<std::uint8_t>& bytes) {
  HeaderReader hdr(bytes);
  const std::string magic = hdr.token();
  int channels = 0;
  if (magic == "Pf") channels = 1;
  else if (magic == "PF") channels = 3;
  else throw ParseError(ParseErrorKind::UnsupportedFormat, "PFM magic '" + magic + "'");

  const long w = hdr.integer("width");
  const long h = hdr.integer("height");
  check_dims(w, h);
  const double scale = hdr.real("scale");
  if (scale == 0.0 || !std::isfinite(scale)) {
    throw ParseError(ParseErrorKind::MalformedHeader, "PFM scale must be finite and non-zero");
  }
  hdr.end_of_header();

  const bool little = scale < 0.0;
  const std::size_t count = static_cast<std::size_t>(w) * h * channels;
  const std::size_t offset = hdr.position();
  if (bytes.size() - offset < count * 4) {
    throw ParseError(ParseErrorKind::TruncatedPayload,
                     "need " + std::to_string(count * 4) + " bytes, have " + std::to_string(bytes.size() - offset));
  }

  RawImage img{static_cast<int>(w), static_cast<int>(h), channels, 1.0, std::vector<double>(count)};
  const std::size_t row_len = static_cast<std::size_t>(w) * channels;
  // PFM stores rows bottom to top.
  for (long y = 0; y < h; ++y) {
    const std::uint8_t* src = bytes.data() + offset + static_cast<std::size_t>(y) * row_len * 4;
    double* dst = img.data.data() + static_cast<std::size_t>(h - 1 - y) * row_len;
    for (std::size_t i = 0; i < row_len; ++i) dst[i] = load_float(src + 4 * i, little);
  }
  return img;
}

RawImage decode_png(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  const std::vector<std::uint8_t> bytes = slurp(path);
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw ParseError(ParseErrorKind::MalformedHeader, std::string("png: ") + image.message);
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const int channels = color ? 3 : 1;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw ParseError(ParseErrorKind::TruncatedPayload, "png: " + msg);
  }
  RawImage img{static_cast<int>(image.width), static_cast<int>(image.height), channels, 255.0, {}};
  img.data.assign(buffer.begin(), buffer.end());
  return img;
}

long round_clamp(double v, long maxval) {
  return std::clamp(static_cast<long>(std::lround(v)), 0L, maxval);
}

void encode_pgm(std::span<const double> values, int w, int h, long maxval,
                const std::filesystem::path& path) {
  const std::size_t bytes_per = maxval < 256 ? 1 : 2;
  std::vector<std::uint8_t> payload(values.size() * bytes_per);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const long v = round_clamp(values[i], maxval);
    if (bytes_per == 1) {
      payload[i] = static_cast<std::uint8_t>(v);
    } else {
      payload[2 * i] = static_cast<std::uint8_t>(v >> 8);
      payload[2 * i + 1] = static_cast<std::uint8_t>(v & 0xff);
    }
  }
  std::ostringstream hdr;
  hdr << "P5\n" << w << ' ' << h << '\n' << maxval << '\n';
  spill(path, hdr.str(), payload);
}

void encode_pfm(std::span<const double> values, int w, int h, const std::filesystem::path& path) {
  const bool host_little = std::endian::native == std::endian::little;
  std::vector<std::uint8_t> payload(values.size() * 4);
  for (int y = 0; y < h; ++y) {
    const std::size_t src_row = static_cast<std::size_t>(h - 1 - y) * w;
    for (int x = 0; x < w; ++x) {
      const float f = static_cast<float>(values[src_row + x]);
      std::memcpy(&payload[(static_cast<std::size_t>(y) * w + x) * 4], &f, 4);
    }
  }
  std::ostringstream hdr;
  hdr << "Pf\n" << w << ' ' << h << '\n' << (host_little ? "-1.0" : "1.0") << '\n';
  spill(path, hdr.str(), payload);
}

template <typename Tag>
void reject_non_finite(const BasicImage<Tag>& img) {
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (!std::isfinite(img.pixels()[i])) {
      throw std::invalid_argument("non-finite pixel at index " + std::to_string(i));
    }
  }
}

}  // namespace

ImageFormat format_from_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".pfm") return ImageFormat::Pfm;
  if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") return ImageFormat::Pgm16;
  if (ext == ".png") return ImageFormat::Png;
  throw ParseError(ParseErrorKind::UnsupportedFormat, "unknown extension '" + ext + "'");
}

std::optional<ImageFormat> parse_format_name(std::string_view name) {
  if (name == "pgm8" || name == "PGM-8") return ImageFormat::Pgm8;
  if (name == "pgm16" || name == "PGM-16" || name == "pgm") return ImageFormat::Pgm16;
  if (name == "pfm" || name == "PFM") return ImageFormat::Pfm;
  if (name == "png" || name == "PNG") return ImageFormat::Png;
  return std::nullopt;
}

RawImage decode_image(const std::filesystem::path& path, ImageFormat format) {
  switch (format) {
    case ImageFormat::Pgm8:
    case ImageFormat::Pgm16: return decode_netpbm(slurp(path));
    case ImageFormat::Pfm: return decode_pfm(slurp(path));
    case ImageFormat::Png: return decode_png(path);
  }
  throw ParseError(ParseErrorKind::UnsupportedFormat, path.string());
}

DepthImage read_depth(const std::filesystem::path& path, std::optional<ImageFormat> format) {
  const ImageFormat fmt = format.value_or(format_from_extension(path));
  if (fmt == ImageFormat::Png) {
    throw ParseError(ParseErrorKind::UnsupportedFormat, "PNG is only accepted for guidance images");
  }
  RawImage raw = decode_image(path, fmt);
  if (raw.channels != 1) {
    throw ParseError(ParseErrorKind::UnsupportedFormat, "depth maps must be single-channel");
  }
  DepthImage img(raw.width, raw.height, std::move(raw.data));
  if (!all_finite(img)) throw ParseError(ParseErrorKind::MalformedHeader, "non-finite depth sample");
  return img;
}

GuideImage read_guide(const std::filesystem::path& path, std::optional<ImageFormat> format) {
  const ImageFormat fmt = format.value_or(format_from_extension(path));
  RawImage raw = decode_image(path, fmt);
  for (double& v : raw.data) {
    if (!std::isfinite(v)) throw ParseError(ParseErrorKind::MalformedHeader, "non-finite guide sample");
    v /= raw.max_value;
  }
  if (raw.channels == 3) {
    return to_grayscale(RgbImage{raw.width, raw.height, 3, std::move(raw.data)});
  }
  if (raw.channels != 1) throw ParseError(ParseErrorKind::UnsupportedFormat, "guide channel count");
  return make_guide(raw.width, raw.height, std::move(raw.data));
}

void write_depth(const DepthImage& img, const std::filesystem::path& path,
                 std::optional<ImageFormat> format) {
  reject_non_finite(img);
  const ImageFormat fmt = format.value_or(format_from_extension(path));
  switch (fmt) {
    case ImageFormat::Pgm8: encode_pgm(img.pixels(), img.width(), img.height(), 255, path); return;
    case ImageFormat::Pgm16: encode_pgm(img.pixels(), img.width(), img.height(), 65535, path); return;
    case ImageFormat::Pfm: encode_pfm(img.pixels(), img.width(), img.height(), path); return;
    case ImageFormat::Png: break;
  }
  throw ParseError(ParseErrorKind::UnsupportedFormat, "PNG output is not supported");
}

void write_guide(const GuideImage& img, const std::filesystem::path& path,
                 std::optional<ImageFormat> format) {
  reject_non_finite(img);
  const ImageFormat fmt = format.value_or(format_from_extension(path));
  if (fmt == ImageFormat::Pfm) {
    encode_pfm(img.pixels(), img.width(), img.height(), path);
    return;
  }
  if (fmt == ImageFormat::Png) throw ParseError(ParseErrorKind::UnsupportedFormat, "PNG output is not supported");
  const long maxval = fmt == ImageFormat::Pgm8 ? 255 : 65535;
  std::vector<double> scaled(img.pixels().begin(), img.pixels().end());
  for (double& v : scaled) v *= static_cast<double>(maxval);
  encode_pgm(scaled, img.width(), img.height(), maxval, path);
}

}  // namespace depthsr
