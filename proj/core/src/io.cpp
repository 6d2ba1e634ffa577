#include "tgv/io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <random>
#include <stdexcept>
#include <vector>

namespace tgv {

namespace {

struct FileHandle {
  std::FILE* f = nullptr;
  ~FileHandle() {
    if (f) std::fclose(f);
  }
};

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReader() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
  }
};

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriter() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
  }
};

}  // namespace

GridImage load_png(const std::string& path) {
  FileHandle file{std::fopen(path.c_str(), "rb")};
  if (!file.f) throw std::runtime_error("png-open: cannot open " + path);

  unsigned char signature[8];
  if (std::fread(signature, 1, 8, file.f) != 8 ||
      png_sig_cmp(signature, 0, 8) != 0) {
    throw std::runtime_error("png-read: not a PNG file: " + path);
  }

  PngReader r;
  r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                 nullptr);
  if (!r.png) throw std::runtime_error("png-read: allocation failed");
  r.info = png_create_info_struct(r.png);
  if (!r.info) throw std::runtime_error("png-read: allocation failed");

  // All C++ objects the decode touches live above this point so the
  // longjmp-based error path never skips a destructor.
  std::vector<unsigned char> bytes;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(r.png))) {
    throw std::runtime_error("png-read: failed to decode " + path);
  }

  png_init_io(r.png, file.f);
  png_set_sig_bytes(r.png, 8);
  png_read_info(r.png, r.info);

  const png_uint_32 width = png_get_image_width(r.png, r.info);
  const png_uint_32 height = png_get_image_height(r.png, r.info);
  const int depth = png_get_bit_depth(r.png, r.info);
  const int color = png_get_color_type(r.png, r.info);

  if (color & PNG_COLOR_MASK_ALPHA) {
    throw std::runtime_error("png-unsupported: alpha channel in " + path);
  }
  if (color == PNG_COLOR_TYPE_PALETTE) {
    throw std::runtime_error("png-unsupported: palette color type in " + path);
  }
  if (color != PNG_COLOR_TYPE_GRAY && color != PNG_COLOR_TYPE_RGB) {
    throw std::runtime_error("png-unsupported: color type " +
                             std::to_string(color) + " in " + path);
  }
  if (depth != 8 && depth != 16) {
    throw std::runtime_error("png-unsupported: bit depth must be 8 or 16, got " +
                             std::to_string(depth) + " in " + path);
  }
  const int channels = color == PNG_COLOR_TYPE_RGB ? 3 : 1;

  png_set_interlace_handling(r.png);
  png_read_update_info(r.png, r.info);

  const std::size_t rowbytes = png_get_rowbytes(r.png, r.info);
  bytes.resize(rowbytes * height);
  rows.resize(height);
  for (png_uint_32 i = 0; i < height; ++i) rows[i] = bytes.data() + i * rowbytes;
  png_read_image(r.png, rows.data());
  png_read_end(r.png, nullptr);

  GridImage out = new_image(GridKind::Center, static_cast<int>(height),
                            static_cast<int>(width), channels);
  for (png_uint_32 i = 0; i < height; ++i) {
    const unsigned char* row = rows[i];
    for (png_uint_32 j = 0; j < width; ++j) {
      for (int c = 0; c < channels; ++c) {
        const std::size_t s = j * channels + c;
        double v;
        if (depth == 8) {
          v = row[s] / 255.0;
        } else {
          v = ((row[2 * s] << 8) | row[2 * s + 1]) / 65535.0;
        }
        out.at(static_cast<int>(i), static_cast<int>(j), c) = v;
      }
    }
  }
  return out;
}

void save_png(const GridImage& u, const std::string& path, int bit_depth) {
  if (u.kind != GridKind::Center) {
    throw std::invalid_argument(
        std::string("unsupported-kind: save_png expects Center images, got ") +
        grid_kind_name(u.kind));
  }
  if (u.channels != 1 && u.channels != 3) {
    throw std::invalid_argument("png-save: channels must be 1 or 3, got " +
                                std::to_string(u.channels));
  }
  if (bit_depth != 8 && bit_depth != 16) {
    throw std::invalid_argument("png-save: bit depth must be 8 or 16, got " +
                                std::to_string(bit_depth));
  }

  const std::string tmp = path + ".tmp";
  try {
    FileHandle file{std::fopen(tmp.c_str(), "wb")};
    if (!file.f) throw std::runtime_error("png-open: cannot create " + tmp);

    PngWriter w;
    w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                    nullptr);
    if (!w.png) throw std::runtime_error("png-write: allocation failed");
    w.info = png_create_info_struct(w.png);
    if (!w.info) throw std::runtime_error("png-write: allocation failed");

    const int rows = u.rows();
    const int cols = u.cols();
    const std::size_t samples = static_cast<std::size_t>(cols) * u.channels;
    std::vector<unsigned char> row(samples * (bit_depth / 8));
    if (setjmp(png_jmpbuf(w.png))) {
      throw std::runtime_error("png-write: failed writing " + tmp);
    }

    png_init_io(w.png, file.f);
    png_set_IHDR(w.png, w.info, static_cast<png_uint_32>(cols),
                 static_cast<png_uint_32>(rows), bit_depth,
                 u.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    // Pin the encoder choices that could vary between zlib/libpng builds;
    // identical pixels must give identical files.
    png_set_compression_level(w.png, 6);
    png_set_filter(w.png, 0, PNG_FILTER_NONE);
    png_write_info(w.png, w.info);

    const double scale = bit_depth == 8 ? 255.0 : 65535.0;
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        for (int c = 0; c < u.channels; ++c) {
          const double clamped = std::clamp(u.at(i, j, c), 0.0, 1.0);
          const long q = std::lround(clamped * scale);
          const std::size_t s = static_cast<std::size_t>(j) * u.channels + c;
          if (bit_depth == 8) {
            row[s] = static_cast<unsigned char>(q);
          } else {
            row[2 * s] = static_cast<unsigned char>(q >> 8);
            row[2 * s + 1] = static_cast<unsigned char>(q & 0xff);
          }
        }
      }
      png_write_row(w.png, row.data());
    }
    png_write_end(w.png, w.info);
  } catch (...) {
    std::remove(tmp.c_str());
    throw;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("png-write: cannot move " + tmp + " into place");
  }
}

GridImage add_gaussian_noise(const GridImage& u, double sigma_noise,
                             std::uint64_t seed) {
  if (!(sigma_noise >= 0.0)) {
    throw std::invalid_argument(
        "negative-sigma: noise standard deviation must be >= 0");
  }
  GridImage out = u;
  if (sigma_noise == 0.0) return out;

  std::mt19937_64 rng(seed);
  // Uniform draws in the open interval (0,1): the top 53 bits plus a half
  // step keep log() away from zero.
  const auto uniform = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  };
  bool have_spare = false;
  double spare = 0.0;
  for (double& v : out.data) {
    double z;
    if (have_spare) {
      z = spare;
      have_spare = false;
    } else {
      const double radius = std::sqrt(-2.0 * std::log(uniform()));
      const double angle = 2.0 * 3.141592653589793238462643383279502884 * uniform();
      z = radius * std::cos(angle);
      spare = radius * std::sin(angle);
      have_spare = true;
    }
    v += sigma_noise * z;
  }
  return out;
}

std::string image_digest(const GridImage& u) {
  std::uint64_t h = 14695981039346656037ull;
  const auto mix = [&h](const void* p, std::size_t n) {
    const unsigned char* b = static_cast<const unsigned char*>(p);
    for (std::size_t k = 0; k < n; ++k) {
      h ^= b[k];
      h *= 1099511628211ull;
    }
  };
  const std::int32_t header[4] = {static_cast<std::int32_t>(u.kind), u.n1,
                                  u.n2, u.channels};
  mix(header, sizeof(header));
  mix(u.data.data(), u.data.size() * sizeof(double));

  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace tgv
