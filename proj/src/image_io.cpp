#include "lfseg/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

namespace lfseg {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& reason) {
  throw IoError("cannot read '" + path.string() + "': " + reason);
}

// Reads the next PGM header token, skipping whitespace and '#' comments.
bool next_token(std::istream& in, std::string& tok) {
  tok.clear();
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
    } else if (!std::isspace(c)) {
      tok.push_back(static_cast<char>(c));
      while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#')
        tok.push_back(static_cast<char>(in.get()));
      return true;
    }
  }
  return false;
}

long parse_pgm_int(std::istream& in, const std::filesystem::path& path, const char* what) {
  std::string tok;
  if (!next_token(in, tok)) fail(path, std::string("truncated header, missing ") + what);
  try {
    size_t pos = 0;
    long v = std::stol(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    fail(path, std::string("invalid ") + what + " '" + tok + "'");
  }
}

ScalarField2D load_pgm(std::ifstream& in, const std::filesystem::path& path, bool binary) {
  long width = parse_pgm_int(in, path, "width");
  long height = parse_pgm_int(in, path, "height");
  long maxval = parse_pgm_int(in, path, "maxval");
  if (width <= 0 || height <= 0) fail(path, "image dimensions must be positive");
  if (maxval <= 0 || maxval > 255) fail(path, "only 8-bit PGM supported (maxval <= 255)");

  ScalarField2D field(static_cast<int>(width), static_cast<int>(height));
  if (binary) {
    // Exactly one whitespace byte separates maxval from raster data.
    in.get();
    std::vector<unsigned char> raw(field.size());
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) fail(path, "truncated P5 raster");
    for (std::size_t i = 0; i < raw.size(); ++i) field[i] = raw[i];
  } else {
    for (std::size_t i = 0; i < field.size(); ++i) {
      long v = parse_pgm_int(in, path, "pixel value");
      if (v < 0 || v > maxval) fail(path, "pixel value out of range");
      field[i] = static_cast<double>(v);
    }
  }
  return field;
}

ScalarField2D load_png(const std::filesystem::path& path) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> fp(std::fopen(path.string().c_str(), "rb"),
                                                     &std::fclose);
  if (!fp) fail(path, "cannot open file");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) fail(path, "libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    fail(path, "libpng init failed");
  }
  std::vector<std::vector<png_byte>> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(path, "libpng decode error");
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);

  png_uint_32 width = png_get_image_width(png, info);
  png_uint_32 height = png_get_image_height(png, info);
  int color = png_get_color_type(png, info);
  int depth = png_get_bit_depth(png, info);
  if (color != PNG_COLOR_TYPE_GRAY && color != PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(path, "unsupported format: only grayscale PNG is accepted");
  }
  if (width == 0 || height == 0) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(path, "image dimensions must be positive");
  }
  if (depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  rows.assign(height, std::vector<png_byte>(png_get_rowbytes(png, info)));
  std::vector<png_bytep> row_ptrs(height);
  for (png_uint_32 y = 0; y < height; ++y) row_ptrs[y] = rows[y].data();
  png_read_image(png, row_ptrs.data());
  png_destroy_read_struct(&png, &info, nullptr);

  ScalarField2D field(static_cast<int>(width), static_cast<int>(height));
  for (png_uint_32 y = 0; y < height; ++y)
    for (png_uint_32 x = 0; x < width; ++x)
      field.at(static_cast<int>(x), static_cast<int>(y)) = rows[y][x];
  return field;
}

}  // namespace

ScalarField2D load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open file");

  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (in.gcount() != 2) fail(path, "file too short");

  if (magic[0] == 'P' && magic[1] == '5') return load_pgm(in, path, /*binary=*/true);
  if (magic[0] == 'P' && magic[1] == '2') return load_pgm(in, path, /*binary=*/false);
  if (magic[0] == '\x89' && magic[1] == 'P') {
    in.close();
    return load_png(path);
  }
  fail(path, "unsupported format: expected PGM (P5/P2) or grayscale PNG");
}

void save_image(const ScalarField2D& field, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "': cannot open file");
  out << "P5\n" << field.width() << " " << field.height() << "\n255\n";
  std::vector<unsigned char> raw(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    double v = std::clamp(field[i], 0.0, 255.0);
    raw[i] = static_cast<unsigned char>(std::lround(v));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw IoError("cannot write '" + path.string() + "': write failed");
}

void save_mask(const BinaryMask& mask, const std::filesystem::path& path) {
  ScalarField2D field(mask.width, mask.height);
  for (std::size_t i = 0; i < mask.values.size(); ++i) field[i] = mask.values[i] ? 255.0 : 0.0;
  save_image(field, path);
}

}  // namespace lfseg
