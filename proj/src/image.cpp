#include "cdoc/image.hpp"

#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "cdoc/errors.hpp"

namespace cdoc {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("image: cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct PngReadState {
  const std::string* bytes;
  size_t offset = 0;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t count) {
  auto* state = static_cast<PngReadState*>(png_get_io_ptr(png));
  if (state->offset + count > state->bytes->size())
    png_error(png, "truncated PNG stream");
  std::memcpy(out, state->bytes->data() + state->offset, count);
  state->offset += count;
}

GrayImage decode_png(const std::string& bytes) {
  if (bytes.size() < 8 || png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8))
    throw ParseError("image: not a PNG stream");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw ParseError("image: png init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw ParseError("image: png init failed");
  }
  std::vector<png_byte> interleaved;
  GrayImage gray;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ParseError("image: corrupt PNG stream");
  }
  PngReadState state{&bytes, 0};
  png_set_read_fn(png, &state, png_read_from_memory);
  png_read_info(png, info);

  // normalize everything to 8-bit RGB, then take luma
  png_set_expand(png);
  png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_gray_to_rgb(png);
  png_read_update_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const size_t row_bytes = png_get_rowbytes(png, info);
  interleaved.resize(row_bytes * height);
  std::vector<png_bytep> rows(height);
  for (png_uint_32 y = 0; y < height; ++y) rows[y] = interleaved.data() + y * row_bytes;
  png_read_image(png, rows.data());
  png_destroy_read_struct(&png, &info, nullptr);

  RgbImage rgb;
  rgb.width = static_cast<int>(width);
  rgb.height = static_cast<int>(height);
  rgb.data.assign(interleaved.begin(), interleaved.end());
  return to_grayscale(rgb);
}

void encode_png(const GrayImage& img, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw ParseError("image: cannot write " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    std::fclose(fp);
    throw ParseError("image: png write failed for " + path);
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
               static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < img.height; ++y)
    png_write_row(png, const_cast<png_bytep>(&img.data[static_cast<size_t>(y) * img.width]));
  png_write_end(png, info);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

// P5/P6 header: magic, whitespace/comments, width, height, maxval
struct PnmHeader {
  int width = 0, height = 0, maxval = 0;
  size_t data_offset = 0;
};

PnmHeader parse_pnm_header(const std::string& bytes, const char* magic) {
  if (bytes.size() < 2 || bytes[0] != magic[0] || bytes[1] != magic[1])
    throw ParseError(std::string("image: expected ") + magic + " stream");
  size_t pos = 2;
  auto next_int = [&]() {
    while (pos < bytes.size()) {
      if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        ++pos;
      } else if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
    int value = 0;
    bool any = false;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
      value = value * 10 + (bytes[pos] - '0');
      ++pos;
      any = true;
    }
    if (!any) throw ParseError("image: malformed PNM header");
    return value;
  };
  PnmHeader h;
  h.width = next_int();
  h.height = next_int();
  h.maxval = next_int();
  if (h.width < 1 || h.height < 1 || h.maxval < 1 || h.maxval > 255)
    throw ParseError("image: unsupported PNM dimensions or maxval");
  ++pos;  // single whitespace after maxval
  h.data_offset = pos;
  return h;
}

}  // namespace

GrayImage to_grayscale(const RgbImage& rgb) {
  if (rgb.width <= 0 || rgb.height <= 0)
    throw DomainError("to_grayscale: zero-dimension image");
  if (rgb.data.size() != static_cast<size_t>(rgb.width) * rgb.height * 3)
    throw DomainError("to_grayscale: pixel buffer does not match dimensions");
  GrayImage gray;
  gray.width = rgb.width;
  gray.height = rgb.height;
  gray.data.resize(static_cast<size_t>(rgb.width) * rgb.height);
  for (size_t i = 0; i < gray.data.size(); ++i) {
    const double r = rgb.data[3 * i], g = rgb.data[3 * i + 1], b = rgb.data[3 * i + 2];
    const double luma = 0.299 * r + 0.587 * g + 0.114 * b;
    gray.data[i] = static_cast<std::uint8_t>(std::lround(luma));
  }
  return gray;
}

GrayImage decode_pgm(const std::string& bytes) {
  const PnmHeader h = parse_pnm_header(bytes, "P5");
  const size_t need = static_cast<size_t>(h.width) * h.height;
  if (bytes.size() < h.data_offset + need) throw ParseError("image: truncated PGM data");
  GrayImage img;
  img.width = h.width;
  img.height = h.height;
  img.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(h.data_offset),
                  bytes.begin() + static_cast<std::ptrdiff_t>(h.data_offset + need));
  return img;
}

std::string encode_pgm(const GrayImage& img) {
  std::ostringstream out;
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data.data()),
            static_cast<std::streamsize>(img.data.size()));
  return out.str();
}

RgbImage decode_ppm(const std::string& bytes) {
  const PnmHeader h = parse_pnm_header(bytes, "P6");
  const size_t need = static_cast<size_t>(h.width) * h.height * 3;
  if (bytes.size() < h.data_offset + need) throw ParseError("image: truncated PPM data");
  RgbImage img;
  img.width = h.width;
  img.height = h.height;
  img.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(h.data_offset),
                  bytes.begin() + static_cast<std::ptrdiff_t>(h.data_offset + need));
  return img;
}

GrayImage load_gray_image(const std::string& path) {
  const std::string bytes = read_file(path);
  if (ends_with(path, ".png")) return decode_png(bytes);
  if (ends_with(path, ".pgm")) return decode_pgm(bytes);
  if (ends_with(path, ".ppm")) return to_grayscale(decode_ppm(bytes));
  // fall back to sniffing the magic
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return decode_pgm(bytes);
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6')
    return to_grayscale(decode_ppm(bytes));
  return decode_png(bytes);
}

void save_gray_image(const GrayImage& img, const std::string& path) {
  if (ends_with(path, ".pgm")) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("image: cannot write " + path);
    out << encode_pgm(img);
    return;
  }
  encode_png(img, path);
}

}  // namespace cdoc
