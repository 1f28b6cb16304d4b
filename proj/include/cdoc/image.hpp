#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cdoc {

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // row-major, 3 bytes per pixel

  std::uint8_t* pixel(int x, int y) { return &data[3 * (static_cast<size_t>(y) * width + x)]; }
  const std::uint8_t* pixel(int x, int y) const {
    return &data[3 * (static_cast<size_t>(y) * width + x)];
  }
};

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // row-major intensities

  std::uint8_t& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
};

struct BinaryImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // 1 = foreground ink

  std::uint8_t& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
};

// ITU-R BT.601 luma, rounded to nearest.
GrayImage to_grayscale(const RgbImage& rgb);

// Format chosen by extension: .png, .pgm (P5), .ppm (P6).
GrayImage load_gray_image(const std::string& path);
void save_gray_image(const GrayImage& img, const std::string& path);

GrayImage decode_pgm(const std::string& bytes);
std::string encode_pgm(const GrayImage& img);
RgbImage decode_ppm(const std::string& bytes);

}  // namespace cdoc
