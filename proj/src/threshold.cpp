#include "cdoc/threshold.hpp"

#include <cstdlib>

#include "cdoc/errors.hpp"

namespace cdoc {
namespace {

// between-class variance of split t as the exact fraction a^2 / b with
// a = S0*n1 - S1*n0 and b = n0*n1 (counts and first moments are integers)
struct VarianceTerm {
  std::int64_t a = 0;
  std::int64_t b = 0;
};

// largest total count for which a^2 * b fits unsigned __int128
constexpr std::uint64_t kExactPixelLimit = 300000;

bool greater_exact(const VarianceTerm& lhs, const VarianceTerm& rhs) {
  if (lhs.b == 0 || lhs.a == 0) return false;  // lhs variance is zero
  if (rhs.b == 0 || rhs.a == 0) return true;   // rhs zero, lhs positive
  const unsigned __int128 la = static_cast<unsigned __int128>(
      static_cast<__int128>(lhs.a) * lhs.a);
  const unsigned __int128 ra = static_cast<unsigned __int128>(
      static_cast<__int128>(rhs.a) * rhs.a);
  return la * static_cast<unsigned __int128>(rhs.b) >
         ra * static_cast<unsigned __int128>(lhs.b);
}

bool greater_approx(const VarianceTerm& lhs, const VarianceTerm& rhs) {
  const long double lv =
      lhs.b == 0 ? 0.0L
                 : static_cast<long double>(lhs.a) * lhs.a / static_cast<long double>(lhs.b);
  const long double rv =
      rhs.b == 0 ? 0.0L
                 : static_cast<long double>(rhs.a) * rhs.a / static_cast<long double>(rhs.b);
  return lv > rv;
}

}  // namespace

Histogram histogram_of(const GrayImage& img) {
  Histogram hist{};
  for (std::uint8_t v : img.data) ++hist[v];
  return hist;
}

int otsu_threshold(const Histogram& hist) {
  std::uint64_t total = 0, total_moment = 0;
  int lo = -1, hi = -1;
  for (int i = 0; i < 256; ++i) {
    if (hist[static_cast<size_t>(i)] == 0) continue;
    total += hist[static_cast<size_t>(i)];
    total_moment += static_cast<std::uint64_t>(i) * hist[static_cast<size_t>(i)];
    if (lo < 0) lo = i;
    hi = i;
  }
  if (total == 0) throw DomainError("otsu_threshold: empty histogram");
  if (lo == hi) return lo;

  const bool exact = total <= kExactPixelLimit;
  VarianceTerm best;
  int best_t = 0;
  std::uint64_t n0 = 0, s0 = 0;
  for (int t = 0; t < 255; ++t) {
    n0 += hist[static_cast<size_t>(t)];
    s0 += static_cast<std::uint64_t>(t) * hist[static_cast<size_t>(t)];
    const std::uint64_t n1 = total - n0;
    const std::uint64_t s1 = total_moment - s0;
    VarianceTerm term;
    term.a = static_cast<std::int64_t>(s0 * n1) - static_cast<std::int64_t>(s1 * n0);
    term.b = static_cast<std::int64_t>(n0 * n1);
    const bool better = exact ? greater_exact(term, best) : greater_approx(term, best);
    if (better) {
      best = term;
      best_t = t;
    }
  }
  return best_t;
}

int triangle_threshold(const Histogram& hist) {
  std::uint64_t total = 0;
  int lo = -1, hi = -1, peak = 0;
  std::uint64_t peak_count = 0;
  for (int i = 0; i < 256; ++i) {
    const std::uint64_t c = hist[static_cast<size_t>(i)];
    if (c == 0) continue;
    total += c;
    if (lo < 0) lo = i;
    hi = i;
    if (c > peak_count) {
      peak_count = c;
      peak = i;
    }
  }
  if (total == 0) throw DomainError("triangle_threshold: empty histogram");
  if (lo == hi) return lo;

  const int left_span = peak - lo;
  const int right_span = hi - peak;
  const int tail = (left_span > right_span) ? lo : hi;
  const int dir = (tail > peak) ? 1 : -1;
  if (std::abs(tail - peak) <= 1) return peak;

  // perpendicular distance to the peak->tail chord, up to a shared factor:
  // |dh*(b - peak) - dx*(h[b] - h[peak])|
  const std::int64_t dh = static_cast<std::int64_t>(hist[static_cast<size_t>(tail)]) -
                          static_cast<std::int64_t>(peak_count);
  const std::int64_t dx = tail - peak;
  std::int64_t best_num = -1;
  int best_b = peak + dir;
  for (int b = peak + dir; b != tail; b += dir) {
    const std::int64_t rise = static_cast<std::int64_t>(hist[static_cast<size_t>(b)]) -
                              static_cast<std::int64_t>(peak_count);
    const std::int64_t num = std::abs(dh * (b - peak) - dx * rise);
    if (num > best_num) {  // strict: first maximum is nearest the peak
      best_num = num;
      best_b = b;
    }
  }
  return best_b;
}

std::string to_string(BinarizeMethod m) {
  return m == BinarizeMethod::otsu ? "otsu" : "triangle";
}

BinarizeResult binarize_auto(const GrayImage& img) {
  if (img.width <= 0 || img.height <= 0)
    throw DomainError("binarize_auto: zero-dimension image");
  const Histogram hist = histogram_of(img);

  std::uint64_t total = img.data.size();
  std::uint64_t sum = 0;
  int lo = -1, hi = -1;
  for (int i = 0; i < 256; ++i) {
    if (hist[static_cast<size_t>(i)] == 0) continue;
    sum += static_cast<std::uint64_t>(i) * hist[static_cast<size_t>(i)];
    if (lo < 0) lo = i;
    hi = i;
  }
  const bool light = sum >= 128 * total;

  BinarizeResult result;
  result.method = light ? BinarizeMethod::otsu : BinarizeMethod::triangle;
  result.mask.width = img.width;
  result.mask.height = img.height;
  result.mask.data.assign(img.data.size(), 0);
  if (lo == hi) {  // single intensity: no ink to separate
    result.threshold = lo;
    return result;
  }
  if (light) {
    const int t = otsu_threshold(hist);
    result.threshold = t;
    for (size_t i = 0; i < img.data.size(); ++i)
      result.mask.data[i] = img.data[i] <= t ? 1 : 0;
  } else {
    const int t = triangle_threshold(hist);
    result.threshold = t;
    for (size_t i = 0; i < img.data.size(); ++i)
      result.mask.data[i] = img.data[i] > t ? 1 : 0;
  }
  return result;
}

GrayImage render_mask(const BinaryImage& mask, bool light_background) {
  GrayImage img;
  img.width = mask.width;
  img.height = mask.height;
  img.data.resize(mask.data.size());
  const std::uint8_t ink = light_background ? 0 : 255;
  const std::uint8_t paper = light_background ? 255 : 0;
  for (size_t i = 0; i < mask.data.size(); ++i)
    img.data[i] = mask.data[i] ? ink : paper;
  return img;
}

}  // namespace cdoc
