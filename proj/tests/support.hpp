#pragma once

#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace ppl::test {

// Scratch directory removed when the object dies.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    dir_ = std::filesystem::temp_directory_path() /
           ("ppl_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  std::filesystem::path dir_;
};

inline std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Big-endian IDX writers for hand-built fixtures.
inline void write_be32(std::ofstream& out, std::uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v >> 24),
                              static_cast<unsigned char>(v >> 16),
                              static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

inline void write_idx_images(const std::string& path,
                             const std::vector<std::vector<unsigned char>>& images,
                             std::uint32_t rows, std::uint32_t cols,
                             std::uint32_t magic = 0x00000803) {
  std::ofstream out(path, std::ios::binary);
  write_be32(out, magic);
  write_be32(out, static_cast<std::uint32_t>(images.size()));
  write_be32(out, rows);
  write_be32(out, cols);
  for (const auto& img : images)
    out.write(reinterpret_cast<const char*>(img.data()),
              static_cast<std::streamsize>(img.size()));
}

inline void write_idx_labels(const std::string& path, const std::vector<unsigned char>& labels,
                             std::uint32_t magic = 0x00000801) {
  std::ofstream out(path, std::ios::binary);
  write_be32(out, magic);
  write_be32(out, static_cast<std::uint32_t>(labels.size()));
  out.write(reinterpret_cast<const char*>(labels.data()),
            static_cast<std::streamsize>(labels.size()));
}

// Regularized upper incomplete gamma Q(a, x), series + continued fraction.
// Drives the chi-square p-values used to vet empirical sampling laws.
inline double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) return 1.0;
  if (x == 0.0) return 1.0;
  const double gln = std::lgamma(a);
  if (x < a + 1.0) {
    // P(a,x) by series, return 1 - P.
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
  }
  // Q(a,x) by Lentz continued fraction.
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - gln) * h;
}

inline double chi_square_p_value(double statistic, int dof) {
  return gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

}  // namespace ppl::test
