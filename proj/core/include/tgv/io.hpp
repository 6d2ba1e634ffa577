#pragma once

#include <cstdint>
#include <string>

#include "tgv/grid.hpp"

namespace tgv {

// Reads an 8- or 16-bit grayscale or RGB PNG into a Center image with
// intensities scaled to [0,1] (255 and 65535 both map to exactly 1.0).
// Grayscale files load with one channel, RGB files with three; images with
// an alpha channel, palette color, or other bit depths are rejected.
GridImage load_png(const std::string& path);

// Writes a Center image with 1 or 3 channels as a grayscale or RGB PNG of
// the requested bit depth (8 or 16).  Values are clamped to [0,1] and then
// quantized, never wrapped.  The file bytes are deterministic for identical
// inputs: fixed compression level, no adaptive filtering, no timestamps.
// The write is whole-file atomic (temp file in place, then rename).
void save_png(const GridImage& u, const std::string& path, int bit_depth = 16);

// u + sigma * xi with xi i.i.d. standard normal.  The generator is
// std::mt19937_64 (its output sequence is fixed by the C++ standard, so a
// seed reproduces the same bytes on every platform) feeding a hand-rolled
// Box-Muller transform; std::normal_distribution is implementation-defined
// and would silently break reproducibility.  sigma = 0 returns u unchanged.
GridImage add_gaussian_noise(const GridImage& u, double sigma_noise,
                             std::uint64_t seed);

// 64-bit FNV-1a over the image's shape descriptor and raw sample bytes,
// formatted as "fnv1a64:<16 hex digits>" for embedding in reports.
std::string image_digest(const GridImage& u);

}  // namespace tgv
