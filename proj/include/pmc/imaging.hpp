#pragma once

#include <filesystem>

#include "pmc/core.hpp"
#include "pmc/synthlab.hpp"

namespace pmc {

/// Grayscale image: pixels(row, col) plus the format's maximum value.
struct Image {
  Matrix pixels;
  int maxval = 255;
};

/// Non-overlapping tiling of an image into patch_h x patch_w patches.
///
/// Patches are visited row-major across the image and each patch is
/// vectorized row-major, giving one column per patch. A 48x48 image in 8x8
/// patches becomes a 64x36 matrix.
struct PatchLayout {
  int image_h = 0;
  int image_w = 0;
  int patch_h = 8;
  int patch_w = 8;

  int rows() const { return patch_h * patch_w; }
  int cols() const { return (image_h / patch_h) * (image_w / patch_w); }
};

/// Throws Error{IndivisibleLayout} unless the patches tile the image exactly.
void validate_layout(const PatchLayout& layout);

Matrix patchify(const Matrix& image, const PatchLayout& layout);
Matrix unpatchify(const Matrix& m, const PatchLayout& layout);

/// Zeroes every pixel whose patch-matrix cell is not in `mask`.
Matrix mask_overlay(const Matrix& image, const IndexSet& mask, const PatchLayout& layout);

/// Reads PGM (P2 or P5, maxval <= 65535) or headerless CSV (by extension).
Image read_image(const std::filesystem::path& path);

/// Writes P5 for ".pgm" (P2 when `ascii`), CSV for ".csv". PGM pixels are
/// rounded half-up and clamped to [0, maxval].
void write_image(const Image& image, const std::filesystem::path& path, bool ascii = false);

/// Linear map [lo, hi] -> [0, maxval], rounded half-up and clamped.
Matrix to_display(const Matrix& values, double lo, double hi, int maxval);

} // namespace pmc
