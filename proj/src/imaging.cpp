#include "pmc/imaging.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "pmc/csv_io.hpp"

namespace pmc {
namespace {

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

// Minimal Netpbm tokenizer: whitespace separated, '#' comments to end of line.
class PgmReader {
public:
  explicit PgmReader(std::string bytes) : bytes_(std::move(bytes)) {}

  std::string token() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
    if (start == pos_) throw Error(ErrorCode::CorruptFile, "unexpected end of PGM data");
    return bytes_.substr(start, pos_ - start);
  }

  long integer() {
    const std::string t = token();
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(t, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::CorruptFile, "bad integer '" + t + "' in PGM");
    }
    if (used != t.size()) throw Error(ErrorCode::CorruptFile, "bad integer '" + t + "' in PGM");
    return v;
  }

  // The raster of a P5 file starts after exactly one whitespace byte.
  void skip_single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw Error(ErrorCode::CorruptFile, "missing separator before PGM raster");
    }
    ++pos_;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }
  unsigned char byte() { return static_cast<unsigned char>(bytes_[pos_++]); }

private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string bytes_;
  std::size_t pos_ = 0;
};

Image read_pgm(std::string bytes) {
  PgmReader reader(std::move(bytes));
  const std::string magic = reader.token();
  if (magic != "P2" && magic != "P5") throw Error(ErrorCode::UnsupportedFormat, "not a P2/P5 PGM: " + magic);
  const long width = reader.integer();
  const long height = reader.integer();
  const long maxval = reader.integer();
  if (width < 1 || height < 1) throw Error(ErrorCode::CorruptFile, "PGM dimensions must be positive");
  if (maxval < 1 || maxval > 65535) throw Error(ErrorCode::CorruptFile, "PGM maxval out of range");

  Image image;
  image.maxval = static_cast<int>(maxval);
  image.pixels.resize(height, width);
  if (magic == "P2") {
    for (long i = 0; i < height; ++i) {
      for (long j = 0; j < width; ++j) {
        const long v = reader.integer();
        if (v < 0 || v > maxval) throw Error(ErrorCode::CorruptFile, "PGM pixel exceeds maxval");
        image.pixels(i, j) = static_cast<double>(v);
      }
    }
    return image;
  }

  reader.skip_single_space();
  const std::size_t bytes_per = maxval < 256 ? 1 : 2;
  if (reader.remaining() < bytes_per * static_cast<std::size_t>(width * height)) {
    throw Error(ErrorCode::CorruptFile, "PGM raster truncated");
  }
  for (long i = 0; i < height; ++i) {
    for (long j = 0; j < width; ++j) {
      unsigned v = reader.byte();
      if (bytes_per == 2) v = (v << 8) | reader.byte();
      if (v > static_cast<unsigned>(maxval)) throw Error(ErrorCode::CorruptFile, "PGM pixel exceeds maxval");
      image.pixels(i, j) = static_cast<double>(v);
    }
  }
  return image;
}

unsigned quantize(double v, int maxval) {
  const double r = std::floor(v + 0.5);
  if (!(r > 0.0)) return 0;
  if (r > maxval) return static_cast<unsigned>(maxval);
  return static_cast<unsigned>(r);
}

} // namespace

void validate_layout(const PatchLayout& layout) {
  if (layout.image_h < 1 || layout.image_w < 1 || layout.patch_h < 1 || layout.patch_w < 1) {
    throw Error(ErrorCode::IndivisibleLayout, "layout sizes must be positive");
  }
  if (layout.image_h % layout.patch_h != 0 || layout.image_w % layout.patch_w != 0) {
    throw Error(ErrorCode::IndivisibleLayout,
                std::to_string(layout.patch_h) + "x" + std::to_string(layout.patch_w) +
                    " patches do not tile a " + std::to_string(layout.image_h) + "x" +
                    std::to_string(layout.image_w) + " image");
  }
}

Matrix patchify(const Matrix& image, const PatchLayout& layout) {
  validate_layout(layout);
  require_shape(image, layout.image_h, layout.image_w, "patchify");
  const int across = layout.image_w / layout.patch_w;
  Matrix m(layout.rows(), layout.cols());
  for (int i = 0; i < layout.image_h; ++i) {
    for (int j = 0; j < layout.image_w; ++j) {
      const int patch = (i / layout.patch_h) * across + j / layout.patch_w;
      const int offset = (i % layout.patch_h) * layout.patch_w + j % layout.patch_w;
      m(offset, patch) = image(i, j);
    }
  }
  return m;
}

Matrix unpatchify(const Matrix& m, const PatchLayout& layout) {
  validate_layout(layout);
  require_shape(m, layout.rows(), layout.cols(), "unpatchify");
  const int across = layout.image_w / layout.patch_w;
  Matrix image(layout.image_h, layout.image_w);
  for (int i = 0; i < layout.image_h; ++i) {
    for (int j = 0; j < layout.image_w; ++j) {
      const int patch = (i / layout.patch_h) * across + j / layout.patch_w;
      const int offset = (i % layout.patch_h) * layout.patch_w + j % layout.patch_w;
      image(i, j) = m(offset, patch);
    }
  }
  return image;
}

Matrix mask_overlay(const Matrix& image, const IndexSet& mask, const PatchLayout& layout) {
  const Matrix m = patchify(image, layout);
  Matrix kept = Matrix::Zero(m.rows(), m.cols());
  for (const Cell& c : mask) {
    if (c.i < 0 || c.i >= m.rows() || c.j < 0 || c.j >= m.cols()) {
      throw Error(ErrorCode::ShapeMismatch, "mask cell outside patch matrix");
    }
    kept(c.i, c.j) = m(c.i, c.j);
  }
  return unpatchify(kept, layout);
}

Image read_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  const std::string ext = lower_extension(path);
  if (ext == ".csv") {
    Image image;
    image.pixels = read_matrix_csv(in);
    if (image.pixels.size() == 0) throw Error(ErrorCode::CorruptFile, "empty CSV image");
    const double top = image.pixels.maxCoeff();
    image.maxval = top > 255.0 ? static_cast<int>(std::ceil(std::min(top, 65535.0))) : 255;
    return image;
  }
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() >= 2 && bytes[0] == 'P') return read_pgm(std::move(bytes));
  throw Error(ErrorCode::UnsupportedFormat, "unrecognized image format: " + path.string());
}

void write_image(const Image& image, const std::filesystem::path& path, bool ascii) {
  const std::string ext = lower_extension(path);
  if (ext == ".csv") {
    write_matrix_csv(path, image.pixels);
    return;
  }
  if (ext != ".pgm") throw Error(ErrorCode::UnsupportedFormat, "write_image supports .pgm and .csv");
  if (image.maxval < 1 || image.maxval > 65535) throw Error(ErrorCode::UnsupportedFormat, "maxval out of range");
  if (image.pixels.size() == 0) throw Error(ErrorCode::BadShape, "empty image");

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  const auto h = image.pixels.rows();
  const auto w = image.pixels.cols();
  out << (ascii ? "P2" : "P5") << '\n' << w << ' ' << h << '\n' << image.maxval << '\n';
  for (Eigen::Index i = 0; i < h; ++i) {
    for (Eigen::Index j = 0; j < w; ++j) {
      const unsigned v = quantize(image.pixels(i, j), image.maxval);
      if (ascii) {
        out << v << (j + 1 == w ? '\n' : ' ');
      } else if (image.maxval < 256) {
        out.put(static_cast<char>(v));
      } else {
        out.put(static_cast<char>(v >> 8));
        out.put(static_cast<char>(v & 0xff));
      }
    }
  }
  if (!out) throw Error(ErrorCode::IoFailure, "write failed: " + path.string());
}

Matrix to_display(const Matrix& values, double lo, double hi, int maxval) {
  if (!(hi > lo)) return Matrix::Zero(values.rows(), values.cols());
  Matrix out(values.rows(), values.cols());
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
      out(i, j) = quantize((values(i, j) - lo) / (hi - lo) * maxval, maxval);
    }
  }
  return out;
}

} // namespace pmc
