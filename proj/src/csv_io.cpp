#include "pmc/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

namespace pmc {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view field, int line_no) {
  T value{};
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || field.empty()) {
    throw Error(ErrorCode::CorruptFile,
                "line " + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
  }
  return value;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  return out;
}

} // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

Matrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    for (std::string_view field : split_commas(line)) row.push_back(parse_number<double>(field, line_no));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::CorruptFile, "line " + std::to_string(line_no) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return Matrix(0, 0);
  Matrix x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = rows[i][j];
  }
  return x;
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix_csv(in);
}

void write_matrix_csv(std::ostream& out, const Matrix& x) {
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      if (j) out << ',';
      out << format_double(x(i, j));
    }
    out << '\n';
  }
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& x) {
  auto out = open_out(path);
  write_matrix_csv(out, x);
  if (!out) throw Error(ErrorCode::IoFailure, "write failed: " + path.string());
}

ObservationSet read_observations_csv(std::istream& in, int d1, int d2) {
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::vector<Sample> samples;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    if (!header_seen) {
      if (view != "i,j,y") {
        throw Error(ErrorCode::CorruptFile, "expected header 'i,j,y', got '" + std::string(view) + "'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split_commas(view);
    if (fields.size() != 3) {
      throw Error(ErrorCode::CorruptFile, "line " + std::to_string(line_no) + ": expected 3 fields");
    }
    samples.push_back(Sample{parse_number<int>(fields[0], line_no), parse_number<int>(fields[1], line_no),
                             parse_number<std::int64_t>(fields[2], line_no)});
  }
  if (!header_seen) throw Error(ErrorCode::CorruptFile, "missing header 'i,j,y'");
  return ObservationSet(d1, d2, std::move(samples));
}

ObservationSet read_observations_csv(const std::filesystem::path& path, int d1, int d2) {
  auto in = open_in(path);
  return read_observations_csv(in, d1, d2);
}

void write_observations_csv(std::ostream& out, const ObservationSet& obs) {
  out << "i,j,y\n";
  for (const Sample& s : obs.samples()) out << s.i << ',' << s.j << ',' << s.y << '\n';
}

void write_observations_csv(const std::filesystem::path& path, const ObservationSet& obs) {
  auto out = open_out(path);
  write_observations_csv(out, obs);
  if (!out) throw Error(ErrorCode::IoFailure, "write failed: " + path.string());
}

} // namespace pmc
