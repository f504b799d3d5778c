#include "cadi/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>
#include <vector>

namespace cadi {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      break;
    }
    out.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

double parse_coordinate(const std::string& field, const std::string& path,
                        std::size_t line_no) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ValidationError(path + ":" + std::to_string(line_no) +
                          ": malformed number '" + field + "'");
  }
  if (!std::isfinite(v)) {
    throw ValidationError(path + ":" + std::to_string(line_no) +
                          ": non-finite value '" + field + "'");
  }
  return v;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    lines.push_back(line);
  }
  return lines;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open file for writing: " + path);
  out << body;
  if (!out) throw ValidationError("write failed: " + path);
}

}  // namespace

Dataset load_dataset(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw ValidationError(path + ": empty file");

  const auto header = split_fields(lines[0]);
  if (header.size() < 2 || header.back() != "label") {
    throw ValidationError(path + ": missing label column (expected header "
                          "'f0,...,f{d-1},label')");
  }
  const std::size_t d = header.size() - 1;

  Dataset ds;
  ds.points = Matrix(lines.size() - 1, d);
  ds.labels.resize(lines.size() - 1);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split_fields(lines[r]);
    if (fields.size() != d + 1) {
      throw ValidationError(path + ":" + std::to_string(r + 1) +
                            ": expected " + std::to_string(d + 1) +
                            " fields, got " + std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < d; ++c) {
      ds.points.at(r - 1, c) = parse_coordinate(fields[c], path, r + 1);
    }
    const std::string& name = fields[d];
    std::uint32_t id = 0;
    for (; id < ds.label_names.size(); ++id) {
      if (ds.label_names[id] == name) break;
    }
    if (id == ds.label_names.size()) ds.label_names.push_back(name);
    ds.labels[r - 1] = id;
  }
  ds.validate();
  return ds;
}

void save_dataset(const Dataset& ds, const std::string& path) {
  std::ostringstream out;
  for (std::size_t c = 0; c < ds.dim(); ++c) out << 'f' << c << ',';
  out << "label\n";
  for (std::size_t r = 0; r < ds.n(); ++r) {
    for (std::size_t c = 0; c < ds.dim(); ++c) {
      out << format_double(ds.points.at(r, c)) << ',';
    }
    out << ds.label_names[ds.labels[r]] << '\n';
  }
  write_file(path, out.str());
}

Projection load_projection(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw ValidationError(path + ": empty file");

  auto header = split_fields(lines[0]);
  bool has_label = !header.empty() && header.back() == "label";
  if (has_label) header.pop_back();
  static const char* expected[] = {"x", "y", "z"};
  if (header.empty() || header.size() > 3) {
    throw ValidationError(path + ": projection header must be x,y[,z]");
  }
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] != expected[c]) {
      throw ValidationError(path + ": projection header must be x,y[,z], got '" +
                            header[c] + "'");
    }
  }
  const std::size_t t = header.size();

  Projection proj;
  proj.points = Matrix(lines.size() - 1, t);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split_fields(lines[r]);
    if (fields.size() != t + (has_label ? 1 : 0)) {
      throw ValidationError(path + ":" + std::to_string(r + 1) +
                            ": wrong field count");
    }
    for (std::size_t c = 0; c < t; ++c) {
      proj.points.at(r - 1, c) = parse_coordinate(fields[c], path, r + 1);
    }
  }
  proj.validate();
  return proj;
}

void save_projection(const Projection& proj, const std::string& path) {
  const std::size_t t = proj.dim();
  if (t < 1 || t > 3) {
    throw ValidationError(
        "projection CSV supports 1 to 3 dimensions, got t = " +
        std::to_string(t));
  }
  static const char* names[] = {"x", "y", "z"};
  std::ostringstream out;
  for (std::size_t c = 0; c < t; ++c) {
    out << names[c] << (c + 1 < t ? "," : "");
  }
  out << '\n';
  for (std::size_t r = 0; r < proj.n(); ++r) {
    for (std::size_t c = 0; c < t; ++c) {
      out << format_double(proj.points.at(r, c)) << (c + 1 < t ? "," : "");
    }
    out << '\n';
  }
  write_file(path, out.str());
}

}  // namespace cadi
