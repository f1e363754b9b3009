#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "mri/dataset.hpp"

namespace mri {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  out.push_back(std::move(field));
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && first != last;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line) || trim(line).empty()) throw CsvEmptyError("'" + path + "' is empty");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  std::vector<std::string> header = split_fields(line);
  for (auto& h : header) h = trim(h);

  const auto it = std::find(header.begin(), header.end(), label_column);
  if (it == header.end()) {
    throw CsvMissingColumnError("label column '" + label_column + "' not found in '" + path + "'");
  }
  const std::size_t label_pos = static_cast<std::size_t>(it - header.begin());
  const std::size_t dim = header.size() - 1;

  std::vector<double> x;
  std::vector<std::string> raw_labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw CsvError(path + ":" + std::to_string(line_no) + ": expected " +
                     std::to_string(header.size()) + " fields, found " + std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const std::string cell = trim(fields[c]);
      if (c == label_pos) {
        raw_labels.push_back(cell);
        continue;
      }
      double v;
      if (!parse_double(cell, v)) {
        throw CsvNonNumericError(path + ":" + std::to_string(line_no) + ": column '" + header[c] +
                                 "' has non-numeric value '" + cell + "'");
      }
      x.push_back(v);
    }
  }
  if (raw_labels.empty()) throw CsvEmptyError("'" + path + "' has a header but no rows");

  std::vector<std::string> distinct = raw_labels;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const bool numeric = std::all_of(distinct.begin(), distinct.end(), [](const std::string& s) {
    double v;
    return parse_double(s, v);
  });
  if (numeric) {
    std::sort(distinct.begin(), distinct.end(), [](const std::string& a, const std::string& b) {
      double va, vb;
      parse_double(a, va);
      parse_double(b, vb);
      return va < vb;
    });
  }
  std::map<std::string, Label> code;
  for (std::size_t i = 0; i < distinct.size(); ++i) code[distinct[i]] = static_cast<Label>(i + 1);

  std::vector<Label> y;
  y.reserve(raw_labels.size());
  for (const auto& r : raw_labels) y.push_back(code.at(r));
  const std::size_t k = std::max<std::size_t>(distinct.size(), 2);
  return Dataset(dim, k, std::move(x), std::move(y));
}

void write_csv(const Dataset& data, const std::string& path, const std::string& label_column) {
  if (!data.labelled()) throw CsvError("cannot write unlabelled data to '" + path + "'");
  std::ofstream out(path);
  if (!out) throw CsvError("cannot write '" + path + "'");
  for (std::size_t j = 0; j < data.dim(); ++j) out << 'x' << (j + 1) << ',';
  out << label_column << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.row(i)) out << format_double(v) << ',';
    out << data.label(i) << '\n';
  }
}

}  // namespace mri
