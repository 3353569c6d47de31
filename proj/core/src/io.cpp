#include "dppdesign/io.hpp"

#include "dppdesign/error.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace dppdesign {

namespace {

std::vector<std::string> split_line(const std::string &line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ','))
    out.push_back(field);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  for (auto &f : out) {
    const auto b = f.find_first_not_of(" \t\r");
    const auto e = f.find_last_not_of(" \t\r");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return out;
}

double parse_double(const std::string &s, const std::filesystem::path &path,
                    std::size_t line) {
  char *end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw InvalidArgument(path.string() + ":" + std::to_string(line) +
                          ": not a number: '" + s + "'");
  return v;
}

std::ifstream open_input(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw InvalidArgument("cannot open " + path.string());
  return in;
}

// Reads the header and every nonblank data row of a numeric CSV.
std::vector<std::vector<double>> read_numeric(const std::filesystem::path &path,
                                              std::vector<std::string> &header) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line))
    throw InvalidArgument(path.string() + ": empty file");
  header = split_line(line);
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    const auto fields = split_line(line);
    if (fields.size() != header.size())
      throw InvalidArgument(path.string() + ":" + std::to_string(lineno) +
                            ": expected " + std::to_string(header.size()) +
                            " fields, got " + std::to_string(fields.size()));
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto &f : fields)
      row.push_back(parse_double(f, path, lineno));
    rows.push_back(std::move(row));
  }
  return rows;
}

void check_coordinate_header(const std::vector<std::string> &names,
                             std::size_t first,
                             const std::filesystem::path &path) {
  if (names.size() <= first)
    throw InvalidArgument(path.string() + ": header has no coordinate columns");
  for (std::size_t j = first; j < names.size(); ++j)
    if (names[j] != "x" + std::to_string(j - first + 1))
      throw InvalidArgument(path.string() + ": header column '" + names[j] +
                            "' should be x" + std::to_string(j - first + 1));
}

} // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CandidateSet read_candidates_csv(const std::filesystem::path &path) {
  std::vector<std::string> header;
  const auto rows = read_numeric(path, header);
  check_coordinate_header(header, 0, path);
  if (rows.empty())
    throw InvalidArgument(path.string() + ": no candidate rows");
  Eigen::MatrixXd pts(static_cast<Index>(rows.size()),
                      static_cast<Index>(header.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < header.size(); ++j)
      pts(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return CandidateSet(std::move(pts));
}

void write_candidates_csv(std::ostream &out, const CandidateSet &candidates) {
  for (Index j = 0; j < candidates.dim(); ++j)
    out << (j ? "," : "") << 'x' << j + 1;
  out << '\n';
  for (Index i = 0; i < candidates.size(); ++i) {
    for (Index j = 0; j < candidates.dim(); ++j)
      out << (j ? "," : "") << format_double(candidates.points()(i, j));
    out << '\n';
  }
}

void write_design_csv(std::ostream &out, const Design &design) {
  out << "index";
  for (Index j = 0; j < design.coords.cols(); ++j)
    out << ",x" << j + 1;
  out << '\n';
  for (Index i = 0; i < design.size(); ++i) {
    out << design.indices[static_cast<std::size_t>(i)];
    for (Index j = 0; j < design.coords.cols(); ++j)
      out << ',' << format_double(design.coords(i, j));
    out << '\n';
  }
}

void write_design_csv(const std::filesystem::path &path, const Design &design) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write " + path.string());
  write_design_csv(out, design);
}

DesignTable read_design_csv(const std::filesystem::path &path) {
  std::vector<std::string> header;
  const auto rows = read_numeric(path, header);
  if (header.empty() || header[0] != "index")
    throw InvalidArgument(path.string() + ": first column must be 'index'");
  check_coordinate_header(header, 1, path);
  DesignTable t;
  const auto d = static_cast<Index>(header.size() - 1);
  t.coords.resize(static_cast<Index>(rows.size()), d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double idx = rows[i][0];
    if (idx < 0 || idx != std::floor(idx))
      throw InvalidArgument(path.string() + ": index '" + format_double(idx) +
                            "' is not a nonnegative integer");
    t.indices.push_back(static_cast<Index>(idx));
    for (Index j = 0; j < d; ++j)
      t.coords(static_cast<Index>(i), j) = rows[i][static_cast<std::size_t>(j + 1)];
  }
  return t;
}

void write_columns_csv(std::ostream &out, const std::vector<std::string> &names,
                       const std::vector<Eigen::VectorXd> &columns) {
  if (names.size() != columns.size())
    throw InvalidArgument("column names and columns differ in count");
  for (std::size_t j = 0; j < names.size(); ++j)
    out << (j ? "," : "") << names[j];
  out << '\n';
  const Index rows = columns.empty() ? 0 : columns.front().size();
  for (const auto &c : columns)
    if (c.size() != rows)
      throw InvalidArgument("columns differ in length");
  for (Index i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j)
      out << (j ? "," : "") << format_double(columns[j][i]);
    out << '\n';
  }
}

} // namespace dppdesign
