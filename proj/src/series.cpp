#include "logprod/series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "logprod/errors.hpp"

namespace logprod {

namespace {

std::string trim(std::string s) {
  const auto notspace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_double(const std::string& s, long line) {
  const std::string t = trim(s);
  double value = 0.0;
  const auto* begin = t.data();
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError("not a number: '" + s + "'", line);
  return value;
}

int parse_year(const std::string& s, long line) {
  const std::string t = trim(s);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size())
    throw ParseError("not a year: '" + s + "'", line);
  return value;
}

}  // namespace

void EconSeries::validate() const {
  if (years.size() != k.size() || years.size() != l.size() ||
      years.size() != y.size())
    throw ValidationError("series columns have mismatched lengths");
  for (std::size_t i = 0; i < years.size(); ++i) {
    if (i > 0 && years[i] <= years[i - 1])
      throw ValidationError("years must be strictly increasing (duplicate or unsorted year " +
                            std::to_string(years[i]) + ")");
    if (!(k[i] > 0.0 && l[i] > 0.0 && y[i] > 0.0))
      throw ValidationError("nonpositive value in row for year " +
                            std::to_string(years[i]));
  }
}

EconSeries ingest_stream(std::istream& in, const std::string& name) {
  std::string line;
  long line_no = 0;

  if (!std::getline(in, line)) throw ParseError(name + ": empty file", 1);
  ++line_no;
  auto header = split_csv_row(line);
  if (header.size() != 4 || header[0] != "year" || header[1] != "K" ||
      header[2] != "L" || header[3] != "Y")
    throw ParseError(name + ": header must be exactly 'year,K,L,Y'", line_no);

  struct Row {
    int year;
    double k, l, y;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_row(line);
    if (fields.size() != 4)
      throw ParseError("expected 4 comma-separated fields", line_no);
    Row r;
    r.year = parse_year(fields[0], line_no);
    r.k = parse_double(fields[1], line_no);
    r.l = parse_double(fields[2], line_no);
    r.y = parse_double(fields[3], line_no);
    if (!(r.k > 0.0 && r.l > 0.0 && r.y > 0.0))
      throw ValidationError("nonpositive value in row for year " +
                            std::to_string(r.year) + " (line " +
                            std::to_string(line_no) + ")");
    rows.push_back(r);
  }
  if (rows.empty()) throw ParseError(name + ": no data rows", line_no);

  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.year < b.year; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].year == rows[i - 1].year)
      throw ValidationError("duplicate year " + std::to_string(rows[i].year));
  }

  EconSeries out;
  for (const Row& r : rows) {
    out.years.push_back(r.year);
    out.k.push_back(r.k);
    out.l.push_back(r.l);
    out.y.push_back(r.y);
  }
  out.validate();
  return out;
}

EconSeries ingest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file: " + path);
  return ingest_stream(in, path);
}

void write_csv(const EconSeries& series, std::ostream& out) {
  out << "year,K,L,Y\n";
  char buf[128];
  for (std::size_t i = 0; i < series.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g,%.12g\n", series.years[i],
                  series.k[i], series.l[i], series.y[i]);
    out << buf;
  }
}

}  // namespace logprod
