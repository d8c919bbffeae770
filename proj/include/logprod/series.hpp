#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace logprod {

/// Annual capital / labor / output index series (base year = 100).
struct EconSeries {
  std::vector<int> years;
  std::vector<double> k;
  std::vector<double> l;
  std::vector<double> y;

  std::size_t size() const { return years.size(); }
  void validate() const;  // strictly increasing years, positive values
};

/// Reads a `year,K,L,Y` CSV. Rows are sorted by year; duplicate years are
/// rejected. Throws ParseError (with line number) on malformed rows and
/// ValidationError on nonpositive values.
EconSeries ingest(const std::string& path);
EconSeries ingest_stream(std::istream& in, const std::string& name = "<stream>");

void write_csv(const EconSeries& series, std::ostream& out);

}  // namespace logprod
