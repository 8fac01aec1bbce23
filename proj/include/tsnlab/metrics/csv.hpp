#pragma once

// Plain CSV writing with shortest round-trip number formatting.

#include <iosfwd>
#include <string>
#include <vector>

#include "tsnlab/metrics/metrics.hpp"

namespace tsnlab::metrics {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);
std::string format_number(std::int64_t v);
std::string format_number(std::uint64_t v);
std::string format_number(int v);

std::string csv_escape(const std::string& field);

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}
    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

const std::vector<std::string>& summary_columns();
std::vector<std::string> summary_row(const Summary& s);

void write_summary_csv(std::ostream& out, const std::vector<Summary>& rows);
void write_ecdf_csv(std::ostream& out, const std::vector<EcdfPoint>& points);

} // namespace tsnlab::metrics
