#pragma once

#include <optional>
#include <string>
#include <vector>

namespace breather {

/// Shortest decimal that round-trips to the same double (via std::to_chars).
std::string format_double(double value);

/// RFC 4180 CSV writer: header row, CRLF line endings, fields quoted only
/// when needed. Doubles are written in shortest round-trip form; an empty
/// optional becomes an empty field.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(const std::vector<std::string>& fields);

    /// Serializes the table; row cell counts must match the header.
    std::string str() const;

    /// Writes to `path`, throwing std::runtime_error on I/O failure.
    void write_file(const std::string& path) const;

    static std::string field(double v) { return format_double(v); }
    static std::string field(std::optional<double> v) { return v ? format_double(*v) : ""; }
    static std::string field(long v) { return std::to_string(v); }
    static std::string field(int v) { return std::to_string(v); }

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace breather
