#pragma once

#include <cstdint>
#include <fstream>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace wgtk {

/**
 * Line-oriented reader over a plain or gzip-compressed text file. Compression
 * is selected by the ".gz" extension. Trailing '\r' is stripped so CRLF input
 * parses the same as LF.
 */
class LineReader {
public:
    explicit LineReader(const std::string& path);
    ~LineReader();
    LineReader(LineReader&&) noexcept;
    LineReader& operator=(LineReader&&) noexcept;
    LineReader(const LineReader&) = delete;
    LineReader& operator=(const LineReader&) = delete;

    /// Reads the next line into `line`. Returns false at end of file.
    bool next(std::string& line);

    std::size_t line_number() const { return line_number_; }
    const std::string& path() const { return path_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::string path_;
    std::size_t line_number_ = 0;
};

/// Splits one CSV record. Handles RFC-4180 quoted fields ("" escapes a quote).
std::vector<std::string> split_csv(std::string_view line);

/// Joins fields into a CSV record, quoting only where required.
std::string join_csv(const std::vector<std::string>& fields);

std::string_view trim(std::string_view s);

/// Shortest decimal form that round-trips through double.
std::string format_double(double v);

double parse_double(std::string_view s, const std::string& context);
std::int64_t parse_int(std::string_view s, const std::string& context);

/// Lowercase ASCII copy; domain/file-extension comparisons only.
std::string ascii_lower(std::string_view s);

bool ends_with_icase(std::string_view s, std::string_view suffix);

/// "com.example" <-> "example.com". Labels use the natural order, vertex
/// tables the CommonCrawl reversed-host order.
std::string reverse_host(std::string_view host);

/// Hex SHA-256 of a file's content.
std::string sha256_file(const std::string& path);

/// Reads a whole (possibly gzipped) file as text.
std::string read_text_file(const std::string& path);

void write_text_file(const std::string& path, std::string_view content);

} // namespace wgtk
