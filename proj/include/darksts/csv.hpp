#pragma once

#include <cstddef>
#include <deque>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace darksts::csv {

/// Reads an entire file. Throws Error{IoFailure}.
std::string read_file(const std::filesystem::path& path);

/// Writes `contents` to `path`, replacing it. Throws Error{IoFailure}.
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Row-at-a-time RFC 4180 parser over an in-memory buffer. Fields are views
/// into the buffer, or into per-row scratch storage for quoted fields that
/// contained escaped quotes; they stay valid until the next call to next().
class Cursor {
public:
    explicit Cursor(std::string_view text);

    /// Returns false at end of input. Blank lines are skipped.
    bool next(std::vector<std::string_view>& fields);

    /// 1-based line number of the row last returned.
    std::size_t line() const noexcept { return row_line_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t row_line_ = 0;
    std::deque<std::string> scratch_;
};

/// Maps header names to column indices.
class Header {
public:
    Header() = default;
    explicit Header(const std::vector<std::string_view>& names);

    std::optional<std::size_t> find(std::string_view name) const;

    /// Throws Error{MissingColumn}.
    std::size_t require(std::string_view name) const;

    std::size_t size() const noexcept { return names_.size(); }

private:
    std::vector<std::string> names_;
};

std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);
std::string_view trim(std::string_view s);

/// Shortest representation that round-trips through parse_double.
std::string format_double(double v);

/// Fixed-point with `digits` decimals.
std::string format_fixed(double v, int digits);

/// Quotes the field if it contains a separator, quote or newline.
std::string escape(std::string_view field);

/// Joins already-escaped or plain fields with commas and a trailing newline.
void append_row(std::string& out, const std::vector<std::string>& fields);

}  // namespace darksts::csv
