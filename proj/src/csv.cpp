#include "darksts/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "darksts/error.hpp"

namespace darksts::csv {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::IoFailure, "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw Error(Errc::IoFailure, "read failed: " + path.string());
    }
    return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(Errc::IoFailure, "cannot open for writing: " + path.string());
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw Error(Errc::IoFailure, "write failed: " + path.string());
    }
}

Cursor::Cursor(std::string_view text) : text_(text) {
    // UTF-8 byte order mark
    if (text_.size() >= 3 && text_.substr(0, 3) == "\xEF\xBB\xBF") {
        pos_ = 3;
    }
}

bool Cursor::next(std::vector<std::string_view>& fields) {
    fields.clear();
    scratch_.clear();
    // skip blank lines
    while (pos_ < text_.size() && (text_[pos_] == '\n' || text_[pos_] == '\r')) {
        if (text_[pos_] == '\n') {
            ++line_;
        }
        ++pos_;
    }
    if (pos_ >= text_.size()) {
        return false;
    }
    row_line_ = line_;
    const std::size_t n = text_.size();
    while (true) {
        if (pos_ < n && text_[pos_] == '"') {
            ++pos_;
            const std::size_t start = pos_;
            bool escaped = false;
            while (pos_ < n) {
                if (text_[pos_] == '"') {
                    if (pos_ + 1 < n && text_[pos_ + 1] == '"') {
                        escaped = true;
                        pos_ += 2;
                        continue;
                    }
                    break;
                }
                if (text_[pos_] == '\n') {
                    ++line_;
                }
                ++pos_;
            }
            std::string_view raw = text_.substr(start, pos_ - start);
            if (pos_ < n) {
                ++pos_;  // closing quote
            }
            if (escaped) {
                std::string& s = scratch_.emplace_back();
                s.reserve(raw.size());
                for (std::size_t i = 0; i < raw.size(); ++i) {
                    s.push_back(raw[i]);
                    if (raw[i] == '"') {
                        ++i;
                    }
                }
                fields.emplace_back(s);
            } else {
                fields.push_back(raw);
            }
            // anything between the closing quote and the separator is dropped
            while (pos_ < n && text_[pos_] != ',' && text_[pos_] != '\n' && text_[pos_] != '\r') {
                ++pos_;
            }
        } else {
            const std::size_t start = pos_;
            while (pos_ < n && text_[pos_] != ',' && text_[pos_] != '\n' && text_[pos_] != '\r') {
                ++pos_;
            }
            fields.push_back(text_.substr(start, pos_ - start));
        }
        if (pos_ < n && text_[pos_] == ',') {
            ++pos_;
            continue;
        }
        if (pos_ < n && text_[pos_] == '\r') {
            ++pos_;
        }
        if (pos_ < n && text_[pos_] == '\n') {
            ++pos_;
            ++line_;
        }
        return true;
    }
}

Header::Header(const std::vector<std::string_view>& names) {
    names_.reserve(names.size());
    for (auto n : names) {
        names_.emplace_back(trim(n));
    }
}

std::optional<std::size_t> Header::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

std::size_t Header::require(std::string_view name) const {
    if (auto i = find(name)) {
        return *i;
    }
    throw Error(Errc::MissingColumn, "missing column: " + std::string(name));
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

std::optional<long long> parse_int(std::string_view s) {
    s = trim(s);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string format_fixed(double v, int digits) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    return std::string(buf, ptr);
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void append_row(std::string& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) {
            out.push_back(',');
        }
        out += fields[i];
    }
    out.push_back('\n');
}

}  // namespace darksts::csv
