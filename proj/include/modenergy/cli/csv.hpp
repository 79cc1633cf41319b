#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <filesystem>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "modenergy/errors.hpp"

namespace modenergy::csv {

/// Locale-independent, 15 significant digits.
inline std::string number(double v, int digits = 15)
{
    if (std::isnan(v))
        return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
    return std::string(buf, res.ptr);
}

inline std::string number(std::uint64_t v) { return std::to_string(v); }
inline std::string number(unsigned v) { return std::to_string(v); }
inline std::string number(int v) { return std::to_string(v); }

class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    Table& row(std::vector<std::string> cells)
    {
        if (cells.size() != header_.size())
            throw invalid_input("csv: row width does not match header");
        rows_.push_back(std::move(cells));
        return *this;
    }

    std::size_t size() const { return rows_.size(); }

    std::string str() const
    {
        std::string out;
        append(out, header_);
        for (const auto& r : rows_)
            append(out, r);
        return out;
    }

private:
    static void append(std::string& out, const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                out += ',';
            out += cells[i];
        }
        out += '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes to `path` via a sibling temp file and rename, so readers never see a
/// partial file. Empty path or "-" means stdout.
inline void write_atomically(const std::string& path, std::string_view text)
{
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw config_error("cannot open " + tmp.string() + " for writing");
        f.write(text.data(), static_cast<std::streamsize>(text.size()));
        f.flush();
        if (!f) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw config_error("write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw config_error("cannot move output into place at " + path);
    }
}

} // namespace modenergy::csv
