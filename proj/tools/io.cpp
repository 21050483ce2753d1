// Copyright 2026 The Qutrit Control Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "qutrit/linalg.hpp"

namespace qutrit::cli {

namespace {

std::string trim(const std::string &s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, sep)) out.push_back(trim(cell));
    if (!line.empty() && line.back() == sep) out.push_back("");
    return out;
}

bool parse_double(const std::string &s, double &v) {
    if (s.empty()) return false;
    char *end = nullptr;
    errno = 0;
    v = std::strtod(s.c_str(), &end);
    return errno == 0 && end == s.c_str() + s.size();
}

}  // namespace

void OutputSet::add(std::string path, std::string content) {
    files_.emplace_back(std::move(path), std::move(content));
}

void OutputSet::commit() {
    namespace fs = std::filesystem;
    std::vector<std::string> temps, published;
    auto cleanup = [&] {
        std::error_code ec;
        for (const auto &t : temps) fs::remove(t, ec);
        for (const auto &p : published) fs::remove(p, ec);
    };
    const std::string suffix = ".tmp." + std::to_string(::getpid());
    for (const auto &[path, content] : files_) {
        std::string tmp = path + suffix;
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) {
            cleanup();
            throw IoError("cannot write '" + path + "': " + std::strerror(errno));
        }
        temps.push_back(tmp);
        os << content;
        os.close();
        if (!os) {
            cleanup();
            throw IoError("write to '" + path + "' failed");
        }
    }
    for (size_t k = 0; k < files_.size(); ++k) {
        std::error_code ec;
        fs::rename(temps[k], files_[k].first, ec);
        if (ec) {
            cleanup();
            throw IoError("cannot publish '" + files_[k].first + "': " + ec.message());
        }
        published.push_back(files_[k].first);
    }
    files_.clear();
}

std::string read_file(const std::string &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    if (is.bad()) throw IoError("read of '" + path + "' failed");
    return ss.str();
}

size_t CsvTable::column(const std::string &name) const {
    for (size_t k = 0; k < header.size(); ++k) {
        if (header[k] == name) return k;
    }
    throw ValidationError("CSV has no column '" + name + "'");
}

std::vector<double> CsvTable::values(size_t col) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto &r : rows) out.push_back(r.at(col));
    return out;
}

CsvTable parse_csv(const std::string &text) {
    CsvTable t;
    std::istringstream is(text);
    std::string line;
    size_t width = 0;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string tl = trim(line);
        if (tl.empty() || tl[0] == '#') continue;
        auto cells = split(tl, ',');
        std::vector<double> row(cells.size());
        bool numeric = true;
        for (size_t k = 0; k < cells.size() && numeric; ++k) numeric = parse_double(cells[k], row[k]);
        if (!numeric) {
            if (t.header.empty() && t.rows.empty()) {
                t.header = cells;
                width = cells.size();
                continue;
            }
            throw ValidationError("CSV line " + std::to_string(lineno) + " is not numeric");
        }
        if (width == 0) width = row.size();
        if (row.size() != width) {
            throw ValidationError("CSV line " + std::to_string(lineno) + " has " +
                                  std::to_string(row.size()) + " columns, expected " + std::to_string(width));
        }
        t.rows.push_back(std::move(row));
    }
    if (t.rows.empty()) throw ValidationError("CSV has no data rows");
    return t;
}

CsvTable read_csv(const std::string &path) { return parse_csv(read_file(path)); }

std::string csv_preamble(const std::string &units) {
    return "# qutrit version=1 units=" + units + "\n";
}

std::vector<int> parse_int_list(const std::string &text) {
    std::vector<int> out;
    for (const auto &cell : split(text, ',')) {
        double v = 0.0;
        if (!parse_double(cell, v) || v != static_cast<int>(v)) {
            throw ValidationError("'" + cell + "' is not an integer");
        }
        out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw ValidationError("empty integer list");
    return out;
}

}  // namespace qutrit::cli
