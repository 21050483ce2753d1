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

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qutrit::cli {

/// Collects output files and publishes them together. Each file is written
/// to a temporary sibling and renamed into place on commit(); if any write
/// fails, every temporary and every already-renamed file is removed so no
/// partial result survives. Throws IoError.
class OutputSet {
  public:
    void add(std::string path, std::string content);
    bool empty() const { return files_.empty(); }
    void commit();

  private:
    std::vector<std::pair<std::string, std::string>> files_;
};

/// Whole-file read; throws IoError.
std::string read_file(const std::string &path);

/// Numeric table from a CSV file. Lines starting with '#' are skipped, as is
/// a first row that does not parse as numbers (the header). Throws IoError
/// if the file cannot be read and ValidationError on ragged or
/// non-numeric rows.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Index of a named column; ValidationError if absent.
    size_t column(const std::string &name) const;
    std::vector<double> values(size_t col) const;
};
CsvTable read_csv(const std::string &path);
CsvTable parse_csv(const std::string &text);

/// First line of every CSV the tool writes.
std::string csv_preamble(const std::string &units);

/// Comma-separated list of integers.
std::vector<int> parse_int_list(const std::string &text);

}  // namespace qutrit::cli
