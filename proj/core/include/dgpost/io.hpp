// Copyright 2026 The dgpost Authors
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

#ifndef DGPOST_IO_HPP_
#define DGPOST_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace dgpost {

/// Numeric table with a header row. Missing values are NaN and are written
/// as "nan".
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;  // -1 if absent
  double at(std::size_t row, const std::string& name) const;
};

/// Comma-separated, values written with enough digits to round-trip.
void write_csv(std::ostream& out, const CsvTable& table);
CsvTable read_csv(std::istream& in);

}  // namespace dgpost

#endif  // DGPOST_IO_HPP_
