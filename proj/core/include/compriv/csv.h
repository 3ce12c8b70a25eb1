// Copyright 2026 The compriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COMPRIV_CSV_H_
#define COMPRIV_CSV_H_

#include <iosfwd>
#include <string>

#include "compriv/matrix_core.h"

namespace compriv {

// Row-major decimal CSV. With skip_header the first line is ignored. Every
// row must have the same number of fields.
Matrix read_csv(std::istream& in, bool skip_header = false);
Matrix read_csv_file(const std::string& path, bool skip_header = false);

// 17 significant digits, enough to round-trip any double.
void write_csv(std::ostream& out, const Matrix& m);
void write_csv_file(const std::string& path, const Matrix& m);

}  // namespace compriv

#endif  // COMPRIV_CSV_H_
