// Copyright 2026 The qkge authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <string>
#include <vector>

namespace qkge {

// Shortest decimal string that round-trips the double exactly.
std::string format_double(double value);

// Splits on a single-character delimiter; keeps empty fields.
std::vector<std::string> split(const std::string& line, char delim);

// Writes `text` to `path`, replacing any existing file. Throws on I/O error.
void write_text_file(const std::string& path, const std::string& text);

// Reads a whole file; throws if it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace qkge
