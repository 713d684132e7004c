/*
   Copyright 2026 The mrn Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mrn/empirical.hpp"
#include "mrn/measure.hpp"

namespace mrn {

/// RFC-4180-style field quoting: fields containing commas, quotes or
/// newlines are wrapped in double quotes with inner quotes doubled.
std::string csv_escape(const std::string& field);
std::string csv_row(const std::vector<std::string>& fields);

/// Shortest decimal round-trip formatting for doubles.
std::string format_double(double x);

/// FNV-1a 64-bit hash, hex encoded; used for config provenance.
std::string fnv1a_hex(const std::string& data);

/// Write via temp file + rename so interrupted runs never leave partial
/// artifacts.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Measure serialization to CSV (documented headers).
std::string probability_measure_csv(const TypeAlphabet& alphabet, const ProbabilityMeasure& mu);
std::string pair_measure_csv(const TypeAlphabet& alphabet, const PairMeasure& pi);
std::string degree_distribution_csv(const DegreeDistribution& d);
std::string neighbourhood_measure_csv(const TypeAlphabet& alphabet,
                                      const NeighbourhoodMeasure& omega);

}  // namespace mrn
