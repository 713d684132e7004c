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

#include "mrn/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mrn {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out += ',';
        out += csv_escape(fields[i]);
    }
    out += '\n';
    return out;
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("atomic_write: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string probability_measure_csv(const TypeAlphabet& alphabet, const ProbabilityMeasure& mu) {
    std::string out = csv_row({"label", "mass"});
    for (std::size_t a = 0; a < alphabet.size(); ++a)
        out += csv_row({alphabet.label(a), format_double(mu(a))});
    return out;
}

std::string pair_measure_csv(const TypeAlphabet& alphabet, const PairMeasure& pi) {
    std::string out = csv_row({"label", "label2", "mass"});
    for (std::size_t a = 0; a < alphabet.size(); ++a)
        for (std::size_t b = 0; b < alphabet.size(); ++b)
            out += csv_row({alphabet.label(a), alphabet.label(b), format_double(pi(a, b))});
    return out;
}

std::string degree_distribution_csv(const DegreeDistribution& d) {
    std::string out = csv_row({"degree", "mass"});
    for (std::size_t k = 0; k < d.pmf.size(); ++k)
        out += csv_row({std::to_string(k), format_double(d.pmf[k])});
    out += csv_row({"overflow", format_double(d.overflow)});
    return out;
}

std::string neighbourhood_measure_csv(const TypeAlphabet& alphabet,
                                      const NeighbourhoodMeasure& omega) {
    std::string out = csv_row({"label", "profile", "mass"});
    for (const auto& [key, w] : omega.mass) {
        std::ostringstream profile;
        for (std::size_t b = 0; b < key.second.size(); ++b) {
            if (b > 0) profile << ' ';
            profile << key.second[b];
        }
        out += csv_row({alphabet.label(key.first), profile.str(), format_double(w)});
    }
    for (std::size_t a = 0; a < alphabet.size(); ++a)
        out += csv_row({alphabet.label(a), "overflow", format_double(omega.overflow[a])});
    return out;
}

}  // namespace mrn
