// SPDX-License-Identifier: Apache-2.0
//
// ebcsi - environment subspace basis toolkit for partial-to-whole CSI prediction
// Copyright (C) 2026 The ebcsi authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ebcsi/types.hpp"

namespace ebcsi {

// Raw tensor files: little-endian IEEE-754 float64, complex values interleaved
// (re, im), row-major, no header. Shapes live in the accompanying manifest.

std::string sha256_hex(const void *data, std::size_t size);
std::string sha256_file(const std::filesystem::path &path);

std::vector<std::uint8_t> encode_f64(const double *values, std::size_t n);
std::vector<double> decode_f64(const std::vector<std::uint8_t> &bytes);

void write_bytes(const std::filesystem::path &path, const std::vector<std::uint8_t> &bytes);
std::vector<std::uint8_t> read_bytes(const std::filesystem::path &path);

// Writes `t` row-major. Returns the SHA-256 of the written bytes.
std::string write_complex_matrix(const std::filesystem::path &path, const CMatrix &t);
std::string write_real_matrix(const std::filesystem::path &path, const RMatrix &t);
// Appends `t` row-major to `out`.
void append_complex_matrix(std::vector<std::uint8_t> &out, const CMatrix &t);
void append_real_matrix(std::vector<std::uint8_t> &out, const RMatrix &t);

// Reads a row-major tensor of the given shape; throws IoError on size mismatch.
CMatrix read_complex_matrix(const std::filesystem::path &path, Eigen::Index rows, Eigen::Index cols);
RMatrix read_real_matrix(const std::filesystem::path &path, Eigen::Index rows, Eigen::Index cols);

} // namespace ebcsi
