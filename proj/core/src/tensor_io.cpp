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

#include "ebcsi/tensor_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include <openssl/evp.h>

#include "ebcsi/error.hpp"

namespace ebcsi {

std::string sha256_hex(const void *data, std::size_t size) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data, size, digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 computation failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

std::string sha256_file(const std::filesystem::path &path) {
    const auto bytes = read_bytes(path);
    return sha256_hex(bytes.data(), bytes.size());
}

std::vector<std::uint8_t> encode_f64(const double *values, std::size_t n) {
    std::vector<std::uint8_t> out(n * 8);
    for (std::size_t i = 0; i < n; ++i) {
        const auto bits = std::bit_cast<std::uint64_t>(values[i]);
        for (int b = 0; b < 8; ++b)
            out[i * 8 + static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(bits >> (8 * b));
    }
    return out;
}

std::vector<double> decode_f64(const std::vector<std::uint8_t> &bytes) {
    if (bytes.size() % 8 != 0)
        throw IoError("tensor byte count is not a multiple of 8");
    std::vector<double> out(bytes.size() / 8);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b)
            bits |= static_cast<std::uint64_t>(bytes[i * 8 + static_cast<std::size_t>(b)]) << (8 * b);
        out[i] = std::bit_cast<double>(bits);
    }
    return out;
}

void write_bytes(const std::filesystem::path &path, const std::vector<std::uint8_t> &bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("failed writing " + path.string());
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void append_complex_matrix(std::vector<std::uint8_t> &out, const CMatrix &t) {
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(2 * t.size()));
    for (Eigen::Index r = 0; r < t.rows(); ++r)
        for (Eigen::Index c = 0; c < t.cols(); ++c) {
            flat.push_back(t(r, c).real());
            flat.push_back(t(r, c).imag());
        }
    const auto bytes = encode_f64(flat.data(), flat.size());
    out.insert(out.end(), bytes.begin(), bytes.end());
}

void append_real_matrix(std::vector<std::uint8_t> &out, const RMatrix &t) {
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(t.size()));
    for (Eigen::Index r = 0; r < t.rows(); ++r)
        for (Eigen::Index c = 0; c < t.cols(); ++c)
            flat.push_back(t(r, c));
    const auto bytes = encode_f64(flat.data(), flat.size());
    out.insert(out.end(), bytes.begin(), bytes.end());
}

std::string write_complex_matrix(const std::filesystem::path &path, const CMatrix &t) {
    std::vector<std::uint8_t> bytes;
    append_complex_matrix(bytes, t);
    write_bytes(path, bytes);
    return sha256_hex(bytes.data(), bytes.size());
}

std::string write_real_matrix(const std::filesystem::path &path, const RMatrix &t) {
    std::vector<std::uint8_t> bytes;
    append_real_matrix(bytes, t);
    write_bytes(path, bytes);
    return sha256_hex(bytes.data(), bytes.size());
}

CMatrix read_complex_matrix(const std::filesystem::path &path, Eigen::Index rows, Eigen::Index cols) {
    const auto v = decode_f64(read_bytes(path));
    if (v.size() != static_cast<std::size_t>(2 * rows * cols))
        throw IoError(path.string() + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                      " complex tensor");
    CMatrix t(rows, cols);
    std::size_t i = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c, i += 2)
            t(r, c) = Complex(v[i], v[i + 1]);
    return t;
}

RMatrix read_real_matrix(const std::filesystem::path &path, Eigen::Index rows, Eigen::Index cols) {
    const auto v = decode_f64(read_bytes(path));
    if (v.size() != static_cast<std::size_t>(rows * cols))
        throw IoError(path.string() + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                      " real tensor");
    RMatrix t(rows, cols);
    std::size_t i = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            t(r, c) = v[i++];
    return t;
}

} // namespace ebcsi
