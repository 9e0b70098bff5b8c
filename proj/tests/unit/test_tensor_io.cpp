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

#include <fstream>

#include <gtest/gtest.h>

#include "ebcsi/error.hpp"
#include "ebcsi/tensor_io.hpp"
#include "test_util.hpp"

using namespace ebcsi;
using ebcsi::testing::TempDir;

TEST(Sha256, KnownVectors) {
    EXPECT_EQ(sha256_hex("abc", 3), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(sha256_hex("", 0), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(EncodeF64, LittleEndianIeee754) {
    const double v[] = {1.0, -2.0};
    const auto bytes = encode_f64(v, 2);
    ASSERT_EQ(bytes.size(), 16u);
    const std::uint8_t one[] = {0, 0, 0, 0, 0, 0, 0xf0, 0x3f};
    const std::uint8_t minus_two[] = {0, 0, 0, 0, 0, 0, 0x00, 0xc0};
    for (int i = 0; i < 8; ++i) {
        EXPECT_EQ(bytes[static_cast<std::size_t>(i)], one[i]);
        EXPECT_EQ(bytes[static_cast<std::size_t>(8 + i)], minus_two[i]);
    }
    EXPECT_EQ(decode_f64(bytes), std::vector<double>({1.0, -2.0}));
}

TEST(DecodeF64, RejectsPartialValues) {
    EXPECT_THROW(decode_f64(std::vector<std::uint8_t>(7)), IoError);
}

TEST(ComplexMatrixFile, RowMajorInterleaved) {
    TempDir tmp;
    CMatrix m(2, 2);
    m << Complex(1, 2), Complex(3, 4), Complex(5, 6), Complex(7, 8);
    const auto sha = write_complex_matrix(tmp / "m.bin", m);
    EXPECT_EQ(sha, sha256_file(tmp / "m.bin"));
    const auto values = decode_f64(read_bytes(tmp / "m.bin"));
    EXPECT_EQ(values, std::vector<double>({1, 2, 3, 4, 5, 6, 7, 8}));
    EXPECT_EQ(read_complex_matrix(tmp / "m.bin", 2, 2), m);
}

TEST(RealMatrixFile, RoundTripAndShapeCheck) {
    TempDir tmp;
    RMatrix m(2, 3);
    m << 1, 2, 3, 4, 5, 6;
    write_real_matrix(tmp / "r.bin", m);
    EXPECT_EQ(decode_f64(read_bytes(tmp / "r.bin")), std::vector<double>({1, 2, 3, 4, 5, 6}));
    EXPECT_EQ(read_real_matrix(tmp / "r.bin", 2, 3), m);
    EXPECT_THROW(read_real_matrix(tmp / "r.bin", 3, 3), IoError);
}

TEST(ReadBytes, MissingFileIsIoError) {
    TempDir tmp;
    EXPECT_THROW(read_bytes(tmp / "nope.bin"), IoError);
    EXPECT_THROW(sha256_file(tmp / "nope.bin"), IoError);
}

TEST(AppendMatrix, ConcatenatesInOrder) {
    CMatrix a = CMatrix::Constant(1, 1, Complex(1, -1));
    RMatrix b = RMatrix::Constant(1, 2, 0.5);
    std::vector<std::uint8_t> out;
    append_complex_matrix(out, a);
    append_real_matrix(out, b);
    EXPECT_EQ(decode_f64(out), std::vector<double>({1, -1, 0.5, 0.5}));
}
