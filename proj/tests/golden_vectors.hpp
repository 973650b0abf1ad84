#pragma once

// Known-answer session at p = 251, d = 8: both session keys, a message, its
// ciphertext and the recovered message, row-major.

#include <array>
#include <cstdint>

#include "tdp/matrix.hpp"

namespace golden {

inline const tdp::FieldParams kParams{251, 8};


// "Kalice" and "Kbob" are printed separately.
inline constexpr std::array<std::int64_t, 64> kAliceKey = {
    142, 192, 38,  42,  56,  123, 248, 215,  //
    86,  89,  216, 109, 223, 54,  66,  135,  //
    88,  206, 63,  134, 249, 39,  87,  2,    //
    217, 202, 79,  240, 131, 61,  13,  213,  //
    62,  67,  72,  46,  219, 51,  113, 100,  //
    17,  234, 189, 210, 242, 230, 86,  193,  //
    246, 157, 234, 27,  124, 138, 23,  127,  //
    131, 35,  240, 116, 190, 144, 174, 90};

inline constexpr std::array<std::int64_t, 64> kBobKey = {
    142, 192, 38,  42,  56,  123, 248, 215,  //
    86,  89,  216, 109, 223, 54,  66,  135,  //
    88,  206, 63,  134, 249, 39,  87,  2,    //
    217, 202, 79,  240, 131, 61,  13,  213,  //
    62,  67,  72,  46,  219, 51,  113, 100,  //
    17,  234, 189, 210, 242, 230, 86,  193,  //
    246, 157, 234, 27,  124, 138, 23,  127,  //
    131, 35,  240, 116, 190, 144, 174, 90};

inline constexpr std::array<std::int64_t, 64> kMessage = {
    38,  50,  241, 209, 242, 186, 128, 113,  //
    200, 43,  145, 57,  52,  145, 76,  229,  //
    78,  58,  70,  144, 45,  161, 100, 101,  //
    223, 117, 213, 2,   184, 236, 91,  245,  //
    136, 160, 210, 11,  197, 44,  239, 54,   //
    233, 226, 126, 139, 7,   246, 165, 48,   //
    140, 135, 172, 34,  37,  183, 21,  202,  //
    176, 130, 203, 141, 49,  0,   161, 5};

inline constexpr std::array<std::int64_t, 64> kCipher = {
    7,   41,  3,   224, 146, 175, 243, 114,  //
    168, 22,  11,  103, 83,  91,  24,  179,  //
    113, 16,  19,  249, 128, 231, 87,  176,  //
    122, 183, 20,  2,   219, 96,  229, 144,  //
    46,  30,  198, 139, 4,   240, 27,  56,   //
    146, 5,   221, 58,  234, 184, 77,  191,  //
    212, 241, 48,  5,   23,  40,  150, 21,   //
    144, 12,  79,  177, 154, 45,  115, 234};

// "ALICE recovered msg"
inline constexpr std::array<std::int64_t, 64> kRecovered = {
    38,  50,  241, 209, 242, 186, 128, 113,  //
    200, 43,  145, 57,  52,  145, 76,  229,  //
    78,  58,  70,  144, 45,  161, 100, 101,  //
    223, 117, 213, 2,   184, 236, 91,  245,  //
    136, 160, 210, 11,  197, 44,  239, 54,   //
    233, 226, 126, 139, 7,   246, 165, 48,   //
    140, 135, 172, 34,  37,  183, 21,  202,  //
    176, 130, 203, 141, 49,  0,   161, 5};

inline tdp::Matrix matrix(const std::array<std::int64_t, 64>& values) {
  return tdp::Matrix::from_integers(kParams, std::span<const std::int64_t>(values));
}

// Raw (unreduced) diagonal sums of the printed msg and cif.
inline std::int64_t raw_trace(const std::array<std::int64_t, 64>& values) {
  std::int64_t t = 0;
  for (std::size_t i = 0; i < 8; ++i) t += values[i * 8 + i];
  return t;
}

}  // namespace golden
