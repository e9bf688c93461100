#pragma once

// Reference data for the 63 image classes: the square-class element whose
// squareness characterises the class, an exemplar curve [a, c, k] realising
// it, the exact density, and the observed ratio pi_S(x) / pi(x) at x = 10^7.

#include <array>
#include <cstdint>
#include <optional>

namespace oddorder {

struct ReferenceRow {
    int id;
    const char* element;
    std::int64_t a, c, k;
    std::int64_t num, den;
    double observed_1e7;
};

inline constexpr std::array<ReferenceRow, 63> kReferenceRows{{
    {1, "N/A", 3, 3, 1, 5, 21, 0.237796},
    {2, "c", -3, 1, 3, 10, 21, 0.476216},
    {3, "-2bc(a^2-4b)", 14, 15, 6, 5123, 21504, 0.238055},
    {4, "-2bc", 3, 3, 2, 5123, 21504, 0.238167},
    {5, "2bc(a^2-4b)", 6, -5, 2, 5123, 21504, 0.237885},
    {6, "2bc", 2, -3, 1, 5123, 21504, 0.238034},
    {7, "-bc(a^2-4b)", -5, 11, 1, 83, 336, 0.246844},
    {8, "-bc", 2, 3, 1, 83, 336, 0.247027},
    {9, "bc(a^2-4b)", 10, -11, 2, 13, 42, 0.309546},
    {10, "bc", 2, -5, 1, 1, 7, 0.142902},
    {11, "-2c(a^2-4b)", 14, 7, 6, 5123, 21504, 0.238993},
    {12, "-2c", 1, -2, 2, 5123, 21504, 0.237946},
    {13, "2c(a^2-4b)", 6, 3, 2, 5123, 21504, 0.238411},
    {14, "2c", 2, 2, 1, 5123, 21504, 0.238438},
    {15, "-c(a^2-4b)", -5, -5, 1, 83, 336, 0.247187},
    {16, "-c", -1, -1, 1, 83, 336, 0.246790},
    {17, "c(a^2-4b)", 10, 5, 2, 1, 7, 0.143135},
    {18, "-2b x(a')", 7, 16, 3, 5123, 10752, 0.477010},
    {19, "2b x(a')", -3, 1, 2, 5123, 10752, 0.476296},
    {20, "-b x(a')", 28, 36, 1, 83, 168, 0.494378},
    {21, "b x(a')", -5, 1, 4, 19, 42, 0.452681},
    {22, "-2 x(a')", 2, 1, 3, 5123, 10752, 0.476195},
    {23, "2 x(a')", -4, 1, 2, 5123, 10752, 0.476213},
    {24, "-x(a')", 3, 1, 3, 83, 168, 0.493984},
    {25, "2d(d+2ak+2ck-2k^3)", -6, 13, 2, 2659, 10752, 0.247257},
    {26, "-d(d+2ak+2ck-2k^3)", 6, 7, 4, 89, 336, 0.265085},
    {27, "-2d(d+2ak+2ck-2k^3)", 10, 21, 6, 2659, 10752, 0.247638},
    {28, "d(d+2ak+2ck-2k^3)", 28, -12, 3, 25, 112, 0.223038},
    {29, "2bd(d+2ak+2ck-2k^3)", 15, 6, 6, 2659, 10752, 0.247663},
    {30, "-bd(d+2ak+2ck-2k^3)", -210, 375, 9, 25, 112, 0.223066},
    {31, "-2bd(d+2ak+2ck-2k^3)", 30, 10, 10, 2659, 10752, 0.247015},
    {32, "bd(d+2ak+2ck-2k^3)", -55, 125, 9, 89, 336, 0.265033},
    {33, "-2b x(a')", -7, -14, 2, 513, 3584, 0.143191},
    {34, "2b x(a')", -3, 6, 2, 513, 3584, 0.143121},
    {35, "-b x(a')", -40, 45, 3, 5, 42, 0.119048},
    {36, "b x(a')", 10, 10, 6, 5, 42, 0.118733},
    {37, "-2 x(a')", 2, 3, 3, 513, 3584, 0.143154},
    {38, "2 x(a')", -2, 7, 3, 513, 3584, 0.143036},
    {39, "-x(a')", 2, 5, 4, 5, 42, 0.118566},
    {40, "2bcd(d+2ck)", -45, 60, 5, 2659, 10752, 0.247000},
    {41, "bcd(d+2ck)", -210, -21, 12, 89, 336, 0.265084},
    {42, "-2bcd(d+2ck)", 15, 15, 6, 2659, 10752, 0.247006},
    {43, "-bcd(d+2ck)", -55, 11, -9, 89, 336, 0.264981},
    {44, "2cd(d+2ck)", 10, 5, 6, 2659, 10752, 0.247056},
    {45, "cd(d+2ck)", 6, 3, 4, 25, 112, 0.223415},
    {46, "-2cd(d+2ck)", -6, -3, 2, 2659, 10752, 0.247212},
    {47, "-cd(d+2ck)", -14, -7, 6, 25, 112, 0.223007},
    {48, "2(a^2-4b)(d+x(a+T))", 60, 36, 9, 2659, 5376, 0.494232},
    {49, "b(a^2-4b)(d+x(a+T))", 30, 121, 1, 89, 168, 0.529399},
    {50, "-2(a^2-4b)(d+x(a+T))", 90, 16, 16, 2659, 5376, 0.494423},
    {51, "-(a^2-4b)(d+x(a+T))", 210, 81, 21, 41, 84, 0.487864},
    {52, "-2b(d+x(a+T))", 15, 9, 2, 2659, 5376, 0.494824},
    {53, "-(d+x(a+T))", -12, 16, 1, 41, 84, 0.488500},
    {54, "2b(d+x(a+T))", 3, 1, 4, 2659, 5376, 0.494469},
    {55, "d+x(a+T)", -7, 16, 11, 25, 56, 0.446331},
    {56, "d+c", 7, 112, 12, 5, 21, 0.237694},
    {57, "2(a^2-4b)(d+c)", -30, -15, 6, 643, 5376, 0.119463},
    {58, "(a^2-4b)(d+c)", 30, -150, 1, 1, 14, 0.0715225},
    {59, "-2(a^2-4b)(d+c)", -60, -15, 5, 643, 5376, 0.119643},
    {60, "-(a^2-4b)(d+c)", 210, 150, 21, 19, 168, 0.112867},
    {61, "-2(d+c)", 5, -20, 1, 643, 5376, 0.119774},
    {62, "-(d+c)", -12, -3, 1, 19, 168, 0.113223},
    {63, "2(d+c)", 3, 12, 4, 643, 5376, 0.120063},
}};

inline const ReferenceRow& reference_row(int id) { return kReferenceRows.at(static_cast<std::size_t>(id - 1)); }

// Quadratic characters used to label rows. A mask selects a product of the
// generators -1, 2, b and a^2 - 4b (bit 0, 1, 2, 3 respectively).
enum SquareClassBit : unsigned { kMinusOne = 1, kTwo = 2, kB = 4, kDiscPrime = 8 };

/// How a row is obtained from its batch.
enum class RowFamily {
    root,          ///< the whole group
    c_twist,       ///< H2 * M_E: c E is a square
    alpha_prime,   ///< parent row 2; x(a') E is a square, a' over alpha
    d_twist_7,     ///< parent row 7; D E is a square
    alpha_t_prime, ///< parent row 10; x(a') E is a square, a' over alpha + T
    d_twist_15,    ///< parent row 15
    d_twist_20,    ///< parent row 20
    d_twist_35,    ///< parent row 35
};

struct RowSpec {
    int id;
    RowFamily family;
    int batch_parent;  ///< row whose index-2 subgroups form the batch (0 for the root)
    unsigned mask;     ///< character E relative to the batch anchor
};

inline constexpr std::array<RowSpec, 63> kRowSpecs{{
    {1, RowFamily::root, 0, 0},
    {2, RowFamily::c_twist, 1, 0},
    {3, RowFamily::c_twist, 1, 15},
    {4, RowFamily::c_twist, 1, 7},
    {5, RowFamily::c_twist, 1, 14},
    {6, RowFamily::c_twist, 1, 6},
    {7, RowFamily::c_twist, 1, 13},
    {8, RowFamily::c_twist, 1, 5},
    {9, RowFamily::c_twist, 1, 12},
    {10, RowFamily::c_twist, 1, 4},
    {11, RowFamily::c_twist, 1, 11},
    {12, RowFamily::c_twist, 1, 3},
    {13, RowFamily::c_twist, 1, 10},
    {14, RowFamily::c_twist, 1, 2},
    {15, RowFamily::c_twist, 1, 9},
    {16, RowFamily::c_twist, 1, 1},
    {17, RowFamily::c_twist, 1, 8},
    {18, RowFamily::alpha_prime, 2, 7},
    {19, RowFamily::alpha_prime, 2, 6},
    {20, RowFamily::alpha_prime, 2, 5},
    {21, RowFamily::alpha_prime, 2, 4},
    {22, RowFamily::alpha_prime, 2, 3},
    {23, RowFamily::alpha_prime, 2, 2},
    {24, RowFamily::alpha_prime, 2, 1},
    {25, RowFamily::d_twist_7, 7, 2},
    {26, RowFamily::d_twist_7, 7, 1},
    {27, RowFamily::d_twist_7, 7, 3},
    {28, RowFamily::d_twist_7, 7, 0},
    {29, RowFamily::d_twist_7, 7, 6},
    {30, RowFamily::d_twist_7, 7, 5},
    {31, RowFamily::d_twist_7, 7, 7},
    {32, RowFamily::d_twist_7, 7, 4},
    {33, RowFamily::alpha_t_prime, 10, 7},
    {34, RowFamily::alpha_t_prime, 10, 6},
    {35, RowFamily::alpha_t_prime, 10, 5},
    {36, RowFamily::alpha_t_prime, 10, 4},
    {37, RowFamily::alpha_t_prime, 10, 3},
    {38, RowFamily::alpha_t_prime, 10, 2},
    {39, RowFamily::alpha_t_prime, 10, 1},
    {40, RowFamily::d_twist_15, 15, 6},
    {41, RowFamily::d_twist_15, 15, 4},
    {42, RowFamily::d_twist_15, 15, 7},
    {43, RowFamily::d_twist_15, 15, 5},
    {44, RowFamily::d_twist_15, 15, 2},
    {45, RowFamily::d_twist_15, 15, 0},
    {46, RowFamily::d_twist_15, 15, 3},
    {47, RowFamily::d_twist_15, 15, 1},
    {48, RowFamily::d_twist_20, 20, 10},
    {49, RowFamily::d_twist_20, 20, 12},
    {50, RowFamily::d_twist_20, 20, 11},
    {51, RowFamily::d_twist_20, 20, 9},
    {52, RowFamily::d_twist_20, 20, 7},
    {53, RowFamily::d_twist_20, 20, 1},
    {54, RowFamily::d_twist_20, 20, 6},
    {55, RowFamily::d_twist_20, 20, 0},
    {56, RowFamily::d_twist_35, 35, 0},
    {57, RowFamily::d_twist_35, 35, 10},
    {58, RowFamily::d_twist_35, 35, 8},
    {59, RowFamily::d_twist_35, 35, 11},
    {60, RowFamily::d_twist_35, 35, 9},
    {61, RowFamily::d_twist_35, 35, 3},
    {62, RowFamily::d_twist_35, 35, 1},
    {63, RowFamily::d_twist_35, 35, 2},
}};

inline const RowSpec& row_spec(int id) { return kRowSpecs.at(static_cast<std::size_t>(id - 1)); }

}  // namespace oddorder
